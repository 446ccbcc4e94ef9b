#include "wigchain/det_approx.hpp"

#include <algorithm>
#include <stdexcept>

namespace wigchain {

namespace {

struct PartitionTables {
  std::vector<NcPartition> partitions;
  std::vector<NcPartition> complements;
};

// NC([p]) together with Kreweras complements, cached per chain length.
const PartitionTables& partition_tables(int p) {
  static std::vector<PartitionTables> cache = [] {
    std::vector<PartitionTables> c(8);
    for (int n = 1; n <= 7; ++n) {
      c[n].partitions = enumerate_nc(n);
      c[n].complements.reserve(c[n].partitions.size());
      for (const auto& pi : c[n].partitions) c[n].complements.push_back(kreweras(pi));
    }
    return c;
  }();
  if (p < 1 || p > 7) throw std::invalid_argument("m_det: chain too long (at most 7 slots)");
  return cache[p];
}

std::uint32_t block_mask(const std::vector<int>& blk) {
  std::uint32_t m = 0;
  for (int e : blk) m |= 1u << e;
  return m;
}

// Free cumulants of the Im-decorated divided differences over all
// nonempty subsets of the chain's spectral slots.
CumulantTable chain_cumulants(const std::vector<SpectralPoint>& pts, std::uint32_t imag_mask) {
  const int p = static_cast<int>(pts.size());
  CumulantTable m_table(p);
  for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
    IndexedSpectralSet sub;
    for (int i = 0; i < p; ++i) {
      if (!(mask & (1u << i))) continue;
      if (imag_mask & (1u << i)) sub.imag_mask |= 1u << sub.points.size();
      sub.points.push_back(pts[i]);
    }
    m_table[mask] = divided_difference(sub);
  }
  return free_cumulants(m_table);
}

// Normalized trace of the index-ordered product over one block.
cplx block_trace(const std::vector<int>& blk, const std::vector<ObservablePtr>& mats) {
  if (blk.size() == 1) return mats[blk[0]]->trace_avg();
  const int n = mats[blk[0]]->dim();
  Matrix prod = mats[blk[0]]->data();
  for (std::size_t i = 1; i + 1 < blk.size(); ++i) prod = prod * mats[blk[i]]->data();
  // close the trace against the last factor without forming the product
  return (prod * mats[blk.back()]->data()).trace() / static_cast<double>(n);
}

struct PtrParts {
  cplx scalar = 1.0;            // product of block traces
  std::vector<int> last_block;  // block containing slot p-1, without p-1
};

PtrParts ptr_parts(const NcPartition& complement, const std::vector<ObservablePtr>& mats) {
  PtrParts out;
  const int last = complement.k - 1;
  for (const auto& blk : complement.blocks) {
    if (std::find(blk.begin(), blk.end(), last) != blk.end()) {
      out.last_block.assign(blk.begin(), blk.end());
      out.last_block.pop_back(); // blocks are sorted, last slot is at the end
    } else {
      out.scalar *= block_trace(blk, mats);
    }
  }
  return out;
}

void require_points(const ChainSpec& chain) {
  validate_chain(chain);
  for (const auto& p : chain.points)
    if (!(p.eta > 0.0)) throw std::domain_error("m_det: spectral point on the real axis");
}

} // namespace

Matrix partial_trace(const NcPartition& kappa, const std::vector<ObservablePtr>& matrices) {
  validate_partition(kappa);
  if (static_cast<int>(matrices.size()) + 1 != kappa.k)
    throw std::invalid_argument("partial_trace: need k-1 matrices for a partition of [k]");
  if (matrices.empty()) {
    // k = 1: a single slot, empty product of matrices
    return Matrix::Identity(1, 1);
  }
  const int n = matrices[0]->dim();
  PtrParts parts = ptr_parts(kappa, matrices);
  Matrix prod = Matrix::Identity(n, n);
  for (int j : parts.last_block) prod = prod * matrices[j]->data();
  return parts.scalar * prod;
}

Matrix m_det(const ChainSpec& chain) {
  require_points(chain);
  const int p = static_cast<int>(chain.num_points());
  const auto& tables = partition_tables(p);
  const auto pts = chain.m_points();
  const CumulantTable cum = chain_cumulants(pts, chain.imag_mask());

  const int n = chain.observables.empty() ? 1 : chain.observables[0]->dim();
  Matrix acc = Matrix::Zero(n, n);
  for (std::size_t t = 0; t < tables.partitions.size(); ++t) {
    cplx coeff = 1.0;
    for (const auto& blk : tables.partitions[t].blocks) coeff *= cum[block_mask(blk)];
    PtrParts parts = ptr_parts(tables.complements[t], chain.observables);
    if (parts.last_block.empty()) {
      acc.diagonal().array() += coeff * parts.scalar;
    } else {
      Matrix prod = chain.observables[parts.last_block[0]]->data();
      for (std::size_t i = 1; i < parts.last_block.size(); ++i)
        prod = prod * chain.observables[parts.last_block[i]]->data();
      acc += (coeff * parts.scalar) * prod;
    }
  }
  return acc;
}

cplx m_det_avg(const ChainSpec& chain) {
  if (chain.kind() != ChainSpec::Kind::Averaged)
    throw std::invalid_argument("m_det_avg: averaged chain (with closing observable) required");
  require_points(chain);
  const int p = static_cast<int>(chain.num_points());
  const auto& tables = partition_tables(p);
  const auto pts = chain.m_points();
  const CumulantTable cum = chain_cumulants(pts, chain.imag_mask());

  const int n = chain.closing->dim();
  cplx acc = 0.0;
  for (std::size_t t = 0; t < tables.partitions.size(); ++t) {
    cplx coeff = 1.0;
    for (const auto& blk : tables.partitions[t].blocks) coeff *= cum[block_mask(blk)];
    PtrParts parts = ptr_parts(tables.complements[t], chain.observables);
    cplx closed;
    if (parts.last_block.empty()) {
      closed = chain.closing->trace_avg();
    } else {
      Matrix prod = chain.observables[parts.last_block[0]]->data();
      for (std::size_t i = 1; i < parts.last_block.size(); ++i)
        prod = prod * chain.observables[parts.last_block[i]]->data();
      closed = (prod * chain.closing->data()).trace() / static_cast<double>(n);
    }
    acc += coeff * parts.scalar * closed;
  }
  return acc;
}

cplx m_det_iso(const ChainSpec& chain) {
  if (chain.kind() != ChainSpec::Kind::Isotropic)
    throw std::invalid_argument("m_det_iso: isotropic chain (with vectors) required");
  require_points(chain);
  const int p = static_cast<int>(chain.num_points());
  const auto& tables = partition_tables(p);
  const auto pts = chain.m_points();
  const CumulantTable cum = chain_cumulants(pts, chain.imag_mask());

  const auto& [x, y] = *chain.vectors;
  cplx acc = 0.0;
  for (std::size_t t = 0; t < tables.partitions.size(); ++t) {
    cplx coeff = 1.0;
    for (const auto& blk : tables.partitions[t].blocks) coeff *= cum[block_mask(blk)];
    PtrParts parts = ptr_parts(tables.complements[t], chain.observables);
    Vector w = x;
    for (int j : parts.last_block) w = chain.observables[j]->data().adjoint() * w;
    acc += coeff * parts.scalar * w.dot(y);
  }
  return acc;
}

cplx leading_term(const ChainSpec& chain) {
  require_points(chain);
  const auto pts = chain.m_points();
  const std::uint32_t imag = chain.imag_mask();
  cplx scal = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    scal *= (imag & (1u << i)) ? cplx(pts[i].m.imag(), 0.0) : pts[i].m;

  switch (chain.kind()) {
    case ChainSpec::Kind::Averaged: {
      const int n = chain.closing->dim();
      if (chain.observables.empty()) return scal * chain.closing->trace_avg();
      Matrix prod = chain.observables[0]->data();
      for (std::size_t i = 1; i < chain.observables.size(); ++i)
        prod = prod * chain.observables[i]->data();
      return scal * (prod * chain.closing->data()).trace() / static_cast<double>(n);
    }
    case ChainSpec::Kind::Isotropic: {
      const auto& [x, y] = *chain.vectors;
      Vector w = x;
      for (const auto& o : chain.observables) w = o->data().adjoint() * w;
      return scal * w.dot(y);
    }
    case ChainSpec::Kind::Matrix:
      throw std::invalid_argument("leading_term: averaged or isotropic chain required");
  }
  return 0.0;
}

BoundReport m_bound(const ChainSpec& chain) {
  const auto kind = chain.kind();
  if (kind == ChainSpec::Kind::Matrix)
    throw std::invalid_argument("m_bound: averaged or isotropic chain required");
  require_points(chain);

  const std::uint32_t imag = chain.imag_mask();
  const std::size_t p = chain.num_points();
  BoundReport rep{};
  rep.ell = 1e300;
  rep.ell_hat = 1e300;
  double rho_prod_imag = 1.0;
  double rho_max = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    const auto& pt = chain.points[j];
    if (!(pt.eta > 0.0)) throw std::domain_error("m_bound: nonpositive eta");
    const bool im = imag & (1u << j);
    rep.ell = std::min(rep.ell, pt.eta * (pt.rho + (im ? 0.0 : 1.0)));
    rep.ell_hat = std::min(rep.ell_hat, pt.eta * pt.rho);
    if (im) rho_prod_imag *= pt.rho;
    rho_max = std::max(rho_max, pt.rho);
  }

  double hs_prod = 1.0;
  for (const auto& o : chain.observables) hs_prod *= o->hs_norm();
  int n = 0;
  int k = 0;
  if (kind == ChainSpec::Kind::Averaged) {
    hs_prod *= chain.closing->hs_norm();
    n = chain.closing->dim();
    k = static_cast<int>(p);
  } else {
    n = static_cast<int>(chain.vectors->first.size());
    k = static_cast<int>(p) - 1;
  }
  rep.n_ell_ok = n * rep.ell >= 1.0;

  const double n_pow =
      kind == ChainSpec::Kind::Averaged ? std::pow(n, 0.5 * k - 1.0) : std::pow(n, 0.5 * k);
  rep.m_bound = rho_prod_imag * n_pow * hs_prod;

  if (kind == ChainSpec::Kind::Averaged && k == 1) {
    // Single-resolvent convention: Im does not reduce the k=1
    // fluctuation, so the scale is rho <|A|^2>^{1/2} / (N sqrt(ell-hat)).
    rep.error_scale = chain.points[0].rho * hs_prod / (n * std::sqrt(rep.ell_hat));
  } else {
    rep.error_scale = std::min(rho_prod_imag, std::sqrt(rho_max)) * n_pow /
                      std::sqrt(static_cast<double>(n) * rep.ell) * hs_prod;
  }
  return rep;
}

double m_hs_norm_sq(const ChainSpec& chain) {
  Matrix m = m_det(chain);
  return m.squaredNorm() / static_cast<double>(m.rows());
}

} // namespace wigchain

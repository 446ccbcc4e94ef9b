#include "wigchain/chain.hpp"

#include <stdexcept>
#include <string>

namespace wigchain {

bool is_imag(Decoration d) {
  return d == Decoration::Imag || d == Decoration::ImagTranspose;
}

bool is_transposed(Decoration d) {
  return d == Decoration::Transpose || d == Decoration::ImagTranspose;
}

ChainSpec::Kind ChainSpec::kind() const {
  if (closing) return Kind::Averaged;
  if (vectors) return Kind::Isotropic;
  return Kind::Matrix;
}

std::uint32_t ChainSpec::imag_mask() const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < decorations.size(); ++i)
    if (is_imag(decorations[i])) mask |= 1u << i;
  return mask;
}

std::vector<SpectralPoint> ChainSpec::m_points() const {
  std::vector<SpectralPoint> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (decorations[i] == Decoration::Star)
      out.push_back(SpectralPoint::from(std::conj(points[i].z)));
    else
      out.push_back(points[i]);
  }
  return out;
}

namespace {
ChainSpec base_chain(const std::vector<cplx>& zs, const std::vector<Decoration>& decors,
                     std::vector<ObservablePtr> obs) {
  ChainSpec c;
  c.points.reserve(zs.size());
  for (cplx z : zs) c.points.push_back(SpectralPoint::from(z));
  c.decorations = decors.empty() ? std::vector<Decoration>(zs.size(), Decoration::Plain)
                                 : decors;
  c.observables = std::move(obs);
  return c;
}
} // namespace

ChainSpec ChainSpec::matrix_chain(const std::vector<cplx>& zs,
                                  const std::vector<Decoration>& decors,
                                  std::vector<ObservablePtr> obs) {
  ChainSpec c = base_chain(zs, decors, std::move(obs));
  validate_chain(c);
  return c;
}

ChainSpec ChainSpec::averaged(const std::vector<cplx>& zs,
                              const std::vector<Decoration>& decors,
                              std::vector<ObservablePtr> obs, ObservablePtr closing) {
  ChainSpec c = base_chain(zs, decors, std::move(obs));
  c.closing = std::move(closing);
  validate_chain(c);
  return c;
}

ChainSpec ChainSpec::isotropic(const std::vector<cplx>& zs,
                               const std::vector<Decoration>& decors,
                               std::vector<ObservablePtr> obs, Vector x, Vector y) {
  ChainSpec c = base_chain(zs, decors, std::move(obs));
  c.vectors = std::make_pair(std::move(x), std::move(y));
  validate_chain(c);
  return c;
}

void validate_chain(const ChainSpec& chain) {
  const std::size_t p = chain.points.size();
  if (p == 0) throw std::invalid_argument("ChainSpec: no spectral points");
  if (chain.decorations.size() != p)
    throw std::invalid_argument("ChainSpec: one decoration per spectral point required");
  if (chain.observables.size() + 1 != p)
    throw std::invalid_argument("ChainSpec: expected one fewer observable than points");
  if (chain.closing && chain.vectors)
    throw std::invalid_argument("ChainSpec: closing observable and vectors are exclusive");

  int dim = -1;
  auto check_dim = [&dim](int d, const char* what) {
    if (dim < 0) dim = d;
    if (d != dim) throw std::invalid_argument(std::string("ChainSpec: dimension mismatch in ") + what);
  };
  for (const auto& o : chain.observables) {
    if (!o) throw std::invalid_argument("ChainSpec: null observable");
    check_dim(o->dim(), "observables");
  }
  if (chain.closing) check_dim(chain.closing->dim(), "closing observable");
  if (chain.vectors) {
    const auto& [x, y] = *chain.vectors;
    check_dim(static_cast<int>(x.size()), "vector x");
    check_dim(static_cast<int>(y.size()), "vector y");
    if (std::abs(x.norm() - 1.0) > 1e-12 || std::abs(y.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("ChainSpec: vectors must be unit norm");
  }
}

} // namespace wigchain

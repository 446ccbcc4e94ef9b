#include "wigchain/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace wigchain {

cplx AtomicDistribution::moment(int i, int j) const {
  cplx acc = 0.0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    cplx term = weights[a];
    for (int t = 0; t < i; ++t) term *= std::conj(points[a]);
    for (int t = 0; t < j; ++t) term *= points[a];
    acc += term;
  }
  return acc;
}

cplx AtomicDistribution::sample(Rng& rng) const {
  double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    acc += weights[a];
    if (u <= acc) return points[a];
  }
  return points.back();
}

std::string AtomicDistribution::serialize() const {
  std::string out;
  char buf[96];
  for (std::size_t a = 0; a < points.size(); ++a) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", points[a].real(),
                  points[a].imag(), weights[a]);
    out += buf;
  }
  return out;
}

AtomicDistribution AtomicDistribution::deserialize(const std::string& text) {
  AtomicDistribution law;
  std::istringstream in(text);
  double re, im, w;
  while (in >> re >> im >> w) {
    law.points.emplace_back(re, im);
    law.weights.push_back(w);
  }
  validate_atoms(law);
  return law;
}

void validate_atoms(const AtomicDistribution& law) {
  if (law.points.size() != law.weights.size())
    throw std::invalid_argument("AtomicDistribution: points/weights length mismatch");
  if (law.points.empty() || law.points.size() > 11)
    throw std::invalid_argument("AtomicDistribution: need 1..11 atoms");
  double sum = 0.0;
  for (double w : law.weights) {
    if (w < -1e-14) throw std::invalid_argument("AtomicDistribution: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("AtomicDistribution: weights do not sum to 1");
}

EnsembleParams EnsembleParams::gue(int N, std::uint64_t seed) {
  EnsembleParams p;
  p.N = N;
  p.sigma = 0.0;
  p.diag_second_moment = 1.0;
  p.offdiag_law = LawKind::Gaussian;
  p.diag_law = LawKind::Gaussian;
  p.seed = seed;
  return p;
}

EnsembleParams EnsembleParams::gaussian(int N, cplx sigma, std::uint64_t seed) {
  EnsembleParams p = gue(N, seed);
  p.sigma = sigma;
  p.diag_second_moment = 1.0 + sigma.real();
  validate_params(p);
  return p;
}

EnsembleParams EnsembleParams::atomic(int N, const AtomicDistribution& offdiag,
                                      std::uint64_t seed) {
  EnsembleParams p;
  p.N = N;
  p.offdiag_law = LawKind::Atomic;
  p.offdiag_atoms = offdiag;
  p.sigma = offdiag.moment(0, 2);
  p.diag_second_moment = 1.0 + p.sigma.real();
  p.diag_law = LawKind::Rademacher_like_unused_Id_check(); // placeholder
  p.seed = seed;
  validate_params(p);
  return p;
}

void validate_params(const EnsembleParams& params) {
  if (params.N < 2) throw std::invalid_argument("EnsembleParams: N < 2");
  if (!(std::abs(params.sigma) < 1.0))
    throw std::invalid_argument("EnsembleParams: |sigma| must be < 1");
  if (params.diag_second_moment < 0.0)
    throw std::invalid_argument("EnsembleParams: negative diagonal second moment");
  if (params.offdiag_law == LawKind::Atomic) {
    validate_atoms(params.offdiag_atoms);
    const auto& a = params.offdiag_atoms;
    if (std::abs(a.moment(0, 1)) > 1e-8 || std::abs(a.moment(1, 1) - 1.0) > 1e-8 ||
        std::abs(a.moment(0, 2) - params.sigma) > 1e-8)
      throw std::invalid_argument("EnsembleParams: atomic law moments inconsistent with sigma");
  }
  if (params.offdiag_law == LawKind::RademacherLike && std::abs(params.sigma) > 1e-14)
    throw std::invalid_argument("EnsembleParams: rademacher-like off-diagonals force sigma = 0");
}

namespace {

cplx draw_offdiag(const EnsembleParams& p, Rng& rng) {
  switch (p.offdiag_law) {
    case LawKind::Gaussian: {
      const double s = std::abs(p.sigma);
      if (s == 0.0) return rng.complex_normal();
      const double phi = std::arg(p.sigma);
      const double a = std::sqrt((1.0 + s) / 2.0);
      const double b = std::sqrt((1.0 - s) / 2.0);
      const cplx g(a * rng.normal(), b * rng.normal());
      return std::polar(1.0, phi / 2.0) * g;
    }
    case LawKind::Atomic:
      return p.offdiag_atoms.sample(rng);
    case LawKind::RademacherLike: {
      switch (rng.bits() & 3u) {
        case 0: return {1.0, 0.0};
        case 1: return {-1.0, 0.0};
        case 2: return {0.0, 1.0};
        default: return {0.0, -1.0};
      }
    }
  }
  return 0.0;
}

double draw_diag(const EnsembleParams& p, Rng& rng) {
  const double s = std::sqrt(p.diag_second_moment);
  switch (p.diag_law) {
    case LawKind::Gaussian:
      return s * rng.normal();
    case LawKind::RademacherLike:
      return (rng.bits() & 1u) ? s : -s;
    case LawKind::Atomic:
      throw std::invalid_argument("sample_wigner: atomic diagonal law not supported");
  }
  return 0.0;
}

} // namespace

WignerMatrix sample_wigner(const EnsembleParams& params) {
  validate_params(params);
  const int n = params.N;
  Rng rng(params.seed);
  Matrix w(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int a = 0; a < n; ++a) {
    w(a, a) = scale * draw_diag(params, rng);
    for (int b = a + 1; b < n; ++b) {
      const cplx v = scale * draw_offdiag(params, rng);
      w(a, b) = v;
      w(b, a) = std::conj(v);
    }
  }
  return WignerMatrix{std::move(w), params};
}

WignerMatrix ou_evolve(const WignerMatrix& w0, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("ou_evolve: need 0 <= t <= 1");
  if (t == 0.0) return w0;

  const bool sigma_real = std::abs(w0.params.sigma.imag()) < 1e-14;
  EnsembleParams noise = EnsembleParams::gue(w0.params.params_N_unused(), 0);
  (void)noise;
  EnsembleParams xi_params;
  xi_params.N = w0.params.N;
  xi_params.offdiag_law = LawKind::Gaussian;
  xi_params.diag_law = LawKind::Gaussian;
  if (sigma_real) {
    xi_params.sigma = w0.params.sigma.real();
    xi_params.diag_second_moment = 1.0 + w0.params.sigma.real();
  } else {
    xi_params.sigma = 0.0;
    xi_params.diag_second_moment = 1.0;
  }
  xi_params.seed = derive_seed(w0.params.seed, 0x6f75666c6f77ULL, std::bit_cast<std::uint64_t>(t));

  const WignerMatrix xi = sample_wigner(xi_params);
  const double decay = std::exp(-0.5 * t);
  const double mix = std::sqrt(1.0 - std::exp(-t));
  WignerMatrix out;
  out.entries = decay * w0.entries + mix * xi.entries;
  out.params = w0.params;
  return out;
}

namespace {

struct LineSolution {
  double B[5];   // second-moment mass per line
  double C[4];   // third-moment coefficients on the fixed angles
  double phi5;
};

// Solve the four real linear equations tying the C_j to the prescribed
// third moments (angles j pi/4, j = 1..4).
void solve_third_moment_system(cplx m03, cplx m12, double* c_out) {
  const double s = std::sqrt(0.5);
  Eigen::Matrix4d mat;
  //            C1   C2   C3   C4
  mat << -s, 0.0, s, -1.0,   // Re m03
         s, -1.0, s, 0.0,    // Im m03
         s, 0.0, -s, -1.0,   // Re m12
         s, 1.0, s, 0.0;     // Im m12
  Eigen::Vector4d rhs(m03.real(), m03.imag(), m12.real(), m12.imag());
  Eigen::FullPivLU<Eigen::Matrix4d> lu(mat);
  if (!lu.isInvertible())
    throw std::runtime_error("match_moments: third-moment system unexpectedly singular");
  Eigen::Vector4d c = lu.solve(rhs);
  for (int j = 0; j < 4; ++j) c_out[j] = c(j);
}

AtomicDistribution real_axis_law(cplx m02, cplx m03, cplx m12) {
  // |m02| = 1 forces the law onto the rotated real axis, which is
  // consistent only if the third moments already agree there.
  const double theta = 0.5 * std::arg(m02);
  const cplx mu3 = m03 * std::polar(1.0, -3.0 * theta);
  const cplx mu12 = m12 * std::polar(1.0, -theta);
  if (std::abs(mu3 - mu12) > 1e-8 * std::max(1.0, std::abs(mu3)) ||
      std::abs(mu3.imag()) > 1e-8 * std::max(1.0, std::abs(mu3)))
    throw std::invalid_argument(
        "match_moments: |m02| = 1 requires third moments consistent with a line-supported law");
  const double mu = mu3.real();
  const double disc = std::sqrt(mu * mu + 4.0);
  const double a = 0.5 * (mu + disc);
  const double b = 0.5 * (mu - disc);
  AtomicDistribution law;
  const cplx rot = std::polar(1.0, theta);
  law.points = {rot * a, rot * b};
  law.weights = {-b / (a - b), a / (a - b)};
  return law;
}

} // namespace

AtomicDistribution match_moments(cplx m02, cplx m03, cplx m12) {
  const double r02 = std::abs(m02);
  if (r02 > 1.0 + 1e-12) throw std::invalid_argument("match_moments: need |m02| <= 1");
  if (r02 >= 1.0 - 1e-9) return real_axis_law(m02, m03, m12);

  double c_coeff[4];
  solve_third_moment_system(m03, m12, c_coeff);

  // Candidate free angles; alignment with arg(m02) keeps the remaining
  // mass budget largest, the grid values are fallbacks.
  std::vector<double> phi5_candidates;
  if (r02 > 1e-14) phi5_candidates.push_back(0.5 * std::arg(m02));
  for (int j = 0; j < 8; ++j) phi5_candidates.push_back((2 * j + 1) * kPi / 16.0);

  for (double phi5 : phi5_candidates) {
    const cplx e2 = std::polar(1.0, 2.0 * phi5);
    // Put B5 on the free line until the residual u + i v fits the
    // nonnegative balance on the four fixed lines.
    const double cs = std::abs(std::cos(std::arg(m02) - 0.0));
    (void)cs;
    double b5 = 0.0;
    const double r_min = std::min(0.02, 0.5 * (1.0 - r02));
    // Find the smallest b5 in [0, r02] with remainder >= r_min by a
    // short bisection on the monotone remainder function.
    auto remainder = [&](double b) {
      const cplx uv = m02 - b * e2;
      return 1.0 - b - (std::abs(uv.real()) + std::abs(uv.imag()));
    };
    if (remainder(0.0) < r_min) {
      double lo = 0.0, hi = r02;
      if (remainder(hi) < r_min) continue; // misaligned candidate angle
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (remainder(mid) < r_min) lo = mid; else hi = mid;
      }
      b5 = hi;
    }
    const cplx uv = m02 - b5 * e2;
    const double u = uv.real(), v = uv.imag();
    const double rem = remainder(b5);
    if (rem < 0.0) continue;
    const double pad = rem / 4.0;

    LineSolution sol{};
    sol.phi5 = phi5;
    sol.B[0] = std::max(v, 0.0) + pad;  // phi = pi/4 controls +Im
    sol.B[1] = std::max(-u, 0.0) + pad; // phi = pi/2 controls -Re
    sol.B[2] = std::max(-v, 0.0) + pad; // phi = 3pi/4 controls -Im
    sol.B[3] = std::max(u, 0.0) + pad;  // phi = pi controls +Re
    sol.B[4] = b5;
    for (int j = 0; j < 4; ++j) sol.C[j] = c_coeff[j];

    bool feasible = true;
    for (int j = 0; j < 4; ++j)
      if (sol.B[j] <= 0.0 && std::abs(sol.C[j]) > 0.0) feasible = false;
    if (!feasible) continue;

    // Radii: per line j, r - rhat = C_j / B_j is pinned, r + rhat is free;
    // grow the free part until total atom weight leaves mass at the origin.
    double d[5] = {0, 0, 0, 0, 0};
    double sline[5];
    const double angles[5] = {kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi, phi5};
    for (int j = 0; j < 4; ++j) d[j] = sol.B[j] > 0.0 ? sol.C[j] / sol.B[j] : 0.0;
    for (int j = 0; j < 5; ++j) sline[j] = 2.0 + 2.0 * std::abs(d[j]);
    for (int guard = 0; guard < 200; ++guard) {
      double w_tot = 0.0;
      for (int j = 0; j < 5; ++j)
        if (sol.B[j] > 0.0)
          w_tot += 4.0 * sol.B[j] / (sline[j] * sline[j] - d[j] * d[j]);
      if (w_tot <= 0.9) break;
      const double lam = std::sqrt(w_tot / 0.9) * 1.01;
      for (int j = 0; j < 5; ++j) sline[j] *= lam;
    }

    AtomicDistribution law;
    double used = 0.0;
    for (int j = 0; j < 5; ++j) {
      if (sol.B[j] <= 0.0) continue;
      const double rj = 0.5 * (sline[j] + d[j]);
      const double rhj = 0.5 * (sline[j] - d[j]);
      const double aj = sol.B[j] / sline[j];
      const cplx dir = std::polar(1.0, angles[j]);
      law.points.push_back(rj * dir);
      law.weights.push_back(aj / rj);
      law.points.push_back(-rhj * dir);
      law.weights.push_back(aj / rhj);
      used += aj / rj + aj / rhj;
    }
    law.points.push_back(0.0);
    law.weights.push_back(1.0 - used);

    // Merge exact duplicates (the free line can land on a fixed one).
    AtomicDistribution merged;
    for (std::size_t i = 0; i < law.points.size(); ++i) {
      bool found = false;
      for (std::size_t t = 0; t < merged.points.size(); ++t) {
        if (merged.points[t] == law.points[i]) {
          merged.weights[t] += law.weights[i];
          found = true;
          break;
        }
      }
      if (!found) {
        merged.points.push_back(law.points[i]);
        merged.weights.push_back(law.weights[i]);
      }
    }
    validate_atoms(merged);
    return merged;
  }
  throw std::runtime_error("match_moments: no feasible angle found");
}

AtomicDistribution gaussian_division(cplx m02, cplx m03, cplx m12, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("gaussian_division: need 0 < gamma < 1");
  if (std::abs(m02) > 1.0 + 1e-12)
    throw std::invalid_argument("gaussian_division: need |m02| <= 1");
  const double scale3 = std::pow(1.0 - gamma, 1.5);
  return match_moments(m02, m03 / scale3, m12 / scale3);
}

} // namespace wigchain

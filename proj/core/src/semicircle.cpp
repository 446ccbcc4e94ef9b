#include "wigchain/semicircle.hpp"

#include <cmath>
#include <stdexcept>

namespace wigchain {

cplx msc(cplx z) {
  if (z.imag() == 0.0) throw std::domain_error("msc: spectral parameter must be off the real axis");
  cplx s = std::sqrt(z * z - 4.0);
  // Pick the sign maximizing |z + s|; since the two roots multiply to 1,
  // this yields the root with |m| <= 1 without cancellation.
  if (std::norm(z + s) < std::norm(z - s)) s = -s;
  cplx m = -2.0 / (z + s);
  return m;
}

double semicircle_density(double x) {
  const double t = 4.0 - x * x;
  return t > 0.0 ? std::sqrt(t) / (2.0 * kPi) : 0.0;
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * kPi) + std::asin(0.5 * x) / kPi;
}

SpectralPoint SpectralPoint::from(cplx z) {
  SpectralPoint p;
  p.z = z;
  p.eta = std::abs(z.imag());
  p.m = msc(z);
  p.rho = std::abs(p.m.imag()) / kPi;
  return p;
}

IndexedSpectralSet IndexedSpectralSet::from(const std::vector<cplx>& zs, std::uint32_t imag_mask) {
  IndexedSpectralSet s;
  s.points.reserve(zs.size());
  for (cplx z : zs) s.points.push_back(SpectralPoint::from(z));
  s.imag_mask = imag_mask;
  return s;
}

cplx divided_difference(const IndexedSpectralSet& set, const QuadratureOptions& opts) {
  const std::size_t k = set.points.size();
  if (k == 0) throw std::invalid_argument("divided_difference: empty point set");
  if (set.imag_mask >> k)
    throw std::invalid_argument("divided_difference: imag flag outside the point set");
  for (const auto& p : set.points)
    if (p.eta == 0.0) throw std::domain_error("divided_difference: point on the real axis");

  auto kernel = [&](double x) -> cplx {
    cplx prod = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const cplx z = set.points[i].z;
      if (set.imag_mask & (1u << i)) {
        // Im (x - z)^{-1} = Im z / |x - z|^2
        prod *= z.imag() / std::norm(x - z);
      } else {
        prod *= 1.0 / (x - z);
      }
    }
    return prod;
  };
  return integrate_semicircle(kernel, opts);
}

cplx divided_difference_recursive(const std::vector<cplx>& zs) {
  if (zs.empty()) throw std::invalid_argument("divided_difference_recursive: empty point set");
  if (zs.size() == 1) return msc(zs[0]);
  std::vector<cplx> head(zs.begin(), zs.end() - 1);
  std::vector<cplx> tail(zs.begin() + 1, zs.end());
  const cplx dz = zs.front() - zs.back();
  if (dz == 0.0) throw std::domain_error("divided_difference_recursive: coincident endpoints");
  return (divided_difference_recursive(head) - divided_difference_recursive(tail)) / dz;
}

double quantile(int i, int N) {
  if (N < 1 || i < 1 || i > N) throw std::invalid_argument("quantile: need 1 <= i <= N");
  if (i == N) return 2.0;
  const double target = static_cast<double>(i) / N;
  double lo = -2.0, hi = 2.0;
  double x = 2.0 * (2.0 * target - 1.0); // linear seed
  for (int it = 0; it < 200; ++it) {
    const double fx = semicircle_cdf(x) - target;
    if (fx > 0.0) hi = x; else lo = x;
    const double d = semicircle_density(x);
    double step = d > 1e-12 ? fx / d : 0.0;
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi); // bisection fallback
    if (std::abs(xn - x) < 1e-15) { x = xn; break; }
    x = xn;
  }
  return x;
}

double eta_of_E(double E, double epsilon, int N) {
  if (!(E >= -2.0 && E <= 2.0)) throw std::invalid_argument("eta_of_E: E outside [-2, 2]");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("eta_of_E: epsilon outside (0, 1)");
  if (N < 2) throw std::invalid_argument("eta_of_E: N < 2");

  const double target = std::pow(static_cast<double>(N), epsilon);
  auto f = [&](double eta) {
    const cplx m = msc(cplx(E, eta));
    return N * eta * std::abs(m.imag()) / kPi - target;
  };
  double lo = 1e-8, hi = 10.0;
  if (f(hi) < 0.0)
    throw std::domain_error("eta_of_E: no solution below eta = 10 for these inputs");
  if (f(lo) > 0.0) return lo;
  // f is increasing in eta, so plain bisection converges monotonically.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) lo = mid; else hi = mid;
    if ((hi - lo) <= 1e-10 * hi) break;
  }
  return 0.5 * (lo + hi);
}

} // namespace wigchain

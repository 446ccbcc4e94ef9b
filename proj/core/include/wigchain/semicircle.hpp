#pragma once

#include <cstdint>
#include <vector>

#include "wigchain/quadrature.hpp"
#include "wigchain/types.hpp"

namespace wigchain {

// Scalar analytic layer for the semicircle law.
//
//   rho_sc(x) = sqrt(4 - x^2) / (2 pi)  on [-2, 2]
//   m_sc(z)   = int rho_sc(x) / (x - z) dx,   m^2 + z m + 1 = 0
//
// The branch of the quadratic root is fixed by Im m * Im z > 0, which
// selects |m| <= 1 and m ~ -1/z at infinity.

// Stieltjes transform of the semicircle law.  Rejects real z.
cplx msc(cplx z);

// Semicircle density at real x (0 outside [-2, 2]).
double semicircle_density(double x);

// Closed-form CDF: F(x) = 1/2 + x sqrt(4 - x^2)/(4 pi) + asin(x/2)/pi.
double semicircle_cdf(double x);

// Spectral parameter with its cached derived quantities.
struct SpectralPoint {
  cplx z;
  double eta;  // |Im z|
  cplx m;      // m_sc(z)
  double rho;  // |Im m| / pi

  static SpectralPoint from(cplx z);
};

// An ordered set of spectral points together with the subset of indices
// whose kernel is taken as an imaginary part.  Index i (0-based) is
// Im-decorated when bit i of imag_mask is set.
struct IndexedSpectralSet {
  std::vector<SpectralPoint> points;
  std::uint32_t imag_mask = 0;

  static IndexedSpectralSet from(const std::vector<cplx>& zs, std::uint32_t imag_mask = 0);
};

// Iterated divided difference
//
//   m^(J)[S] = int rho_sc(x) prod_{i in J} Im (x - z_i)^{-1}
//                            prod_{i not in J} (x - z_i)^{-1} dx
//
// evaluated by adaptive quadrature after the x = 2 cos(theta)
// substitution.  Symmetric in the (point, flag) pairs; coincident
// points are fine since the kernels stay bounded off the real axis.
cplx divided_difference(const IndexedSpectralSet& set, const QuadratureOptions& opts = {});

// Recursive two-term form m[z_1..z_k] = (m[z_1..z_{k-1}] - m[z_2..z_k]) / (z_1 - z_k),
// usable only for plain kernels and pairwise separated points.  Kept as
// an independent cross-check of the quadrature path.
cplx divided_difference_recursive(const std::vector<cplx>& zs);

// i-th N-quantile gamma_i of the semicircle law: F(gamma_i) = i/N.
// Strictly increasing in i; gamma_N = 2.
double quantile(int i, int N);

// Solves N * eta * rho(E + i eta) = N^epsilon for eta by bisection on
// [1e-8, 10].  Throws if no solution exists below the cap.
double eta_of_E(double E, double epsilon, int N);

} // namespace wigchain

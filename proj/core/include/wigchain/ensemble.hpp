#pragma once

#include <string>
#include <vector>

#include "wigchain/rng.hpp"
#include "wigchain/types.hpp"

namespace wigchain {

// Finitely supported complex law.  Weights are nonnegative up to
// rounding and sum to one; at most eleven atoms.
struct AtomicDistribution {
  std::vector<cplx> points;
  std::vector<double> weights;

  // m_{i,j} = E[ conj(Z)^i Z^j ]
  cplx moment(int i, int j) const;
  cplx sample(Rng& rng) const;

  // One "re im weight" triple per line, 17 significant digits.
  std::string serialize() const;
  static AtomicDistribution deserialize(const std::string& text);
};

void validate_atoms(const AtomicDistribution& law);

enum class LawKind : std::uint8_t {
  Gaussian,
  Atomic,
  RademacherLike, // uniform on {1, -1, i, -i}; sigma = 0
};

// Entry laws of a Wigner ensemble: off-diagonals are centered with unit
// absolute second moment and E chi_od^2 = sigma, |sigma| < 1; the
// diagonal is real centered with second moment diag_second_moment.
struct EnsembleParams {
  int N = 0;
  cplx sigma = 0.0;
  double diag_second_moment = 1.0;
  LawKind offdiag_law = LawKind::Gaussian;
  AtomicDistribution offdiag_atoms; // used when offdiag_law == Atomic
  LawKind diag_law = LawKind::Gaussian;
  std::uint64_t seed = 0;

  static EnsembleParams gue(int N, std::uint64_t seed);
  static EnsembleParams gaussian(int N, cplx sigma, std::uint64_t seed);
  static EnsembleParams atomic(int N, const AtomicDistribution& offdiag, std::uint64_t seed);
};

void validate_params(const EnsembleParams& params);

// Hermitian sample with entries w_ab ~ N^{-1/2} chi; the conjugate
// symmetry is exact by construction (lower triangle mirrors the upper).
struct WignerMatrix {
  Matrix entries;
  EnsembleParams params;

  int dim() const { return static_cast<int>(entries.rows()); }
};

WignerMatrix sample_wigner(const EnsembleParams& params);

// Exact-in-law Ornstein-Uhlenbeck step
//
//   W_t  =(d)  e^{-t/2} W_0 + sqrt(1 - e^{-t}) Xi,
//
// with Xi an independent Gaussian Wigner matrix whose second moments
// follow the sigma rules: for real sigma, E Xi_ab^2 = sigma/N and
// E Xi_aa^2 = (1+sigma)/N; for non-real sigma, Xi is GUE-type
// (E Xi_ab^2 = 0).  The first two moments of W_t are preserved in the
// real-sigma case.  No time discretization error.
WignerMatrix ou_evolve(const WignerMatrix& w0, double t);

// Complex law Z on at most eleven points with
//   m01 = 0, m11 = 1, m02, m03, m12
// prescribed (|m02| <= 1).  Atoms sit at the origin and in +/- pairs on
// five lines through it; the third-moment conditions reduce to a 4x4
// real linear system on the fixed angles j pi/4.
AtomicDistribution match_moments(cplx m02, cplx m03, cplx m12);

// Law of Z' such that sqrt(1-gamma) Z' + sqrt(gamma) xi_G has the
// prescribed moments, with xi_G centered complex Gaussian, m11 = 1 and
// m02(xi_G) = m02.  Gaussian third moments vanish, so only the order-3
// targets rescale.
AtomicDistribution gaussian_division(cplx m02, cplx m03, cplx m12, double gamma);

} // namespace wigchain

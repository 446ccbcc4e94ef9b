#pragma once

#include <functional>

#include "wigchain/types.hpp"

namespace wigchain {

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
// iteration on the Legendre polynomial.
struct GaussLegendreRule {
  explicit GaussLegendreRule(int n);
  std::vector<double> nodes;
  std::vector<double> weights;
};

struct QuadratureOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-13;
  int max_depth = 48;
};

// Adaptive Gauss-Legendre on [a, b] for a complex integrand: each panel
// is accepted once the 15-point estimate and the sum of the two
// half-panel estimates agree within the panel's share of the budget.
cplx integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                        const QuadratureOptions& opts = {});

// Integral of f against the semicircle density rho_sc(x) over [-2, 2],
// through the substitution x = 2 cos(theta), which turns the measure
// into (2/pi) sin^2(theta) dtheta and removes the edge singularity.
cplx integrate_semicircle(const std::function<cplx(double)>& f,
                          const QuadratureOptions& opts = {});

} // namespace wigchain

#include "wigchain/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wigchain {

GaussLegendreRule::GaussLegendreRule(int n) {
  if (n < 2) throw std::invalid_argument("GaussLegendreRule: n < 2");
  nodes.resize(n);
  weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

namespace {

const GaussLegendreRule& rule15() {
  static const GaussLegendreRule r(15);
  return r;
}

cplx panel_estimate(const std::function<cplx(double)>& f, double a, double b) {
  const auto& r = rule15();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    acc += r.weights[i] * f(mid + half * r.nodes[i]);
  return acc * half;
}

struct AdaptiveCtx {
  const std::function<cplx(double)>* f;
  double total_len;
  double abs_tol;
  double rel_tol;
  double scale; // running magnitude estimate of the whole integral
  int max_depth;
};

cplx refine(const AdaptiveCtx& ctx, double a, double b, cplx whole, int depth) {
  const double mid = 0.5 * (a + b);
  const cplx left = panel_estimate(*ctx.f, a, mid);
  const cplx right = panel_estimate(*ctx.f, mid, b);
  const cplx sum = left + right;
  const double budget =
      std::max(ctx.abs_tol * (b - a) / ctx.total_len, ctx.rel_tol * ctx.scale);
  if (std::abs(sum - whole) <= budget || depth >= ctx.max_depth) return sum;
  return refine(ctx, a, mid, left, depth + 1) + refine(ctx, mid, b, right, depth + 1);
}

} // namespace

cplx integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                        const QuadratureOptions& opts) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive: empty interval");
  AdaptiveCtx ctx{&f, b - a, opts.abs_tol, opts.rel_tol, 0.0, opts.max_depth};
  // First pass on four panels to seed the magnitude estimate.
  cplx rough = 0.0;
  const double h = (b - a) / 4.0;
  cplx panels[4];
  for (int i = 0; i < 4; ++i) {
    panels[i] = panel_estimate(f, a + i * h, a + (i + 1) * h);
    rough += panels[i];
  }
  ctx.scale = std::abs(rough);
  cplx out = 0.0;
  for (int i = 0; i < 4; ++i)
    out += refine(ctx, a + i * h, a + (i + 1) * h, panels[i], 0);
  return out;
}

cplx integrate_semicircle(const std::function<cplx(double)>& f,
                          const QuadratureOptions& opts) {
  auto g = [&f](double theta) -> cplx {
    const double s = std::sin(theta);
    return (2.0 / kPi) * s * s * f(2.0 * std::cos(theta));
  };
  return integrate_adaptive(g, 0.0, kPi, opts);
}

} // namespace wigchain

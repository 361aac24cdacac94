#include "meancurv/numcore.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace meancurv {

namespace detail {

void throw_non_finite(double abscissa) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "non-finite integrand at x = " << abscissa;
  throw EvaluationError(msg.str(), abscissa);
}

}  // namespace detail

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre(int n, int panels) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (panels < 1) {
    throw std::invalid_argument("gauss_legendre: panels must be >= 1");
  }
  QuadratureRule rule;
  rule.panels = panels;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      auto [p, d] = legendre(n, x);
      dp = d;
      const double step = p / d;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

Vec3 central_gradient(const std::function<double(const Vec3&)>& f,
                      const Vec3& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("central_gradient: h must be > 0");
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 xp = x;
    Vec3 xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double fp = f(xp);
    const double fm = f(xm);
    if (!std::isfinite(fp)) detail::throw_non_finite(xp[i]);
    if (!std::isfinite(fm)) detail::throw_non_finite(xm[i]);
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace meancurv

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "meancurv/errors.hpp"

namespace meancurv {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Composite Gauss-Legendre rule on [-1, 1]. The nodes and weights describe
/// one panel; integration splits the target interval into `panels` equal
/// pieces and applies the rule on each.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int panels = 1;

  static constexpr int kDefaultNodes = 16;
  static constexpr int kDefaultPanels = 8;

  /// Nodes from Newton iteration on P_n, driven to a 1e-15 residual.
  static QuadratureRule gauss_legendre(int n, int panels = 1);
  static QuadratureRule default_rule() {
    return gauss_legendre(kDefaultNodes, kDefaultPanels);
  }

  int size() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

// Eigen expressions collapse to their plain matrix type.
template <typename T, typename = void>
struct plain {
  using type = std::decay_t<T>;
};
template <typename T>
struct plain<T, std::void_t<typename std::decay_t<T>::PlainObject>> {
  using type = typename std::decay_t<T>::PlainObject;
};
template <typename T>
using plain_t = typename plain<T>::type;

inline bool all_finite(double x) { return std::isfinite(x); }

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& x) {
  return x.allFinite();
}

template <typename T>
T zero_like(const T& sample) {
  if constexpr (std::is_arithmetic_v<T>) {
    return T(0);
  } else {
    T z = sample;
    z.setZero();
    return z;
  }
}

[[noreturn]] void throw_non_finite(double abscissa);

}  // namespace detail

/// Composite Gauss-Legendre estimate of the integral of f over [a, b].
/// Works for any value type closed under addition and scalar scaling
/// (double, Eigen vectors).
template <typename F>
auto integrate_interval(F&& f, double a, double b, const QuadratureRule& rule)
    -> detail::plain_t<std::invoke_result_t<F&, double>> {
  using Value = detail::plain_t<std::invoke_result_t<F&, double>>;
  if (!(a < b)) {
    throw std::invalid_argument("integrate_interval: requires a < b");
  }
  const double h = (b - a) / rule.panels;
  Value total{};
  bool first = true;
  for (int p = 0; p < rule.panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (int k = 0; k < rule.size(); ++k) {
      const double x = mid + 0.5 * h * rule.nodes[k];
      Value fx = f(x);
      if (!detail::all_finite(fx)) detail::throw_non_finite(x);
      if (first) {
        total = detail::zero_like(fx);
        first = false;
      }
      total += (0.5 * h * rule.weights[k]) * fx;
    }
  }
  return total;
}

/// Tensor-product composite rule over u x v.
template <typename F>
auto integrate_rect(F&& f, Interval u, Interval v, const QuadratureRule& rule)
    -> detail::plain_t<std::invoke_result_t<F&, double, double>> {
  if (!(u.lo < u.hi) || !(v.lo < v.hi)) {
    throw std::invalid_argument("integrate_rect: empty interval");
  }
  return integrate_interval(
      [&](double x) {
        return integrate_interval([&](double y) { return f(x, y); }, v.lo,
                                  v.hi, rule);
      },
      u.lo, u.hi, rule);
}

/// Component-wise central difference (f(x + h e) - f(x - h e)) / 2h.
Vec3 central_gradient(const std::function<double(const Vec3&)>& f,
                      const Vec3& x, double h);

/// Relative difference |a - b| / max(|a|, |b|, floor).
inline double relative_error(const Vec3& a, const Vec3& b,
                             double floor = 1e-30) {
  return (a - b).norm() / std::max({a.norm(), b.norm(), floor});
}

}  // namespace meancurv

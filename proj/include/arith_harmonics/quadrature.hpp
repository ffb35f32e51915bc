#pragma once

// Double-exponential quadrature: tanh-sinh on finite intervals and exp-sinh
// on [0, inf). Integrands on finite intervals receive the node together with
// its exact distances to both endpoints, so functions that are singular at an
// endpoint can be evaluated without cancellation.

#include <cmath>
#include <cstddef>
#include <limits>

#include "arith_harmonics/types.hpp"

namespace ah {

struct QuadratureInfo {
  unsigned levels = 0;
  std::size_t evaluations = 0;
  double error_estimate = 0.0;
  bool converged = false;
};

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(Complex v) { return std::abs(v); }
}  // namespace detail

/// Integral of f over [a, b]; f(x, x - a, b - x) with the two distances
/// computed without rounding against the endpoints. Nodes that would
/// coincide with an endpoint in floating point are skipped.
template <class T, class F>
T tanh_sinh(F&& f, double a, double b, double tol = 1e-12, unsigned max_level = 9, QuadratureInfo* info = nullptr) {
  if (!(b > a)) throw InvalidArgument("tanh_sinh: requires a < b");
  const double hw = (b - a) / 2.0;
  const double t_max = 4.5;
  const double floor_dist = 4.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(a), std::abs(b), 1e-300});
  std::size_t evals = 0;

  auto node_pair = [&](double t) -> T {
    const double u = kPi / 2.0 * std::sinh(t);
    const double e2u = std::exp(2.0 * u);
    const double delta = 2.0 / (1.0 + e2u);  // 1 - tanh(u)
    const double ch = std::cosh(u);
    const double w = kPi / 2.0 * std::cosh(t) / (ch * ch);
    const double d = hw * delta;
    const double rest = hw * (2.0 - delta);
    T acc(0.0);
    if (d > floor_dist && std::isfinite(w) && w > 0.0) {
      acc += w * f(a + d, d, rest);
      acc += w * f(b - d, rest, d);
      evals += 2;
    }
    return acc;
  };

  T sum = T(kPi / 2.0) * f(a + hw, hw, hw);
  ++evals;
  double h = 1.0;
  for (double t = h; t <= t_max; t += h) sum += node_pair(t);
  T estimate = hw * h * sum;
  double err = std::numeric_limits<double>::infinity();
  unsigned level = 0;
  for (level = 1; level <= max_level; ++level) {
    h /= 2.0;
    for (double t = h; t <= t_max; t += 2.0 * h) sum += node_pair(t);
    const T next = hw * h * sum;
    err = detail::magnitude(next - estimate);
    estimate = next;
    if (level >= 3 && err <= tol * std::max(1.0, detail::magnitude(estimate))) break;
  }
  if (info) {
    info->levels = std::min(level, max_level);
    info->evaluations = evals;
    info->error_estimate = err;
    info->converged = err <= tol * std::max(1.0, detail::magnitude(estimate));
  }
  return estimate;
}

/// Convenience overload for integrands that only need x.
template <class T, class F>
T tanh_sinh_plain(F&& f, double a, double b, double tol = 1e-12, unsigned max_level = 9,
                  QuadratureInfo* info = nullptr) {
  return tanh_sinh<T>([&](double x, double, double) { return f(x); }, a, b, tol, max_level, info);
}

/// Integral of f over [0, inf) by the exp-sinh substitution x = exp(pi/2 sinh t).
template <class T, class F>
T exp_sinh(F&& f, double tol = 1e-12, unsigned max_level = 9, QuadratureInfo* info = nullptr) {
  const double t_lo = -5.0;
  const double t_hi = 4.0;
  std::size_t evals = 0;
  auto node = [&](double t) -> T {
    const double u = kPi / 2.0 * std::sinh(t);
    const double x = std::exp(u);
    if (!(x > 0.0) || !std::isfinite(x)) return T(0.0);
    const double w = kPi / 2.0 * std::cosh(t) * x;
    ++evals;
    const T v = f(x);
    return detail::magnitude(v) == 0.0 ? T(0.0) : T(w * v);
  };
  double h = 0.5;
  T sum(0.0);
  for (double t = t_lo; t <= t_hi + 1e-12; t += h) sum += node(t);
  T estimate = h * sum;
  double err = std::numeric_limits<double>::infinity();
  unsigned level = 0;
  for (level = 1; level <= max_level; ++level) {
    h /= 2.0;
    for (double t = t_lo + h; t <= t_hi; t += 2.0 * h) sum += node(t);
    const T next = h * sum;
    err = detail::magnitude(next - estimate);
    estimate = next;
    if (level >= 3 && err <= tol * std::max(1.0, detail::magnitude(estimate))) break;
  }
  if (info) {
    info->levels = std::min(level, max_level);
    info->evaluations = evals;
    info->error_estimate = err;
    info->converged = err <= tol * std::max(1.0, detail::magnitude(estimate));
  }
  return estimate;
}

}  // namespace ah

#pragma once

// The cosine sum F(x) = sum_j (cos(x/j) - 1), its zeta Taylor expansion and
// large-x behaviour, the CHP transform, and the Mellin semigroup T_s.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "arith_harmonics/report.hpp"
#include "arith_harmonics/series.hpp"
#include "arith_harmonics/types.hpp"

namespace ah {

/// F(x) = sum_{j >= 1} (cos(x/j) - 1). The first J = max(10|x|, 100) terms
/// are summed directly; the rest through the Taylor series in x/j with
/// shifted Hurwitz zeta values.
double cos_sum(double x, double tol = 1e-13);

struct TaylorEval {
  double value = 0.0;
  double tail_bound = 0.0;
  unsigned terms = 0;
};

/// sum_{k >= 1} (-1)^k zeta(2k) x^{2k} / (2k)!, truncated once the
/// factorial tail bound drops below tol.
TaylorEval flett_taylor(double x, double tol = 1e-14);
IdentityReport flett_report(double x, double tol = 1e-9);

/// Sum_n f(z / n^s) for f(w) = sum_{k >= 2} a_k w^k against
/// sum_k a_k zeta(k s) z^k. coeffs[k] = a_k; a_0 = a_1 = 0 required.
/// Re s > 1/2 required.
IdentityReport chp_transform(std::span<const Complex> coeffs, ComplexParam s, Complex z, double tol = 1e-8);

struct AsymptoticFit {
  std::vector<double> x_grid;
  std::vector<double> values;
  double linear_coeff = 0.0;
  double remainder_exponent = 0.0;
  double exponent_ci_low = 0.0;
  double exponent_ci_high = 0.0;
  double fit_residual = 0.0;
};

/// F on a geometric grid over [x_max/100, x_max]. The linear coefficient is
/// the least-squares slope of F against x over the top decade; the remainder
/// exponent is the least-absolute-deviation slope of log|F - c x| against
/// log x, with a 95% bootstrap interval.
AsymptoticFit linear_term_and_remainder(double x_max, std::size_t n_points, std::uint64_t seed = 20261019);

/// Least-absolute-deviation line y = a + b x; returns (a, b).
std::pair<double, double> lad_fit(std::span<const double> x, std::span<const double> y);

/// a_n -> a_n n^{-s}.
TruncatedSeries<Complex> t_semigroup_coeff(const TruncatedSeries<Complex>& f, ComplexParam s);
TruncatedSeries<Rational> t_semigroup_coeff(const TruncatedSeries<Rational>& f, long s);

/// (1/Gamma(s)) int_0^inf f(e^{-t} z) t^{s-1} dt by exp-sinh quadrature.
/// f must vanish at 0; Re s > 0.
Complex t_semigroup_quadrature(const std::function<Complex(Complex)>& f, ComplexParam s, Complex z,
                               double tol = 1e-12);
Complex t_semigroup_quadrature(const TruncatedSeries<Complex>& f, ComplexParam s, Complex z, double tol = 1e-12);

/// Quadrature against coefficient route for the polynomial f at z.
IdentityReport t_semigroup_report(const TruncatedSeries<Complex>& f, ComplexParam s, Complex z, double tol = 1e-8);

}  // namespace ah

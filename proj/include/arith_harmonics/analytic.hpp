#pragma once

// Floating-point evaluation of the special functions and of the three power
// series L_s, M_s, C_{s,l} (plus N_s and the Estermann function).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "arith_harmonics/types.hpp"

namespace ah {

// ---- special functions ----

/// Riemann zeta via the alternating eta series with Cohen-Villegas-Zagier
/// acceleration. Relative error <= 1e-12 for Re s >= 0.6, |Im s| <= 50.
/// Uses the functional equation for Re s < 0. Throws PoleError at s = 1.
Complex zeta(ComplexParam s);
double zeta(double s);

/// Gamma via the Lanczos approximation (g = 7) with reflection for
/// Re s < 1/2. Throws PoleError at non-positive integers.
Complex gamma_fn(ComplexParam s);
Complex log_gamma(ComplexParam s);

/// Hurwitz zeta(s, x) for 0 < x <= 1 by Euler-Maclaurin (shift >= 15,
/// 15 Bernoulli correction terms, extended-precision accumulation).
Complex hurwitz_zeta(ComplexParam s, double x);
/// sum_{j >= 0} (a + j)^{-s} for any a > 0, same method.
Complex hurwitz_zeta_shifted(ComplexParam s, double a);

/// Bernoulli number B_n as a double (exact rational table underneath).
double bernoulli_number(unsigned n);
Rational bernoulli_number_exact(unsigned n);
/// B_n(x) = sum_k binom(n, k) B_k x^{n-k}.
double bernoulli_poly(unsigned n, double x);

/// {t} = t - floor(t) - 1/2, and 0 at integers.
double sawtooth(double t);
/// log|2 sin(pi x)|; DomainError at integers.
double log_two_sin(double x);
/// Takagi function sum_{n < n_terms} dist(2^n x, Z) / 2^n.
double takagi(double x, unsigned n_terms);

// ---- series evaluation ----

struct SeriesEvalResult {
  Complex value;
  std::size_t terms_used = 0;
  double tail_estimate = 0.0;
  bool converged = false;
  /// True when tail_estimate is a proven bound, false for the empirical
  /// block-sum heuristic used on the boundary |z| = 1.
  bool rigorous = false;
};

enum class SummationMode { direct, abel };

/// L_s(z) = sum z^k / k^s for |z| <= 1. On |z| = 1 requires Re s > 1 unless
/// mode is abel. Sums until the rigorous tail bound is below tol or
/// max_terms is reached.
SeriesEvalResult polylog(ComplexParam s, Complex z, double tol = 1e-12,
                         SummationMode mode = SummationMode::direct, std::size_t max_terms = 10'000'000);

/// M_s(z) = sum mu(k) z^k / k^s, partial sum of n_terms terms. Tail is a
/// geometric bound inside the disk and a dyadic block-sum heuristic on it.
SeriesEvalResult mobius_series(ComplexParam s, Complex z, std::size_t n_terms,
                               SummationMode mode = SummationMode::direct, double tol = 1e-8);
/// N_s(z) = sum lambda(k) z^k / k^s; same contract as mobius_series.
SeriesEvalResult liouville_series(ComplexParam s, Complex z, std::size_t n_terms,
                                  SummationMode mode = SummationMode::direct, double tol = 1e-8);

/// Partial sum sum_{k <= values.size()} values[k-1] z^k / k^s with the same
/// tail conventions; coefficient_bound bounds |values[k-1]| (used for the
/// geometric tail).
SeriesEvalResult arithmetic_series(std::span<const std::int64_t> values, ComplexParam s, Complex z,
                                   double coefficient_bound, double tol = 1e-8);

/// C_{s,l}(z) = sum c_k(l) z^k / k^s computed directly and through
/// sum_{d|l} d^{1-s} M_s(z^d). Returns the second route. Throws
/// InternalConsistencyError when the routes differ by more than ten times
/// their combined tails.
struct RamanujanSeriesResult {
  SeriesEvalResult identity_route;
  SeriesEvalResult direct_route;
};
RamanujanSeriesResult ramanujan_series_routes(ComplexParam s, std::uint64_t l, Complex z, std::size_t n_terms);
SeriesEvalResult ramanujan_series(ComplexParam s, std::uint64_t l, Complex z, std::size_t n_terms);

/// E(s, a, z) = sum sigma_a(n) z^n / n^s, cross-checked against
/// sum_p p^{a-s} L_s(z^p) truncated at the same order.
struct EstermannResult {
  SeriesEvalResult direct_route;
  Complex riesz_route;
};
EstermannResult estermann_routes(ComplexParam s, ComplexParam a, Complex z, std::size_t n_terms);
SeriesEvalResult estermann(ComplexParam s, ComplexParam a, Complex z, std::size_t n_terms);

/// Values of sum_k a_k w^k at all k-th roots of unity w = e(h/k), h = 1..k,
/// by grouping indices into residue classes mod k (an exact rearrangement
/// of the finite sum).
std::vector<Complex> evaluate_at_roots(std::span<const Complex> coeffs, std::uint64_t k);

/// Richardson-extrapolated radial limit lim_{r -> 1} f(r) over the radii
/// r_j = 1 - 2^{-j}, j = first_level .. first_level + depth.
Complex abel_limit(const std::function<Complex(double)>& f, unsigned first_level = 8, unsigned depth = 4);

// ---- Perron-Frobenius operator of x -> p x mod 1 ----

/// Samples of a function on the midpoint grid x_i = (i + 1/2) / R.
struct GridFunction {
  std::vector<double> values;
  std::size_t resolution() const noexcept { return values.size(); }
  double point(std::size_t i) const { return (static_cast<double>(i) + 0.5) / static_cast<double>(values.size()); }
  static GridFunction sample(std::size_t resolution, const std::function<double(double)>& f);
};

/// (P u)(x) = (1/p) sum_{j<p} u((x + j)/p). Maps a resolution-R grid to the
/// resolution-R/p grid without interpolation; requires p | R.
GridFunction perron_frobenius(const GridFunction& u, unsigned p);

// ---- Lerch / Jonquiere decomposition of L_s on the circle ----

/// A_s = i (2pi)^s e^{-i pi s/2} / (2 Gamma(s) sin(pi s)) and
/// B_s = -i (2pi)^s e^{i pi s/2} / (2 Gamma(s) sin(pi s)).
std::pair<Complex, Complex> lerch_coefficients(ComplexParam s);
/// L_s(e^{2 pi i x}) by Abel summation (radial Richardson extrapolation).
Complex boundary_polylog_abel(ComplexParam s, double x);
/// |L_s(e^{2 pi i x}) - A_s zeta(1-s, x) - B_s zeta(1-s, 1-x)| for
/// 0 < Re s < 1 and 0 < x < 1.
double lerch_decomposition_check(ComplexParam s, double x);

}  // namespace ah

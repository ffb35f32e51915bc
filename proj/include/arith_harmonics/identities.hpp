#pragma once

// Executable checks of the arithmetic identities: Franel integrals,
// Ramanujan's formulas, Delange / Lucht expansions, subseries lemmas,
// sums over roots of unity, Liouville identities and correlation scans.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "arith_harmonics/analytic.hpp"
#include "arith_harmonics/arith.hpp"
#include "arith_harmonics/report.hpp"
#include "arith_harmonics/series.hpp"
#include "arith_harmonics/types.hpp"

namespace ah {

// ---- Franel integrals ----

/// Exact value of int_0^1 {r t}{s t} dt by piecewise quadratic integration
/// over the merged breakpoints k/r, k/s.
Rational franel_sawtooth(std::uint64_t r, std::uint64_t s);
/// gcd(r, s)^2 / (12 r s).
Rational franel_closed_form(std::uint64_t r, std::uint64_t s);
IdentityReport franel_sawtooth_report(std::uint64_t r, std::uint64_t s);

/// sum_{m,n} gcd(m,n)^2 c_m c_n / (m n) and 12 int_0^1 (sum_p c_p {p t})^2 dt,
/// both exact; c[p-1] is the weight of {p t}.
std::pair<Rational, Rational> franel_quadratic_form(std::span<const Rational> c);

/// int_0^1 log|2 sin(pi r t)| log|2 sin(pi s t)| dt by tanh-sinh on the
/// pieces between singularities, against (pi^2/12) gcd^2/(r s).
/// quad_points caps the total number of integrand evaluations.
IdentityReport franel_logsin(std::uint64_t r, std::uint64_t s, std::size_t quad_points = 200'000, double tol = 1e-6);

/// int_0^1 zeta(1-s, {a x}) zeta(1-s, {b x}) dx against
/// 2 Gamma(s)^2 zeta(2s) / (2 pi)^{2s} (gcd / lcm)^s. Requires Re s > 1/2.
IdentityReport mikolas_integral(std::uint64_t a, std::uint64_t b, ComplexParam s, std::size_t quad_points = 200'000,
                                double tol = 1e-4);

// ---- Ramanujan sums ----

/// sum_m c_k(m) / m^s summed period by period, against
/// zeta(s) sum_{d|k} d^{1-s} mu(k/d); at s = 1 against -Lambda(k) with a
/// heuristic verdict. n_periods full periods of length k are summed.
IdentityReport ramanujan_point_formula(std::uint64_t k, ComplexParam s, std::size_t n_periods = 1'000'000,
                                       double tol = -1.0);

/// sum_{k <= n_terms} c_k(m) / k^s against sigma_{1-s}(m) / zeta(s); at s = 1
/// the right side is 0 and the verdict heuristic.
IdentityReport ramanujan_dual_formula(std::uint64_t m, ComplexParam s, std::size_t n_terms = 1'000'000,
                                      double tol = -1.0);

// ---- Delange and Lucht ----

using ArithFunction = std::function<Complex(std::uint64_t)>;

struct DelangeResult {
  std::vector<Complex> fhat;           // fhat[q-1], q = 1..q_max
  std::vector<Complex> reconstructed;  // sum_q fhat(q) c_q(n), n = 1..n_check
  std::vector<Complex> direct;         // (g * 1)(n)
  double max_error = 0.0;
  /// Partial sums of sum 2^omega(n) |g(n)| / n at N/2 and N.
  double condition_half = 0.0;
  double condition_full = 0.0;
  bool condition_stable = false;
  IdentityReport report;
};

/// fhat(q) = sum_{m <= m_max} g(q m) / (q m); reconstructs f = g * 1 on
/// n = 1..n_check from sum_{q <= q_max} fhat(q) c_q(n).
DelangeResult delange_expand(const ArithFunction& g, std::size_t q_max, std::size_t m_max, std::size_t n_check = 20,
                             double tol = 1e-4);

/// gamma(k) = k sum_{n <= N} mu(n) g(k n).
Complex lucht_transform(const ArithFunction& g, std::uint64_t k, std::size_t N);

/// For g(n) = z^n / n^s: sum_{d|l} gamma(d) against the direct partial sum
/// of C_{s,l}(z).
IdentityReport lucht_check(Complex z, ComplexParam s, std::uint64_t l, std::size_t N = 100'000, double tol = 1e-8);

// ---- subseries lemmas ----

/// Phi_s(q) = q^s prod_{p|q} (1 - p^{-s}).
Complex jordan_phi_s(std::uint64_t q, ComplexParam s);

/// sum_{n <= N} mu(q n) / n^s against mu(q) q^s / (Phi_s(q) zeta(s)).
IdentityReport mu_subseries(std::uint64_t q, ComplexParam s, std::size_t n_terms = 1'000'000, double tol = 1e-6);

/// sum_{m <= N, (m,n)=1} |mu(m)| / m^s against n^s zeta(s) / (psi_n(s) zeta(2s)),
/// psi_n(s) = sum_{d|n} d^s |mu(n/d)|.
IdentityReport musq_coprime_series(std::uint64_t n, ComplexParam s, std::size_t n_terms = 4'000'000,
                                   double tol = 1e-6);

// ---- roots of unity ----

enum class SignKind { mu, liouville };

/// sum_{h=1}^{k} of the truncated M_s (or N_s) at e^{2 pi i h/k}, computed
/// from the values at the roots, against the closed form
/// mu(k) k^{1-s} / (prod_{p|k}(1 - p^{-s}) zeta(s)) (resp.
/// lambda(k) k^{1-s} zeta(2s) / zeta(s)). At s = 1 the right side is 0 and
/// the verdict heuristic.
IdentityReport besicovitch_sum(std::uint64_t k, ComplexParam s, std::size_t n_terms = 1'000'000,
                               SignKind kind = SignKind::mu, double tol = -1.0);

/// sum (-1)^{n+1} lambda(n) / n^s against (1 + 2^{1-s}) zeta(2s) / zeta(s).
IdentityReport liouville_alternating(ComplexParam s, std::size_t n_terms = 1'000'000, double tol = 1e-6);

template <class T>
struct RootSum {
  T direct;         // sum_{h=1}^{k} f_N(e^{2 pi i h / k})
  T residue_route;  // k sum_{j <= N/k} a_{jk}
};

/// Exact series: the root sum is computed as a sum of field traces,
/// reducing f_N modulo each cyclotomic polynomial Phi_d, d | k.
RootSum<Rational> truncated_root_sum(const TruncatedSeries<Rational>& f, std::uint64_t k);
/// Float series: Horner evaluation at each root.
RootSum<Complex> truncated_root_sum(const TruncatedSeries<Complex>& f, std::uint64_t k);

/// Coefficients of the cyclotomic polynomial Phi_d (index = degree).
std::vector<BigInt> cyclotomic_polynomial(std::uint64_t d);

/// Checks |sum_{j D} mu(j D) / j^tau| = 1 / (zeta(tau) P_D(tau)) against the
/// bound e (tau - 1) / zeta(tau), and P_D(tau) <= e (tau - 1), where
/// P_D(tau) = prod_{p|D} (1 - p^{-tau}). Requires 1 < tau < 3/2.
IdentityReport mu_tail_bound_check(std::uint64_t D, double tau);

// ---- Chowla-type correlations ----

struct ChowlaScan {
  std::vector<std::pair<std::size_t, double>> trend;  // (M_i, S(M_i) / M_i)
  double normalized = 0.0;                            // S(M) / M
  bool positive_density_warning = false;
};

/// S(M) = sum_{m <= M} prod_i f(m + n_i)^{e_i} with f = mu or lambda.
/// The trend lists S/M at the given number of equally spaced checkpoints.
ChowlaScan chowla_correlation_scan(SignKind kind, std::span<const std::uint64_t> shifts,
                                   std::span<const unsigned> exponents, std::size_t M, std::size_t checkpoints = 4);

// ---- Kubert relations ----

/// sum_{k<n} log|2 sin pi (x + k/n)| against log|2 sin pi n x|.
IdentityReport kubert_logsin(unsigned n, double x, double tol = 1e-12);
/// sum_{k<m} zeta(s, (x + k)/m) against m^s zeta(s, x).
IdentityReport kubert_hurwitz(unsigned m, ComplexParam s, double x, double tol = 1e-10);
/// m^{s-1} sum_{k<m} L_s(e(x + k)/m) against L_s(e(x)), Re s > 1.
IdentityReport kubert_polylog(unsigned m, ComplexParam s, double x, double tol = 1e-6);
/// Lerch decomposition residual as a report (0 < Re s < 1).
IdentityReport lerch_report(ComplexParam s, double x, double tol = 1e-6);

}  // namespace ah

// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arith_harmonics/analytic.hpp"
#include "arith_harmonics/arith.hpp"
#include "arith_harmonics/asympt.hpp"
#include "arith_harmonics/cli.hpp"
#include "arith_harmonics/gram.hpp"
#include "arith_harmonics/identities.hpp"
#include "arith_harmonics/series.hpp"

using namespace ah;

namespace {

// Franel
constexpr double kFranelSeconds = 10.0;
constexpr double kLogSinTol = 1e-6;
constexpr double kLogSinSeconds = 60.0;
// Gram
constexpr double kGramDetRelTol = 1e-8;
constexpr double kEigSlack = 1e-9;
// Series algebra
constexpr std::size_t kAlgebraOrder = 2048;
// Ramanujan
constexpr double kRamanujanTol = 1e-6;
constexpr double kMangoldtTol = 1e-3;
constexpr std::size_t kMangoldtPeriods = 1'000'000;
// Besicovitch
constexpr double kBesicovitchTol = 1e-6;
constexpr double kBesicovitchS1Bound = 1e-2;
constexpr std::size_t kBesicovitchS1Terms = 10'000'000;
// Semigroup
constexpr double kSemigroupTol = 1e-7;
// Flett and asymptotics
constexpr double kFlettTol = 1e-9;
constexpr double kLinearRelTol = 0.02;
// Lerch
constexpr double kLerchTol = 1e-6;
// Figures
constexpr double kFigureSeconds = 30.0;

int failures = 0;

void line(const std::string& id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s  %-4s %s  [%s]\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double as_double(const ReportScalar& v) {
  return std::holds_alternative<Complex>(v) ? std::get<Complex>(v).real() : std::get<Rational>(v).get_d();
}

// Brute-force oracles.
int mu_brute(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

std::int64_t phi_brute(std::uint64_t n) {
  std::int64_t c = 0;
  for (std::uint64_t a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

// Ordered factorizations of n into k factors, by recursion over divisors.
std::int64_t ordered_factorizations(std::uint64_t n, unsigned k) {
  if (k == 1) return 1;
  std::int64_t total = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) total += ordered_factorizations(n / d, k - 1);
  return total;
}

// Coefficients of zeta^{-k}: sum over ordered factorizations of prod mu.
std::int64_t signed_factorizations(std::uint64_t n, unsigned k) {
  if (k == 1) return mu_brute(n);
  std::int64_t total = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) {
      const int m = mu_brute(d);
      if (m != 0) total += m * signed_factorizations(n / d, k - 1);
    }
  return total;
}

std::vector<Rational> brute_dirichlet(const TruncatedSeries<Rational>& a, const TruncatedSeries<Rational>& b) {
  const std::size_t N = a.order();
  std::vector<Rational> out(N);
  for (std::size_t n = 1; n <= N; ++n)
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) out[n - 1] += a[d] * b[n / d];
  return out;
}

// ---- criteria ----

void franel_exact() {
  const auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (std::uint64_t r = 1; r <= 50; ++r)
    for (std::uint64_t s = 1; s <= 50; ++s) {
      const std::uint64_t g = std::gcd(r, s);
      const Rational expected(static_cast<long>(g * g), static_cast<long>(12 * r * s));
      Rational e = expected;
      e.canonicalize();
      if (franel_sawtooth(r, s) != e) ++mismatches;
    }
  const double secs = seconds_since(t0);
  line("1a", mismatches == 0, "Franel sawtooth integral equals gcd^2/(12rs) exactly, r,s <= 50",
       std::to_string(2500 - mismatches) + "/2500 exact");
  line("1b", secs < kFranelSeconds, "Franel exact suite runtime < 10 s", fmt("%.2f s", secs));
}

void franel_logsin_check() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::uint64_t r = 1; r <= 12; ++r)
    for (std::uint64_t s = 1; s <= 12; ++s) {
      const std::uint64_t g = std::gcd(r, s);
      const double closed = kPi * kPi / 12.0 * double(g * g) / double(r * s);
      worst = std::max(worst, std::abs(as_double(franel_logsin(r, s).lhs) - closed));
    }
  const double secs = seconds_since(t0);
  line("2a", worst <= kLogSinTol, "log-sin Franel quadrature within 1e-6, r,s <= 12", fmt("worst %.3g", worst));
  line("2b", secs < kLogSinSeconds, "log-sin suite runtime < 60 s", fmt("%.2f s", secs));
}

void smith_and_gram_det() {
  int mismatches = 0;
  for (unsigned r = 1; r <= 3; ++r)
    for (std::size_t N = 1; N <= 64; ++N)
      if (smith_det(r, N) != smith_det_bareiss(r, N)) ++mismatches;
  line("3a", mismatches == 0, "prod J_r(k) equals the Bareiss determinant of (gcd^r), r <= 3, N <= 64",
       std::to_string(192 - mismatches) + "/192 exact");

  double worst = 0.0;
  for (double s : {1.0, 1.5, 2.0})
    for (std::size_t N : {1u, 2u, 5u, 10u, 25u, 50u, 100u, 150u, 200u}) {
      const Complex lu = gram_det(gram_matrix(s, N));
      const Complex cf = gram_det_closed_form(s, N);
      worst = std::max(worst, std::abs(lu - cf) / std::abs(cf));
    }
  // Exact closed form as an independent check of the float closed form at 2s = 2.
  const double exact200 = gram_det_exact(2, 200).get_d();
  const double rel200 = std::abs(gram_det_closed_form(1.0, 200).real() - exact200) / exact200;
  line("3b", worst <= kGramDetRelTol && rel200 <= kGramDetRelTol,
       "LU det M_{s,N} matches (N!)^{-2s} prod J_{2s}(k), s in {1,1.5,2}, N <= 200",
       fmt("worst rel %.3g", worst) + fmt(", exact-vs-float %.3g", rel200));
}

void eigen_sandwich() {
  bool ok = true;
  double worst = -1e300;
  for (double s : {1.1, 1.5, 2.0, 3.0}) {
    const auto [lo, hi] = gram_eig_bounds(s);
    for (std::size_t N : {10u, 50u, 100u, 200u}) {
      const auto [mn, mx] = gram_extreme_eigs(gram_matrix(s, N));
      ok = ok && mn >= lo - kEigSlack && mx <= hi + kEigSlack;
      worst = std::max({worst, lo - mn, mx - hi});
    }
  }
  line("4a", ok, "extreme eigenvalues inside [zeta(2s)/zeta(s)^2, zeta(s)^2/zeta(2s)], slack 1e-9",
       fmt("max violation %.3g", worst));
  const auto b = gram_eig_bounds(2.0);
  const bool exact = std::abs(b.first - 0.4) <= 1e-14 && std::abs(b.second - 2.5) <= 1e-14;
  line("4b", exact, "at s = 2 the interval is [2/5, 5/2]", fmt("[%.17g", b.first) + fmt(", %.17g]", b.second));
}

void otimes_algebra() {
  const std::size_t N = kAlgebraOrder;
  bool inverse_ok = true, brute_ok = true;
  for (long s : {0L, 1L, 2L, 3L}) {
    const auto L = polylog_coeffs(N, s);
    const auto M = mobius_coeffs(N, s);
    const auto prod = otimes(L, M);
    inverse_ok = inverse_ok && prod == TruncatedSeries<Rational>::identity(N);
    const auto ref = brute_dirichlet(L, M);
    brute_ok = brute_ok && std::vector<Rational>(prod.coeffs().begin(), prod.coeffs().end()) == ref;
  }
  line("5a", inverse_ok && brute_ok, "L_s (x) M_s = e exactly, equal to brute-force divisor enumeration, N = 2048",
       "s in {0,1,2,3}");

  const auto m0 = mobius_coeffs(N, 0L);
  const auto sq = otimes(m0, m0);
  const auto ref = brute_dirichlet(m0, m0);
  const auto nsimple = sieve(FunctionKind::n_simple, N);
  std::size_t literal_bad = 0, corrected_bad = 0, brute_bad = 0, first_bad = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    const Rational lit((nsimple[n] % 2 ? -1 : 1) * (1L << nsimple[n]));
    bool cube_free = true;
    for (const auto& pp : trial_factorize(n)) cube_free = cube_free && pp.exponent < 3;
    const Rational corrected = cube_free ? lit : Rational(0);
    if (sq[n] != lit && ++literal_bad == 1) first_bad = n;
    if (sq[n] != corrected) ++corrected_bad;
    if (sq[n] != ref[n - 1]) ++brute_bad;
  }
  line("5b", literal_bad == 0, "M_0 (x) M_0 coefficients equal (-2)^{n_a} for all n <= 2048",
       std::to_string(literal_bad) + " mismatches, first n = " + std::to_string(first_bad) +
           " (value " + sq[first_bad].get_str() + ")");
  line("5c", corrected_bad == 0 && brute_bad == 0,
       "M_0 (x) M_0 coefficients equal (-2)^{n_a} [n cube-free] and brute force", "N = 2048");

  bool powers_ok = true;
  const std::size_t NP = 512;
  const auto Lp = polylog_coeffs(N, 2L);
  const auto Mp = mobius_coeffs(N, 2L);
  for (unsigned k = 2; k <= 4 && powers_ok; ++k) {
    const auto Lk = otimes_power(Lp, k);
    const auto Mk = otimes_power(Mp, k);
    const auto dk = divisor_count_k(N, k);
    for (std::size_t n = 1; n <= N && powers_ok; ++n) {
      const Rational w = inverse_power_exact(n, 2);
      if (n <= NP) {
        powers_ok = Lk[n] == Rational(ordered_factorizations(n, k)) * w &&
                    Mk[n] == Rational(signed_factorizations(n, k)) * w;
      } else {
        powers_ok = Lk[n] == Rational(dk[n]) * w;
      }
    }
  }
  line("5d", powers_ok, "k-fold powers of L_2, M_2 give d(n,k)/n^2 and d'(n,k)/n^2, k <= 4",
       "brute-force factorization counts for n <= 512, sieve to 2048");
}

void ramanujan_formulas() {
  double worst_point = 0.0, worst_dual = 0.0;
  for (double s : {2.0, 3.0}) {
    for (std::uint64_t k = 2; k <= 50; ++k)
      worst_point = std::max(worst_point, ramanujan_point_formula(k, s, 20'000).abs_error);
    for (std::uint64_t m = 1; m <= 50; ++m)
      worst_dual = std::max(worst_dual, ramanujan_dual_formula(m, s, 1'000'000).abs_error);
  }
  line("6a", worst_point <= kRamanujanTol && worst_dual <= kRamanujanTol,
       "sum_m c_k(m)/m^s and sum_k c_k(m)/k^s match their closed forms, k,m <= 50, s in {2,3}",
       fmt("worst %.3g", std::max(worst_point, worst_dual)));
  double worst = 0.0;
  bool heuristic = true;
  for (std::uint64_t k = 2; k <= 20; ++k) {
    const auto r = ramanujan_point_formula(k, 1.0, kMangoldtPeriods, kMangoldtTol);
    worst = std::max(worst, r.abs_error);
    heuristic = heuristic && r.verdict == Verdict::heuristic_pass;
  }
  line("6b", heuristic && worst <= kMangoldtTol, "sum_m c_k(m)/m = -Lambda(k), k <= 20, 1e6 periods (heuristic)",
       fmt("worst %.3g", worst));
}

void orthogonality() {
  int bad = 0;
  for (std::uint64_t r = 1; r <= 60; ++r)
    for (std::uint64_t s = 1; s <= 60; ++s) {
      if (ramanujan_correlation_mean(r, s) != Rational(r == s ? phi_brute(r) : 0)) ++bad;
      for (std::uint64_t h = 1; h <= 20; ++h) {
        std::int64_t crh = 0;
        if (r == s)
          for (std::uint64_t d = 1; d <= r; ++d)
            if (r % d == 0 && h % d == 0) crh += static_cast<std::int64_t>(d) * mu_brute(r / d);
        if (ramanujan_correlation_mean(r, s, h) != Rational(crh)) ++bad;
      }
    }
  line("7", bad == 0, "exact period means of c_r(n) c_s(n+h) equal Phi(r)[r=s] and c_r(h)[r=s], r,s <= 60, h <= 20",
       std::to_string(bad) + " mismatches");
}

void besicovitch() {
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  std::uniform_int_distribution<std::size_t> order(1, 120);
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Rational> c(order(rng));
    for (auto& x : c) x = make_rational(num(rng), den(rng));
    const TruncatedSeries<Rational> f(c);
    for (std::uint64_t k = 1; k <= 20; ++k) {
      const auto rs = truncated_root_sum(f, k);
      if (rs.direct != rs.residue_route) ++bad;
    }
  }
  line("8a", bad == 0, "truncated root sum: trace route equals residue route exactly, 500 series, k <= 20",
       std::to_string(bad) + " mismatches");

  double worst = 0.0;
  for (std::uint64_t k = 1; k <= 30; ++k)
    for (auto kind : {SignKind::mu, SignKind::liouville})
      worst = std::max(worst, besicovitch_sum(k, 2.0, 1'000'000, kind).abs_error);
  line("8b", worst <= kBesicovitchTol, "sum over k-th roots of M_2, N_2 matches the closed form, k <= 30",
       fmt("worst %.3g", worst));

  double worst1 = 0.0;
  bool heuristic = true;
  for (std::uint64_t k = 1; k <= 6; ++k) {
    const auto r = besicovitch_sum(k, 1.0, kBesicovitchS1Terms, SignKind::mu, kBesicovitchS1Bound);
    worst1 = std::max(worst1, std::abs(std::get<Complex>(r.lhs)));
    heuristic = heuristic && r.verdict == Verdict::heuristic_pass;
  }
  line("8c", heuristic && worst1 <= kBesicovitchS1Bound, "s = 1 root sums |value| <= 1e-2 at 1e7 terms, k <= 6 (heuristic)",
       fmt("worst %.3g", worst1));
}

void biorthogonality() {
  const std::size_t N = 256;
  int bad = 0;
  for (long s : {2L, 3L}) {
    const auto L = polylog_coeffs(N, s);
    for (std::uint64_t m = 1; m <= 64; ++m) {
      const auto lm = dilate(L, m, N);
      for (std::uint64_t n = 1; n <= 64; ++n)
        if (l2_pairing(lm, biorth_series(n, s, N)) != Rational(m == n ? 1 : 0)) ++bad;
    }
  }
  line("9a", bad == 0, "(L_s(z^m) | psi_n) = [m = n] exactly, m,n <= 64, s in {2,3}", std::to_string(bad) + " mismatches");

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-99, 99), den(1, 40);
  int rt_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> c(N);
    for (auto& x : c) x = make_rational(num(rng), den(rng));
    const TruncatedSeries<Rational> g(c);
    const long s = 1 + trial % 3;
    if (riesz_reconstruct(riesz_expand(g, s), s) != g) ++rt_bad;
  }
  line("9b", rt_bad == 0, "Riesz expand / reconstruct round trip exact, 100 random series, N = 256",
       std::to_string(rt_bad) + " failures");

  bool est_ok = true;
  for (long a : {1L, 2L, 3L}) {
    const long s = 5;
    const auto alpha = riesz_expand(estermann_coeffs(N, s, a), s);
    for (std::size_t p = 1; p <= N; ++p) est_ok = est_ok && alpha[p] == inverse_power_exact(p, s - a);
  }
  double worst = 0.0;
  {
    const ComplexParam s(3.5, 0.5), a(0.7, -0.2);
    const auto alpha = riesz_expand(estermann_coeffs(N, s.value(), a.value()), s);
    for (std::size_t p = 1; p <= N; ++p)
      worst = std::max(worst, std::abs(alpha[p] - inverse_power(p, s.value() - a.value())));
  }
  line("9c", est_ok && worst <= 1e-13, "Estermann expansion coefficients equal p^{a-s}",
       std::string(est_ok ? "exact for integer s, a" : "exact mismatch") + fmt("; complex worst %.3g", worst));
}

void semigroup() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  const auto m0 = mobius_coeffs(500, 0L);
  bool exact_ok = true;
  for (long a = 0; a <= 3; ++a)
    for (long b = 0; b <= 3; ++b)
      exact_ok = exact_ok && t_semigroup_coeff(t_semigroup_coeff(m0, a), b) == t_semigroup_coeff(m0, a + b);
  for (long k = 1; k <= 4; ++k) exact_ok = exact_ok && t_semigroup_coeff(m0, k) == mobius_coeffs(500, k);
  line("10a", exact_ok, "T_a T_b = T_{a+b} and T_k M_0 = M_k exactly at the coefficient level", "exact rationals");

  std::vector<Complex> c(12);
  for (auto& v : c) v = {g(rng), g(rng)};
  const TruncatedSeries<Complex> f(c);
  double worst = 0.0;
  for (const ComplexParam s : {ComplexParam(0.5), ComplexParam(1.5), ComplexParam(2.0, 1.0), ComplexParam(0.3, -0.4)})
    for (const Complex z : {Complex(0.3), Complex(0.1, 0.6), Complex(-0.8, 0.0)})
      worst = std::max(worst, std::abs(t_semigroup_quadrature(f, s, z) - t_semigroup_coeff(f, s).evaluate(z)));
  const Complex z(0.3);
  const Complex nested =
      t_semigroup_quadrature([&](Complex w) { return t_semigroup_quadrature(f, 0.8, w); }, 0.7, z);
  const double composed = std::abs(nested - t_semigroup_quadrature(f, 1.5, z));
  line("10b", worst <= kSemigroupTol && composed <= kSemigroupTol,
       "quadrature route matches coefficients; T_0.7(T_0.8 f) = T_1.5 f by nested quadrature",
       fmt("worst %.3g", worst) + fmt(", composed %.3g", composed));
}

void flett_and_fit() {
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 100.0;
    worst = std::max(worst, std::abs(cos_sum(x) - flett_taylor(x).value));
  }
  line("11a", worst <= kFlettTol, "cos_sum equals the zeta(2k) Taylor route on [0, 10]", fmt("worst %.3g", worst));

  const auto fit = linear_term_and_remainder(1e5, 120);
  const double rel = std::abs(std::abs(fit.linear_coeff) - kPi) / kPi;
  line("11b", rel <= kLinearRelTol, "fitted |linear coefficient| = pi within 2%, x in [1e3, 1e5]",
       fmt("c1 = %.6f", fit.linear_coeff) + fmt(" (-pi/2 = %.6f)", -kPi / 2.0));
  line("11c", fit.remainder_exponent < 1.0, "fitted remainder exponent < 1",
       fmt("%.3f", fit.remainder_exponent) + fmt(", 95%% CI [%.3f", fit.exponent_ci_low) +
           fmt(", %.3f]", fit.exponent_ci_high));
}

void lerch() {
  double worst = 0.0;
  for (double x : {0.2, 0.3, 0.5}) worst = std::max(worst, lerch_decomposition_check(0.5, x));
  line("12", worst <= kLerchTol, "Abel boundary polylog equals A_s zeta(1-s,x) + B_s zeta(1-s,1-x), s = 1/2",
       fmt("worst %.3g", worst));
}

void figures() {
  for (const char* which : {"fig1", "fig2"}) {
    const std::vector<std::string> args{"figure", which, "--n-terms", "100000", "--grid-points", "2000"};
    std::ostringstream out1, out2, err;
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run_cli(args, out1, err);
    const double secs = seconds_since(t0);
    run_cli(args, out2, err);
    const std::string text = out1.str();
    std::size_t rows = 0, footers = 0, matches = 0;
    double worst_footer = 0.0;
    const auto sign = sign_sieve(std::string(which) == "fig1" ? FunctionKind::mu : FunctionKind::liouville, 100000);
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
      if (l.rfind("# root_sum", 0) == 0) {
        ++footers;
        unsigned k = 0;
        double value = 0.0;
        std::sscanf(l.c_str(), "# root_sum k=%u value=%lf", &k, &value);
        if (l.find("exact_match=1") != std::string::npos) ++matches;
        double residue = 0.0;
        for (std::size_t n = k; n <= 100000; n += k) residue += sign[n - 1] / double(n);
        worst_footer = std::max(worst_footer, std::abs(value - k * residue));
      } else if (!l.empty() && l[0] != '#') {
        ++rows;
      }
    }
    const bool ok = code == 0 && rows == 2001 && secs < kFigureSeconds && out1.str() == out2.str();
    line(std::string("13") + (which[3] == '1' ? "a" : "b"), ok,
         std::string(which) + " CSV at N = 1e5, 2000 points, deterministic, < 30 s",
         fmt("%.2f s", secs) + ", " + std::to_string(rows - 1) + " rows");
    line(std::string("13") + (which[3] == '1' ? "c" : "d"), footers == 9 && matches == 9 && worst_footer <= 1e-12,
         std::string(which) + " footer root sums: exact trace route equals residue route, k = 2..10",
         std::to_string(matches) + "/9 exact" + fmt(", float check %.3g", worst_footer));
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void()>>> criteria{
      {"1", franel_exact},   {"2", franel_logsin_check}, {"3", smith_and_gram_det}, {"4", eigen_sandwich},
      {"5", otimes_algebra}, {"6", ramanujan_formulas},  {"7", orthogonality},      {"8", besicovitch},
      {"9", biorthogonality}, {"10", semigroup},         {"11", flett_and_fit},     {"12", lerch},
      {"13", figures}};
  for (const auto& [id, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      line(id, false, "criterion raised an exception", e.what());
    }
  }
  std::printf("%d failing line(s)\n", failures);
  return failures == 0 ? 0 : 1;
}

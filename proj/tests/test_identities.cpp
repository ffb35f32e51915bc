#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"

#include "arith_harmonics/analytic.hpp"
#include "arith_harmonics/identities.hpp"

using namespace ah;

namespace {

Complex value_of(const ReportScalar& v) {
  return std::holds_alternative<Complex>(v) ? std::get<Complex>(v) : to_complex(std::get<Rational>(v));
}

// Exact int_0^1 {rt}{st} dt by brute force: on each piece between the
// merged breakpoints both factors are affine, so Simpson's rule is exact
// once the end values are taken as one-sided limits.
Rational saw_limit(const Rational& x, bool from_right) {
  Rational f = x - Rational(mpz_class(x.get_num() / x.get_den()));
  if (f == 0) f = from_right ? Rational(0) : Rational(1);
  return f - make_rational(1, 2);
}

Rational franel_simpson(std::uint64_t r, std::uint64_t s) {
  const long L = static_cast<long>(std::lcm(r, s));
  const Rational R(static_cast<long>(r)), S(static_cast<long>(s));
  Rational total = 0;
  for (long j = 0; j < L; ++j) {
    const Rational a = make_rational(j, L), b = make_rational(j + 1, L), m = (a + b) / 2;
    const Rational fa = saw_limit(R * a, true) * saw_limit(S * a, true);
    const Rational fm = saw_limit(R * m, true) * saw_limit(S * m, true);
    const Rational fb = saw_limit(R * b, false) * saw_limit(S * b, false);
    total += (b - a) / 6 * (fa + 4 * fm + fb);
  }
  return total;
}

}  // namespace

TEST_SUITE("identities") {

TEST_CASE("franel sawtooth examples") {
  CHECK(franel_sawtooth(1, 1) == make_rational(1, 12));
  CHECK(franel_sawtooth(2, 3) == make_rational(1, 72));
  for (std::uint64_t r = 1; r <= 20; ++r) CHECK(franel_sawtooth(r, r) == make_rational(1, 12));
  CHECK(franel_closed_form(4, 6) == make_rational(4, 12 * 24));
  const auto rep = franel_sawtooth_report(6, 10);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(std::holds_alternative<Rational>(rep.lhs));
}

TEST_CASE("franel sawtooth against Simpson on affine pieces") {
  for (std::uint64_t r = 1; r <= 9; ++r)
    for (std::uint64_t s = 1; s <= 9; ++s) REQUIRE(franel_sawtooth(r, s) == franel_simpson(r, s));
}

TEST_CASE("franel scaling invariance") {
  for (std::uint64_t r = 1; r <= 12; ++r)
    for (std::uint64_t s = 1; s <= 12; ++s)
      for (std::uint64_t c = 1; c <= 5; ++c) REQUIRE(franel_sawtooth(c * r, c * s) == franel_sawtooth(r, s));
}

TEST_CASE("franel quadratic form is an exact positive square") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> num(-6, 6), den(1, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t N = 1 + trial % 12;
    std::vector<Rational> c(N);
    for (auto& x : c) x = make_rational(num(rng), den(rng));
    const auto [gcd_form, integral] = franel_quadratic_form(c);
    REQUIRE(gcd_form == integral);
    REQUIRE(gcd_form >= 0);
  }
}

TEST_CASE("franel log-sin") {
  const double base = kPi * kPi / 12.0;
  auto r11 = franel_logsin(1, 1);
  CHECK(r11.passed());
  CHECK(std::abs(value_of(r11.lhs) - base) <= 1e-6);
  CHECK(std::abs(value_of(franel_logsin(2, 2).lhs) - base) <= 1e-6);
  CHECK(std::abs(value_of(franel_logsin(2, 3).lhs) - base / 6.0) <= 1e-6);
}

TEST_CASE("mikolas integral") {
  const double closed = 2.0 * std::pow(std::tgamma(1.5), 2) * zeta(3.0) / std::pow(2.0 * kPi, 3.0);
  const auto r11 = mikolas_integral(1, 1, 1.5);
  CHECK(r11.passed());
  CHECK(std::abs(value_of(r11.rhs) - closed) <= 1e-12);
  CHECK(std::abs(value_of(mikolas_integral(2, 2, 1.5).lhs) - closed) <= 1e-6);
  // mpmath quadrature oracle for a = 2, b = 3.
  CHECK(std::abs(value_of(mikolas_integral(2, 3, 1.5).lhs) - 0.00051793877255630816993) <= 1e-8);
  CHECK_THROWS_AS(mikolas_integral(1, 1, 0.5), DomainError);
}

TEST_CASE("ramanujan point formula") {
  const auto r4 = ramanujan_point_formula(4, 2.0);
  CHECK(std::abs(value_of(r4.rhs) + zeta(2.0) / 4.0) <= 1e-12);
  CHECK(r4.verdict == Verdict::pass);
  const auto r6 = ramanujan_point_formula(6, 3.0);
  CHECK(r6.abs_error <= 1e-8);
  for (std::uint64_t p : {2u, 3u, 7u}) {
    const auto rp = ramanujan_point_formula(p, 1.0);
    CHECK(rp.verdict == Verdict::heuristic_pass);
    CHECK(std::abs(value_of(rp.rhs) + std::log(static_cast<double>(p))) <= 1e-14);
  }
  CHECK(ramanujan_point_formula(6, 1.0).verdict == Verdict::heuristic_pass);
  CHECK(std::abs(value_of(ramanujan_point_formula(6, 1.0).rhs)) == 0.0);
}

TEST_CASE("ramanujan dual formula") {
  const auto r1 = ramanujan_dual_formula(1, 2.0);
  CHECK(std::abs(value_of(r1.rhs) - 1.0 / zeta(2.0)) <= 1e-14);
  CHECK(r1.passed());
  const auto r2 = ramanujan_dual_formula(2, 2.0);
  CHECK(std::abs(value_of(r2.rhs) - 1.5 / zeta(2.0)) <= 1e-14);
  CHECK(r2.passed());
  CHECK(ramanujan_dual_formula(4, 3.0).abs_error <= 1e-8);
  CHECK(ramanujan_dual_formula(12, 1.0, 1'000'000).verdict == Verdict::heuristic_pass);
  CHECK_THROWS_AS(ramanujan_dual_formula(4, 0.8), DomainError);
}

TEST_CASE("delange expansions") {
  SUBCASE("unit function") {
    const auto r = delange_expand([](std::uint64_t n) { return Complex(n == 1 ? 1.0 : 0.0); }, 30, 30, 20);
    CHECK(r.max_error <= 1e-15);
    CHECK(std::abs(r.fhat[0] - 1.0) == 0.0);
    for (std::size_t q = 2; q <= 30; ++q) CHECK(r.fhat[q - 1] == Complex(0.0));
    CHECK(r.report.passed());
  }
  SUBCASE("inverse square") {
    const auto r =
        delange_expand([](std::uint64_t n) { return Complex(1.0 / (double(n) * double(n))); }, 2000, 2000, 20);
    for (std::size_t n = 1; n <= 20; ++n) {
      double f = 0.0;
      for (std::size_t d = 1; d <= n; ++d)
        if (n % d == 0) f += 1.0 / double(d * d);
      CHECK(std::abs(r.direct[n - 1] - f) <= 1e-15);
    }
    CHECK(r.max_error <= 1e-4);
    CHECK(r.condition_stable);
  }
  SUBCASE("geometric coefficients against the polylog") {
    const double z = 0.5;
    const auto r = delange_expand([z](std::uint64_t n) { return std::pow(z, double(n)) / double(n); }, 40, 200, 20);
    for (std::uint64_t q = 1; q <= 10; ++q) {
      const Complex expected = polylog(2.0, std::pow(z, double(q)), 1e-15).value / double(q * q);
      CHECK(std::abs(r.fhat[q - 1] - expected) <= 1e-14);
    }
    CHECK(r.max_error <= 1e-12);
  }
  SUBCASE("error shrinks as q_max doubles") {
    auto g = [](std::uint64_t n) { return Complex(1.0 / (double(n) * double(n))); };
    double prev = delange_expand(g, 125, 4000, 20).max_error;
    for (std::size_t q = 250; q <= 2000; q *= 2) {
      const double err = delange_expand(g, q, 4000, 20).max_error;
      CHECK(err <= 2.0 * prev);
      prev = err;
    }
  }
}

TEST_CASE("lucht transform") {
  const double z = 0.5;
  const double s = 2.0;
  auto g = [&](std::uint64_t n) { return std::pow(z, double(n)) / std::pow(double(n), s); };
  for (std::uint64_t k : {1u, 2u, 3u, 5u}) {
    const Complex gamma = lucht_transform(g, k, 2000);
    const Complex expected = std::pow(double(k), 1.0 - s) * mobius_series(s, std::pow(z, double(k)), 2000).value;
    CHECK(std::abs(gamma - expected) <= 1e-14);
  }
  auto e = [](std::uint64_t n) { return Complex(n == 1 ? 1.0 : 0.0); };
  CHECK(lucht_transform(e, 1, 100) == Complex(1.0));
  CHECK(lucht_transform(e, 4, 100) == Complex(0.0));
  const auto rep = lucht_check(0.5, 2.0, 6);
  CHECK(rep.passed());
  CHECK(rep.abs_error <= 1e-8);
}

TEST_CASE("subseries lemmas") {
  CHECK(std::abs(jordan_phi_s(2, 2.0) - 3.0) <= 1e-15);
  const auto q1 = mu_subseries(1, 2.0);
  CHECK(std::abs(value_of(q1.rhs) - 6.0 / (kPi * kPi)) <= 1e-14);
  CHECK(q1.passed());
  const auto q4 = mu_subseries(4, 2.0);
  CHECK(value_of(q4.lhs) == Complex(0.0));
  CHECK(value_of(q4.rhs) == Complex(0.0));
  const auto q2 = mu_subseries(2, 2.0);
  CHECK(std::abs(value_of(q2.rhs) + 4.0 / (3.0 * zeta(2.0))) <= 1e-14);
  CHECK(q2.passed());

  const auto n1 = musq_coprime_series(1, 2.0);
  CHECK(std::abs(value_of(n1.rhs) - 15.0 / (kPi * kPi)) <= 1e-13);
  CHECK(n1.passed());
  const auto n2 = musq_coprime_series(2, 2.0);
  CHECK(std::abs(value_of(n2.rhs) - 4.0 * zeta(2.0) / (5.0 * zeta(4.0))) <= 1e-13);
  CHECK(n2.passed());
  const auto n4 = musq_coprime_series(4, 2.0);
  CHECK(std::abs(value_of(n4.rhs) - 16.0 * zeta(2.0) / (20.0 * zeta(4.0))) <= 1e-13);
  CHECK(n4.passed());
}

TEST_CASE("besicovitch sums") {
  const auto k2 = besicovitch_sum(2, 2.0);
  CHECK(std::abs(value_of(k2.rhs) + 2.0 / (3.0 * zeta(2.0))) <= 1e-14);
  CHECK(k2.abs_error <= 1e-6);
  const auto k4 = besicovitch_sum(4, 2.0);
  CHECK(value_of(k4.rhs) == Complex(0.0));
  CHECK(k4.abs_error <= 1e-6);
  const auto l6 = besicovitch_sum(6, 2.0, 1'000'000, SignKind::liouville);
  CHECK(l6.passed());
  CHECK(std::abs(value_of(l6.rhs) - zeta(4.0) / (6.0 * zeta(2.0))) <= 1e-14);
}

TEST_CASE("besicovitch at s = 1 is heuristic") {
  const auto r = besicovitch_sum(3, 1.0, 10'000'000);
  CHECK(r.verdict == Verdict::heuristic_pass);
  CHECK(std::abs(value_of(r.lhs)) <= 1e-2);
}

TEST_CASE("liouville alternating") {
  const auto s2 = liouville_alternating(2.0);
  CHECK(std::abs(value_of(s2.rhs) - kPi * kPi / 10.0) <= 1e-13);
  CHECK(s2.passed());
  const auto s4 = liouville_alternating(4.0);
  CHECK(std::abs(value_of(s4.rhs) - 1.125 * zeta(8.0) / zeta(4.0)) <= 1e-14);
  CHECK(s4.passed());
  double prev = 1e9;
  for (double s : {1.5, 1.2, 1.1, 1.05}) {
    const double v = std::abs(value_of(liouville_alternating(s).rhs));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("truncated root sums") {
  std::vector<Rational> c(9);
  for (std::size_t n = 1; n <= 9; ++n) c[n - 1] = Rational(mobius_of(n)) / Rational(static_cast<long>(n));
  const TruncatedSeries<Rational> f(c);
  const auto r = truncated_root_sum(f, 3);
  CHECK(r.direct == make_rational(-1, 2));
  CHECK(r.residue_route == make_rational(-1, 2));
  const auto big = truncated_root_sum(f, 10);
  CHECK(big.direct == 0);
  CHECK(big.residue_route == 0);
  const auto e = truncated_root_sum(TruncatedSeries<Rational>::identity(5), 1);
  CHECK(e.direct == 1);
  CHECK(e.residue_route == 1);

  const auto cr = truncated_root_sum(f.to_complex(), 3);
  CHECK(std::abs(cr.direct + 0.5) <= 1e-14);
  CHECK(std::abs(cr.residue_route + 0.5) <= 1e-15);
}

TEST_CASE("truncated root sum routes agree on random series") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  std::uniform_int_distribution<std::size_t> order(1, 60);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> c(order(rng));
    for (auto& x : c) x = make_rational(num(rng), den(rng));
    const TruncatedSeries<Rational> f(c);
    for (std::uint64_t k = 1; k <= 20; ++k) {
      const auto r = truncated_root_sum(f, k);
      REQUIRE(r.direct == r.residue_route);
    }
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<BigInt>{-1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<BigInt>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<BigInt>{1, 0, -1, 0, 1});
  for (std::uint64_t d = 1; d <= 40; ++d) CHECK(cyclotomic_polynomial(d).size() == totient_of(d) + 1);
  // Phi_105 is the first with a coefficient of absolute value 2.
  const auto p105 = cyclotomic_polynomial(105);
  BigInt worst = 0;
  for (const auto& x : p105) worst = std::max<BigInt>(worst, abs(x));
  CHECK(worst == 2);
}

TEST_CASE("mu tail bound") {
  // The bound P_D(tau) <= e (tau - 1) does not hold at tau = 1.01.
  const auto r = mu_tail_bound_check(2 * 3 * 5 * 7 * 11, 1.01);
  CHECK(r.verdict == Verdict::fail);
  const double pd = std::get<double>(r.params.at("P_D"));
  double expected = 1.0;
  for (double p : {2.0, 3.0, 5.0, 7.0, 11.0}) expected *= 1.0 - std::pow(p, -1.01);
  CHECK(std::abs(pd - expected) <= 1e-14);
  CHECK(std::abs(value_of(r.lhs) - 1.0 / (zeta(1.01) * expected)) <= 1e-9);
  CHECK(mu_tail_bound_check(1, 1.2).verdict == Verdict::fail);
  const auto p = mu_tail_bound_check(2, 1.4);
  CHECK(std::abs(std::get<double>(p.params.at("P_D")) - (1.0 - std::pow(2.0, -1.4))) <= 1e-15);
  CHECK_THROWS_AS(mu_tail_bound_check(6, 1.0), DomainError);
  CHECK_THROWS_AS(mu_tail_bound_check(6, 1.6), DomainError);
}

TEST_CASE("chowla scans") {
  const std::vector<std::uint64_t> zero{0}, zero_one{0, 1}, zero_two{0, 2};
  const std::vector<unsigned> one{1}, one_one{1, 1}, two{2};
  const auto m = chowla_correlation_scan(SignKind::mu, zero, one, 1'000'000);
  CHECK(std::abs(m.normalized) <= 0.005);
  CHECK_FALSE(m.positive_density_warning);
  CHECK(m.trend.size() == 4);
  const auto l = chowla_correlation_scan(SignKind::liouville, zero_one, one_one, 1'000'000);
  CHECK(std::abs(l.normalized) <= 0.01);
  const auto sq = chowla_correlation_scan(SignKind::mu, zero, two, 1'000'000);
  CHECK(std::abs(sq.normalized - 6.0 / (kPi * kPi)) <= 1e-3);
  CHECK(sq.positive_density_warning);
  const auto l2 = chowla_correlation_scan(SignKind::liouville, zero_two, one_one, 100'000, 10);
  REQUIRE(l2.trend.size() == 10);
  for (std::size_t i = 1; i < l2.trend.size(); ++i) CHECK(l2.trend[i].first > l2.trend[i - 1].first);
}

TEST_CASE("kubert relations and lerch report") {
  CHECK(kubert_logsin(4, 0.13).passed());
  CHECK(kubert_logsin(3, 0.17).abs_error <= 1e-12);
  CHECK(kubert_hurwitz(3, 2.5, 0.37).passed());
  CHECK(kubert_hurwitz(2, ComplexParam(1.5, 2.0), 0.8).passed());
  for (unsigned m : {2u, 3u})
    for (double x : {0.1, 0.37}) CHECK(kubert_polylog(m, 2.5, x).passed());
  CHECK(lerch_report(0.5, 0.3).passed());
}

}  // TEST_SUITE

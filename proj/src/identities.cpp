#include "arith_harmonics/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "arith_harmonics/quadrature.hpp"

namespace ah {

namespace {

Complex cpow_int(std::uint64_t n, Complex s) {
  if (n == 1) return {1.0, 0.0};
  return std::exp(s * std::log(static_cast<double>(n)));
}

// n^{-s}, with a real fast path.
Complex inv_pow(std::uint64_t n, Complex s) {
  if (s.imag() == 0.0) return {std::pow(static_cast<double>(n), -s.real()), 0.0};
  return std::exp(-s * std::log(static_cast<double>(n)));
}

// Neumaier-compensated complex accumulator.
struct Accumulator {
  Complex sum{0.0};
  Complex comp{0.0};
  void add_part(double v, double& s, double& c) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  void add(Complex v) {
    double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
    add_part(v.real(), sr, cr);
    add_part(v.imag(), si, ci);
    sum = {sr, si};
    comp = {cr, ci};
  }
  Complex value() const { return sum + comp; }
};

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (const auto& pp : trial_factorize(n)) ps.push_back(pp.prime);
  return ps;
}

int liouville_of(std::uint64_t n) {
  unsigned total = 0;
  for (const auto& pp : trial_factorize(n)) total += pp.exponent;
  return total % 2 == 0 ? 1 : -1;
}

double von_mangoldt_of(std::uint64_t n) {
  const auto f = trial_factorize(n);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].prime)) : 0.0;
}

std::string s_string(ComplexParam s) { return s.to_string(); }

// Merged breakpoints (in units of 1/L) of the pieces of {r t} for r in rs.
std::vector<std::uint64_t> merged_breakpoints(std::uint64_t L, std::span<const std::uint64_t> rs) {
  std::set<std::uint64_t> pts;
  for (auto r : rs) {
    const std::uint64_t step = L / r;
    for (std::uint64_t a = 0; a <= L; a += step) pts.insert(a);
  }
  return {pts.begin(), pts.end()};
}

// Distance from {k t} to the nearest integer for t inside a piece, given the
// offsets {k t} at both piece ends (oR may equal 1) and exact distances to
// the ends.
double sawtooth_distance(double oL, double oR, double k, double dl, double dr) {
  if (dl <= dr) {
    const double y = oL + k * dl;
    return std::min(y, 1.0 - y);
  }
  const double w = k * dr;
  if (oR == 1.0) return std::min(w, 1.0 - w);
  const double y = oR - w;
  return std::min(y, 1.0 - y);
}

// Fractional part {k t} in (0, 1] inside a piece.
double sawtooth_fraction(double oL, double oR, double k, double dl, double dr) {
  const double y = dl <= dr ? oL + k * dl : oR - k * dr;
  return std::clamp(y, std::numeric_limits<double>::min(), 1.0);
}

struct PieceOffsets {
  double left;
  double right;
};

// {k t} at the ends of the piece [a/L, b/L].
PieceOffsets offsets(std::uint64_t k, std::uint64_t L, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t step = L / k;
  const std::uint64_t m = a / step;
  return {static_cast<double>(a - m * step) / static_cast<double>(step),
          static_cast<double>(b - m * step) / static_cast<double>(step)};
}

// Balanced pairwise sum; keeps intermediate denominators small.
Rational tree_sum(std::span<const Rational> v) {
  if (v.empty()) return Rational(0);
  if (v.size() == 1) return v[0];
  const std::size_t mid = v.size() / 2;
  Rational out = tree_sum(v.first(mid)) + tree_sum(v.subspan(mid));
  return out;
}

unsigned level_for_budget(std::size_t quad_points, std::size_t pieces) {
  const double per_piece = static_cast<double>(quad_points) / (9.0 * static_cast<double>(std::max<std::size_t>(pieces, 1)));
  const int level = static_cast<int>(std::floor(std::log2(std::max(per_piece, 1.0))));
  return static_cast<unsigned>(std::clamp(level, 3, 12));
}

}  // namespace

// ---- Franel ----

Rational franel_closed_form(std::uint64_t r, std::uint64_t s) {
  if (r == 0 || s == 0) throw InvalidArgument("franel: r, s must be >= 1");
  const std::uint64_t g = std::gcd(r, s);
  Rational q(BigInt(static_cast<unsigned long>(g)) * g,
             BigInt(12) * BigInt(static_cast<unsigned long>(r)) * BigInt(static_cast<unsigned long>(s)));
  q.canonicalize();
  return q;
}

Rational franel_sawtooth(std::uint64_t r, std::uint64_t s) {
  if (r == 0 || s == 0) throw InvalidArgument("franel_sawtooth: r, s must be >= 1");
  const std::uint64_t L = lcm_u64(r, s);
  const std::uint64_t both[2] = {r, s};
  const auto pts = merged_breakpoints(L, both);
  // Work in x = L t: int {r t}{s t} dt = (1/L) int (r x/L - alpha)(s x/L - beta) dx.
  // With X = x and integer ends a, b the integrand is
  //   (r s X^2 - L (r beta + s alpha) X + L^2 alpha beta) / L^2.
  // alpha = m_r + 1/2, beta = m_s + 1/2; scale by 2 to stay in integers.
  BigInt acc = 0;  // accumulates 6 * 4 * L^3 * integral
  const BigInt R(static_cast<unsigned long>(r)), S(static_cast<unsigned long>(s)), LL(static_cast<unsigned long>(L));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const BigInt a(static_cast<unsigned long>(pts[i])), b(static_cast<unsigned long>(pts[i + 1]));
    const BigInt alpha2 = 2 * BigInt(static_cast<unsigned long>(pts[i] / (L / r))) + 1;  // 2 alpha
    const BigInt beta2 = 2 * BigInt(static_cast<unsigned long>(pts[i] / (L / s))) + 1;   // 2 beta
    const BigInt d1 = b - a;
    const BigInt d2 = b * b - a * a;
    const BigInt d3 = b * b * b - a * a * a;
    // 24 * [ r s d3/3 - L (r beta + s alpha) d2/2 + L^2 alpha beta d1 ]
    acc += 8 * R * S * d3 - 6 * LL * (R * beta2 + S * alpha2) * d2 + 6 * LL * LL * alpha2 * beta2 * d1;
  }
  Rational q(acc, 24 * LL * LL * LL);
  q.canonicalize();
  return q;
}

IdentityReport franel_sawtooth_report(std::uint64_t r, std::uint64_t s) {
  return exact_report("franel-sawtooth", franel_sawtooth(r, s), franel_closed_form(r, s),
                      {{"r", static_cast<std::int64_t>(r)}, {"s", static_cast<std::int64_t>(s)}});
}

std::pair<Rational, Rational> franel_quadratic_form(std::span<const Rational> c) {
  const std::size_t N = c.size();
  if (N == 0) throw InvalidArgument("franel_quadratic_form: empty weights");
  Rational lhs(0);
  for (std::size_t m = 1; m <= N; ++m)
    for (std::size_t n = 1; n <= N; ++n) {
      const auto g = static_cast<long>(std::gcd(m, n));
      lhs += Rational(g * g, static_cast<long>(m * n)) * c[m - 1] * c[n - 1];
    }
  lhs.canonicalize();

  std::uint64_t L = 1;
  std::vector<std::uint64_t> ps(N);
  for (std::size_t p = 1; p <= N; ++p) {
    L = lcm_u64(L, p);
    ps[p - 1] = p;
  }
  const auto pts = merged_breakpoints(L, ps);
  Rational slope(0);
  for (std::size_t p = 1; p <= N; ++p) slope += c[p - 1] * static_cast<long>(p);
  Rational integral(0);
  const Rational Lq(static_cast<long>(L));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    // On the piece, sum_p c_p {p t} = slope t - B.
    Rational B(0);
    for (std::size_t p = 1; p <= N; ++p)
      B += c[p - 1] * (Rational(static_cast<long>(pts[i] / (L / p))) + Rational(1, 2));
    const Rational u = Rational(static_cast<long>(pts[i])) / Lq;
    const Rational v = Rational(static_cast<long>(pts[i + 1])) / Lq;
    integral += slope * slope * (v * v * v - u * u * u) / 3 - slope * B * (v * v - u * u) + B * B * (v - u);
  }
  Rational rhs = 12 * integral;
  rhs.canonicalize();
  return {lhs, rhs};
}

IdentityReport franel_logsin(std::uint64_t r, std::uint64_t s, std::size_t quad_points, double tol) {
  if (r == 0 || s == 0) throw InvalidArgument("franel_logsin: r, s must be >= 1");
  const std::uint64_t L = lcm_u64(r, s);
  const std::uint64_t both[2] = {r, s};
  const auto pts = merged_breakpoints(L, both);
  const unsigned level = level_for_budget(quad_points, pts.size() - 1);
  double total = 0.0;
  std::size_t evals = 0;
  bool converged = true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto orr = offsets(r, L, pts[i], pts[i + 1]);
    const auto oss = offsets(s, L, pts[i], pts[i + 1]);
    const double a = static_cast<double>(pts[i]) / static_cast<double>(L);
    const double b = static_cast<double>(pts[i + 1]) / static_cast<double>(L);
    QuadratureInfo info;
    total += tanh_sinh<double>(
        [&](double, double dl, double dr) {
          const double u = sawtooth_distance(orr.left, orr.right, static_cast<double>(r), dl, dr);
          const double v = sawtooth_distance(oss.left, oss.right, static_cast<double>(s), dl, dr);
          return std::log(2.0 * std::sin(kPi * u)) * std::log(2.0 * std::sin(kPi * v));
        },
        a, b, 1e-14, level, &info);
    evals += info.evaluations;
    converged = converged && info.error_estimate <= 1e-9;
  }
  const std::uint64_t g = std::gcd(r, s);
  const double rhs = kPi * kPi / 12.0 * static_cast<double>(g * g) / (static_cast<double>(r) * static_cast<double>(s));
  return numeric_report("franel-logsin", total, rhs, tol,
                        {{"r", static_cast<std::int64_t>(r)},
                         {"s", static_cast<std::int64_t>(s)},
                         {"quad_points", static_cast<std::int64_t>(quad_points)},
                         {"max_level", static_cast<std::int64_t>(level)},
                         {"converged", static_cast<std::int64_t>(converged)}},
                        evals);
}

IdentityReport mikolas_integral(std::uint64_t a, std::uint64_t b, ComplexParam s, std::size_t quad_points, double tol) {
  if (a == 0 || b == 0) throw InvalidArgument("mikolas_integral: a, b must be >= 1");
  if (!(s.re() > 0.5)) throw DomainError("mikolas_integral: the integral diverges for Re s <= 1/2");
  const std::uint64_t L = lcm_u64(a, b);
  const std::uint64_t both[2] = {a, b};
  const auto pts = merged_breakpoints(L, both);
  const unsigned level = level_for_budget(quad_points, pts.size() - 1);
  const ComplexParam t(1.0 - s.re(), -s.im());
  Complex total(0.0);
  std::size_t evals = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto oa = offsets(a, L, pts[i], pts[i + 1]);
    const auto ob = offsets(b, L, pts[i], pts[i + 1]);
    const double lo = static_cast<double>(pts[i]) / static_cast<double>(L);
    const double hi = static_cast<double>(pts[i + 1]) / static_cast<double>(L);
    QuadratureInfo info;
    total += tanh_sinh<Complex>(
        [&](double, double dl, double dr) {
          const double u = sawtooth_fraction(oa.left, oa.right, static_cast<double>(a), dl, dr);
          const double v = sawtooth_fraction(ob.left, ob.right, static_cast<double>(b), dl, dr);
          return hurwitz_zeta(t, u) * hurwitz_zeta(t, v);
        },
        lo, hi, 1e-12, level, &info);
    evals += info.evaluations;
  }
  const Complex sv = s.value();
  const double ratio = static_cast<double>(std::gcd(a, b)) / static_cast<double>(L);
  const Complex g = gamma_fn(s);
  const Complex rhs = 2.0 * g * g * zeta(ComplexParam(2.0 * sv)) * std::exp(-2.0 * sv * std::log(2.0 * kPi)) *
                      std::exp(sv * std::log(ratio));
  return numeric_report("mikolas", total, rhs, tol,
                        {{"a", static_cast<std::int64_t>(a)},
                         {"b", static_cast<std::int64_t>(b)},
                         {"s", s_string(s)},
                         {"quad_points", static_cast<std::int64_t>(quad_points)}},
                        evals);
}

// ---- Ramanujan ----

IdentityReport ramanujan_point_formula(std::uint64_t k, ComplexParam s, std::size_t n_periods, double tol) {
  if (k < 2) throw PreconditionViolation("ramanujan_point_formula: requires k >= 2");
  if (!(s.re() > 0.0)) throw DomainError("ramanujan_point_formula: requires Re s > 0");
  if (n_periods == 0) throw InvalidArgument("ramanujan_point_formula: n_periods must be >= 1");
  const Complex sv = s.value();
  const bool at_one = sv == Complex(1.0, 0.0);
  const auto c = ramanujan_table(k, k).values;
  const bool real_s = sv.imag() == 0.0;
  const double sigma = sv.real();

  // Each period sums c_k to zero, so period blocks decay like (jk)^{-s-1}.
  Accumulator acc;
  for (std::size_t j = 0; j < n_periods; ++j) {
    const std::uint64_t base = j * k;
    if (real_s) {
      double block = 0.0;
      for (std::uint64_t r = 1; r <= k; ++r) {
        if (c[r - 1] == 0) continue;
        const double m = static_cast<double>(base + r);
        const double w = at_one ? 1.0 / m : std::pow(m, -sigma);
        block += static_cast<double>(c[r - 1]) * w;
      }
      acc.add(block);
    } else {
      Complex block(0.0);
      for (std::uint64_t r = 1; r <= k; ++r)
        if (c[r - 1] != 0) block += static_cast<double>(c[r - 1]) * inv_pow(base + r, sv);
      acc.add(block);
    }
  }
  double weight = 0.0;
  for (std::uint64_t r = 1; r <= k; ++r) weight += std::abs(static_cast<double>(c[r - 1])) * static_cast<double>(r);
  const double P = static_cast<double>(n_periods);
  const double tail = std::abs(sv) * weight / std::pow(static_cast<double>(k), sigma + 1.0) *
                      (std::pow(P, -sigma - 1.0) + std::pow(P, -sigma) / sigma);

  Complex rhs(0.0);
  if (at_one) {
    rhs = -von_mangoldt_of(k);
  } else {
    Complex sum(0.0);
    for (auto d : divisors(k)) sum += static_cast<double>(mobius_of(k / d)) * cpow_int(d, 1.0 - sv);
    rhs = zeta(s) * sum;
  }
  if (tol < 0.0) tol = at_one ? 1e-3 : 1e-6;
  return numeric_report("ramanujan-point", acc.value(), rhs, tol,
                        {{"k", static_cast<std::int64_t>(k)},
                         {"s", s_string(s)},
                         {"periods", static_cast<std::int64_t>(n_periods)},
                         {"tail_bound", tail}},
                        n_periods * k, at_one);
}

IdentityReport ramanujan_dual_formula(std::uint64_t m, ComplexParam s, std::size_t n_terms, double tol) {
  if (m == 0) throw InvalidArgument("ramanujan_dual_formula: m must be >= 1");
  if (!(s.re() >= 1.0)) throw DomainError("ramanujan_dual_formula: requires Re s >= 1");
  if (n_terms == 0) throw InvalidArgument("ramanujan_dual_formula: n_terms must be >= 1");
  const Complex sv = s.value();
  const bool boundary = sv.real() == 1.0;
  const auto c = ramanujan_column(m, n_terms);
  Accumulator acc;
  for (std::size_t k = 1; k <= n_terms; ++k)
    if (c[k - 1] != 0) acc.add(static_cast<double>(c[k - 1]) * inv_pow(k, sv));

  Complex rhs(0.0);
  if (sv != Complex(1.0, 0.0)) {
    Complex sig(0.0);
    for (auto d : divisors(m)) sig += cpow_int(d, 1.0 - sv);
    rhs = sig / zeta(s);
  }
  double sigma_m = 0.0;
  for (auto d : divisors(m)) sigma_m += static_cast<double>(d);
  const double tail =
      boundary ? std::numeric_limits<double>::infinity()
               : sigma_m * std::pow(static_cast<double>(n_terms), 1.0 - sv.real()) / (sv.real() - 1.0);
  if (tol < 0.0) tol = boundary ? 1e-2 : 1e-6;
  return numeric_report("ramanujan-dual", acc.value(), rhs, tol,
                        {{"m", static_cast<std::int64_t>(m)}, {"s", s_string(s)}, {"tail_bound", tail}}, n_terms,
                        boundary);
}

// ---- Delange / Lucht ----

DelangeResult delange_expand(const ArithFunction& g, std::size_t q_max, std::size_t m_max, std::size_t n_check,
                             double tol) {
  if (q_max == 0 || m_max == 0 || n_check == 0) throw InvalidArgument("delange_expand: sizes must be >= 1");
  DelangeResult out;
  out.fhat.resize(q_max);
  for (std::size_t q = 1; q <= q_max; ++q) {
    Accumulator acc;
    for (std::size_t m = 1; m <= m_max; ++m) acc.add(g(q * m) / static_cast<double>(q * m));
    out.fhat[q - 1] = acc.value();
  }
  std::size_t worst_n = 1;
  for (std::size_t n = 1; n <= n_check; ++n) {
    Complex direct(0.0);
    for (auto d : divisors(n)) direct += g(d);
    const auto c = ramanujan_column(n, q_max);
    Accumulator acc;
    for (std::size_t q = 1; q <= q_max; ++q)
      if (c[q - 1] != 0) acc.add(out.fhat[q - 1] * static_cast<double>(c[q - 1]));
    out.direct.push_back(direct);
    out.reconstructed.push_back(acc.value());
    const double err = std::abs(acc.value() - direct);
    if (err > out.max_error) {
      out.max_error = err;
      worst_n = n;
    }
  }
  const std::size_t N = std::min<std::size_t>(q_max * m_max, 10'000'000);
  const auto theta = sieve(FunctionKind::theta, N);
  double half = 0.0, full = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    full += static_cast<double>(theta[n]) * std::abs(g(n)) / static_cast<double>(n);
    if (n == N / 2) half = full;
  }
  out.condition_half = half;
  out.condition_full = full;
  out.condition_stable = std::abs(full - half) <= 1e-3 * std::max(1.0, full);
  out.report = numeric_report("delange", out.reconstructed[worst_n - 1], out.direct[worst_n - 1], tol,
                              {{"q_max", static_cast<std::int64_t>(q_max)},
                               {"m_max", static_cast<std::int64_t>(m_max)},
                               {"n_check", static_cast<std::int64_t>(n_check)},
                               {"worst_n", static_cast<std::int64_t>(worst_n)},
                               {"condition_stable", static_cast<std::int64_t>(out.condition_stable)}},
                              q_max * m_max);
  return out;
}

Complex lucht_transform(const ArithFunction& g, std::uint64_t k, std::size_t N) {
  if (k == 0 || N == 0) throw InvalidArgument("lucht_transform: k, N must be >= 1");
  const auto mu = sign_sieve(FunctionKind::mu, N);
  Accumulator acc;
  for (std::size_t n = 1; n <= N; ++n)
    if (mu[n - 1] != 0) acc.add(static_cast<double>(mu[n - 1]) * g(k * n));
  return static_cast<double>(k) * acc.value();
}

IdentityReport lucht_check(Complex z, ComplexParam s, std::uint64_t l, std::size_t N, double tol) {
  if (!(std::abs(z) < 1.0)) throw DomainError("lucht_check: requires |z| < 1");
  const Complex sv = s.value();
  const Complex log_z = z == Complex(0.0) ? Complex(0.0) : std::log(z);
  const ArithFunction g = [&](std::uint64_t n) -> Complex {
    if (z == Complex(0.0)) return 0.0;
    return std::exp(static_cast<double>(n) * log_z - sv * std::log(static_cast<double>(n)));
  };
  Complex lhs(0.0);
  for (auto d : divisors(l)) lhs += lucht_transform(g, d, N);
  const auto c = ramanujan_column(l, N);
  const Complex rhs = arithmetic_series(c, s, z, 1.0).value;
  return numeric_report("lucht",
                        lhs, rhs, tol,
                        {{"l", static_cast<std::int64_t>(l)},
                         {"s", s_string(s)},
                         {"z", ComplexParam(z).to_string()}},
                        N);
}

// ---- subseries ----

Complex jordan_phi_s(std::uint64_t q, ComplexParam s) {
  if (q == 0) throw InvalidArgument("jordan_phi_s: q must be >= 1");
  Complex prod = cpow_int(q, s.value());
  for (auto p : prime_divisors(q)) prod *= 1.0 - inv_pow(p, s.value());
  return prod;
}

IdentityReport mu_subseries(std::uint64_t q, ComplexParam s, std::size_t n_terms, double tol) {
  if (q == 0 || n_terms == 0) throw InvalidArgument("mu_subseries: q, n_terms must be >= 1");
  if (!(s.re() > 1.0)) throw DomainError("mu_subseries: requires Re s > 1");
  const std::size_t top = static_cast<std::size_t>(q) * n_terms;
  if (top > 200'000'000) throw InvalidArgument("mu_subseries: q * n_terms too large");
  const auto mu = sign_sieve(FunctionKind::mu, top);
  const Complex sv = s.value();
  Accumulator acc;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    const auto m = mu[q * n - 1];
    if (m != 0) acc.add(static_cast<double>(m) * inv_pow(n, sv));
  }
  const Complex phi = jordan_phi_s(q, s);
  Complex phi_div(0.0);
  for (auto d : divisors(q)) phi_div += static_cast<double>(mobius_of(q / d)) * cpow_int(d, sv);
  ParamMap params{{"q", static_cast<std::int64_t>(q)},
                  {"s", s_string(s)},
                  {"phi_s_crosscheck", std::abs(phi - phi_div)},
                  {"tail_bound", std::pow(static_cast<double>(n_terms), 1.0 - s.re()) / (s.re() - 1.0)}};
  if (s.is_real() && s.re() == std::floor(s.re()) && s.re() <= 60.0) {
    // Exact check of the divisor-sum form for integer s.
    const long si = static_cast<long>(s.re());
    BigInt closed = 1, divsum = 0;
    BigInt qs;
    mpz_ui_pow_ui(qs.get_mpz_t(), q, static_cast<unsigned long>(si));
    closed = qs;
    for (auto p : prime_divisors(q)) {
      BigInt ps;
      mpz_ui_pow_ui(ps.get_mpz_t(), p, static_cast<unsigned long>(si));
      closed = closed / ps * (ps - 1);
    }
    for (auto d : divisors(q)) {
      BigInt ds;
      mpz_ui_pow_ui(ds.get_mpz_t(), d, static_cast<unsigned long>(si));
      divsum += mobius_of(q / d) * ds;
    }
    params["phi_s_exact_match"] = static_cast<std::int64_t>(closed == divsum);
  }
  const Complex rhs = static_cast<double>(mobius_of(q)) * cpow_int(q, sv) / (phi * zeta(s));
  return numeric_report("mu-subseries", acc.value(), rhs, tol, std::move(params), n_terms);
}

IdentityReport musq_coprime_series(std::uint64_t n, ComplexParam s, std::size_t n_terms, double tol) {
  if (n == 0 || n_terms == 0) throw InvalidArgument("musq_coprime_series: n, n_terms must be >= 1");
  if (!(s.re() > 1.0)) throw DomainError("musq_coprime_series: requires Re s > 1");
  const auto mu = sign_sieve(FunctionKind::mu, n_terms);
  const Complex sv = s.value();
  Accumulator acc;
  for (std::size_t m = 1; m <= n_terms; ++m)
    if (mu[m - 1] != 0 && std::gcd<std::uint64_t>(m, n) == 1) acc.add(inv_pow(m, sv));
  Complex psi(0.0);
  for (auto d : divisors(n))
    if (mobius_of(n / d) != 0) psi += cpow_int(d, sv);
  const Complex rhs = cpow_int(n, sv) * zeta(s) / (psi * zeta(ComplexParam(2.0 * sv)));
  return numeric_report("musq-coprime", acc.value(), rhs, tol,
                        {{"n", static_cast<std::int64_t>(n)},
                         {"s", s_string(s)},
                         {"psi_re", psi.real()},
                         {"tail_bound", std::pow(static_cast<double>(n_terms), 1.0 - s.re()) / (s.re() - 1.0)}},
                        n_terms);
}

// ---- roots of unity ----

IdentityReport besicovitch_sum(std::uint64_t k, ComplexParam s, std::size_t n_terms, SignKind kind, double tol) {
  if (k == 0 || n_terms == 0) throw InvalidArgument("besicovitch_sum: k, n_terms must be >= 1");
  if (!(s.re() >= 1.0)) throw DomainError("besicovitch_sum: requires Re s >= 1");
  const Complex sv = s.value();
  const bool at_one = sv == Complex(1.0, 0.0);
  const auto f = sign_sieve(kind == SignKind::mu ? FunctionKind::mu : FunctionKind::liouville, n_terms);
  // Values of the truncated series at each k-th root, grouped by residue.
  std::vector<Accumulator> residue(k);
  for (std::size_t n = 1; n <= n_terms; ++n)
    if (f[n - 1] != 0) residue[n % k].add(static_cast<double>(f[n - 1]) * inv_pow(n, sv));
  Accumulator lhs;
  for (std::uint64_t h = 1; h <= k; ++h) {
    Complex value(0.0);
    for (std::uint64_t r = 0; r < k; ++r) {
      const double angle = 2.0 * kPi * static_cast<double>((h * r) % k) / static_cast<double>(k);
      value += residue[r].value() * Complex(std::cos(angle), std::sin(angle));
    }
    lhs.add(value);
  }
  Complex rhs(0.0);
  if (!at_one) {
    const Complex k_pow = cpow_int(k, 1.0 - sv);
    if (kind == SignKind::mu) {
      Complex euler(1.0);
      for (auto p : prime_divisors(k)) euler *= 1.0 - inv_pow(p, sv);
      rhs = static_cast<double>(mobius_of(k)) * k_pow / (euler * zeta(s));
    } else {
      rhs = static_cast<double>(liouville_of(k)) * k_pow * zeta(ComplexParam(2.0 * sv)) / zeta(s);
    }
  }
  if (tol < 0.0) tol = at_one ? 1e-2 : 1e-6;
  return numeric_report(kind == SignKind::mu ? "besicovitch" : "besicovitch-liouville", lhs.value(), rhs, tol,
                        {{"k", static_cast<std::int64_t>(k)}, {"s", s_string(s)}}, n_terms, at_one);
}

IdentityReport liouville_alternating(ComplexParam s, std::size_t n_terms, double tol) {
  if (n_terms == 0) throw InvalidArgument("liouville_alternating: n_terms must be >= 1");
  if (!(s.re() > 1.0)) throw DomainError("liouville_alternating: requires Re s > 1");
  const auto lam = sign_sieve(FunctionKind::liouville, n_terms);
  const Complex sv = s.value();
  Accumulator acc;
  for (std::size_t n = 1; n <= n_terms; ++n) {
    const double sign = (n % 2 == 1 ? 1.0 : -1.0) * lam[n - 1];
    acc.add(sign * inv_pow(n, sv));
  }
  const Complex rhs = (1.0 + cpow_int(2, 1.0 - sv)) * zeta(ComplexParam(2.0 * sv)) / zeta(s);
  return numeric_report("liouville-alt", acc.value(), rhs, tol, {{"s", s_string(s)}}, n_terms);
}

std::vector<BigInt> cyclotomic_polynomial(std::uint64_t d) {
  if (d == 0) throw InvalidArgument("cyclotomic_polynomial: d must be >= 1");
  // x^d - 1 divided by Phi_e for every proper divisor e.
  std::vector<BigInt> num(d + 1, 0);
  num[0] = -1;
  num[d] = 1;
  for (auto e : divisors(d)) {
    if (e == d) continue;
    const auto den = cyclotomic_polynomial(e);
    const std::size_t dd = den.size() - 1;
    std::vector<BigInt> quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      const BigInt coef = num[i];  // den is monic
      quot[i - dd] = coef;
      if (coef == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= coef * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

RootSum<Rational> truncated_root_sum(const TruncatedSeries<Rational>& f, std::uint64_t k) {
  if (k == 0) throw InvalidArgument("truncated_root_sum: k must be >= 1");
  const std::size_t N = f.order();
  RootSum<Rational> out{Rational(0), Rational(0)};
  std::vector<Rational> terms;
  for (std::size_t j = k; j <= N; j += k)
    if (f[j] != 0) terms.push_back(f[j]);
  out.residue_route = tree_sum(terms) * static_cast<long>(k);
  out.residue_route.canonicalize();

  // The k-th roots are the primitive d-th roots for d | k; their sum is the
  // trace of f(zeta_d) from Q(zeta_d), obtained after reduction mod Phi_d.
  std::vector<Rational> traces;
  for (auto d : divisors(k)) {
    std::vector<std::vector<Rational>> classes(d);
    for (std::size_t n = 1; n <= N; ++n)
      if (f[n] != 0) classes[n % d].push_back(f[n]);
    std::vector<Rational> rem(d);
    for (std::size_t r = 0; r < d; ++r) rem[r] = tree_sum(classes[r]);
    const auto phi = cyclotomic_polynomial(d);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = rem.size(); i-- > deg;) {
      const Rational coef = rem[i];
      if (coef == 0) continue;
      for (std::size_t j = 0; j <= deg; ++j) rem[i - deg + j] -= coef * Rational(phi[j]);
    }
    for (std::size_t j = 0; j < std::min<std::size_t>(deg, rem.size()); ++j) {
      if (rem[j] == 0) continue;
      const std::int64_t trace = j == 0 ? static_cast<std::int64_t>(totient_of(d)) : ramanujan_sum(d, j);
      traces.push_back(rem[j] * static_cast<long>(trace));
    }
  }
  out.direct = tree_sum(traces);
  out.direct.canonicalize();
  return out;
}

RootSum<Complex> truncated_root_sum(const TruncatedSeries<Complex>& f, std::uint64_t k) {
  if (k == 0) throw InvalidArgument("truncated_root_sum: k must be >= 1");
  RootSum<Complex> out{Complex(0.0), Complex(0.0)};
  for (std::size_t j = k; j <= f.order(); j += k) out.residue_route += f[j];
  out.residue_route *= static_cast<double>(k);
  for (std::uint64_t h = 1; h <= k; ++h) out.direct += f.evaluate(std::polar(1.0, 2.0 * kPi * static_cast<double>(h) / static_cast<double>(k)));
  return out;
}

IdentityReport mu_tail_bound_check(std::uint64_t D, double tau) {
  if (D == 0) throw InvalidArgument("mu_tail_bound_check: D must be >= 1");
  if (!(tau > 1.0 && tau < 1.5)) throw DomainError("mu_tail_bound_check: requires 1 < tau < 3/2");
  double P = 1.0;
  for (auto p : prime_divisors(D)) P *= 1.0 - std::pow(static_cast<double>(p), -tau);
  const double z = zeta(tau);
  const double closed = std::abs(static_cast<double>(mobius_of(D))) / (z * P);
  const double e_bound = std::exp(1.0) * (tau - 1.0);
  const double bound = e_bound / z;
  const bool sum_ok = closed <= bound;
  const bool product_ok = P <= e_bound;
  IdentityReport r;
  r.name = "mu-tail-bound";
  r.lhs = Complex(closed);
  r.rhs = Complex(bound);
  r.abs_error = std::abs(closed - bound);
  r.params = {{"D", static_cast<std::int64_t>(D)},
              {"tau", tau},
              {"P_D", P},
              {"e_tau_minus_1", e_bound},
              {"sum_bound_holds", static_cast<std::int64_t>(sum_ok)},
              {"product_bound_holds", static_cast<std::int64_t>(product_ok)}};
  r.verdict = sum_ok && product_ok ? Verdict::pass : Verdict::fail;
  return r;
}

ChowlaScan chowla_correlation_scan(SignKind kind, std::span<const std::uint64_t> shifts,
                                   std::span<const unsigned> exponents, std::size_t M, std::size_t checkpoints) {
  if (shifts.empty() || shifts.size() != exponents.size())
    throw InvalidArgument("chowla_correlation_scan: shifts and exponents must be non-empty and equal in length");
  if (M == 0 || checkpoints == 0) throw InvalidArgument("chowla_correlation_scan: M, checkpoints must be >= 1");
  std::set<std::uint64_t> seen(shifts.begin(), shifts.end());
  if (seen.size() != shifts.size()) throw InvalidArgument("chowla_correlation_scan: shifts must be distinct");
  for (auto e : exponents)
    if (e != 1 && e != 2) throw InvalidArgument("chowla_correlation_scan: exponents must be 1 or 2");
  const std::uint64_t max_shift = *std::max_element(shifts.begin(), shifts.end());
  const auto f = sign_sieve(kind == SignKind::mu ? FunctionKind::mu : FunctionKind::liouville, M + max_shift);
  ChowlaScan out;
  out.positive_density_warning = std::all_of(exponents.begin(), exponents.end(), [](unsigned e) { return e == 2; });
  std::int64_t S = 0;
  std::size_t next = 1;
  for (std::size_t m = 1; m <= M; ++m) {
    int prod = 1;
    for (std::size_t i = 0; i < shifts.size() && prod != 0; ++i) {
      const int v = f[m + shifts[i] - 1];
      prod *= exponents[i] == 2 ? v * v : v;
    }
    S += prod;
    const std::size_t mark = M * next / checkpoints;
    if (m == mark) {
      out.trend.emplace_back(m, static_cast<double>(S) / static_cast<double>(m));
      ++next;
    }
  }
  out.normalized = static_cast<double>(S) / static_cast<double>(M);
  return out;
}

// ---- Kubert ----

IdentityReport kubert_logsin(unsigned n, double x, double tol) {
  if (n == 0) throw InvalidArgument("kubert_logsin: n must be >= 1");
  double lhs = 0.0;
  for (unsigned k = 0; k < n; ++k) lhs += log_two_sin(x + static_cast<double>(k) / n);
  const double rhs = log_two_sin(n * x);
  return numeric_report("kubert-logsin", lhs, rhs, tol, {{"n", static_cast<std::int64_t>(n)}, {"x", x}}, n);
}

IdentityReport kubert_hurwitz(unsigned m, ComplexParam s, double x, double tol) {
  if (m == 0) throw InvalidArgument("kubert_hurwitz: m must be >= 1");
  Complex lhs(0.0);
  for (unsigned k = 0; k < m; ++k) lhs += hurwitz_zeta(s, (x + k) / m);
  const Complex rhs = cpow_int(m, s.value()) * hurwitz_zeta(s, x);
  return numeric_report("kubert-hurwitz", lhs, rhs, tol * std::max(1.0, std::abs(rhs)),
                        {{"m", static_cast<std::int64_t>(m)}, {"s", s_string(s)}, {"x", x}, {"rel_tol", tol}}, m);
}

IdentityReport kubert_polylog(unsigned m, ComplexParam s, double x, double tol) {
  if (m == 0) throw InvalidArgument("kubert_polylog: m must be >= 1");
  if (!(s.re() > 1.0)) throw DomainError("kubert_polylog: requires Re s > 1");
  const double inner_tol = tol / (4.0 * (std::pow(static_cast<double>(m), s.re()) + 1.0));
  std::size_t terms = 0;
  auto ell = [&](double y) {
    const auto r = polylog(s, std::polar(1.0, 2.0 * kPi * y), inner_tol);
    terms += r.terms_used;
    return r.value;
  };
  Complex sum(0.0);
  for (unsigned k = 0; k < m; ++k) sum += ell((x + k) / m);
  const Complex lhs = cpow_int(m, s.value() - 1.0) * sum;
  const Complex rhs = ell(x);
  return numeric_report("kubert-polylog", lhs, rhs, tol,
                        {{"m", static_cast<std::int64_t>(m)}, {"s", s_string(s)}, {"x", x}}, terms);
}

IdentityReport lerch_report(ComplexParam s, double x, double tol) {
  if (!(s.re() > 0.0 && s.re() < 1.0)) throw DomainError("lerch: requires 0 < Re s < 1");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("lerch: requires 0 < x < 1");
  const auto [A, B] = lerch_coefficients(s);
  const ComplexParam t(1.0 - s.re(), -s.im());
  const Complex lhs = boundary_polylog_abel(s, x);
  const Complex rhs = A * hurwitz_zeta(t, x) + B * hurwitz_zeta(t, 1.0 - x);
  return numeric_report("lerch", lhs, rhs, tol, {{"s", s_string(s)}, {"x", x}}, 0);
}

}  // namespace ah

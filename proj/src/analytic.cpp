#include "arith_harmonics/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "arith_harmonics/arith.hpp"
#include "arith_harmonics/series.hpp"

namespace ah {

namespace {

constexpr double kCircleSlack = 1e-14;
constexpr double kInf = std::numeric_limits<double>::infinity();

Complex int_power(Complex z, std::uint64_t n) {
  if (z == Complex(0.0)) return z;
  return std::exp(static_cast<double>(n) * std::log(z));
}

bool on_circle(Complex z) { return std::abs(std::abs(z) - 1.0) <= kCircleSlack; }

void require_in_disk(Complex z, const char* what) {
  if (!(std::abs(z) <= 1.0 + kCircleSlack)) throw DomainError(std::string(what) + ": requires |z| <= 1");
}

// Bound for sum_{k > K} r^k k^{-sigma}, 0 <= r < 1.
double geometric_tail(double r, double sigma, std::size_t K) {
  if (r == 0.0) return 0.0;
  const double k1 = static_cast<double>(K) + 1.0;
  const double first = std::exp(k1 * std::log(r) - sigma * std::log(k1));
  double rho = r;
  if (sigma < 0.0) rho = r * std::pow((k1 + 1.0) / k1, -sigma);
  if (rho >= 1.0) return kInf;
  return first / (1.0 - rho);
}

// Bound for sum_{k > K} k^{-sigma} on the circle, sigma > 1.
double integral_tail(double sigma, std::size_t K) {
  if (K == 0) return kInf;
  return std::pow(static_cast<double>(K), 1.0 - sigma) / (sigma - 1.0);
}

struct PartialSum {
  Complex value;
  std::vector<Complex> dyadic;  // dyadic[m] = sum over 2^m <= k < 2^{m+1}
};

template <class Coeff>
PartialSum partial_sum(std::size_t n, Coeff&& coeff, Complex s, Complex z) {
  PartialSum out;
  if (n == 0 || z == Complex(0.0)) return out;
  out.dyadic.assign(static_cast<std::size_t>(std::bit_width(n)), Complex(0.0));
  const Complex log_z = std::log(z);
  for (std::size_t k = 1; k <= n; ++k) {
    const Complex c = coeff(k);
    if (c == Complex(0.0)) continue;
    const double lk = std::log(static_cast<double>(k));
    const Complex t = c * std::exp(static_cast<double>(k) * log_z - s * lk);
    out.dyadic[static_cast<std::size_t>(std::bit_width(k)) - 1] += t;
  }
  // Sum blocks from the smallest magnitudes up.
  for (std::size_t m = out.dyadic.size(); m-- > 0;) out.value += out.dyadic[m];
  return out;
}

double dyadic_heuristic(const std::vector<Complex>& blocks) {
  double worst = 0.0;
  const std::size_t first = blocks.size() > 10 ? blocks.size() - 10 : 0;
  for (std::size_t m = first; m < blocks.size(); ++m) worst = std::max(worst, std::abs(blocks[m]));
  return worst;
}

template <class Coeff>
SeriesEvalResult eval_series(std::size_t n, Coeff&& coeff, double coefficient_bound, double sigma_shift, Complex s,
                             Complex z, double tol) {
  require_in_disk(z, "series evaluation");
  SeriesEvalResult res;
  res.terms_used = n;
  if (z == Complex(0.0)) {
    res.converged = true;
    res.rigorous = true;
    return res;
  }
  auto ps = partial_sum(n, coeff, s, z);
  res.value = ps.value;
  if (on_circle(z)) {
    res.tail_estimate = dyadic_heuristic(ps.dyadic);
    res.rigorous = false;
  } else {
    res.tail_estimate = coefficient_bound * geometric_tail(std::abs(z), s.real() - sigma_shift, n);
    res.rigorous = true;
  }
  res.converged = res.tail_estimate <= tol;
  return res;
}

SeriesEvalResult abel_eval(const std::function<Complex(double)>& f, std::size_t terms) {
  SeriesEvalResult res;
  const Complex fine = abel_limit(f, 8, 4);
  const Complex coarse = abel_limit(f, 8, 3);
  res.value = fine;
  res.terms_used = terms;
  res.tail_estimate = std::abs(fine - coarse);
  res.rigorous = false;
  return res;
}

SeriesEvalResult sign_series(const std::vector<std::int8_t>& v, Complex s, Complex z, double tol) {
  return eval_series(
      v.size(), [&](std::size_t k) { return Complex(static_cast<double>(v[k - 1]), 0.0); }, 1.0, 0.0, s, z, tol);
}

SeriesEvalResult named_series(FunctionKind kind, ComplexParam s, Complex z, std::size_t n_terms, SummationMode mode,
                              double tol) {
  require_in_disk(z, "series evaluation");
  if (n_terms == 0) throw InvalidArgument("series evaluation: n_terms must be >= 1");
  const auto table = sign_sieve(kind, n_terms);
  if (mode == SummationMode::abel) {
    const Complex u = z / std::abs(z);
    auto res = abel_eval([&](double r) { return sign_series(table, s.value(), r * u, tol).value; }, n_terms);
    res.converged = res.tail_estimate <= tol;
    return res;
  }
  return sign_series(table, s.value(), z, tol);
}

}  // namespace

SeriesEvalResult arithmetic_series(std::span<const std::int64_t> values, ComplexParam s, Complex z,
                                   double coefficient_bound, double tol) {
  return eval_series(
      values.size(), [&](std::size_t k) { return Complex(static_cast<double>(values[k - 1]), 0.0); },
      coefficient_bound, 0.0, s.value(), z, tol);
}

SeriesEvalResult polylog(ComplexParam s, Complex z, double tol, SummationMode mode, std::size_t max_terms) {
  require_in_disk(z, "polylog");
  const double sigma = s.re();
  SeriesEvalResult res;
  if (z == Complex(0.0)) {
    res.converged = true;
    res.rigorous = true;
    return res;
  }
  const bool boundary = on_circle(z);
  if (boundary && sigma <= 1.0) {
    if (mode != SummationMode::abel)
      throw DomainError("polylog: |z| = 1 requires Re s > 1 (use Abel mode)");
    const Complex u = z / std::abs(z);
    res = abel_eval([&](double r) { return polylog(s, r * u, 1e-15, SummationMode::direct, max_terms).value; },
                    max_terms);
    res.converged = res.tail_estimate <= tol;
    return res;
  }
  const double r = std::abs(z);
  const Complex log_z = std::log(z);
  const Complex sv = s.value();
  Complex acc(0.0);
  std::size_t k = 0;
  double bound = kInf;
  constexpr std::size_t kStride = 64;
  while (k < max_terms) {
    const std::size_t stop = std::min(max_terms, k + kStride);
    for (++k; k <= stop; ++k)
      acc += std::exp(static_cast<double>(k) * log_z - sv * std::log(static_cast<double>(k)));
    k = stop;
    bound = boundary ? integral_tail(sigma, k) : geometric_tail(r, sigma, k);
    if (bound <= tol) break;
  }
  res.value = acc;
  res.terms_used = k;
  res.tail_estimate = bound;
  res.converged = bound <= tol;
  res.rigorous = true;
  return res;
}

SeriesEvalResult mobius_series(ComplexParam s, Complex z, std::size_t n_terms, SummationMode mode, double tol) {
  return named_series(FunctionKind::mu, s, z, n_terms, mode, tol);
}

SeriesEvalResult liouville_series(ComplexParam s, Complex z, std::size_t n_terms, SummationMode mode, double tol) {
  return named_series(FunctionKind::liouville, s, z, n_terms, mode, tol);
}

RamanujanSeriesResult ramanujan_series_routes(ComplexParam s, std::uint64_t l, Complex z, std::size_t n_terms) {
  if (l == 0) throw InvalidArgument("ramanujan_series: l must be >= 1");
  if (n_terms == 0) throw InvalidArgument("ramanujan_series: n_terms must be >= 1");
  require_in_disk(z, "ramanujan_series");
  const auto divs = divisors(l);
  double sigma_l = 0.0;
  for (auto d : divs) sigma_l += static_cast<double>(d);

  const auto c = ramanujan_column(l, n_terms);
  RamanujanSeriesResult out;
  out.direct_route = arithmetic_series(c, s, z, sigma_l);

  const auto mu = sign_sieve(FunctionKind::mu, n_terms);
  SeriesEvalResult& id = out.identity_route;
  id.terms_used = n_terms;
  id.rigorous = true;
  for (auto d : divs) {
    const Complex zd = int_power(z, d);
    const auto m = sign_series(mu, s.value(), zd, 1e-8);
    const Complex w = std::exp((1.0 - s.value()) * std::log(static_cast<double>(d)));
    id.value += w * m.value;
    id.tail_estimate += std::abs(w) * m.tail_estimate;
    id.rigorous = id.rigorous && m.rigorous;
  }
  id.converged = id.tail_estimate <= 1e-8;

  const double diff = std::abs(id.value - out.direct_route.value);
  const double allowed =
      10.0 * (id.tail_estimate + out.direct_route.tail_estimate) + 1e-12 * (1.0 + std::abs(id.value));
  if (diff > allowed)
    throw InternalConsistencyError("ramanujan_series: direct and divisor routes disagree by " + format_double(diff));
  return out;
}

SeriesEvalResult ramanujan_series(ComplexParam s, std::uint64_t l, Complex z, std::size_t n_terms) {
  return ramanujan_series_routes(s, l, z, n_terms).identity_route;
}

EstermannResult estermann_routes(ComplexParam s, ComplexParam a, Complex z, std::size_t n_terms) {
  require_in_disk(z, "estermann");
  if (n_terms == 0) throw InvalidArgument("estermann: n_terms must be >= 1");
  const double a_plus = std::max(0.0, a.re());
  if (on_circle(z) && !(s.re() > 1.0 + a_plus))
    throw DomainError("estermann: on |z| = 1 requires Re s > 1 + max(0, Re a)");
  const auto sig = sieve_sigma(a.value(), n_terms);
  EstermannResult out;
  // |sigma_a(n)| <= d(n) n^{a+} <= 2 sqrt(n) n^{a+}
  out.direct_route =
      eval_series(n_terms, [&](std::size_t k) { return sig[k]; }, 2.0, a_plus + 0.5, s.value(), z, 1e-8);

  // sum_p p^{a-s} L_s(z^p), each polylog truncated at p k <= n_terms.
  const Complex sv = s.value();
  const Complex av = a.value();
  Complex riesz(0.0);
  double scale = 0.0;
  for (std::size_t p = 1; p <= n_terms; ++p) {
    const double lp = std::log(static_cast<double>(p));
    const Complex w = std::exp((av - sv) * lp);
    const std::size_t kmax = n_terms / p;
    const auto inner =
        partial_sum(kmax, [](std::size_t) { return Complex(1.0, 0.0); }, sv, int_power(z, p));
    riesz += w * inner.value;
    scale += std::abs(w * inner.value);
  }
  out.riesz_route = riesz;
  const double diff = std::abs(riesz - out.direct_route.value);
  if (diff > 1e-10 * (1.0 + scale))
    throw InternalConsistencyError("estermann: direct and Riesz routes disagree by " + format_double(diff));
  return out;
}

SeriesEvalResult estermann(ComplexParam s, ComplexParam a, Complex z, std::size_t n_terms) {
  return estermann_routes(s, a, z, n_terms).direct_route;
}

std::vector<Complex> evaluate_at_roots(std::span<const Complex> coeffs, std::uint64_t k) {
  if (k == 0) throw InvalidArgument("evaluate_at_roots: k must be >= 1");
  std::vector<Complex> residue(k, Complex(0.0));
  for (std::size_t n = 1; n <= coeffs.size(); ++n) residue[n % k] += coeffs[n - 1];
  std::vector<Complex> out(k, Complex(0.0));
  for (std::uint64_t h = 1; h <= k; ++h) {
    Complex acc(0.0);
    for (std::uint64_t r = 0; r < k; ++r) {
      const double angle = 2.0 * kPi * static_cast<double>((h * r) % k) / static_cast<double>(k);
      acc += residue[r] * Complex(std::cos(angle), std::sin(angle));
    }
    out[h - 1] = acc;
  }
  return out;
}

Complex abel_limit(const std::function<Complex(double)>& f, unsigned first_level, unsigned depth) {
  if (first_level == 0) throw InvalidArgument("abel_limit: first_level must be >= 1");
  // Richardson table in h = 1 - r, halving h at each level.
  std::vector<Complex> row;
  for (unsigned j = 0; j <= depth; ++j) {
    const double h = std::ldexp(1.0, -static_cast<int>(first_level + j));
    std::vector<Complex> next{f(1.0 - h)};
    for (unsigned m = 1; m <= j; ++m) {
      const double factor = std::ldexp(1.0, static_cast<int>(m)) - 1.0;
      next.push_back(next[m - 1] + (next[m - 1] - row[m - 1]) / factor);
    }
    row = std::move(next);
  }
  return row.back();
}

GridFunction GridFunction::sample(std::size_t resolution, const std::function<double(double)>& f) {
  if (resolution == 0) throw InvalidArgument("GridFunction: resolution must be >= 1");
  GridFunction g;
  g.values.resize(resolution);
  for (std::size_t i = 0; i < resolution; ++i)
    g.values[i] = f((static_cast<double>(i) + 0.5) / static_cast<double>(resolution));
  return g;
}

GridFunction perron_frobenius(const GridFunction& u, unsigned p) {
  if (p < 2) throw InvalidArgument("perron_frobenius: p must be >= 2");
  const std::size_t R = u.resolution();
  if (R == 0 || R % p != 0) throw InvalidArgument("perron_frobenius: resolution must be divisible by p");
  const std::size_t out_res = R / p;
  GridFunction out;
  out.values.resize(out_res);
  for (std::size_t k = 0; k < out_res; ++k) {
    double acc = 0.0;
    for (unsigned j = 0; j < p; ++j) acc += u.values[k + j * out_res];
    out.values[k] = acc / p;
  }
  return out;
}

std::pair<Complex, Complex> lerch_coefficients(ComplexParam s) {
  const Complex sv = s.value();
  const Complex I(0.0, 1.0);
  const Complex sin_ps = std::sin(kPi * sv);
  if (std::abs(sin_ps) == 0.0) throw DomainError("lerch_coefficients: sin(pi s) vanishes");
  const Complex common = std::exp(sv * std::log(2.0 * kPi)) / (2.0 * gamma_fn(s) * sin_ps);
  return {I * common * std::exp(-I * kPi * sv / 2.0), -I * common * std::exp(I * kPi * sv / 2.0)};
}

Complex boundary_polylog_abel(ComplexParam s, double x) {
  const Complex z = std::polar(1.0, 2.0 * kPi * x);
  return abel_limit([&](double r) { return polylog(s, r * z, 1e-16).value; }, 8, 4);
}

double lerch_decomposition_check(ComplexParam s, double x) {
  if (!(s.re() > 0.0 && s.re() < 1.0)) throw DomainError("lerch_decomposition_check: requires 0 < Re s < 1");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("lerch_decomposition_check: requires 0 < x < 1");
  const auto [A, B] = lerch_coefficients(s);
  const ComplexParam t(1.0 - s.re(), -s.im());
  const Complex lhs = boundary_polylog_abel(s, x);
  const Complex rhs = A * hurwitz_zeta(t, x) + B * hurwitz_zeta(t, 1.0 - x);
  return std::abs(lhs - rhs);
}

}  // namespace ah

#include "arith_harmonics/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "arith_harmonics/analytic.hpp"
#include "arith_harmonics/quadrature.hpp"

namespace ah {

namespace {

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) m = (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid))) / 2.0;
  return m;
}

// min over a of sum |y - a - b x|, attained at a = median(y - b x).
double lad_profile(std::span<const double> x, std::span<const double> y, double b, double* intercept) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[i] - b * x[i];
  const double a = median(r);
  if (intercept) *intercept = a;
  double s = 0.0;
  for (double v : r) s += std::abs(v - a);
  return s;
}

}  // namespace

double cos_sum(double x, double tol) {
  if (!std::isfinite(x)) throw InvalidArgument("cos_sum: x must be finite");
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  const auto J = static_cast<std::uint64_t>(std::max(std::ceil(10.0 * ax), 100.0));
  Neumaier acc;
  for (std::uint64_t j = J; j >= 1; --j) {
    const double h = std::sin(ax / (2.0 * static_cast<double>(j)));
    acc.add(-2.0 * h * h);
  }
  // sum_{j > J} (cos(x/j) - 1) = sum_k (-1)^k x^{2k} / (2k)! zeta(2k, J + 1)
  double coeff = 1.0;  // x^{2k} / (2k)!
  for (unsigned k = 1; k < 60; ++k) {
    coeff *= ax * ax / (static_cast<double>(2 * k - 1) * static_cast<double>(2 * k));
    const double hz = hurwitz_zeta_shifted(ComplexParam(2.0 * k), static_cast<double>(J + 1)).real();
    const double term = (k % 2 == 1 ? -1.0 : 1.0) * coeff * hz;
    acc.add(term);
    if (std::abs(term) < tol * 1e-3) break;
  }
  return acc.value();
}

TaylorEval flett_taylor(double x, double tol) {
  if (!std::isfinite(x)) throw InvalidArgument("flett_taylor: x must be finite");
  TaylorEval out;
  const long double x2 = static_cast<long double>(x) * x;
  long double coeff = 1.0L;  // x^{2k} / (2k)!
  long double sum = 0.0L;
  const double zeta2 = kPi * kPi / 6.0;
  for (unsigned k = 1; k < 400; ++k) {
    coeff *= x2 / (static_cast<long double>(2 * k - 1) * static_cast<long double>(2 * k));
    sum += (k % 2 == 1 ? -1.0L : 1.0L) * static_cast<long double>(zeta(2.0 * k)) * coeff;
    out.terms = k;
    // zeta(2j) <= zeta(2); the factorial ratios past this point are <= 1/2.
    const long double next = coeff * x2 / (static_cast<long double>(2 * k + 1) * static_cast<long double>(2 * k + 2));
    const long double ratio = x2 / (static_cast<long double>(2 * k + 3) * static_cast<long double>(2 * k + 4));
    if (ratio <= 0.5L) {
      const long double bound = zeta2 * next * 2.0L;
      if (bound <= tol) {
        out.tail_bound = static_cast<double>(bound);
        break;
      }
    }
  }
  out.value = static_cast<double>(sum);
  return out;
}

IdentityReport flett_report(double x, double tol) {
  const auto taylor = flett_taylor(x);
  return numeric_report("flett", cos_sum(x), taylor.value, tol, {{"x", x}, {"taylor_tail_bound", taylor.tail_bound}},
                        taylor.terms);
}

IdentityReport chp_transform(std::span<const Complex> coeffs, ComplexParam s, Complex z, double tol) {
  if (coeffs.size() < 3) throw InvalidArgument("chp_transform: need coefficients up to degree >= 2");
  if (coeffs[0] != Complex(0.0) || coeffs[1] != Complex(0.0))
    throw PreconditionViolation("chp_transform: requires a_0 = a_1 = 0");
  if (!(s.re() > 0.5)) throw DomainError("chp_transform: requires Re s > 1/2");
  const Complex sv = s.value();
  const std::size_t n_direct = 1000;
  auto f = [&](Complex w) {
    Complex acc(0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * w + coeffs[k];
    return acc;
  };
  Complex lhs(0.0);
  for (std::size_t n = n_direct; n >= 1; --n) lhs += f(z * std::exp(-sv * std::log(static_cast<double>(n))));
  // Termwise tail over n > n_direct.
  Complex zk(1.0);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    zk *= z;
    if (coeffs[k] == Complex(0.0)) continue;
    lhs += coeffs[k] * zk * hurwitz_zeta_shifted(ComplexParam(static_cast<double>(k) * sv), n_direct + 1.0);
  }
  Complex rhs(0.0);
  zk = 1.0;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    zk *= z;
    if (coeffs[k] == Complex(0.0)) continue;
    rhs += coeffs[k] * zeta(ComplexParam(static_cast<double>(k) * sv)) * zk;
  }
  return numeric_report("chp", lhs, rhs, tol,
                        {{"s", s.to_string()},
                         {"z", ComplexParam(z).to_string()},
                         {"degree", static_cast<std::int64_t>(coeffs.size() - 1)}},
                        n_direct);
}

std::pair<double, double> lad_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw NumericError("lad_fit: need at least two points");
  if (*std::max_element(x.begin(), x.end()) == *std::min_element(x.begin(), x.end()))
    throw NumericError("lad_fit: degenerate abscissae");
  // The profiled objective is convex in the slope; bracket it by the
  // pairwise slopes and refine by golden section.
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (x[i + 1] == x[i]) continue;
    const double b = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  lo -= 1.0;
  hi += 1.0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = lad_profile(x, y, c, nullptr), fd = lad_profile(x, y, d, nullptr);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = lad_profile(x, y, c, nullptr);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = lad_profile(x, y, d, nullptr);
    }
  }
  const double b = (lo + hi) / 2.0;
  double a = 0.0;
  lad_profile(x, y, b, &a);
  return {a, b};
}

AsymptoticFit linear_term_and_remainder(double x_max, std::size_t n_points, std::uint64_t seed) {
  if (!(x_max >= 100.0)) throw InvalidArgument("linear_term_and_remainder: requires x_max >= 100");
  if (n_points < 8) throw InvalidArgument("linear_term_and_remainder: requires n_points >= 8");
  AsymptoticFit fit;
  const double x_min = x_max / 100.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = x_min * std::pow(100.0, static_cast<double>(i) / static_cast<double>(n_points - 1));
    fit.x_grid.push_back(x);
    fit.values.push_back(cos_sum(x));
  }
  double num = 0.0, den = 0.0;
  std::size_t top = 0;
  for (std::size_t i = 0; i < n_points; ++i) {
    if (fit.x_grid[i] < x_max / 10.0 * (1.0 - 1e-12)) continue;
    num += fit.values[i] * fit.x_grid[i];
    den += fit.x_grid[i] * fit.x_grid[i];
    ++top;
  }
  if (top < 2 || den == 0.0) throw NumericError("linear_term_and_remainder: too few points in the top decade");
  fit.linear_coeff = num / den;
  double rss = 0.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    if (fit.x_grid[i] < x_max / 10.0 * (1.0 - 1e-12)) continue;
    const double r = fit.values[i] / fit.x_grid[i] - fit.linear_coeff;
    rss += r * r;
  }
  fit.fit_residual = std::sqrt(rss / static_cast<double>(top)) / std::abs(fit.linear_coeff);

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < n_points; ++i) {
    const double rem = std::abs(fit.values[i] - fit.linear_coeff * fit.x_grid[i]);
    if (!(rem > 0.0)) continue;
    lx.push_back(std::log(fit.x_grid[i]));
    ly.push_back(std::log(rem));
  }
  if (lx.size() < 3) throw NumericError("linear_term_and_remainder: degenerate remainder");
  fit.remainder_exponent = lad_fit(lx, ly).second;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, lx.size() - 1);
  std::vector<double> slopes;
  std::vector<double> bx(lx.size()), by(lx.size());
  for (int rep = 0; rep < 200; ++rep) {
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const std::size_t j = pick(rng);
      bx[i] = lx[j];
      by[i] = ly[j];
    }
    if (*std::max_element(bx.begin(), bx.end()) == *std::min_element(bx.begin(), bx.end())) continue;
    slopes.push_back(lad_fit(bx, by).second);
  }
  if (slopes.size() < 10) throw NumericError("linear_term_and_remainder: bootstrap degenerate");
  std::sort(slopes.begin(), slopes.end());
  fit.exponent_ci_low = slopes[static_cast<std::size_t>(0.025 * static_cast<double>(slopes.size()))];
  fit.exponent_ci_high = slopes[static_cast<std::size_t>(0.975 * static_cast<double>(slopes.size() - 1))];
  return fit;
}

TruncatedSeries<Complex> t_semigroup_coeff(const TruncatedSeries<Complex>& f, ComplexParam s) {
  auto out = f;
  for (std::size_t n = 2; n <= f.order(); ++n) out[n] *= inverse_power(n, s.value());
  return out;
}

TruncatedSeries<Rational> t_semigroup_coeff(const TruncatedSeries<Rational>& f, long s) {
  auto out = f;
  for (std::size_t n = 2; n <= f.order(); ++n) out[n] *= inverse_power_exact(n, s);
  return out;
}

Complex t_semigroup_quadrature(const std::function<Complex(Complex)>& f, ComplexParam s, Complex z, double tol) {
  if (!(s.re() > 0.0)) throw DomainError("t_semigroup_quadrature: requires Re s > 0");
  const Complex sm1 = s.value() - 1.0;
  QuadratureInfo info;
  const Complex integral = exp_sinh<Complex>(
      [&](double t) { return f(std::exp(-t) * z) * std::exp(sm1 * std::log(t)); }, tol, 9, &info);
  if (!info.converged) throw NumericError("t_semigroup_quadrature: quadrature did not converge");
  return integral / gamma_fn(s);
}

Complex t_semigroup_quadrature(const TruncatedSeries<Complex>& f, ComplexParam s, Complex z, double tol) {
  if (!(std::abs(z) < 1.0)) throw DomainError("t_semigroup_quadrature: requires |z| < 1");
  return t_semigroup_quadrature([&f](Complex w) { return f.evaluate(w); }, s, z, tol);
}

IdentityReport t_semigroup_report(const TruncatedSeries<Complex>& f, ComplexParam s, Complex z, double tol) {
  const Complex quad = t_semigroup_quadrature(f, s, z);
  const Complex coeff = t_semigroup_coeff(f, s).evaluate(z);
  return numeric_report("t-semigroup", quad, coeff, tol,
                        {{"s", s.to_string()},
                         {"z", ComplexParam(z).to_string()},
                         {"degree", static_cast<std::int64_t>(f.order())}},
                        f.order());
}

}  // namespace ah

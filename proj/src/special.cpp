#include <array>
#include <cmath>
#include <vector>

#include "arith_harmonics/analytic.hpp"
#include "arith_harmonics/series.hpp"

namespace ah {

namespace {

constexpr unsigned kBernoulliTable = 160;

const std::vector<Rational>& bernoulli_table() {
  static const std::vector<Rational> table = [] {
    // B_m = -1/(m+1) sum_{k<m} binom(m+1, k) B_k, with B_1 = -1/2.
    std::vector<Rational> b(kBernoulliTable + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= kBernoulliTable; ++m) {
      Rational acc(0);
      BigInt binom(1);  // binom(m+1, k), starting at k = 0
      for (unsigned k = 0; k < m; ++k) {
        acc += binom * b[k];
        binom = binom * (m + 1 - k) / (k + 1);
      }
      b[m] = -acc / Rational(m + 1);
      b[m].canonicalize();
    }
    return b;
  }();
  return table;
}

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

Complex log_gamma_right(Complex z) {
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex log_gamma_any(Complex z) {
  if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at non-positive integer");
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Gamma(z) Gamma(1-z) = pi / sin(pi z)
  return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_right(1.0 - z);
}

// Alternating series sum_{k>=0} (-1)^k (k+1)^{-s} with the
// Cohen-Villegas-Zagier weights (their Algorithm 1).
Complex eta_cvz(Complex s, int n) {
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0;
  double c = -d;
  Complex sum(0.0);
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * inverse_power(static_cast<std::uint64_t>(k + 1), s);
    b = static_cast<double>(k + n) * static_cast<double>(k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return sum / d;
}

}  // namespace

Rational bernoulli_number_exact(unsigned n) {
  if (n > kBernoulliTable) throw InvalidArgument("bernoulli_number: index too large");
  return bernoulli_table()[n];
}

double bernoulli_number(unsigned n) { return bernoulli_number_exact(n).get_d(); }

double bernoulli_poly(unsigned n, double x) {
  double acc = 0.0;
  double binom = 1.0;
  for (unsigned k = 0; k <= n; ++k) {
    acc += binom * bernoulli_number(k) * std::pow(x, static_cast<double>(n - k));
    binom = binom * (n - k) / (k + 1);
  }
  return acc;
}

Complex log_gamma(ComplexParam s) { return log_gamma_any(s.value()); }

Complex gamma_fn(ComplexParam s) {
  const Complex z = s.value();
  if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at non-positive integer");
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() == std::floor(z.real()) && z.real() <= 30.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(z.real()); ++k) f *= k;
    return f;
  }
  const Complex g = std::exp(log_gamma_any(z));
  return z.imag() == 0.0 ? Complex(g.real(), 0.0) : g;
}

Complex zeta(ComplexParam s) {
  const Complex z = s.value();
  if (z == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (z.real() < 0.0) {
    if (z.imag() == 0.0 && std::fmod(z.real(), 2.0) == 0.0) return 0.0;
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    const Complex w = 1.0 - z;
    return std::exp(z * std::log(2.0) + (z - 1.0) * std::log(kPi) + log_gamma_any(w)) *
           std::sin(kPi * z / 2.0) * zeta(ComplexParam(w));
  }
  const Complex denom = 1.0 - std::exp((1.0 - z) * std::log(2.0));
  if (std::abs(denom) < 1e-3) return hurwitz_zeta(s, 1.0);
  const double t = std::abs(z.imag());
  const int n = std::min(400, static_cast<int>(std::ceil((39.0 + kPi * t / 2.0) / std::log(3.0 + std::sqrt(8.0)))) + 4);
  const Complex v = eta_cvz(z, n) / denom;
  return z.imag() == 0.0 ? Complex(v.real(), 0.0) : v;
}

double zeta(double s) { return zeta(ComplexParam(s)).real(); }

Complex hurwitz_zeta(ComplexParam s, double x) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("hurwitz_zeta: x must lie in (0, 1]");
  return hurwitz_zeta_shifted(s, x);
}

Complex hurwitz_zeta_shifted(ComplexParam s, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hurwitz_zeta: x must be positive");
  const Complex z = s.value();
  if (z == Complex(1.0, 0.0)) throw PoleError("hurwitz_zeta: pole at s = 1");
  using LC = std::complex<long double>;
  const LC ls(z.real(), z.imag());
  const long double lx = x;
  const int shift = std::max(15, static_cast<int>(std::ceil(std::abs(z) / 2.0)) + 10);
  constexpr unsigned kTerms = 15;

  LC sum(0.0L);
  for (int k = 0; k < shift; ++k) sum += std::exp(-ls * std::log(lx + k));
  const long double a = lx + shift;
  const long double la = std::log(a);
  const LC a_ms = std::exp(-ls * la);
  sum += a * a_ms / (ls - 1.0L) + a_ms / 2.0L;

  // sum_j B_{2j}/(2j)! (s)_{2j-1} a^{-s-2j+1}
  LC poch = ls;             // (s)_{2j-1}
  LC pw = a_ms / a;         // a^{-s-2j+1}
  long double fact = 2.0L;  // (2j)!
  for (unsigned j = 1; j <= kTerms; ++j) {
    const long double b = static_cast<long double>(bernoulli_number(2 * j));
    sum += b / fact * poch * pw;
    poch *= (ls + static_cast<long double>(2 * j - 1)) * (ls + static_cast<long double>(2 * j));
    pw /= a * a;
    fact *= static_cast<long double>(2 * j + 1) * static_cast<long double>(2 * j + 2);
  }
  const Complex v(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  return z.imag() == 0.0 ? Complex(v.real(), 0.0) : v;
}

double sawtooth(double t) {
  const double f = t - std::floor(t);
  return f == 0.0 ? 0.0 : f - 0.5;
}

double log_two_sin(double x) {
  const double f = x - std::floor(x);
  if (f == 0.0) throw DomainError("log_two_sin: singular at integers");
  const double g = f > 0.5 ? 1.0 - f : f;
  return std::log(2.0 * std::sin(kPi * g));
}

double takagi(double x, unsigned n_terms) {
  if (n_terms == 0) throw InvalidArgument("takagi: n_terms must be >= 1");
  double y = x - std::floor(x);
  double w = 1.0;
  double acc = 0.0;
  for (unsigned n = 0; n < n_terms; ++n) {
    acc += w * std::min(y, 1.0 - y);
    y = 2.0 * y;
    y -= std::floor(y);
    w *= 0.5;
  }
  return acc;
}

}  // namespace ah

#include "arith_harmonics/series.hpp"

#include <cmath>

namespace ah {

Rational inverse_power_exact(std::uint64_t n, long s) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), n, static_cast<unsigned long>(s < 0 ? -s : s));
  Rational q = s >= 0 ? Rational(BigInt(1), p) : Rational(p);
  q.canonicalize();
  return q;
}

Complex inverse_power(std::uint64_t n, Complex s) {
  if (n == 1) return {1.0, 0.0};
  return std::exp(-s * std::log(static_cast<double>(n)));
}

TruncatedSeries<Rational> weighted_series(std::span<const std::int64_t> f, long s) {
  std::vector<Rational> c(f.size());
  for (std::size_t n = 1; n <= f.size(); ++n)
    if (f[n - 1] != 0) c[n - 1] = inverse_power_exact(n, s) * Rational(static_cast<long>(f[n - 1]));
  return TruncatedSeries<Rational>(std::move(c));
}

TruncatedSeries<Complex> weighted_series(std::span<const std::int64_t> f, Complex s) {
  std::vector<Complex> c(f.size());
  for (std::size_t n = 1; n <= f.size(); ++n)
    if (f[n - 1] != 0) c[n - 1] = static_cast<double>(f[n - 1]) * inverse_power(n, s);
  return TruncatedSeries<Complex>(std::move(c));
}

namespace {
template <class S>
auto named(std::size_t order, S s, FunctionKind kind) {
  const auto t = sieve(kind, order);
  return weighted_series(t.values(), s);
}

std::vector<std::int64_t> ramanujan_values(std::size_t order, std::uint64_t l) {
  std::vector<std::int64_t> v(order);
  for (std::size_t k = 1; k <= order; ++k) v[k - 1] = ramanujan_sum(k, l);
  return v;
}
}  // namespace

TruncatedSeries<Rational> polylog_coeffs(std::size_t order, long s) { return named(order, s, FunctionKind::ones); }
TruncatedSeries<Complex> polylog_coeffs(std::size_t order, Complex s) { return named(order, s, FunctionKind::ones); }
TruncatedSeries<Rational> mobius_coeffs(std::size_t order, long s) { return named(order, s, FunctionKind::mu); }
TruncatedSeries<Complex> mobius_coeffs(std::size_t order, Complex s) { return named(order, s, FunctionKind::mu); }
TruncatedSeries<Rational> liouville_coeffs(std::size_t order, long s) { return named(order, s, FunctionKind::liouville); }
TruncatedSeries<Complex> liouville_coeffs(std::size_t order, Complex s) { return named(order, s, FunctionKind::liouville); }

TruncatedSeries<Rational> ramanujan_coeffs(std::size_t order, long s, std::uint64_t l) {
  const auto v = ramanujan_values(order, l);
  return weighted_series(v, s);
}

TruncatedSeries<Complex> ramanujan_coeffs(std::size_t order, Complex s, std::uint64_t l) {
  const auto v = ramanujan_values(order, l);
  return weighted_series(v, s);
}

TruncatedSeries<Rational> estermann_coeffs(std::size_t order, long s, long a) {
  const auto sig = sieve_sigma_exact(a, order);
  std::vector<Rational> c(order);
  for (std::size_t n = 1; n <= order; ++n) c[n - 1] = sig[n] * inverse_power_exact(n, s);
  return TruncatedSeries<Rational>(std::move(c));
}

TruncatedSeries<Complex> estermann_coeffs(std::size_t order, Complex s, Complex a) {
  const auto sig = sieve_sigma(a, order);
  std::vector<Complex> c(order);
  for (std::size_t n = 1; n <= order; ++n) c[n - 1] = sig[n] * inverse_power(n, s);
  return TruncatedSeries<Complex>(std::move(c));
}

Complex l2_pairing(const TruncatedSeries<Complex>& f, const TruncatedSeries<Complex>& g) {
  detail::require_same_order(f.order(), g.order(), "l2_pairing");
  Complex acc(0.0);
  for (std::size_t n = 1; n <= f.order(); ++n) acc += f[n] * std::conj(g[n]);
  return acc;
}

Rational l2_pairing(const TruncatedSeries<Rational>& f, const TruncatedSeries<Rational>& g) {
  detail::require_same_order(f.order(), g.order(), "l2_pairing");
  Rational acc(0);
  for (std::size_t n = 1; n <= f.order(); ++n) acc += f[n] * g[n];
  return acc;
}

}  // namespace ah

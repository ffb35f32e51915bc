#pragma once

// Truncated power series sum_{n=1}^{N} a_n z^n under the Dirichlet product
// (otimes) and the unitary product (boxtimes). There is no constant term:
// every series vanishes at the origin.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <type_traits>
#include <vector>

#include "arith_harmonics/arith.hpp"
#include "arith_harmonics/types.hpp"

namespace ah {

enum class ScalarKind { exact, floating };

template <class T>
class TruncatedSeries {
 public:
  using value_type = T;

  explicit TruncatedSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidArgument("TruncatedSeries: order must be >= 1");
  }

  static TruncatedSeries zero(std::size_t order) { return TruncatedSeries(std::vector<T>(order, T(0))); }
  /// e(z) = z, the identity for otimes.
  static TruncatedSeries identity(std::size_t order) {
    auto s = zero(order);
    s.coeffs_[0] = T(1);
    return s;
  }
  static TruncatedSeries from_table(const ArithTable<T>& f) {
    return TruncatedSeries(std::vector<T>(f.values().begin(), f.values().end()));
  }

  std::size_t order() const noexcept { return coeffs_.size(); }
  static constexpr ScalarKind scalar_kind() {
    return std::is_same_v<T, Rational> ? ScalarKind::exact : ScalarKind::floating;
  }

  const T& operator[](std::size_t n) const { return coeffs_[n - 1]; }
  T& operator[](std::size_t n) { return coeffs_[n - 1]; }
  std::span<const T> coeffs() const noexcept { return coeffs_; }

  TruncatedSeries<Complex> to_complex() const {
    std::vector<Complex> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(ah::to_complex(c));
    return TruncatedSeries<Complex>(std::move(out));
  }

  /// Horner evaluation of the truncated polynomial at z.
  Complex evaluate(Complex z) const {
    Complex acc(0.0);
    for (std::size_t n = coeffs_.size(); n >= 1; --n) acc = (acc + ah::to_complex(coeffs_[n - 1])) * z;
    return acc;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<T> coeffs_;
};

namespace detail {
inline void require_same_order(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": order mismatch");
}
}  // namespace detail

/// Coefficient n of A (x) B is sum_{d|n} a_d b_{n/d}. Exact at every order
/// <= N since divisors of n never exceed n.
template <class T>
TruncatedSeries<T> otimes(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::require_same_order(a.order(), b.order(), "otimes");
  const std::size_t n_max = a.order();
  auto out = TruncatedSeries<T>::zero(n_max);
  for (std::size_t d = 1; d <= n_max; ++d) {
    const T& ad = a[d];
    if (ad == T(0)) continue;
    for (std::size_t q = 1; d * q <= n_max; ++q) out[d * q] += ad * b[q];
  }
  return out;
}

/// k-fold otimes power by repeated squaring.
template <class T>
TruncatedSeries<T> otimes_power(const TruncatedSeries<T>& a, unsigned k) {
  if (k == 0) throw InvalidArgument("otimes_power: k must be >= 1");
  auto result = TruncatedSeries<T>::identity(a.order());
  auto base = a;
  bool first = true;
  while (k > 0) {
    if (k & 1u) {
      result = first ? base : otimes(result, base);
      first = false;
    }
    k >>= 1u;
    if (k > 0) base = otimes(base, base);
  }
  return result;
}

/// B with A (x) B = e: b_1 = 1/a_1, b_n = -(sum_{d|n, d<n} a_{n/d} b_d) / a_1.
template <class T>
TruncatedSeries<T> otimes_inverse(const TruncatedSeries<T>& a) {
  if (a[1] == T(0)) throw NotInvertible("otimes_inverse: leading coefficient is zero");
  const std::size_t n_max = a.order();
  auto b = TruncatedSeries<T>::zero(n_max);
  // acc[n] accumulates sum_{d|n, d<n} a_{n/d} b_d as b_d become known.
  std::vector<T> acc(n_max, T(0));
  const T inv_a1 = T(1) / a[1];
  for (std::size_t d = 1; d <= n_max; ++d) {
    const T target = d == 1 ? T(1) : T(0);
    b[d] = (target - acc[d - 1]) * inv_a1;
    const T& bd = b[d];
    if (bd == T(0)) continue;
    for (std::size_t q = 2; d * q <= n_max; ++q) acc[d * q - 1] += a[q] * bd;
  }
  return b;
}

/// Unitary product: coefficient n is sum over n = pq, gcd(p, q) = 1.
template <class T>
TruncatedSeries<T> boxtimes(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::require_same_order(a.order(), b.order(), "boxtimes");
  const std::size_t n_max = a.order();
  auto out = TruncatedSeries<T>::zero(n_max);
  for (std::size_t p = 1; p <= n_max; ++p) {
    const T& ap = a[p];
    if (ap == T(0)) continue;
    for (std::size_t q = 1; p * q <= n_max; ++q)
      if (std::gcd(p, q) == 1) out[p * q] += ap * b[q];
  }
  return out;
}

/// G1(x) = sum_n G2(x^n): g1_n = sum_{d|n} g2_d. Converts the coefficients of
/// a Lambert series sum g(n) x^n/(1-x^n) into its power-series coefficients.
template <class T>
TruncatedSeries<T> lambert_resum(const TruncatedSeries<T>& g2) {
  const std::size_t n_max = g2.order();
  auto out = TruncatedSeries<T>::zero(n_max);
  for (std::size_t d = 1; d <= n_max; ++d) {
    const T& gd = g2[d];
    if (gd == T(0)) continue;
    for (std::size_t m = d; m <= n_max; m += d) out[m] += gd;
  }
  return out;
}

/// Action of the multiplier phi on f. Same product as otimes.
template <class T>
TruncatedSeries<T> multiplier_apply(const TruncatedSeries<T>& phi, const TruncatedSeries<T>& f) {
  return otimes(phi, f);
}

/// The coefficient shadow of z d/dz: a_n -> n a_n.
template <class T>
TruncatedSeries<T> z_derivative(const TruncatedSeries<T>& a) {
  auto out = a;
  for (std::size_t n = 1; n <= a.order(); ++n) out[n] *= T(static_cast<long>(n));
  return out;
}

/// Shifts the support: coefficient of z^{n m} becomes a_n (n m <= order).
template <class T>
TruncatedSeries<T> dilate(const TruncatedSeries<T>& a, std::size_t m, std::size_t order) {
  auto out = TruncatedSeries<T>::zero(order);
  for (std::size_t n = 1; n * m <= order && n <= a.order(); ++n) out[n * m] = a[n];
  return out;
}

// ---- weights n^{-s} ----

/// n^{-s} exactly, for integer s (negative s gives n^{|s|}).
Rational inverse_power_exact(std::uint64_t n, long s);
/// n^{-s} = exp(-s log n).
Complex inverse_power(std::uint64_t n, Complex s);

/// a_n = f(n) n^{-s}.
TruncatedSeries<Rational> weighted_series(std::span<const std::int64_t> f, long s);
TruncatedSeries<Complex> weighted_series(std::span<const std::int64_t> f, Complex s);

// Coefficients of the named series, truncated at order N.
TruncatedSeries<Rational> polylog_coeffs(std::size_t order, long s);       // L_s
TruncatedSeries<Complex> polylog_coeffs(std::size_t order, Complex s);
TruncatedSeries<Rational> mobius_coeffs(std::size_t order, long s);        // M_s
TruncatedSeries<Complex> mobius_coeffs(std::size_t order, Complex s);
TruncatedSeries<Rational> liouville_coeffs(std::size_t order, long s);     // N_s
TruncatedSeries<Complex> liouville_coeffs(std::size_t order, Complex s);
TruncatedSeries<Rational> ramanujan_coeffs(std::size_t order, long s, std::uint64_t l);  // C_{s,l}
TruncatedSeries<Complex> ramanujan_coeffs(std::size_t order, Complex s, std::uint64_t l);
/// sigma_a(n) n^{-s}.
TruncatedSeries<Rational> estermann_coeffs(std::size_t order, long s, long a);
TruncatedSeries<Complex> estermann_coeffs(std::size_t order, Complex s, Complex a);

/// l2 coefficient pairing (f | g) = sum a_n conj(b_n).
Complex l2_pairing(const TruncatedSeries<Complex>& f, const TruncatedSeries<Complex>& g);
Rational l2_pairing(const TruncatedSeries<Rational>& f, const TruncatedSeries<Rational>& g);

}  // namespace ah

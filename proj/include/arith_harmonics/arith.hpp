#pragma once

// Sieved arithmetic functions on 1..N and the Dirichlet / unitary
// convolution algebra over them.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arith_harmonics/types.hpp"

namespace ah {

enum class FunctionKind {
  mu,                 // Moebius
  liouville,          // lambda(n) = (-1)^Omega(n)
  totient,            // Euler phi
  jordan,             // J_k
  sigma,              // sigma_a(n) = sum_{d|n} d^a
  mangoldt,           // Lambda(n)
  theta,              // 2^omega(n)
  n_simple,           // number of primes dividing n exactly once
  omega,              // number of distinct primes
  mu_abs,             // |mu(n)|
  ones,               // constant 1
  unit,               // e(n) = [n == 1]
  identity,           // n
  power,              // n^k
  divisor_count,      // d(n, k)
  dprime_count,       // d'(n, k)
  unitary_divisors,   // number of unitary divisors
  generalized_mobius, // mu_alpha
  custom,
};

std::string_view to_string(FunctionKind kind);
/// Accepts the names produced by to_string plus the short aliases used on
/// the command line ("lambda", "phi").
FunctionKind parse_function_kind(std::string_view name);

/// Values f(1..n_max) of an arithmetic function, one scalar type per table.
/// Indexing is 1-based: table[n] is f(n).
template <class T>
class ArithTable {
 public:
  using value_type = T;

  ArithTable(FunctionKind kind, std::vector<T> values, bool multiplicative = false)
      : kind_(kind), multiplicative_(multiplicative), values_(std::move(values)) {
    if (values_.empty()) throw InvalidArgument("ArithTable: n_max must be >= 1");
  }

  std::size_t n_max() const noexcept { return values_.size(); }
  FunctionKind kind() const noexcept { return kind_; }
  bool is_multiplicative() const noexcept { return multiplicative_; }

  const T& operator[](std::size_t n) const { return values_[n - 1]; }
  const T& at(std::size_t n) const {
    if (n == 0 || n > values_.size()) throw InvalidArgument("ArithTable: index out of range");
    return values_[n - 1];
  }
  std::span<const T> values() const noexcept { return values_; }

  template <class U>
  ArithTable<U> cast() const {
    std::vector<U> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(U(v));
    return ArithTable<U>(kind_, std::move(out), multiplicative_);
  }

  friend bool operator==(const ArithTable& a, const ArithTable& b) { return a.values_ == b.values_; }

 private:
  FunctionKind kind_;
  bool multiplicative_;
  std::vector<T> values_;
};

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Linear smallest-prime-factor sieve. Every multiplicative kind is built
/// from it in one pass: f(n) = f(p^e) f(n / p^e) with p = spf(n).
class FactorSieve {
 public:
  explicit FactorSieve(std::size_t n_max);

  std::size_t n_max() const noexcept { return spf_.size() - 1; }
  std::uint32_t smallest_prime_factor(std::size_t n) const { return spf_[n]; }
  /// Largest power of spf(n) dividing n, and its exponent.
  std::uint32_t spf_power(std::size_t n) const { return spf_pow_[n]; }
  unsigned spf_exponent(std::size_t n) const { return spf_exp_[n]; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  std::vector<PrimePower> factorize(std::size_t n) const;

  /// Builds a multiplicative table from its values at prime powers;
  /// at_prime_power(p, e) must return f(p^e).
  template <class T, class F>
  ArithTable<T> multiplicative(FunctionKind kind, F&& at_prime_power) const {
    const std::size_t n_max = this->n_max();
    std::vector<T> v(n_max, T(0));
    v[0] = T(1);
    for (std::size_t n = 2; n <= n_max; ++n) {
      const std::size_t q = spf_pow_[n];
      if (q == n)
        v[n - 1] = at_prime_power(std::uint64_t{spf_[n]}, unsigned{spf_exp_[n]});
      else
        v[n - 1] = v[q - 1] * v[n / q - 1];
    }
    return ArithTable<T>(kind, std::move(v), true);
  }

 private:
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> spf_pow_;
  std::vector<std::uint8_t> spf_exp_;
  std::vector<std::uint32_t> primes_;
};

/// Integer-valued kinds: mu, liouville, totient, jordan (uses k), theta,
/// n_simple, omega, mu_abs, ones, unit, identity, power (uses k),
/// divisor_count (uses k), dprime_count (uses k), unitary_divisors.
/// Throws InvalidArgument for n_max == 0, for real/complex-valued kinds and
/// std::overflow_error when a value does not fit in 64 bits.
ArithTable<std::int64_t> sieve(FunctionKind kind, std::size_t n_max, unsigned k = 1);

/// Lambda(n) as binary floats.
ArithTable<double> sieve_mangoldt(std::size_t n_max);

/// sigma_a(n) = sum_{d|n} d^a for complex a, by divisor enumeration.
ArithTable<Complex> sieve_sigma(Complex a, std::size_t n_max);

/// Exact sigma_a for integer a (negative a gives rationals).
ArithTable<Rational> sieve_sigma_exact(long a, std::size_t n_max);

template <class T>
ArithTable<T> constant_table(FunctionKind kind, std::size_t n_max, const T& value) {
  return ArithTable<T>(kind, std::vector<T>(n_max, value), kind == FunctionKind::ones);
}

template <class T>
ArithTable<T> unit_table(std::size_t n_max) {
  std::vector<T> v(n_max, T(0));
  v.at(0) = T(1);
  return ArithTable<T>(FunctionKind::unit, std::move(v), true);
}

namespace detail {
inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": mismatched n_max");
}
}  // namespace detail

/// (f * g)(n) = sum_{d | n} f(d) g(n/d).
template <class T>
ArithTable<T> dirichlet_convolve(const ArithTable<T>& f, const ArithTable<T>& g) {
  detail::require_same_size(f.n_max(), g.n_max(), "dirichlet_convolve");
  const std::size_t n_max = f.n_max();
  std::vector<T> out(n_max, T(0));
  for (std::size_t d = 1; d <= n_max; ++d) {
    const T& fd = f[d];
    if (fd == T(0)) continue;
    for (std::size_t q = 1; d * q <= n_max; ++q) out[d * q - 1] += fd * g[q];
  }
  const bool mult = f.is_multiplicative() && g.is_multiplicative();
  return ArithTable<T>(FunctionKind::custom, std::move(out), mult);
}

/// (f u g)(n) = sum over n = pq with gcd(p, q) = 1 of f(p) g(q).
template <class T>
ArithTable<T> unitary_convolve(const ArithTable<T>& f, const ArithTable<T>& g) {
  detail::require_same_size(f.n_max(), g.n_max(), "unitary_convolve");
  const std::size_t n_max = f.n_max();
  std::vector<T> out(n_max, T(0));
  for (std::size_t p = 1; p <= n_max; ++p) {
    const T& fp = f[p];
    if (fp == T(0)) continue;
    for (std::size_t q = 1; p * q <= n_max; ++q)
      if (std::gcd(p, q) == 1) out[p * q - 1] += fp * g[q];
  }
  const bool mult = f.is_multiplicative() && g.is_multiplicative();
  return ArithTable<T>(FunctionKind::custom, std::move(out), mult);
}

/// g(n) = sum_{d|n} f(d) mu(n/d); the inverse of convolving with ones.
template <class T>
ArithTable<T> mobius_invert(const ArithTable<T>& f) {
  const auto mu = sieve(FunctionKind::mu, f.n_max());
  const std::size_t n_max = f.n_max();
  std::vector<T> out(n_max, T(0));
  for (std::size_t d = 1; d <= n_max; ++d) {
    const T& fd = f[d];
    if (fd == T(0)) continue;
    for (std::size_t q = 1; d * q <= n_max; ++q) {
      const auto m = mu[q];
      if (m == 1)
        out[d * q - 1] += fd;
      else if (m == -1)
        out[d * q - 1] -= fd;
    }
  }
  return ArithTable<T>(FunctionKind::custom, std::move(out), f.is_multiplicative());
}

/// mu_alpha: multiplicative with mu_alpha(p^k) = (-1)^k binom(alpha, k).
/// T is the scalar of alpha (Rational for exact, double or Complex otherwise).
template <class T>
ArithTable<T> generalized_mobius(const T& alpha, std::size_t n_max) {
  if (n_max == 0) throw InvalidArgument("generalized_mobius: n_max must be >= 1");
  // Exponents never exceed log2(n_max).
  std::vector<T> by_exponent{T(1)};
  for (unsigned k = 1; (std::size_t{1} << k) <= n_max; ++k) {
    // (-1)^k binom(alpha, k) = -(-1)^{k-1} binom(alpha, k-1) (alpha - k + 1) / k
    T next = by_exponent.back() * (alpha - T(static_cast<long>(k) - 1));
    next /= T(static_cast<long>(k));
    by_exponent.push_back(-next);
  }
  FactorSieve sv(n_max);
  return sv.multiplicative<T>(FunctionKind::generalized_mobius,
                              [&](std::uint64_t, unsigned e) { return by_exponent[e]; });
}

/// c_q(n) via Hoelder's closed form mu(q/g) phi(q) / phi(q/g), g = gcd(q, n).
std::int64_t ramanujan_sum(std::uint64_t q, std::uint64_t n);

/// c_q(1..n_max) for fixed modulus q.
struct RamanujanTable {
  std::uint64_t q;
  std::vector<std::int64_t> values;  // values[n-1] = c_q(n)
  std::size_t n_max() const noexcept { return values.size(); }
  std::int64_t operator[](std::size_t n) const { return values[n - 1]; }
};
RamanujanTable ramanujan_table(std::uint64_t q, std::size_t n_max);

/// c_q(n) for fixed n and q = 1..q_max, from c_q(n) = sum_{d | (q, n)} d mu(q/d).
std::vector<std::int64_t> ramanujan_column(std::uint64_t n, std::size_t q_max);

/// mu or lambda on 1..n_max as int8 signs (index 0 holds n = 1). A compact
/// linear sieve for the large ranges used by partial sums.
std::vector<std::int8_t> sign_sieve(FunctionKind kind, std::size_t n_max);

/// Exact mean of c_r(n) c_s(n + h) over one full period n = 1..lcm(r, s).
Rational ramanujan_correlation_mean(std::uint64_t r, std::uint64_t s, std::uint64_t h = 0);

/// d(n, k): ordered factorizations of n into k factors.
ArithTable<std::int64_t> divisor_count_k(std::size_t n_max, unsigned k);
/// d'(n, k): Dirichlet coefficients of zeta(s)^{-k}, k >= 2.
ArithTable<std::int64_t> dprime_count_k(std::size_t n_max, unsigned k);

/// sum_{d | n} mu(n/d) f(gcd(d, k)); f[i] holds f(i + 1). Requires k < n.
template <class T>
T romanoff_check(std::uint64_t n, std::uint64_t k, std::span<const T> f) {
  if (k >= n) throw PreconditionViolation("romanoff_check: requires k < n");
  if (f.size() < n) throw InvalidArgument("romanoff_check: f must be given on 1..n");
  const FactorSieve sv(n);
  T acc(0);
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    std::uint64_t m = n / d;
    int mu = 1;
    for (const auto& pp : sv.factorize(m)) {
      if (pp.exponent > 1) { mu = 0; break; }
      mu = -mu;
    }
    if (mu == 0) continue;
    const T& v = f[std::gcd(d, k) - 1];
    if (mu == 1) acc += v; else acc -= v;
  }
  return acc;
}

/// Integer helpers shared by the other modules.
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
std::vector<std::uint64_t> divisors(std::uint64_t n);
int mobius_of(std::uint64_t n);
std::uint64_t totient_of(std::uint64_t n);
std::vector<PrimePower> trial_factorize(std::uint64_t n);

}  // namespace ah

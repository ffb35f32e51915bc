#include "arith_harmonics/arith.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ah {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("arith: 64-bit overflow");
  return r;
}

std::int64_t checked_pow(std::int64_t base, unsigned exp) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

void require_positive(std::size_t n_max, const char* what) {
  if (n_max == 0) throw InvalidArgument(std::string(what) + ": n_max must be >= 1");
}

}  // namespace

std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::mu: return "mu";
    case FunctionKind::liouville: return "liouville";
    case FunctionKind::totient: return "totient";
    case FunctionKind::jordan: return "jordan";
    case FunctionKind::sigma: return "sigma";
    case FunctionKind::mangoldt: return "mangoldt";
    case FunctionKind::theta: return "theta";
    case FunctionKind::n_simple: return "n_simple";
    case FunctionKind::omega: return "omega";
    case FunctionKind::mu_abs: return "mu_abs";
    case FunctionKind::ones: return "ones";
    case FunctionKind::unit: return "unit";
    case FunctionKind::identity: return "identity";
    case FunctionKind::power: return "power";
    case FunctionKind::divisor_count: return "divisor_count";
    case FunctionKind::dprime_count: return "dprime_count";
    case FunctionKind::unitary_divisors: return "unitary_divisors";
    case FunctionKind::generalized_mobius: return "generalized_mobius";
    case FunctionKind::custom: return "custom";
  }
  return "custom";
}

FunctionKind parse_function_kind(std::string_view name) {
  if (name == "lambda") return FunctionKind::liouville;
  if (name == "phi") return FunctionKind::totient;
  for (int i = 0; i <= static_cast<int>(FunctionKind::custom); ++i) {
    const auto kind = static_cast<FunctionKind>(i);
    if (to_string(kind) == name) return kind;
  }
  throw InvalidArgument("unknown function kind '" + std::string(name) + "'");
}

FactorSieve::FactorSieve(std::size_t n_max)
    : spf_(n_max + 1, 0), spf_pow_(n_max + 1, 0), spf_exp_(n_max + 1, 0) {
  require_positive(n_max, "FactorSieve");
  if (n_max > std::numeric_limits<std::uint32_t>::max())
    throw InvalidArgument("FactorSieve: n_max too large");
  spf_[1] = 1;
  spf_pow_[1] = 1;
  for (std::size_t i = 2; i <= n_max; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      spf_pow_[i] = static_cast<std::uint32_t>(i);
      spf_exp_[i] = 1;
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (const std::uint32_t p : primes_) {
      if (p > spf_[i] || i * p > n_max) break;
      const std::size_t m = i * p;
      spf_[m] = p;
      if (p == spf_[i]) {
        spf_pow_[m] = spf_pow_[i] * p;
        spf_exp_[m] = static_cast<std::uint8_t>(spf_exp_[i] + 1);
      } else {
        spf_pow_[m] = p;
        spf_exp_[m] = 1;
      }
    }
  }
}

std::vector<PrimePower> FactorSieve::factorize(std::size_t n) const {
  if (n == 0 || n > n_max()) throw InvalidArgument("FactorSieve::factorize: out of range");
  std::vector<PrimePower> out;
  while (n > 1) {
    out.push_back({spf_[n], spf_exp_[n]});
    n /= spf_pow_[n];
  }
  return out;
}

ArithTable<std::int64_t> sieve(FunctionKind kind, std::size_t n_max, unsigned k) {
  require_positive(n_max, "sieve");
  using I = std::int64_t;
  switch (kind) {
    case FunctionKind::ones: return constant_table<I>(kind, n_max, 1);
    case FunctionKind::unit: return unit_table<I>(n_max);
    case FunctionKind::identity: {
      std::vector<I> v(n_max);
      for (std::size_t n = 1; n <= n_max; ++n) v[n - 1] = static_cast<I>(n);
      return ArithTable<I>(kind, std::move(v), true);
    }
    case FunctionKind::power: {
      std::vector<I> v(n_max);
      for (std::size_t n = 1; n <= n_max; ++n) v[n - 1] = checked_pow(static_cast<I>(n), k);
      return ArithTable<I>(kind, std::move(v), true);
    }
    case FunctionKind::divisor_count: return divisor_count_k(n_max, k);
    case FunctionKind::dprime_count: return dprime_count_k(n_max, k);
    case FunctionKind::sigma:
    case FunctionKind::mangoldt:
    case FunctionKind::generalized_mobius:
    case FunctionKind::custom:
      throw InvalidArgument("sieve: kind '" + std::string(to_string(kind)) +
                            "' is not integer-valued; use the dedicated builder");
    default: break;
  }
  const FactorSieve sv(n_max);
  switch (kind) {
    case FunctionKind::mu:
      return sv.multiplicative<I>(kind, [](std::uint64_t, unsigned e) { return e == 1 ? I{-1} : I{0}; });
    case FunctionKind::liouville:
      return sv.multiplicative<I>(kind, [](std::uint64_t, unsigned e) { return (e % 2) ? I{-1} : I{1}; });
    case FunctionKind::totient:
      return sv.multiplicative<I>(kind, [](std::uint64_t p, unsigned e) {
        const I pe = checked_pow(static_cast<I>(p), e);
        return pe - pe / static_cast<I>(p);
      });
    case FunctionKind::jordan: {
      if (k == 0) throw InvalidArgument("sieve: jordan requires k >= 1");
      auto t = sv.multiplicative<I>(kind, [k](std::uint64_t p, unsigned e) {
        const I pk = checked_pow(static_cast<I>(p), k);
        const I lower = checked_pow(pk, e - 1);
        return checked_mul(lower, pk) - lower;
      });
      return t;
    }
    case FunctionKind::theta:
      return sv.multiplicative<I>(kind, [](std::uint64_t, unsigned) { return I{2}; });
    case FunctionKind::mu_abs:
      return sv.multiplicative<I>(kind, [](std::uint64_t, unsigned e) { return e == 1 ? I{1} : I{0}; });
    case FunctionKind::unitary_divisors:
      return sv.multiplicative<I>(kind, [](std::uint64_t, unsigned) { return I{2}; });
    case FunctionKind::omega:
    case FunctionKind::n_simple: {
      // Additive: f(n) = f(p^e) + f(n / p^e).
      std::vector<I> v(n_max, 0);
      for (std::size_t n = 2; n <= n_max; ++n) {
        const std::size_t q = sv.spf_power(n);
        const I here = (kind == FunctionKind::omega || sv.spf_exponent(n) == 1) ? 1 : 0;
        v[n - 1] = here + v[n / q - 1];
      }
      return ArithTable<I>(kind, std::move(v), false);
    }
    default: break;
  }
  throw InvalidArgument("sieve: unsupported kind");
}

ArithTable<double> sieve_mangoldt(std::size_t n_max) {
  require_positive(n_max, "sieve_mangoldt");
  const FactorSieve sv(n_max);
  std::vector<double> v(n_max, 0.0);
  for (std::size_t n = 2; n <= n_max; ++n)
    if (sv.spf_power(n) == n) v[n - 1] = std::log(static_cast<double>(sv.smallest_prime_factor(n)));
  return ArithTable<double>(FunctionKind::mangoldt, std::move(v), false);
}

ArithTable<Complex> sieve_sigma(Complex a, std::size_t n_max) {
  require_positive(n_max, "sieve_sigma");
  std::vector<Complex> v(n_max, Complex(0.0));
  for (std::size_t d = 1; d <= n_max; ++d) {
    const Complex da = std::exp(a * std::log(static_cast<double>(d)));
    for (std::size_t m = d; m <= n_max; m += d) v[m - 1] += da;
  }
  return ArithTable<Complex>(FunctionKind::sigma, std::move(v), true);
}

ArithTable<Rational> sieve_sigma_exact(long a, std::size_t n_max) {
  require_positive(n_max, "sieve_sigma_exact");
  std::vector<Rational> v(n_max, Rational(0));
  for (std::size_t d = 1; d <= n_max; ++d) {
    BigInt dp;
    mpz_ui_pow_ui(dp.get_mpz_t(), d, static_cast<unsigned long>(a < 0 ? -a : a));
    Rational da = a >= 0 ? Rational(dp) : Rational(BigInt(1), dp);
    da.canonicalize();
    for (std::size_t m = d; m <= n_max; m += d) v[m - 1] += da;
  }
  return ArithTable<Rational>(FunctionKind::sigma, std::move(v), true);
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

std::vector<PrimePower> trial_factorize(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("trial_factorize: n must be >= 1");
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) { n /= p; ++e; }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

int mobius_of(std::uint64_t n) {
  int mu = 1;
  for (const auto& pp : trial_factorize(n)) {
    if (pp.exponent > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::uint64_t totient_of(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& pp : trial_factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

std::int64_t ramanujan_sum(std::uint64_t q, std::uint64_t n) {
  if (q == 0 || n == 0) throw InvalidArgument("ramanujan_sum: q, n must be >= 1");
  const std::uint64_t g = std::gcd(q, n);
  const std::uint64_t m = q / g;
  const int mu = mobius_of(m);
  if (mu == 0) return 0;
  return static_cast<std::int64_t>(totient_of(q) / totient_of(m)) * mu;
}

RamanujanTable ramanujan_table(std::uint64_t q, std::size_t n_max) {
  require_positive(n_max, "ramanujan_table");
  // One period determines the table.
  const std::size_t period = static_cast<std::size_t>(q);
  std::vector<std::int64_t> one(period);
  for (std::size_t r = 1; r <= period; ++r) one[r - 1] = ramanujan_sum(q, r);
  RamanujanTable t{q, std::vector<std::int64_t>(n_max)};
  for (std::size_t n = 1; n <= n_max; ++n) t.values[n - 1] = one[(n - 1) % period];
  return t;
}

std::vector<std::int64_t> ramanujan_column(std::uint64_t n, std::size_t q_max) {
  if (n == 0) throw InvalidArgument("ramanujan_column: n must be >= 1");
  require_positive(q_max, "ramanujan_column");
  const auto mu = sign_sieve(FunctionKind::mu, q_max);
  std::vector<std::int64_t> c(q_max, 0);
  for (auto d : divisors(n)) {
    if (d > q_max) continue;
    const auto dd = static_cast<std::int64_t>(d);
    for (std::size_t q = d, j = 1; q <= q_max; q += d, ++j) c[q - 1] += dd * mu[j - 1];
  }
  return c;
}

std::vector<std::int8_t> sign_sieve(FunctionKind kind, std::size_t n_max) {
  if (kind != FunctionKind::mu && kind != FunctionKind::liouville)
    throw InvalidArgument("sign_sieve: kind must be mu or liouville");
  require_positive(n_max, "sign_sieve");
  const bool is_mu = kind == FunctionKind::mu;
  std::vector<std::int8_t> v(n_max + 1, 0);
  std::vector<bool> composite(n_max + 1, false);
  std::vector<std::uint32_t> primes;
  v[1] = 1;
  for (std::size_t i = 2; i <= n_max; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      v[i] = -1;
    }
    for (std::uint32_t p : primes) {
      const std::size_t m = i * p;
      if (m > n_max) break;
      composite[m] = true;
      if (i % p == 0) {
        v[m] = is_mu ? 0 : static_cast<std::int8_t>(-v[i]);
        break;
      }
      v[m] = static_cast<std::int8_t>(-v[i]);
    }
  }
  v.erase(v.begin());
  return v;
}

Rational ramanujan_correlation_mean(std::uint64_t r, std::uint64_t s, std::uint64_t h) {
  const std::uint64_t L = lcm_u64(r, s);
  const auto cr = ramanujan_table(r, r);
  const auto cs = ramanujan_table(s, s);
  BigInt sum = 0;
  for (std::uint64_t n = 1; n <= L; ++n) {
    const std::int64_t a = cr.values[(n - 1) % r];
    const std::int64_t b = cs.values[(n + h - 1) % s];
    sum += a * b;
  }
  Rational mean(sum, BigInt(static_cast<unsigned long>(L)));
  mean.canonicalize();
  return mean;
}

ArithTable<std::int64_t> divisor_count_k(std::size_t n_max, unsigned k) {
  if (k == 0) throw InvalidArgument("divisor_count_k: k must be >= 1");
  auto ones = sieve(FunctionKind::ones, n_max);
  auto acc = ones;
  for (unsigned i = 1; i < k; ++i) acc = dirichlet_convolve(acc, ones);
  return ArithTable<std::int64_t>(FunctionKind::divisor_count,
                                  std::vector<std::int64_t>(acc.values().begin(), acc.values().end()), true);
}

ArithTable<std::int64_t> dprime_count_k(std::size_t n_max, unsigned k) {
  if (k < 2) throw InvalidArgument("dprime_count_k: k must be >= 2");
  const auto mu = sieve(FunctionKind::mu, n_max);
  auto acc = dirichlet_convolve(mu, mu);
  for (unsigned i = 2; i < k; ++i) acc = dirichlet_convolve(acc, mu);
  return ArithTable<std::int64_t>(FunctionKind::dprime_count,
                                  std::vector<std::int64_t>(acc.values().begin(), acc.values().end()), true);
}

}  // namespace ah

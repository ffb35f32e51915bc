#include "arith_harmonics/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "arith_harmonics/analytic.hpp"
#include "arith_harmonics/arith.hpp"

namespace ah {

namespace {

BigInt pow_big(std::uint64_t base, unsigned e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

// J_r(n) = prod p^{r(e-1)} (p^r - 1).
BigInt jordan_big(std::uint64_t n, unsigned r) {
  BigInt out = 1;
  for (const auto& pp : trial_factorize(n)) out *= pow_big(pp.prime, r * (pp.exponent - 1)) * (pow_big(pp.prime, r) - 1);
  return out;
}

Rational rational_pow(std::uint64_t num, std::uint64_t den, long e) {
  if (e < 0) std::swap(num, den);
  const auto ue = static_cast<unsigned>(std::abs(e));
  Rational q(pow_big(num, ue), pow_big(den, ue));
  q.canonicalize();
  return q;
}

Complex cexp_log(double log_x, Complex s) { return std::exp(s * log_x); }

void require_positive(std::uint64_t m, std::uint64_t n, const char* what) {
  if (m == 0 || n == 0) throw InvalidArgument(std::string(what) + ": indices must be >= 1");
}

void require_re_gt_one(ComplexParam s, const char* what) {
  if (!(s.re() > 1.0)) throw DomainError(std::string(what) + ": requires Re s > 1");
}

}  // namespace

BigInt smith_det(unsigned r, std::size_t N) {
  if (r == 0 || N == 0) throw InvalidArgument("smith_det: r, N must be >= 1");
  BigInt out = 1;
  for (std::size_t k = 1; k <= N; ++k) out *= jordan_big(k, r);
  return out;
}

BigInt smith_det_bareiss(unsigned r, std::size_t N) {
  if (r == 0 || N == 0) throw InvalidArgument("smith_det_bareiss: r, N must be >= 1");
  std::vector<std::vector<BigInt>> m(N, std::vector<BigInt>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m[i][j] = pow_big(std::gcd(i + 1, j + 1), r);
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < N && m[p][k] == 0) ++p;
      if (p == N) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j) {
        BigInt v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[N - 1][N - 1];
}

IdentityReport smith_det_report(unsigned r, std::size_t N) {
  return exact_report("smith-det", Rational(smith_det_bareiss(r, N)), Rational(smith_det(r, N)),
                      {{"r", static_cast<std::int64_t>(r)}, {"N", static_cast<std::int64_t>(N)}});
}

GramSpec gram_matrix(ComplexParam s, std::size_t N) {
  if (N == 0) throw InvalidArgument("gram_matrix: N must be >= 1");
  GramSpec spec{s, N, Eigen::MatrixXcd(N, N)};
  const Complex sv = s.value();
  std::vector<double> logs(N + 1, 0.0);
  for (std::size_t k = 1; k <= N; ++k) logs[k] = std::log(static_cast<double>(k));
  for (std::size_t m = 1; m <= N; ++m) {
    spec.matrix(m - 1, m - 1) = 1.0;
    for (std::size_t n = m + 1; n <= N; ++n) {
      const std::size_t g = std::gcd(m, n);
      const Complex v = std::exp(2.0 * sv * logs[g] - sv * (logs[m] + logs[n]));
      spec.matrix(m - 1, n - 1) = v;
      spec.matrix(n - 1, m - 1) = v;
    }
  }
  return spec;
}

Complex gram_det(const GramSpec& spec) { return Eigen::PartialPivLU<Eigen::MatrixXcd>(spec.matrix).determinant(); }

Complex gram_det_closed_form(ComplexParam s, std::size_t N) {
  if (N == 0) throw InvalidArgument("gram_det_closed_form: N must be >= 1");
  const Complex two_s = 2.0 * s.value();
  Complex log_det(0.0);
  for (std::size_t p = 2; p <= N; ++p) {
    if (trial_factorize(p).size() != 1 || trial_factorize(p)[0].exponent != 1) continue;
    log_det += static_cast<double>(N / p) * std::log(1.0 - std::exp(-two_s * std::log(static_cast<double>(p))));
  }
  return std::exp(log_det);
}

Rational gram_det_exact(unsigned two_s, std::size_t N) {
  if (two_s == 0 || N == 0) throw InvalidArgument("gram_det_exact: 2s, N must be >= 1");
  BigInt num = 1, fact = 1;
  for (std::size_t k = 1; k <= N; ++k) {
    num *= jordan_big(k, two_s);
    fact *= static_cast<unsigned long>(k);
  }
  BigInt den;
  mpz_pow_ui(den.get_mpz_t(), fact.get_mpz_t(), two_s);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

IdentityReport gram_det_report(ComplexParam s, std::size_t N, double rel_tol) {
  const Complex lu = gram_det(gram_matrix(s, N));
  const Complex closed = gram_det_closed_form(s, N);
  ParamMap params{{"s", s.to_string()}, {"N", static_cast<std::int64_t>(N)}, {"rel_tol", rel_tol},
                  {"rel_error", std::abs(lu - closed) / std::abs(closed)}};
  const double two_s = 2.0 * s.re();
  if (s.is_real() && two_s >= 1.0 && two_s == std::floor(two_s) && two_s <= 64.0) {
    const double exact = gram_det_exact(static_cast<unsigned>(two_s), N).get_d();
    params["exact_rel_error"] = std::abs(closed - exact) / exact;
  }
  return numeric_report("gram-det", lu, closed, rel_tol * std::abs(closed), std::move(params), N);
}

std::pair<double, double> gram_eig_bounds(double s) {
  if (!(s > 1.0)) throw DomainError("gram_eig_bounds: requires real s > 1");
  const double z = zeta(s);
  const double z2 = zeta(2.0 * s);
  return {z2 / (z * z), z * z / z2};
}

std::pair<double, double> lanczos_extreme_eigs(const Eigen::MatrixXd& a, double tol) {
  const auto N = a.rows();
  if (N == 0 || a.cols() != N) throw InvalidArgument("lanczos_extreme_eigs: requires a square matrix");
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(N);
  for (Eigen::Index i = 0; i < N; ++i) v(i) = dist(rng);
  v.normalize();
  Eigen::MatrixXd V(N, std::min<Eigen::Index>(N, 64));
  std::vector<double> alpha, beta;
  V.col(0) = v;
  for (Eigen::Index j = 0; j < N; ++j) {
    Eigen::VectorXd w = a * V.col(j);
    alpha.push_back(V.col(j).dot(w));
    // Full reorthogonalization, applied twice.
    for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    const double b = w.norm();
    const Eigen::Index m = j + 1;
    bool done = m == N || b <= 1e-14 * std::abs(alpha.front());
    if (m % 10 == 0 || done) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      const auto& th = es.eigenvalues();
      const auto& y = es.eigenvectors();
      const double r_min = std::abs(b * y(m - 1, 0));
      const double r_max = std::abs(b * y(m - 1, m - 1));
      if (done || (r_min <= tol * std::max(1.0, std::abs(th(0))) && r_max <= tol * std::max(1.0, std::abs(th(m - 1)))))
        return {th(0), th(m - 1)};
    }
    beta.push_back(b);
    if (j + 1 >= V.cols()) V.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(N, 2 * V.cols()));
    V.col(j + 1) = w / b;
  }
  throw NumericError("lanczos_extreme_eigs: no convergence");
}

std::pair<double, double> gram_extreme_eigs(const GramSpec& spec) {
  if (!spec.s.is_real() || !(spec.s.re() > 1.0)) throw DomainError("gram_extreme_eigs: requires real s > 1");
  const Eigen::MatrixXd a = spec.matrix.real();
  if (spec.N <= 1000) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("gram_extreme_eigs: eigensolver failed");
    return {es.eigenvalues()(0), es.eigenvalues()(spec.N - 1)};
  }
  return lanczos_extreme_eigs(a);
}

IdentityReport gram_eigs_report(double s, std::size_t N, double slack) {
  const auto [lo, hi] = gram_eig_bounds(s);
  const auto [lmin, lmax] = gram_extreme_eigs(gram_matrix(s, N));
  const double violation = std::max({0.0, lo - lmin, lmax - hi});
  IdentityReport r;
  r.name = "gram-eigs";
  r.lhs = Complex(lmin);
  r.rhs = Complex(lmax);
  r.abs_error = violation;
  r.params = {{"s", s}, {"N", static_cast<std::int64_t>(N)}, {"lower_bound", lo}, {"upper_bound", hi}, {"slack", slack}};
  r.n_terms = N;
  r.verdict = lo - slack <= lmin && lmin <= lmax && lmax <= hi + slack ? Verdict::pass : Verdict::fail;
  return r;
}

Complex gram_quadratic_form(const GramSpec& spec, const Eigen::VectorXcd& a) {
  if (static_cast<std::size_t>(a.size()) != spec.N) throw InvalidArgument("gram_quadratic_form: dimension mismatch");
  return a.dot(spec.matrix * a);
}

Complex polylog_inner_product(std::uint64_t m, std::uint64_t n, ComplexParam s) {
  require_positive(m, n, "polylog_inner_product");
  require_re_gt_one(s, "polylog_inner_product");
  const auto L = static_cast<double>(lcm_u64(m, n));
  const Complex sv = s.value();
  return cexp_log(std::log(L / static_cast<double>(m)), -sv) * cexp_log(std::log(L / static_cast<double>(n)), -std::conj(sv)) *
         zeta(2.0 * s.re());
}

InnerProduct polylog_inner_product_direct(std::uint64_t m, std::uint64_t n, ComplexParam s, std::size_t n_terms) {
  require_positive(m, n, "polylog_inner_product_direct");
  require_re_gt_one(s, "polylog_inner_product_direct");
  const std::uint64_t L = lcm_u64(m, n);
  const std::uint64_t km = L / m, ln = L / n;  // k = km t, l = ln t
  const std::size_t T = n_terms / std::max(km, ln);
  const Complex sv = s.value();
  Complex sum(0.0);
  for (std::size_t t = T; t >= 1; --t) {
    const double lt = std::log(static_cast<double>(t));
    sum += cexp_log(std::log(static_cast<double>(km)) + lt, -sv) *
           cexp_log(std::log(static_cast<double>(ln)) + lt, -std::conj(sv));
  }
  const double sigma = s.re();
  const double scale = std::pow(static_cast<double>(km) * static_cast<double>(ln), -sigma);
  const double tail = scale * std::pow(static_cast<double>(std::max<std::size_t>(T, 1)), 1.0 - 2.0 * sigma) /
                      (2.0 * sigma - 1.0);
  return {sum, tail};
}

Complex mobius_polylog_inner_product(std::uint64_t m, std::uint64_t n, ComplexParam s) {
  require_positive(m, n, "mobius_polylog_inner_product");
  require_re_gt_one(s, "mobius_polylog_inner_product");
  const std::uint64_t L = lcm_u64(m, n);
  const std::uint64_t delta = L / m;
  const int mu = mobius_of(delta);
  if (mu == 0) return 0.0;
  const double two_sigma = 2.0 * s.re();
  double euler = 1.0;
  for (const auto& pp : trial_factorize(delta)) euler *= 1.0 - std::pow(static_cast<double>(pp.prime), -two_sigma);
  const Complex sv = s.value();
  return static_cast<double>(mu) * cexp_log(std::log(static_cast<double>(delta)), -sv) *
         cexp_log(std::log(static_cast<double>(L / n)), -std::conj(sv)) / (zeta(two_sigma) * euler);
}

InnerProduct mobius_polylog_inner_product_direct(std::uint64_t m, std::uint64_t n, ComplexParam s,
                                                 std::size_t n_terms) {
  require_positive(m, n, "mobius_polylog_inner_product_direct");
  require_re_gt_one(s, "mobius_polylog_inner_product_direct");
  const std::uint64_t L = lcm_u64(m, n);
  const std::uint64_t delta = L / m, ln = L / n;
  const std::size_t T = n_terms / std::max(delta, ln);
  if (T == 0) return {0.0, 0.0};
  const auto mu = sign_sieve(FunctionKind::mu, delta * T);
  const Complex sv = s.value();
  Complex sum(0.0);
  for (std::size_t t = T; t >= 1; --t) {
    const int sign = mu[delta * t - 1];
    if (sign == 0) continue;
    const double lt = std::log(static_cast<double>(t));
    sum += static_cast<double>(sign) * cexp_log(std::log(static_cast<double>(delta)) + lt, -sv) *
           cexp_log(std::log(static_cast<double>(ln)) + lt, -std::conj(sv));
  }
  const double sigma = s.re();
  const double scale = std::pow(static_cast<double>(delta) * static_cast<double>(ln), -sigma);
  const double tail = scale * std::pow(static_cast<double>(T), 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
  return {sum, tail};
}

BiorthCoeffs biorth_psi(std::uint64_t n, ComplexParam s) {
  if (n == 0) throw InvalidArgument("biorth_psi: n must be >= 1");
  BiorthCoeffs out{n, s, {}};
  for (auto d : divisors(n))
    out.coeffs[d] = static_cast<double>(mobius_of(n / d)) *
                    cexp_log(std::log(static_cast<double>(d)) - std::log(static_cast<double>(n)), s.value());
  return out;
}

BiorthCoeffsExact biorth_psi(std::uint64_t n, long s) {
  if (n == 0) throw InvalidArgument("biorth_psi: n must be >= 1");
  BiorthCoeffsExact out{n, s, {}};
  for (auto d : divisors(n)) out.coeffs[d] = mobius_of(n / d) * rational_pow(d, n, s);
  return out;
}

TruncatedSeries<Rational> biorth_series(std::uint64_t n, long s, std::size_t order) {
  if (order < n) throw InvalidArgument("biorth_series: order must be >= n");
  auto out = TruncatedSeries<Rational>::zero(order);
  for (const auto& [d, c] : biorth_psi(n, s).coeffs) out[d] = c;
  return out;
}

TruncatedSeries<Complex> biorth_series(std::uint64_t n, ComplexParam s, std::size_t order) {
  if (order < n) throw InvalidArgument("biorth_series: order must be >= n");
  auto out = TruncatedSeries<Complex>::zero(order);
  for (const auto& [d, c] : biorth_psi(n, s).coeffs) out[d] = c;
  return out;
}

TruncatedSeries<Rational> riesz_expand(const TruncatedSeries<Rational>& g, long s) {
  return otimes(g, mobius_coeffs(g.order(), s));
}

TruncatedSeries<Complex> riesz_expand(const TruncatedSeries<Complex>& g, ComplexParam s) {
  return otimes(g, mobius_coeffs(g.order(), s.value()));
}

TruncatedSeries<Rational> riesz_reconstruct(const TruncatedSeries<Rational>& alpha, long s) {
  return otimes(alpha, polylog_coeffs(alpha.order(), s));
}

TruncatedSeries<Complex> riesz_reconstruct(const TruncatedSeries<Complex>& alpha, ComplexParam s) {
  return otimes(alpha, polylog_coeffs(alpha.order(), s.value()));
}

}  // namespace ah

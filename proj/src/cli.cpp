#include "arith_harmonics/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "arith_harmonics/analytic.hpp"
#include "arith_harmonics/arith.hpp"
#include "arith_harmonics/asympt.hpp"
#include "arith_harmonics/gram.hpp"
#include "arith_harmonics/identities.hpp"
#include "arith_harmonics/report.hpp"
#include "json.hpp"

namespace ah {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags given to a verify run, resolved against per-identity defaults.
class Params {
 public:
  explicit Params(std::map<std::string, std::string> given) : given_(std::move(given)) {}

  std::uint64_t u64(const std::string& key, std::uint64_t def) {
    const auto text = take(key);
    std::uint64_t v = def;
    if (text) {
      const double d = parse_double(key, *text);
      if (!(d >= 0.0) || d != std::floor(d) || d > 1e15) throw UsageError("--" + key + " expects a non-negative integer");
      v = static_cast<std::uint64_t>(d);
    }
    resolved_[key] = static_cast<std::int64_t>(v);
    return v;
  }

  double real(const std::string& key, double def) {
    const auto text = take(key);
    const double v = text ? parse_double(key, *text) : def;
    resolved_[key] = v;
    return v;
  }

  ComplexParam complex(const std::string& key, ComplexParam def) {
    const auto text = take(key);
    ComplexParam v = def;
    if (text) {
      try {
        v = ComplexParam::parse(*text);
      } catch (const InvalidArgument& e) {
        throw UsageError("--" + key + ": " + e.what());
      }
    }
    resolved_[key] = v.to_string();
    return v;
  }

  std::string str(const std::string& key, const std::string& def) {
    const auto text = take(key);
    const std::string v = text ? *text : def;
    resolved_[key] = v;
    return v;
  }

  /// Every given flag must have been consumed by the identity.
  void finish(const std::string& identity) const {
    for (const auto& [k, v] : given_)
      if (!used_.count(k)) throw UsageError("flag --" + k + " is not accepted by '" + identity + "'");
  }

  const ParamMap& resolved() const { return resolved_; }

 private:
  std::optional<std::string> take(const std::string& key) {
    used_.insert(key);
    const auto it = given_.find(key);
    if (it == given_.end()) return std::nullopt;
    return it->second;
  }

  static double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
      throw UsageError("--" + key + " expects a number, got '" + text + "'");
    return v;
  }

  std::map<std::string, std::string> given_;
  std::set<std::string> used_;
  ParamMap resolved_;
};

struct RunContext {
  std::uint64_t seed = 1;
};

using Reports = std::vector<IdentityReport>;
using Handler = std::function<Reports(Params&, const RunContext&)>;

struct IdentityEntry {
  std::string name;
  std::string formula;
  Handler run;
};

double tol_or(Params& p, double def) { return p.real("tol", def); }

std::vector<Complex> random_polynomial(std::mt19937_64& rng, std::size_t degree) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Complex> c(degree + 1, 0.0);
  for (std::size_t k = 1; k <= degree; ++k) c[k] = dist(rng);
  return c;
}

TruncatedSeries<Rational> random_rational_series(std::mt19937_64& rng, std::size_t order) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
  auto f = TruncatedSeries<Rational>::zero(order);
  for (std::size_t n = 1; n <= order; ++n) {
    f[n] = Rational(num(rng), den(rng));
    f[n].canonicalize();
  }
  return f;
}

const std::vector<IdentityEntry>& registry() {
  static const std::vector<IdentityEntry> entries = {
      {"franel-sawtooth", "int_0^1 {rt}{st} dt = gcd(r,s)^2/(12rs), exact for all r, s <= r-max",
       [](Params& p, const RunContext&) {
         const auto r_max = p.u64("r-max", 12);
         if (r_max == 0) throw UsageError("--r-max must be >= 1");
         Reports out;
         for (std::uint64_t r = 1; r <= r_max; ++r)
           for (std::uint64_t s = 1; s <= r_max; ++s) out.push_back(franel_sawtooth_report(r, s));
         return out;
       }},
      {"franel-logsin", "int_0^1 log|2sin(pi rt)| log|2sin(pi st)| dt = (pi^2/12) gcd(r,s)^2/(rs)",
       [](Params& p, const RunContext&) {
         const auto r_max = p.u64("r-max", 6);
         const auto points = p.u64("quad-points", 200'000);
         const double tol = tol_or(p, 1e-6);
         if (r_max == 0) throw UsageError("--r-max must be >= 1");
         Reports out;
         for (std::uint64_t r = 1; r <= r_max; ++r)
           for (std::uint64_t s = 1; s <= r_max; ++s) out.push_back(franel_logsin(r, s, points, tol));
         return out;
       }},
      {"mikolas", "int_0^1 zeta(1-s,{ax}) zeta(1-s,{bx}) dx = 2 Gamma(s)^2 zeta(2s)/(2pi)^{2s} (gcd(a,b)/lcm(a,b))^s",
       [](Params& p, const RunContext&) {
         const auto a = p.u64("a", 1), b = p.u64("b", 1);
         const auto s = p.complex("s", 1.5);
         const auto points = p.u64("quad-points", 200'000);
         return Reports{mikolas_integral(a, b, s, points, tol_or(p, 1e-4))};
       }},
      {"ramanujan-point", "sum_m c_k(m)/m^s = zeta(s) sum_{d|k} d^{1-s} mu(k/d); at s = 1 equals -Lambda(k)",
       [](Params& p, const RunContext&) {
         const auto k = p.u64("k", 6);
         const auto s = p.complex("s", 2.0);
         const auto periods = p.u64("n-terms", 1'000'000);
         return Reports{ramanujan_point_formula(k, s, periods, tol_or(p, -1.0))};
       }},
      {"ramanujan-dual", "sum_k c_k(m)/k^s = sigma_{1-s}(m)/zeta(s)",
       [](Params& p, const RunContext&) {
         const auto m = p.u64("m", 12);
         const auto s = p.complex("s", 2.0);
         const auto n = p.u64("n-terms", 1'000'000);
         return Reports{ramanujan_dual_formula(m, s, n, tol_or(p, -1.0))};
       }},
      {"delange", "f = g * 1 equals sum_q fhat(q) c_q(n) with fhat(q) = sum_m g(qm)/(qm)",
       [](Params& p, const RunContext&) {
         const auto kind = p.str("g", "inv-square");
         const auto q_max = p.u64("q-max", 2000);
         const auto m_max = p.u64("m-max", 2000);
         const auto n_check = p.u64("n", 20);
         ArithFunction g;
         if (kind == "inv-square") {
           g = [](std::uint64_t n) { return Complex(1.0 / (static_cast<double>(n) * static_cast<double>(n))); };
         } else if (kind == "unit") {
           g = [](std::uint64_t n) { return Complex(n == 1 ? 1.0 : 0.0); };
         } else if (kind == "geometric") {
           const double z = p.real("z", 0.5);
           if (!(std::abs(z) < 1.0)) throw UsageError("--z must satisfy |z| < 1");
           g = [z](std::uint64_t n) { return Complex(std::pow(z, static_cast<double>(n)) / static_cast<double>(n)); };
         } else {
           throw UsageError("--g must be inv-square, unit or geometric");
         }
         return Reports{delange_expand(g, q_max, m_max, n_check, tol_or(p, 1e-4)).report};
       }},
      {"lucht", "sum_{d|l} gamma(d) = C_{s,l}(z), gamma(k) = k sum_n mu(n) g(kn), g(n) = z^n/n^s",
       [](Params& p, const RunContext&) {
         const auto z = p.complex("z", 0.5);
         const auto s = p.complex("s", 2.0);
         const auto l = p.u64("l", 6);
         const auto n = p.u64("n-terms", 100'000);
         return Reports{lucht_check(z.value(), s, l, n, tol_or(p, 1e-8))};
       }},
      {"mu-subseries", "sum_n mu(qn)/n^s = mu(q) q^s / (Phi_s(q) zeta(s))",
       [](Params& p, const RunContext&) {
         const auto q = p.u64("q", 2);
         const auto s = p.complex("s", 2.0);
         const auto n = p.u64("n-terms", 1'000'000);
         return Reports{mu_subseries(q, s, n, tol_or(p, 1e-6))};
       }},
      {"musq-coprime", "sum_{(m,n)=1} |mu(m)|/m^s = n^s zeta(s) / (psi_n(s) zeta(2s))",
       [](Params& p, const RunContext&) {
         const auto n = p.u64("n", 2);
         const auto s = p.complex("s", 2.0);
         const auto terms = p.u64("n-terms", 4'000'000);
         return Reports{musq_coprime_series(n, s, terms, tol_or(p, 1e-6))};
       }},
      {"besicovitch",
       "sum_{h=1}^k M_s(e(h/k)) = mu(k) k^{1-s} / (prod_{p|k}(1-p^{-s}) zeta(s)); "
       "lambda: lambda(k) k^{1-s} zeta(2s)/zeta(s)",
       [](Params& p, const RunContext&) {
         const auto k = p.u64("k", 4);
         const auto s = p.complex("s", 2.0);
         const auto n = p.u64("n-terms", 1'000'000);
         const auto kind = p.str("kind", "mu");
         if (kind != "mu" && kind != "lambda") throw UsageError("--kind must be mu or lambda");
         return Reports{besicovitch_sum(k, s, n, kind == "mu" ? SignKind::mu : SignKind::liouville, tol_or(p, -1.0))};
       }},
      {"liouville-alt", "sum (-1)^{n+1} lambda(n)/n^s = (1 + 2^{1-s}) zeta(2s)/zeta(s)",
       [](Params& p, const RunContext&) {
         const auto s = p.complex("s", 2.0);
         const auto n = p.u64("n-terms", 1'000'000);
         return Reports{liouville_alternating(s, n, tol_or(p, 1e-6))};
       }},
      {"mu-tail-bound", "|sum_j mu(jD)/j^tau| <= e(tau-1)/zeta(tau) and P_D(tau) <= e(tau-1), 1 < tau < 3/2",
       [](Params& p, const RunContext&) {
         const auto d = p.u64("d", 2310);
         const double tau = p.real("tau", 1.01);
         return Reports{mu_tail_bound_check(d, tau)};
       }},
      {"smith-det", "det(gcd(i,j)^r)_{i,j<=N} = J_r(1) J_r(2) ... J_r(N)",
       [](Params& p, const RunContext&) {
         const auto r = p.u64("r", 1);
         const auto n = p.u64("n", 10);
         if (r == 0 || r > 64) throw UsageError("--r must be in 1..64");
         return Reports{smith_det_report(static_cast<unsigned>(r), n)};
       }},
      {"gram-det", "det(gcd(m,n)^{2s}/(mn)^s) = (N!)^{-2s} prod_k J_{2s}(k)",
       [](Params& p, const RunContext&) {
         const auto s = p.complex("s", 1.5);
         const auto n = p.u64("n", 50);
         return Reports{gram_det_report(s, n, tol_or(p, 1e-8))};
       }},
      {"gram-eigs", "zeta(2s)/zeta(s)^2 <= lambda_min <= lambda_max <= zeta(s)^2/zeta(2s)",
       [](Params& p, const RunContext&) {
         const auto s = p.complex("s", 2.0);
         const auto n = p.u64("n", 100);
         if (!s.is_real()) throw UsageError("gram-eigs requires real --s");
         return Reports{gram_eigs_report(s.re(), n, p.real("slack", 1e-9))};
       }},
      {"biorth", "(L_s(z^m) | psi_n) = [m = n], psi_n = n^{-s} sum_{d|n} mu(n/d) d^s z^d; g = sum (g|psi_n) L_s(z^n)",
       [](Params& p, const RunContext& ctx) {
         const auto s = p.complex("s", 2.0);
         const auto n = p.u64("n", 64);
         const auto series = p.u64("n-terms", 10);
         if (!s.is_real() || s.re() != std::floor(s.re()) || std::abs(s.re()) > 64)
           throw UsageError("biorth requires an integer --s");
         if (n == 0) throw UsageError("--n must be >= 1");
         const long si = static_cast<long>(s.re());
         long mismatches = 0;
         std::vector<TruncatedSeries<Rational>> psi;
         for (std::uint64_t j = 1; j <= n; ++j) psi.push_back(biorth_series(j, si, n));
         const auto base = polylog_coeffs(n, si);
         for (std::uint64_t m = 1; m <= n; ++m) {
           const auto lm = dilate(base, m, n);
           for (std::uint64_t j = 1; j <= n; ++j)
             if (l2_pairing(lm, psi[j - 1]) != Rational(m == j ? 1 : 0)) ++mismatches;
         }
         Reports out;
         out.push_back(exact_report("biorth", Rational(mismatches), Rational(0),
                                    {{"s", si}, {"n", static_cast<std::int64_t>(n)}}, n * n));
         std::mt19937_64 rng(ctx.seed);
         long failures = 0;
         for (std::uint64_t i = 0; i < series; ++i) {
           const auto g = random_rational_series(rng, n);
           if (riesz_reconstruct(riesz_expand(g, si), si) != g) ++failures;
         }
         out.push_back(exact_report("riesz-roundtrip", Rational(failures), Rational(0),
                                    {{"s", si}, {"n", static_cast<std::int64_t>(n)},
                                     {"series", static_cast<std::int64_t>(series)}},
                                    series));
         return out;
       }},
      {"flett", "sum_j (cos(x/j) - 1) = sum_k (-1)^k zeta(2k) x^{2k}/(2k)!",
       [](Params& p, const RunContext&) {
         const double x_max = p.real("x", 10.0);
         const auto points = p.u64("n", 101);
         const double tol = tol_or(p, 1e-9);
         if (points < 1) throw UsageError("--n must be >= 1");
         Reports out;
         for (std::uint64_t i = 0; i < points; ++i) {
           const double x = points == 1 ? x_max : x_max * static_cast<double>(i) / static_cast<double>(points - 1);
           out.push_back(flett_report(x, tol));
         }
         return out;
       }},
      {"chp", "sum_n f(z/n^s) = sum_k a_k zeta(ks) z^k for f(z) = sum_{k>=2} a_k z^k (here f = cos - 1 truncated)",
       [](Params& p, const RunContext&) {
         const auto s = p.complex("s", 1.0);
         const auto z = p.complex("z", 1.0);
         const auto degree = p.u64("k", 20);
         if (degree < 2) throw UsageError("--k (degree) must be >= 2");
         std::vector<Complex> c(degree + 1, 0.0);
         double fact = 1.0;
         for (std::uint64_t k = 1; k <= degree; ++k) {
           fact *= static_cast<double>(k);
           if (k % 2 == 0) c[k] = (k / 2 % 2 == 1 ? -1.0 : 1.0) / fact;
         }
         return Reports{chp_transform(c, s, z.value(), tol_or(p, 1e-8))};
       }},
      {"t-semigroup", "T_s f(z) = (1/Gamma(s)) int_0^inf f(e^{-t} z) t^{s-1} dt = sum a_n n^{-s} z^n; T_a T_b = T_{a+b}",
       [](Params& p, const RunContext& ctx) {
         const auto s = p.complex("s", 1.5);
         const auto z = p.complex("z", 0.3);
         const auto degree = p.u64("n", 10);
         const double tol = tol_or(p, 1e-7);
         if (degree < 1 || degree > 30) throw UsageError("--n (degree) must be in 1..30");
         std::mt19937_64 rng(ctx.seed);
         const auto c = random_polynomial(rng, degree);
         auto f = TruncatedSeries<Complex>::zero(degree);
         for (std::uint64_t k = 1; k <= degree; ++k) f[k] = c[k];
         Reports out{t_semigroup_report(f, s, z.value(), tol)};
         const auto inner = [&f](Complex w) { return t_semigroup_quadrature(f, 0.8, w); };
         const Complex nested = t_semigroup_quadrature(inner, 0.7, z.value());
         out.push_back(numeric_report("t-semigroup-compose", nested, t_semigroup_coeff(f, 1.5).evaluate(z.value()), tol,
                                      {{"s1", 0.7}, {"s2", 0.8}, {"z", z.to_string()}}, degree));
         return out;
       }},
      {"lerch", "L_s(e(x)) = A_s zeta(1-s, x) + B_s zeta(1-s, 1-x), 0 < Re s < 1",
       [](Params& p, const RunContext&) {
         const auto s = p.complex("s", 0.5);
         const double x = p.real("x", 0.3);
         return Reports{lerch_report(s, x, tol_or(p, 1e-6))};
       }},
      {"kubert-logsin", "sum_{k<n} log|2 sin pi(x + k/n)| = log|2 sin pi n x|",
       [](Params& p, const RunContext&) {
         const auto n = p.u64("n", 3);
         const double x = p.real("x", 0.17);
         if (n == 0 || n > 1'000'000) throw UsageError("--n must be in 1..1e6");
         return Reports{kubert_logsin(static_cast<unsigned>(n), x, tol_or(p, 1e-12))};
       }},
      {"kubert-hurwitz", "sum_{k<m} zeta(s, (x + k)/m) = m^s zeta(s, x)",
       [](Params& p, const RunContext&) {
         const auto m = p.u64("m", 3);
         const auto s = p.complex("s", 2.5);
         const double x = p.real("x", 0.37);
         if (m == 0 || m > 1'000'000) throw UsageError("--m must be in 1..1e6");
         if (!(x > 0.0 && x <= 1.0)) throw UsageError("--x must be in (0, 1]");
         return Reports{kubert_hurwitz(static_cast<unsigned>(m), s, x, tol_or(p, 1e-10))};
       }},
  };
  return entries;
}

const std::vector<std::string> kVerifyFlags = {"s", "k", "q", "m", "n", "l", "r", "r-max", "a", "b", "x",
                                               "z", "tau", "d", "g", "kind", "n-terms", "quad-points",
                                               "q-max", "m-max", "slack", "tol"};

std::string verify_footer() {
  std::string text = "Identities:\n";
  for (const auto& e : registry()) text += "  " + e.name + "\n      " + e.formula + "\n";
  return text;
}

std::ostream& open_output(const std::string& path, std::ostream& fallback, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty()) return fallback;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw UsageError("cannot open output file '" + path + "'");
  return *holder;
}

// ---- sieve ----

int cmd_sieve(const std::string& kind_name, std::uint64_t n_max, std::uint64_t k, const std::string& format,
              const std::string& out_path, std::ostream& out) {
  FunctionKind kind;
  try {
    kind = parse_function_kind(kind_name);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (n_max == 0) throw UsageError("--n-max must be >= 1");
  std::vector<std::string> values;
  values.reserve(n_max);
  if (kind == FunctionKind::mangoldt) {
    const auto t = sieve_mangoldt(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) values.push_back(format_double(t[n]));
  } else if (kind == FunctionKind::sigma) {
    const auto t = sieve_sigma_exact(static_cast<long>(k), n_max);
    for (std::size_t n = 1; n <= n_max; ++n) values.push_back(t[n].get_str());
  } else if (kind == FunctionKind::generalized_mobius || kind == FunctionKind::custom) {
    throw UsageError("kind '" + kind_name + "' cannot be sieved from the command line");
  } else {
    const auto t = sieve(kind, n_max, static_cast<unsigned>(k));
    for (std::size_t n = 1; n <= n_max; ++n) values.push_back(std::to_string(t[n]));
  }
  const auto fmt = parse_output_format(format);
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(out_path, out, holder);
  std::ostringstream buf;
  switch (fmt) {
    case OutputFormat::csv:
      buf << "# command=sieve\n# kind=" << to_string(kind) << "\n# n_max=" << n_max << "\n# k=" << k << "\nn,value\n";
      for (std::size_t n = 1; n <= n_max; ++n) buf << n << ',' << values[n - 1] << '\n';
      break;
    case OutputFormat::json: {
      nlohmann::ordered_json doc;
      doc["config"] = {{"command", "sieve"}, {"kind", std::string(to_string(kind))}, {"n_max", n_max}, {"k", k}};
      auto rows = nlohmann::ordered_json::array();
      for (std::size_t n = 1; n <= n_max; ++n) rows.push_back({n, values[n - 1]});
      doc["rows"] = std::move(rows);
      buf << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::table:
      buf << "config: command=sieve kind=" << to_string(kind) << " n_max=" << n_max << " k=" << k << '\n';
      for (std::size_t n = 1; n <= n_max; ++n) buf << std::setw(10) << n << "  " << values[n - 1] << '\n';
      break;
  }
  os << buf.str();
  return 0;
}

// ---- verify ----

int cmd_verify(const std::string& identity, const std::map<std::string, std::string>& given, std::uint64_t seed,
               const std::string& format, const std::string& out_path, std::ostream& out) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const IdentityEntry& e) { return e.name == identity; });
  if (it == reg.end()) throw UsageError("unknown identity '" + identity + "'");
  const auto fmt = parse_output_format(format);
  Params params(given);
  RunContext ctx{seed};
  Reports reports;
  try {
    reports = it->run(params, ctx);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  } catch (const PreconditionViolation& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  params.finish(identity);
  ParamMap config = params.resolved();
  config["command"] = std::string("verify");
  config["identity"] = identity;
  config["seed"] = static_cast<std::int64_t>(seed);
  config["format"] = format;
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(out_path, out, holder);
  std::ostringstream buf;
  write_reports(buf, reports, config, fmt);
  os << buf.str();
  return exit_code_for(reports);
}

// ---- figure ----

int cmd_figure(const std::string& which, std::uint64_t n_terms, std::uint64_t points, const std::string& format,
               const std::string& out_path, std::ostream& out) {
  if (which != "fig1" && which != "fig2") throw UsageError("figure must be fig1 or fig2");
  if (format != "csv") throw UsageError("figure output is CSV only");
  if (points < 2) throw UsageError("--grid-points must be >= 2");
  if (n_terms == 0) throw UsageError("--n-terms must be >= 1");
  const auto sign = sign_sieve(which == "fig1" ? FunctionKind::mu : FunctionKind::liouville, n_terms);
  // t_i = i / (P - 1): cos(2 pi n t_i) depends on n i mod (P - 1) only.
  const std::uint64_t period = points - 1;
  std::vector<double> cos_table(period);
  for (std::uint64_t r = 0; r < period; ++r)
    cos_table[r] = std::cos(2.0 * kPi * static_cast<double>(r) / static_cast<double>(period));
  std::vector<double> coeff(n_terms);
  for (std::uint64_t n = 1; n <= n_terms; ++n) coeff[n - 1] = static_cast<double>(sign[n - 1]) / static_cast<double>(n);

  std::ostringstream buf;
  buf << "# command=figure\n# figure=" << which << "\n# function=" << (which == "fig1" ? "mu" : "lambda")
      << "\n# n_terms=" << n_terms << "\n# grid_points=" << points << "\nt,value\n";
  for (std::uint64_t i = 0; i < points; ++i) {
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t n = 1; n <= n_terms; ++n) {
      if (coeff[n - 1] == 0.0) continue;
      const double v = coeff[n - 1] * cos_table[(n % period) * (i % period) % period];
      const double t = sum + v;
      comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
      sum = t;
    }
    buf << format_double(static_cast<double>(i) / static_cast<double>(period)) << ',' << format_double(sum + comp)
        << '\n';
  }
  // Footer: sum_{h=1}^{k} f_N(h/k), exactly, by both routes of the truncated root sum.
  auto series = TruncatedSeries<Rational>::zero(n_terms);
  for (std::uint64_t n = 1; n <= n_terms; ++n)
    if (sign[n - 1] != 0) series[n] = Rational(sign[n - 1], static_cast<long>(n));
  for (std::uint64_t k = 2; k <= 10; ++k) {
    const auto rs = truncated_root_sum(series, k);
    buf << "# root_sum k=" << k << " value=" << format_double(rs.direct.get_d())
        << " residue_route=" << format_double(rs.residue_route.get_d())
        << " exact_match=" << (rs.direct == rs.residue_route ? 1 : 0) << '\n';
  }
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(out_path, out, holder);
  os << buf.str();
  return 0;
}

// ---- scan ----

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    T v{};
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size())
      throw UsageError(std::string(what) + ": bad list element '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

int cmd_scan(const std::string& kind, const std::string& shifts_text, const std::string& exponents_text,
             std::uint64_t M, std::uint64_t checkpoints, const std::string& format, const std::string& out_path,
             std::ostream& out) {
  if (kind != "mu" && kind != "lambda") throw UsageError("--kind must be mu or lambda");
  if (format != "csv") throw UsageError("scan output is CSV only");
  const auto shifts = parse_list<std::uint64_t>(shifts_text, "--shifts");
  const std::string exps = exponents_text.empty() ? std::string() : exponents_text;
  std::vector<unsigned> exponents;
  if (exps.empty())
    exponents.assign(shifts.size(), 1);
  else
    exponents = parse_list<unsigned>(exps, "--exponents");
  ChowlaScan scan;
  try {
    scan = chowla_correlation_scan(kind == "mu" ? SignKind::mu : SignKind::liouville, shifts, exponents, M,
                                   checkpoints);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream buf;
  auto join = [](const auto& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ";") + std::to_string(x);
    return s;
  };
  buf << "# command=scan\n# kind=" << kind << "\n# shifts=" << join(shifts) << "\n# exponents=" << join(exponents)
      << "\n# M=" << M << "\n# checkpoints=" << checkpoints << '\n';
  if (scan.positive_density_warning) buf << "# warning=all exponents are 2; the sum has positive density\n";
  buf << "M,S_over_M\n";
  for (const auto& [m, v] : scan.trend) buf << m << ',' << format_double(v) << '\n';
  std::unique_ptr<std::ofstream> holder;
  std::ostream& os = open_output(out_path, out, holder);
  os << buf.str();
  return 0;
}

}  // namespace

std::vector<std::string> registered_identities() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.push_back(e.name);
  return names;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic harmonic analysis toolkit: sieves, identity verification and figure data"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 1;

  auto* sieve_cmd = app.add_subcommand("sieve", "Tabulate an arithmetic function f(1..n_max) as (n, value) rows");
  std::string kind = "mu";
  std::uint64_t n_max = 100, k_param = 1;
  sieve_cmd->add_option("--kind", kind, "mu, lambda, phi, jordan, sigma, mangoldt, theta, omega, ...")->capture_default_str();
  sieve_cmd->add_option("--n-max", n_max, "Largest n")->capture_default_str();
  sieve_cmd->add_option("--k", k_param, "Order for jordan, power, sigma, divisor_count, dprime_count")->capture_default_str();
  sieve_cmd->add_option("--format", format, "csv, json or table")->capture_default_str();
  sieve_cmd->add_option("--out", out_path, "Write to this file instead of stdout");
  sieve_cmd->footer("Divisor-sum identities: f * 1 = g, mu * 1 = e, J_k(n) = n^k prod_{p|n}(1 - p^{-k})");

  auto* verify_cmd = app.add_subcommand("verify", "Check an identity numerically or exactly and report the verdict");
  std::string identity;
  std::string verify_format = "json";
  verify_cmd->add_option("identity", identity, "Identity name")->required();
  std::map<std::string, std::string> verify_values;
  std::map<std::string, CLI::Option*> verify_opts;
  for (const auto& flag : kVerifyFlags) {
    verify_values[flag];
    verify_opts[flag] = verify_cmd->add_option("--" + flag, verify_values[flag], "Identity parameter");
  }
  verify_cmd->add_option("--seed", seed, "Seed for randomized inputs")->capture_default_str();
  verify_cmd->add_option("--format", verify_format, "csv, json or table")->capture_default_str();
  verify_cmd->add_option("--out", out_path, "Write to this file instead of stdout");
  verify_cmd->footer(verify_footer());

  auto* figure_cmd = app.add_subcommand("figure", "Partial sums of sum mu(n)/n cos(2 pi n t) (fig1) or "
                                                  "sum lambda(n)/n cos(2 pi n t) (fig2) on [0, 1]");
  std::string which;
  std::uint64_t fig_terms = 100'000, grid_points = 2000;
  std::string fig_format = "csv";
  figure_cmd->add_option("which", which, "fig1 or fig2")->required();
  figure_cmd->add_option("--n-terms", fig_terms, "Truncation N")->capture_default_str();
  figure_cmd->add_option("--grid-points", grid_points, "Number of grid points")->capture_default_str();
  figure_cmd->add_option("--format", fig_format, "csv")->capture_default_str();
  figure_cmd->add_option("--out", out_path, "Write to this file instead of stdout");
  figure_cmd->footer("Footer rows: sum_{h=1}^{k} f_N(h/k) = k sum_{j <= N/k} a_{jk}, k = 2..10, exact");

  auto* scan_cmd = app.add_subcommand("scan", "Chowla-type correlation scan S(M)/M");
  std::string scan_kind = "mu", shifts = "0", exponents;
  std::uint64_t scan_m = 1'000'000, checkpoints = 4;
  std::string scan_format = "csv";
  scan_cmd->add_option("--kind", scan_kind, "mu or lambda")->capture_default_str();
  scan_cmd->add_option("--shifts", shifts, "Distinct shifts, comma separated")->capture_default_str();
  scan_cmd->add_option("--exponents", exponents, "Exponents 1 or 2, comma separated (default all 1)");
  scan_cmd->add_option("--m", scan_m, "Scan length M")->capture_default_str();
  scan_cmd->add_option("--checkpoints", checkpoints, "Number of trend rows")->capture_default_str();
  scan_cmd->add_option("--format", scan_format, "csv")->capture_default_str();
  scan_cmd->add_option("--out", out_path, "Write to this file instead of stdout");
  scan_cmd->footer("S(M) = sum_{m <= M} prod_i f(m + n_i)^{e_i}, f = mu or lambda; conjecturally o(M)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*sieve_cmd) return cmd_sieve(kind, n_max, k_param, format, out_path, out);
    if (*verify_cmd) {
      std::map<std::string, std::string> given;
      for (const auto& [flag, opt] : verify_opts)
        if (opt->count() > 0) given[flag] = verify_values[flag];
      return cmd_verify(identity, given, seed, verify_format, out_path, out);
    }
    if (*figure_cmd) return cmd_figure(which, fig_terms, grid_points, fig_format, out_path, out);
    if (*scan_cmd) return cmd_scan(scan_kind, shifts, exponents, scan_m, checkpoints, scan_format, out_path, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ah

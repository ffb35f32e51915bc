#include "arith_harmonics/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "json.hpp"

namespace ah {

using nlohmann::ordered_json;

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::heuristic_pass: return "heuristic-pass";
  }
  return "fail";
}

IdentityReport numeric_report(std::string name, Complex lhs, Complex rhs, double tol, ParamMap params,
                              std::size_t n_terms, bool heuristic) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_error = std::abs(lhs - rhs);
  r.params = std::move(params);
  r.params["tol"] = tol;
  r.n_terms = n_terms;
  const bool ok = std::isfinite(r.abs_error) && r.abs_error <= tol;
  r.verdict = ok ? (heuristic ? Verdict::heuristic_pass : Verdict::pass) : Verdict::fail;
  return r;
}

IdentityReport exact_report(std::string name, const Rational& lhs, const Rational& rhs, ParamMap params,
                            std::size_t n_terms) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  const Rational diff = abs(Rational(lhs - rhs));
  r.abs_error = diff.get_d();
  r.params = std::move(params);
  r.n_terms = n_terms;
  r.verdict = lhs == rhs ? Verdict::pass : Verdict::fail;
  return r;
}

int exit_code_for(const std::vector<IdentityReport>& reports) {
  bool heuristic = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::fail) return 1;
    if (r.verdict == Verdict::heuristic_pass) heuristic = true;
  }
  return heuristic ? 3 : 0;
}

std::string scalar_to_string(const ReportScalar& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return q->get_str();
  const Complex z = std::get<Complex>(v);
  return ComplexParam(std::isfinite(z.real()) ? z.real() : 0.0, std::isfinite(z.imag()) ? z.imag() : 0.0).to_string();
}

std::string param_to_string(const ParamValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  return std::get<std::string>(v);
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "table") return OutputFormat::table;
  throw InvalidArgument("unknown output format '" + std::string(name) + "'");
}

namespace {

ordered_json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

ordered_json scalar_json(const ReportScalar& v) {
  ordered_json j;
  if (const auto* q = std::get_if<Rational>(&v)) {
    j["exact"] = q->get_str();
    j["re"] = number_json(q->get_d());
    j["im"] = 0.0;
  } else {
    const Complex z = std::get<Complex>(v);
    j["re"] = number_json(z.real());
    j["im"] = number_json(z.imag());
  }
  return j;
}

ordered_json params_json(const ParamMap& params) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : params) {
    if (const auto* i = std::get_if<std::int64_t>(&v))
      j[k] = *i;
    else if (const auto* d = std::get_if<double>(&v))
      j[k] = number_json(*d);
    else
      j[k] = std::get<std::string>(v);
  }
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string joined_params(const ParamMap& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + "=" + param_to_string(v);
  }
  return out;
}

}  // namespace

void write_reports(std::ostream& out, const std::vector<IdentityReport>& reports, const ParamMap& config,
                   OutputFormat format) {
  switch (format) {
    case OutputFormat::json: {
      ordered_json doc;
      doc["config"] = params_json(config);
      ordered_json arr = ordered_json::array();
      for (const auto& r : reports) {
        ordered_json j;
        j["name"] = r.name;
        j["params"] = params_json(r.params);
        j["lhs"] = scalar_json(r.lhs);
        j["rhs"] = scalar_json(r.rhs);
        j["abs_error"] = number_json(r.abs_error);
        j["verdict"] = std::string(to_string(r.verdict));
        j["n_terms"] = r.n_terms;
        arr.push_back(std::move(j));
      }
      doc["reports"] = std::move(arr);
      ordered_json summary;
      summary["total"] = reports.size();
      summary["failed"] = std::count_if(reports.begin(), reports.end(),
                                        [](const IdentityReport& r) { return r.verdict == Verdict::fail; });
      summary["exit_code"] = exit_code_for(reports);
      doc["summary"] = std::move(summary);
      out << doc.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv: {
      for (const auto& [k, v] : config) out << "# " << k << '=' << param_to_string(v) << '\n';
      out << "name,lhs,rhs,abs_error,verdict,n_terms,params\n";
      for (const auto& r : reports) {
        out << csv_field(r.name) << ',' << csv_field(scalar_to_string(r.lhs)) << ','
            << csv_field(scalar_to_string(r.rhs)) << ',' << format_double(r.abs_error) << ','
            << to_string(r.verdict) << ',' << r.n_terms << ',' << csv_field(joined_params(r.params)) << '\n';
      }
      break;
    }
    case OutputFormat::table: {
      out << "config:";
      for (const auto& [k, v] : config) out << ' ' << k << '=' << param_to_string(v);
      out << '\n';
      out << std::left << std::setw(16) << "verdict" << std::setw(14) << "abs_error" << "name  params\n";
      for (const auto& r : reports) {
        char err[32];
        std::snprintf(err, sizeof err, "%.3e", r.abs_error);
        out << std::left << std::setw(16) << to_string(r.verdict) << std::setw(14) << err << r.name << "  "
            << joined_params(r.params) << '\n';
      }
      break;
    }
  }
}

}  // namespace ah

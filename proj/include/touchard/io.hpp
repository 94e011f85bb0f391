#pragma once

// JSON and CSV forms of every report type, plus the sweep spec document.
// Doubles are written in shortest round-trip form, so parse -> re-emit is byte-identical.

#include <cmath>
#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "touchard/class_criteria.hpp"
#include "touchard/disk_verifier.hpp"
#include "touchard/error.hpp"
#include "touchard/explorer.hpp"
#include "touchard/series.hpp"
#include "touchard/special_kernel.hpp"

namespace touchard {

using json = nlohmann::ordered_json;

/// Decimal literal or an exact ratio token "p/q" ("4/3" -> 4.0/3.0).
inline double parse_real(const std::string& token) {
  const auto t = detail::trim(token);
  const auto slash = t.find('/');
  if (slash == std::string::npos) return detail::parse_double(t);
  const double num = detail::parse_double(detail::trim(t.substr(0, slash)));
  const double den = detail::parse_double(detail::trim(t.substr(slash + 1)));
  if (den == 0.0) throw error(errc::parse_error, "zero denominator in '" + token + "'");
  return num / den;
}

inline std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return detail::format_double(v);
}

namespace detail {

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double number_from(const json& j) { return j.is_null() ? NAN : j.get<double>(); }

inline json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

inline std::complex<double> complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw error(errc::parse_error, "complex value must be a number or [re, im]");
}

inline double real_from(const json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  throw error(errc::parse_error, "expected a number or a 'p/q' string");
}

}  // namespace detail

// ---- moment_value

inline json to_json(const moment_value& v) {
  json j;
  j["value"] = v.value;
  j["method"] = to_string(v.method);
  j["truncation_terms"] = v.truncation_terms;
  j["tail_bound"] = v.tail_bound;
  if (v.experimental) j["label"] = "experimental: non-integer order";
  return j;
}

inline moment_value moment_from_json(const json& j) {
  moment_value v;
  v.value = j.at("value").get<double>();
  const auto method = j.at("method").get<std::string>();
  if (method != "closed_form" && method != "series") throw error(errc::parse_error, "bad moment method");
  v.method = method == "series" ? moment_method::series : moment_method::closed_form;
  v.truncation_terms = j.at("truncation_terms").get<std::size_t>();
  v.tail_bound = j.at("tail_bound").get<double>();
  v.experimental = j.contains("label");
  return v;
}

// ---- membership_report

inline json to_json(const membership_report& r) {
  json j;
  j["criterion_value"] = r.criterion_value;
  j["bound"] = r.bound;
  j["member"] = r.member;
  j["method"] = to_string(r.method);
  j["detail"] = r.detail;
  return j;
}

inline membership_report membership_from_json(const json& j) {
  membership_report r;
  r.criterion_value = j.at("criterion_value").get<double>();
  r.bound = j.at("bound").get<double>();
  r.member = j.at("member").get<bool>();
  const auto m = j.at("method").get<std::string>();
  if (m == "closed_form") r.method = report_method::closed_form;
  else if (m == "coefficient_sum") r.method = report_method::coefficient_sum;
  else if (m == "disk_sampled") r.method = report_method::disk_sampled;
  else throw error(errc::parse_error, "bad report method '" + m + "'");
  r.detail = j.at("detail").get<std::string>();
  return r;
}

inline std::string csv_header(const membership_report&) { return "criterion_value,bound,member,method,detail"; }

inline std::string csv_line(const membership_report& r) {
  std::string detail = r.detail;
  for (auto& ch : detail) if (ch == ',' || ch == '\n') ch = ';';
  return csv_number(r.criterion_value) + ',' + csv_number(r.bound) + ',' + (r.member ? "true" : "false") + ',' +
         to_string(r.method) + ',' + detail;
}

// ---- verification_report

inline json to_json(const verification_report& r) {
  json j;
  j["max_real_part"] = detail::number_or_null(r.max_real_part);
  j["arg_of_max"] = detail::complex_json(r.arg_of_max);
  j["violations"] = r.violations;
  j["degenerate"] = r.degenerate;
  j["samples"] = r.samples;
  j["threshold"] = r.threshold;
  j["quantity"] = r.quantity == sampled_quantity::real_part ? "real_part" : "modulus";
  j["note"] = "consistency evidence";
  return j;
}

inline verification_report verification_from_json(const json& j) {
  verification_report r;
  r.max_real_part = detail::number_from(j.at("max_real_part"));
  if (std::isnan(r.max_real_part)) r.max_real_part = -INFINITY;
  r.arg_of_max = detail::complex_from(j.at("arg_of_max"));
  r.violations = j.at("violations").get<std::size_t>();
  r.degenerate = j.at("degenerate").get<std::size_t>();
  r.samples = j.at("samples").get<std::size_t>();
  r.threshold = j.at("threshold").get<double>();
  r.quantity = j.at("quantity").get<std::string>() == "modulus" ? sampled_quantity::modulus : sampled_quantity::real_part;
  return r;
}

inline void write_samples_csv(std::ostream& os, const std::vector<disk_sample>& samples) {
  os << "re,im,value,degenerate\n";
  for (const auto& s : samples) {
    os << csv_number(s.z.real()) << ',' << csv_number(s.z.imag()) << ',' << csv_number(s.value) << ','
       << (s.degenerate ? 1 : 0) << '\n';
  }
}

// ---- threshold_result

inline json to_json(const threshold_result& t) {
  json j;
  j["m_star"] = t.m_star;
  j["bracket"] = json::array({t.final_bracket.lo, t.final_bracket.hi});
  j["residual"] = t.residual;
  j["iterations"] = t.iterations;
  j["criterion"] = to_string(t.criterion);
  json all = json::array();
  for (const auto& b : t.brackets) all.push_back(json::array({b.lo, b.hi}));
  j["ladder_brackets"] = all;
  j["non_monotone_warning"] = t.non_monotone;
  return j;
}

inline threshold_result threshold_from_json(const json& j) {
  threshold_result t;
  t.m_star = j.at("m_star").get<double>();
  t.final_bracket = {j.at("bracket")[0].get<double>(), j.at("bracket")[1].get<double>()};
  t.residual = j.at("residual").get<double>();
  t.iterations = j.at("iterations").get<std::size_t>();
  t.criterion = parse_criterion(j.at("criterion").get<std::string>());
  for (const auto& b : j.at("ladder_brackets")) t.brackets.push_back({b[0].get<double>(), b[1].get<double>()});
  t.non_monotone = j.at("non_monotone_warning").get<bool>();
  return t;
}

inline std::string csv_header(const threshold_result&) {
  return "criterion,m_star,m_lo,m_hi,residual,iterations,non_monotone_warning";
}

inline std::string csv_line(const threshold_result& t) {
  return to_string(t.criterion) + ',' + csv_number(t.m_star) + ',' + csv_number(t.final_bracket.lo) + ',' +
         csv_number(t.final_bracket.hi) + ',' + csv_number(t.residual) + ',' + std::to_string(t.iterations) + ',' +
         (t.non_monotone ? "true" : "false");
}

// ---- sweep

inline constexpr const char* kSweepCsvHeader =
    "l,m,lambda,alpha,tau_re,tau_im,A,B,criterion_value,bound,member,status";

inline void write_sweep_csv(std::ostream& os, const std::vector<sweep_row>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.l << ',' << csv_number(r.m) << ',' << csv_number(r.lambda) << ',' << csv_number(r.alpha) << ','
       << csv_number(r.tau.real()) << ',' << csv_number(r.tau.imag()) << ',' << csv_number(r.A) << ','
       << csv_number(r.B) << ',' << csv_number(r.criterion_value) << ',' << csv_number(r.bound) << ','
       << (r.member ? "true" : "false") << ',' << r.status << '\n';
  }
}

inline json to_json(const std::vector<sweep_row>& rows, criterion_kind c) {
  json j;
  j["criterion"] = to_string(c);
  json arr = json::array();
  for (const auto& r : rows) {
    json o;
    o["l"] = r.l;
    o["m"] = r.m;
    o["lambda"] = r.lambda;
    o["alpha"] = r.alpha;
    o["tau"] = detail::complex_json(r.tau);
    o["A"] = r.A;
    o["B"] = r.B;
    o["criterion_value"] = detail::number_or_null(r.criterion_value);
    o["bound"] = detail::number_or_null(r.bound);
    o["member"] = r.member;
    o["status"] = r.status;
    arr.push_back(std::move(o));
  }
  j["rows"] = std::move(arr);
  return j;
}

inline std::vector<sweep_row> sweep_rows_from_json(const json& j) {
  std::vector<sweep_row> rows;
  for (const auto& o : j.at("rows")) {
    sweep_row r;
    r.l = o.at("l").get<unsigned>();
    r.m = o.at("m").get<double>();
    r.lambda = o.at("lambda").get<double>();
    r.alpha = o.at("alpha").get<double>();
    r.tau = detail::complex_from(o.at("tau"));
    r.A = o.at("A").get<double>();
    r.B = o.at("B").get<double>();
    r.criterion_value = detail::number_from(o.at("criterion_value"));
    r.bound = detail::number_from(o.at("bound"));
    r.member = o.at("member").get<bool>();
    r.status = o.at("status").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

/// {"criterion": "M", "l": [..], "m": [..], "lambda": [..], "alpha": [.., "4/3"],
///  "tau": [1, [re, im]], "A": [..], "B": [..]}; tau/A/B only for "rtau".
inline sweep_grid sweep_grid_from_json(const json& j) {
  try {
    sweep_grid g;
    g.criterion = parse_criterion(j.value("criterion", std::string("M")));
    auto reals = [&](const char* key) {
      std::vector<double> out;
      if (j.contains(key)) for (const auto& v : j.at(key)) out.push_back(detail::real_from(v));
      return out;
    };
    if (j.contains("l")) {
      for (const auto& v : j.at("l")) {
        const double d = v.get<double>();
        if (d < 0 || std::floor(d) != d) throw error(errc::invalid_parameter, "sweep l values must be integers >= 0");
        g.l.push_back(static_cast<unsigned>(d));
      }
    }
    g.m = reals("m");
    g.lambda = reals("lambda");
    g.alpha = reals("alpha");
    g.A = reals("A");
    g.B = reals("B");
    if (j.contains("tau")) for (const auto& v : j.at("tau")) g.tau.push_back(detail::complex_from(v));
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("sweep spec: ") + e.what());
  }
}

}  // namespace touchard

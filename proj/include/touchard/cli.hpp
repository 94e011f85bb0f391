#pragma once

// Command-line dispatch. Data goes to `out`, diagnostics to `err`.
// Exit codes: 0 computed, 2 invalid parameters, 3 numeric failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "touchard/class_criteria.hpp"
#include "touchard/disk_verifier.hpp"
#include "touchard/error.hpp"
#include "touchard/explorer.hpp"
#include "touchard/io.hpp"
#include "touchard/series.hpp"
#include "touchard/special_kernel.hpp"

namespace touchard::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumeric = 3;

enum class output_format { json, csv, human };

struct cli_config {
  output_format format = output_format::json;
  std::size_t truncation_order = kDefaultTruncationOrder;
  double tolerance = 1e-12;
};

namespace detail {

inline unsigned parse_order(const std::string& token) {
  const double v = parse_real(token);
  if (!(v >= 0.0) || std::floor(v) != v || v > 1e6) {
    throw error(errc::invalid_parameter, "order l must be a nonnegative integer, got '" + token + "'");
  }
  return static_cast<unsigned>(v);
}

inline std::complex<double> parse_tau(const std::string& token) {
  const auto comma = token.find(',');
  if (comma == std::string::npos) return {parse_real(token), 0.0};
  return {parse_real(token.substr(0, comma)), parse_real(token.substr(comma + 1))};
}

inline truncated_series load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::parse_error, "cannot open series file '" + path + "'");
  return read_series_csv(in);
}

struct function_source {
  std::vector<std::string> touchard;  // {L, M}
  std::string series_file;
  bool operator_L = false;

  truncated_series build(std::size_t order) const {
    if (!touchard.empty() && !series_file.empty()) {
      throw error(errc::invalid_parameter, "give either --touchard or --series, not both");
    }
    if (!series_file.empty()) return load_series(series_file);
    if (touchard.size() != 2) throw error(errc::invalid_parameter, "need --touchard L M or --series FILE");
    const touchard_params tp{parse_order(touchard[0]), parse_real(touchard[1])};
    return operator_L ? apply_operator_L(tp, order) : touchard_series(tp, order);
  }
};

struct rtau_options {
  std::string tau = "1";
  std::string A;
  std::string B;

  rtau_params build() const {
    if (A.empty() || B.empty()) throw error(errc::invalid_parameter, "rtau needs --A and --B");
    return rtau_params(parse_tau(tau), parse_real(A), parse_real(B));
  }
};

inline void add_rtau_options(CLI::App* sub, rtau_options& r) {
  sub->add_option("--tau", r.tau, "tau as 're' or 're,im' (default 1)");
  sub->add_option("--A", r.A, "R^tau parameter A");
  sub->add_option("--B", r.B, "R^tau parameter B");
}

inline void emit(std::ostream& out, output_format fmt, const json& j, const std::string& csv_header,
                 const std::string& csv_row) {
  switch (fmt) {
    case output_format::json: out << j.dump() << '\n'; break;
    case output_format::csv: out << csv_header << '\n' << csv_row << '\n'; break;
    case output_format::human:
      for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      break;
  }
}

inline void emit_report(std::ostream& out, output_format fmt, const membership_report& r) {
  emit(out, fmt, to_json(r), csv_header(r), csv_line(r));
}

}  // namespace detail

inline constexpr const char* kColumnHelp =
    "CSV columns:\n"
    "  moment:         value,method,truncation_terms,tail_bound\n"
    "  coeffs:         n,a_n\n"
    "  check-*:        criterion_value,bound,member,method,detail\n"
    "  threshold:      criterion,m_star,m_lo,m_hi,residual,iterations,non_monotone_warning\n"
    "  verify-disk:    max_real_part,arg_re,arg_im,violations,degenerate,samples,threshold,quantity\n"
    "  sweep:          l,m,lambda,alpha,tau_re,tau_im,A,B,criterion_value,bound,member,status\n"
    "alpha and lambda accept decimals or exact ratios such as 4/3.";

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Touchard-series membership criteria for M*(lambda,alpha) and N*(lambda,alpha)", "touchard"};
  app.footer(kColumnHelp);
  app.require_subcommand(1);
  app.fallthrough();

  cli_config cfg;
  std::string format = "json";
  app.add_option("--format", format, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--order", cfg.truncation_order, "truncation order N (default 64)");
  app.add_option("--tol", cfg.tolerance, "series tolerance (default 1e-12)");

  // moment
  std::string l_token, m_token;
  bool use_series = false;
  auto* moment = app.add_subcommand("moment", "raw Poisson moment mu'_l(m)");
  moment->add_option("--l", l_token, "order l (real l needs --series)")->required();
  moment->add_option("--m", m_token, "Poisson parameter m > 0")->required();
  moment->add_flag("--series", use_series, "sum the defining series instead of the Stirling expansion");

  // coeffs
  std::string coeff_l, coeff_m;
  auto* coeffs = app.add_subcommand("coeffs", "coefficients of Phi_m^l as CSV 'n,a_n'");
  coeffs->add_option("--l", coeff_l)->required();
  coeffs->add_option("--m", coeff_m)->required();

  // check-class
  std::string klass, lambda_token, alpha_token;
  detail::function_source source;
  auto* check_class = app.add_subcommand("check-class", "coefficient criterion on a given series");
  check_class->add_option("--class", klass, "Mstar | Nstar")->required()->check(CLI::IsMember({"Mstar", "Nstar"}));
  check_class->add_option("--lambda", lambda_token)->required();
  check_class->add_option("--alpha", alpha_token)->required();
  check_class->add_option("--touchard", source.touchard, "L M: use Phi_M^L")->expected(2);
  check_class->add_option("--series", source.series_file, "CSV file 'n,a_n'");

  // check-theorem
  std::string which;
  detail::rtau_options rt;
  auto* check_theorem = app.add_subcommand("check-theorem", "closed-form membership criterion");
  check_theorem->add_option("--which", which, "M | N | rtau | integral")->required();
  check_theorem->add_option("--l", l_token)->required();
  check_theorem->add_option("--m", m_token)->required();
  check_theorem->add_option("--lambda", lambda_token)->required();
  check_theorem->add_option("--alpha", alpha_token)->required();
  detail::add_rtau_options(check_theorem, rt);

  // threshold
  threshold_options topt;
  auto* threshold = app.add_subcommand("threshold", "Poisson parameter m* where membership is lost");
  threshold->add_option("--which", which, "M | N | rtau | integral")->required();
  threshold->add_option("--l", l_token)->required();
  threshold->add_option("--lambda", lambda_token)->required();
  threshold->add_option("--alpha", alpha_token)->required();
  threshold->add_option("--tol-m", topt.tol_m, "bisection width (default 1e-10)");
  threshold->add_option("--ladder-min", topt.ladder_min_exp, "smallest ladder exponent (default -10)");
  threshold->add_option("--ladder-max", topt.ladder_max_exp, "largest ladder exponent (default 10)");
  detail::add_rtau_options(threshold, rt);

  // verify-disk
  double rmax = kDefaultMaxRadius;
  std::size_t rings = 19, angles = 96;
  bool near_boundary = false;
  std::string dump_file;
  auto* verify = app.add_subcommand("verify-disk", "sample the analytic condition on the unit disk");
  verify->add_option("--which", which, "M | N | rtau")->required()->check(CLI::IsMember({"M", "N", "rtau"}));
  verify->add_option("--touchard", source.touchard, "L M: use Phi_M^L")->expected(2);
  verify->add_option("--series", source.series_file, "CSV file 'n,a_n'");
  verify->add_flag("--operator-L", source.operator_L, "use L(l,m,z) instead of Phi for --touchard");
  verify->add_option("--lambda", lambda_token);
  verify->add_option("--alpha", alpha_token);
  verify->add_option("--rmax", rmax, "outer radius (default 0.95)");
  verify->add_option("--rings", rings, "number of radii (default 19)");
  verify->add_option("--angles", angles, "angles per ring (default 96)");
  verify->add_flag("--near-boundary", near_boundary, "allow radii above 0.95");
  verify->add_option("--dump", dump_file, "write per-sample CSV to this file");
  detail::add_rtau_options(verify, rt);

  // sweep
  std::string spec_file;
  unsigned threads = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "criterion table over a parameter grid (JSON spec file)");
  sweep_cmd->add_option("--spec", spec_file, "JSON: {criterion, l, m, lambda, alpha[, tau, A, B]}")->required();
  sweep_cmd->add_option("--threads", threads, "worker threads (output is identical for any value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    cfg.format = format == "csv" ? output_format::csv : format == "human" ? output_format::human : output_format::json;
    if (cfg.truncation_order < 2) throw error(errc::invalid_parameter, "--order must be >= 2");
    if (!(cfg.tolerance > 0.0)) throw error(errc::invalid_parameter, "--tol must be positive");

    if (*moment) {
      const double l = parse_real(l_token);
      const double m = parse_real(m_token);
      moment_value v;
      if (use_series) {
        v = poisson_moment_series(l, m, cfg.tolerance);
        if (v.experimental) err << "note: non-integer order is experimental (series route only)\n";
      } else {
        if (!(l >= 0.0) || std::floor(l) != l) {
          throw error(errc::invalid_parameter, "closed form needs integer l >= 0; use --series for real l");
        }
        v = poisson_moment_closed(static_cast<unsigned>(l), m);
      }
      detail::emit(out, cfg.format, to_json(v), "value,method,truncation_terms,tail_bound",
                   csv_number(v.value) + ',' + to_string(v.method) + ',' + std::to_string(v.truncation_terms) + ',' +
                       csv_number(v.tail_bound));
    } else if (*coeffs) {
      write_series_csv(out, touchard_series({detail::parse_order(coeff_l), parse_real(coeff_m)}, cfg.truncation_order));
    } else if (*check_class) {
      const class_params p(parse_real(lambda_token), parse_real(alpha_token));
      const auto f = source.build(cfg.truncation_order);
      detail::emit_report(out, cfg.format, klass == "Mstar" ? lemma_sum_M(f, p) : lemma_sum_N(f, p));
    } else if (*check_theorem) {
      const auto c = parse_criterion(which);
      const class_params p(parse_real(lambda_token), parse_real(alpha_token));
      std::optional<rtau_params> r;
      if (c == criterion_kind::rtau) r = rt.build();
      const touchard_params tp{detail::parse_order(l_token), parse_real(m_token)};
      detail::emit_report(out, cfg.format, evaluate_criterion(c, tp, p, r));
    } else if (*threshold) {
      const auto c = parse_criterion(which);
      const class_params p(parse_real(lambda_token), parse_real(alpha_token));
      std::optional<rtau_params> r;
      if (c == criterion_kind::rtau) r = rt.build();
      const auto t = find_threshold(c, detail::parse_order(l_token), p, r, topt);
      if (t.non_monotone) err << "warning: several crossings on the m ladder (NonMonotoneWarning)\n";
      detail::emit(out, cfg.format, to_json(t), csv_header(t), csv_line(t));
    } else if (*verify) {
      const auto grid = disk_grid::uniform(rmax, rings, angles, near_boundary);
      const auto f = source.build(cfg.truncation_order);
      std::vector<disk_sample> samples;
      auto* dump = dump_file.empty() ? nullptr : &samples;
      verification_report rep;
      if (which == "rtau") {
        rep = verify_rtau(f, rt.build(), grid, dump);
      } else {
        if (lambda_token.empty() || alpha_token.empty()) {
          throw error(errc::invalid_parameter, "verify-disk M/N needs --lambda and --alpha");
        }
        const class_params p(parse_real(lambda_token), parse_real(alpha_token));
        rep = which == "M" ? verify_M(f, p, grid, dump) : verify_N(f, p, grid, dump);
      }
      if (dump) {
        std::ofstream os(dump_file);
        if (!os) throw error(errc::parse_error, "cannot write '" + dump_file + "'");
        write_samples_csv(os, samples);
      }
      const auto j = to_json(rep);
      detail::emit(out, cfg.format, j, "max_real_part,arg_re,arg_im,violations,degenerate,samples,threshold,quantity",
                   csv_number(rep.max_real_part) + ',' + csv_number(rep.arg_of_max.real()) + ',' +
                       csv_number(rep.arg_of_max.imag()) + ',' + std::to_string(rep.violations) + ',' +
                       std::to_string(rep.degenerate) + ',' + std::to_string(rep.samples) + ',' +
                       csv_number(rep.threshold) + ',' + j["quantity"].get<std::string>());
    } else if (*sweep_cmd) {
      std::ifstream in(spec_file);
      if (!in) throw error(errc::parse_error, "cannot open sweep spec '" + spec_file + "'");
      json spec;
      try {
        spec = json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw error(errc::parse_error, std::string("sweep spec: ") + e.what());
      }
      const auto grid = sweep_grid_from_json(spec);
      const auto rows = sweep(grid, threads);
      if (cfg.format == output_format::json) {
        out << to_json(rows, grid.criterion).dump() << '\n';
      } else {
        write_sweep_csv(out, rows);
      }
    }
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return is_numeric_failure(e.code()) ? kExitNumeric : kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace touchard::cli

#pragma once

// Threshold search in the Poisson parameter m and parameter-grid sweeps.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "touchard/class_criteria.hpp"
#include "touchard/error.hpp"
#include "touchard/series.hpp"

namespace touchard {

enum class criterion_kind { M_theorem, N_theorem, rtau, integral };

inline std::string to_string(criterion_kind c) {
  switch (c) {
    case criterion_kind::M_theorem: return "M";
    case criterion_kind::N_theorem: return "N";
    case criterion_kind::rtau: return "rtau";
    case criterion_kind::integral: return "integral";
  }
  return "unknown";
}

inline criterion_kind parse_criterion(const std::string& s) {
  if (s == "M" || s == "M_theorem") return criterion_kind::M_theorem;
  if (s == "N" || s == "N_theorem") return criterion_kind::N_theorem;
  if (s == "rtau") return criterion_kind::rtau;
  if (s == "integral") return criterion_kind::integral;
  throw error(errc::invalid_parameter, "unknown criterion '" + s + "' (expected M, N, rtau or integral)");
}

/// Closed-form criterion report for one parameter point.
inline membership_report evaluate_criterion(criterion_kind c, const touchard_params& tp, const class_params& p,
                                            const std::optional<rtau_params>& r = std::nullopt) {
  switch (c) {
    case criterion_kind::M_theorem: return theorem_M_lhs(tp, p);
    case criterion_kind::N_theorem: return theorem_N_lhs(tp, p);
    case criterion_kind::integral: return theorem_integral_operator(tp, p);
    case criterion_kind::rtau:
      if (!r) throw error(errc::invalid_parameter, "rtau criterion needs tau, A and B");
      return theorem_rtau_inclusion(tp, p, *r);
  }
  throw error(errc::invalid_parameter, "unknown criterion");
}

struct threshold_options {
  double tol_m = 1e-10;
  int ladder_min_exp = -10;
  int ladder_max_exp = 10;
  std::size_t max_iterations = 400;
};

struct bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct threshold_result {
  double m_star = 0.0;
  bracket final_bracket;
  double residual = 0.0;
  std::size_t iterations = 0;
  criterion_kind criterion = criterion_kind::M_theorem;
  /// Every ladder interval on which the criterion crosses alpha - 1 upward.
  std::vector<bracket> brackets;
  bool non_monotone = false;
};

/// Scans m = 2^k over the ladder for the first upward crossing of alpha - 1,
/// then bisects that bracket down to tol_m. The criterion is not assumed
/// monotone in m; every crossing seen on the ladder is reported.
inline threshold_result find_threshold(criterion_kind c, unsigned l, const class_params& p,
                                       const std::optional<rtau_params>& r = std::nullopt,
                                       const threshold_options& opt = {}) {
  if (!(1.0 - p.alpha() * p.lambda() > 0.0)) {
    throw error(errc::no_threshold, "1 - alpha*lambda <= 0: the criterion stays bounded in m");
  }
  if (!(opt.tol_m > 0.0) || opt.ladder_min_exp >= opt.ladder_max_exp) {
    throw error(errc::invalid_parameter, "bad threshold options");
  }
  const double bound = p.bound();
  auto excess = [&](double m) { return evaluate_criterion(c, {l, m}, p, r).criterion_value - bound; };

  threshold_result res;
  res.criterion = c;
  double prev_m = std::ldexp(1.0, opt.ladder_min_exp);
  bool prev_member = excess(prev_m) <= 0.0;
  std::size_t crossings = 0;
  for (int k = opt.ladder_min_exp + 1; k <= opt.ladder_max_exp; ++k) {
    const double m = std::ldexp(1.0, k);
    const bool member = excess(m) <= 0.0;
    if (member != prev_member) {
      ++crossings;
      if (prev_member) res.brackets.push_back({prev_m, m});
    }
    prev_m = m;
    prev_member = member;
  }
  res.non_monotone = crossings > 1;
  if (res.brackets.empty()) throw error(errc::no_threshold, "no sign change on the m ladder");

  double lo = res.brackets.front().lo, hi = res.brackets.front().hi;
  while (hi - lo >= opt.tol_m && res.iterations < opt.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (excess(mid) <= 0.0 ? lo : hi) = mid;
    ++res.iterations;
  }
  res.final_bracket = {lo, hi};
  res.m_star = 0.5 * (lo + hi);
  res.residual = excess(res.m_star);
  return res;
}

/// Value lists per parameter; rows are the lexicographic product in the order
/// l, m, lambda, alpha, tau, A, B. The R^tau lists are only used by the rtau criterion.
struct sweep_grid {
  criterion_kind criterion = criterion_kind::M_theorem;
  std::vector<unsigned> l;
  std::vector<double> m;
  std::vector<double> lambda;
  std::vector<double> alpha;
  std::vector<std::complex<double>> tau;
  std::vector<double> A;
  std::vector<double> B;
};

struct sweep_row {
  unsigned l = 0;
  double m = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
  std::complex<double> tau{0.0, 0.0};
  double A = 0.0;
  double B = 0.0;
  double criterion_value = NAN;
  double bound = NAN;
  bool member = false;
  /// "ok" or the error name for a point that could not be evaluated.
  std::string status = "ok";
};

inline std::vector<sweep_row> sweep_points(const sweep_grid& g) {
  std::vector<sweep_row> rows;
  const bool rt = g.criterion == criterion_kind::rtau;
  const std::vector<std::complex<double>> tau1{{1.0, 0.0}};
  const std::vector<double> zero{0.0};
  const auto& taus = rt ? g.tau : tau1;
  const auto& As = rt ? g.A : zero;
  const auto& Bs = rt ? g.B : zero;
  for (unsigned l : g.l)
    for (double m : g.m)
      for (double lam : g.lambda)
        for (double a : g.alpha)
          for (auto t : taus)
            for (double A : As)
              for (double B : Bs) {
                sweep_row row;
                row.l = l, row.m = m, row.lambda = lam, row.alpha = a;
                if (rt) row.tau = t, row.A = A, row.B = B;
                rows.push_back(row);
              }
  return rows;
}

inline void evaluate_row(criterion_kind c, sweep_row& row) {
  try {
    const class_params p(row.lambda, row.alpha);
    std::optional<rtau_params> r;
    if (c == criterion_kind::rtau) r.emplace(row.tau, row.A, row.B);
    const auto rep = evaluate_criterion(c, {row.l, row.m}, p, r);
    row.criterion_value = rep.criterion_value;
    row.bound = rep.bound;
    row.member = rep.member;
  } catch (const error& e) {
    row.status = std::string(to_string(e.code()));
  }
}

/// One row per grid point. Rows are independent; with threads > 1 they are
/// filled in parallel into fixed slots, so output order and bits match the serial run.
inline std::vector<sweep_row> sweep(const sweep_grid& g, unsigned threads = 1) {
  auto rows = sweep_points(g);
  const std::size_t n = rows.size();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (auto& row : rows) evaluate_row(g.criterion, row);
    return rows;
  }
  // Warm the shared Stirling table before the workers read it.
  (void)default_stirling_table();
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) evaluate_row(g.criterion, rows[i]);
    });
  }
  workers.clear();
  return rows;
}

}  // namespace touchard

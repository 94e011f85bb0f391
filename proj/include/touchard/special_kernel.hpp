#pragma once

// Stirling numbers of the second kind, Touchard polynomials and raw moments
// of the Poisson distribution, computed along two independent routes:
// the exact Stirling expansion and direct summation of the defining series.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "touchard/compensated_sum.hpp"
#include "touchard/error.hpp"

namespace touchard {

using big_int = boost::multiprecision::cpp_int;

inline constexpr unsigned kDefaultMaxOrder = 64;
inline constexpr std::size_t kDefaultMaxSeriesTerms = 10'000;

/// Triangular table of S(l, k), 0 <= k <= l <= max_order, built once by
/// S(l,k) = k S(l-1,k) + S(l-1,k-1). Read-only after construction.
class stirling_table {
 public:
  explicit stirling_table(unsigned max_order = kDefaultMaxOrder) : max_order_(max_order) {
    exact_.resize(max_order + 1);
    rounded_.resize(max_order + 1);
    exact_[0] = {big_int(1)};
    for (unsigned l = 1; l <= max_order; ++l) {
      auto& row = exact_[l];
      const auto& prev = exact_[l - 1];
      row.assign(l + 1, big_int(0));
      for (unsigned k = 1; k <= l; ++k) {
        big_int v = prev.size() > k ? big_int(k * prev[k]) : big_int(0);
        v += prev[k - 1];
        row[k] = std::move(v);
      }
    }
    for (unsigned l = 0; l <= max_order; ++l) {
      rounded_[l].reserve(l + 1);
      for (const auto& v : exact_[l]) rounded_[l].push_back(v.convert_to<double>());
    }
  }

  unsigned max_order() const noexcept { return max_order_; }

  const big_int& exact(unsigned l, unsigned k) const {
    check(l, k);
    return exact_[l][k];
  }

  double approx(unsigned l, unsigned k) const {
    check(l, k);
    return rounded_[l][k];
  }

 private:
  void check(unsigned l, unsigned k) const {
    if (l > max_order_) {
      throw error(errc::order_too_large,
                  "order " + std::to_string(l) + " exceeds cap " + std::to_string(max_order_));
    }
    if (k > l) {
      throw error(errc::invalid_index, "k=" + std::to_string(k) + " > l=" + std::to_string(l));
    }
  }

  unsigned max_order_;
  std::vector<std::vector<big_int>> exact_;
  std::vector<std::vector<double>> rounded_;
};

inline const stirling_table& default_stirling_table() {
  static const stirling_table table(kDefaultMaxOrder);
  return table;
}

inline big_int stirling2(unsigned l, unsigned k) { return default_stirling_table().exact(l, k); }

enum class moment_method { closed_form, series };

inline std::string to_string(moment_method m) {
  return m == moment_method::closed_form ? "closed_form" : "series";
}

struct moment_value {
  double value = 0.0;
  moment_method method = moment_method::closed_form;
  std::size_t truncation_terms = 0;
  double tail_bound = 0.0;
  // Set for non-integer orders, which only the series route supports.
  bool experimental = false;
};

inline void require_positive_m(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw error(errc::invalid_parameter, "Poisson parameter m must be positive and finite");
  }
}

/// Touchard polynomial T_l(m) = sum_k S(l,k) m^k, i.e. the l-th raw Poisson moment.
inline moment_value poisson_moment_closed(unsigned l, double m,
                                          const stirling_table& table = default_stirling_table()) {
  require_positive_m(m);
  if (l > table.max_order()) {
    throw error(errc::order_too_large,
                "order " + std::to_string(l) + " exceeds cap " + std::to_string(table.max_order()));
  }
  compensated_sum acc;
  double power = 1.0;
  for (unsigned k = 0; k <= l; ++k) {
    acc += table.approx(l, k) * power;
    power *= m;
  }
  return {acc.value(), moment_method::closed_form, 0, 0.0, false};
}

/// e^{-m} sum_{n>=0} n^l m^n / n! for real l >= 0, with 0^0 = 1.
///
/// Terms follow t_n = t_{n-1} (m/n) (n/(n-1))^l. The ratio sequence is
/// decreasing for n >= 2, so once the ratio r of the first two neglected
/// terms drops below 1/2 the tail is bounded by t_{N+1}/(1-r).
inline moment_value poisson_moment_series(double l, double m, double tol,
                                          std::size_t max_terms = kDefaultMaxSeriesTerms) {
  require_positive_m(m);
  if (!(l >= 0.0) || !std::isfinite(l)) {
    throw error(errc::invalid_parameter, "moment order must be a finite real >= 0");
  }
  if (!(tol > 0.0)) throw error(errc::invalid_parameter, "tolerance must be positive");

  const double scale = std::exp(-m);
  auto ratio = [&](double n) { return (m / n) * std::pow(n / (n - 1.0), l); };

  compensated_sum acc;
  acc += (l == 0.0) ? 1.0 : 0.0;
  double term = m;  // n = 1: 1^l m^1 / 1!
  acc += term;
  for (std::size_t n = 1; n < max_terms; ++n) {
    const double next = term * ratio(static_cast<double>(n + 1));
    const double r = ratio(static_cast<double>(n + 2));
    if (!std::isfinite(next) || !std::isfinite(acc.value())) break;
    if (r < 0.5) {
      const double tail = scale * next / (1.0 - r);
      if (tail < tol) {
        const bool integral = std::floor(l) == l;
        return {acc.value() * scale, moment_method::series, n + 1, tail, !integral};
      }
    }
    term = next;
    acc += term;
  }
  throw error(errc::no_convergence, "Poisson moment series did not reach tolerance within " +
                                        std::to_string(max_terms) + " terms");
}

/// e^{-m} sum_{n>=1} n^l m^n / n!: the moment without its n = 0 term.
/// Equals mu'_l for l >= 1 and 1 - e^{-m} for l = 0.
inline double tail_moment(unsigned l, double m,
                          const stirling_table& table = default_stirling_table()) {
  require_positive_m(m);
  if (l == 0) return -std::expm1(-m);
  return poisson_moment_closed(l, m, table).value;
}

}  // namespace touchard

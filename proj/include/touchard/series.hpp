#pragma once

// Truncated power series z + a_2 z^2 + ... + a_N z^N of normalized analytic
// functions, the Touchard series Phi, and the operators built on it.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "touchard/error.hpp"
#include "touchard/special_kernel.hpp"

namespace touchard {

inline constexpr std::size_t kDefaultTruncationOrder = 64;

/// Moment order and Poisson parameter of Phi_m^l (integer order only).
struct touchard_params {
  unsigned l = 0;
  double m = 1.0;
};

/// Coefficients a_1..a_N with a_1 = 1. Immutable; index n is the coefficient of z^n.
class truncated_series {
 public:
  explicit truncated_series(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw error(errc::invalid_order, "series needs at least a_1");
    if (coeffs_.front() != 1.0) {
      throw error(errc::invalid_parameter, "normalization requires a_1 = 1");
    }
    for (double a : coeffs_) {
      if (!std::isfinite(a)) throw error(errc::invalid_parameter, "non-finite coefficient");
    }
    nonnegative_ = std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](double a) { return a >= 0.0; });
  }

  /// The identity function f(z) = z truncated at order N.
  static truncated_series identity(std::size_t order = 1) {
    std::vector<double> c(std::max<std::size_t>(order, 1), 0.0);
    c[0] = 1.0;
    return truncated_series(std::move(c));
  }

  std::size_t order() const noexcept { return coeffs_.size(); }

  /// a_n for 1 <= n <= order(); zero beyond the truncation.
  double operator[](std::size_t n) const noexcept {
    return (n >= 1 && n <= coeffs_.size()) ? coeffs_[n - 1] : 0.0;
  }

  /// a_1..a_N, element i holding a_{i+1}.
  std::span<const double> coefficients() const noexcept { return coeffs_; }

  /// All a_n >= 0 for n >= 2 (the function lies in the class V).
  bool nonnegative() const noexcept { return nonnegative_; }

  friend bool operator==(const truncated_series&, const truncated_series&) = default;

 private:
  std::vector<double> coeffs_;
  bool nonnegative_ = true;
};

/// Phi_m^l(z) = z + sum_{n>=2} (n-1)^l m^{n-1}/(n-1)! e^{-m} z^n, truncated at N.
inline truncated_series touchard_series(const touchard_params& p, std::size_t order) {
  if (order < 2) throw error(errc::invalid_order, "Touchard series needs order >= 2");
  require_positive_m(p.m);
  const double l = static_cast<double>(p.l);
  std::vector<double> c(order, 0.0);
  c[0] = 1.0;
  // b_k = k^l m^k / k!, b_1 = m, b_{k+1} = b_k (m/(k+1)) ((k+1)/k)^l; a_n = b_{n-1} e^{-m}.
  double b = p.m;
  for (std::size_t n = 2; n <= order; ++n) {
    const std::size_t k = n - 1;
    if (k > 1) {
      const double kd = static_cast<double>(k);
      b *= (p.m / kd) * std::pow(kd / (kd - 1.0), l);
    }
    c[n - 1] = b;
  }
  const double scale = std::exp(-p.m);
  for (std::size_t n = 2; n <= order; ++n) c[n - 1] *= scale;
  return truncated_series(std::move(c));
}

/// Coefficient-wise product, truncated at the shorter order.
inline truncated_series hadamard(const truncated_series& f, const truncated_series& g) {
  const std::size_t order = std::min(f.order(), g.order());
  std::vector<double> c(order);
  for (std::size_t n = 1; n <= order; ++n) c[n - 1] = f[n] * g[n];
  return truncated_series(std::move(c));
}

/// I(l,m,z)f = Phi_m^l * f.
inline truncated_series apply_operator_I(const touchard_params& p, const truncated_series& f) {
  if (f.order() < 2) return f;
  return hadamard(touchard_series(p, f.order()), f);
}

/// L(l,m,z) = integral_0^z Phi_m^l(t)/t dt: the n-th Touchard coefficient divided by n.
inline truncated_series apply_operator_L(const touchard_params& p, std::size_t order) {
  const auto phi = touchard_series(p, order);
  std::vector<double> c(order);
  for (std::size_t n = 1; n <= order; ++n) c[n - 1] = phi[n] / static_cast<double>(n);
  return truncated_series(std::move(c));
}

/// Values f, f', f'' of the truncated polynomial at one point.
struct series_jet {
  std::complex<double> value;
  std::complex<double> d1;
  std::complex<double> d2;
};

inline void require_in_disk(std::complex<double> z) {
  if (!(std::abs(z) < 1.0)) throw error(errc::out_of_disk, "evaluation point must satisfy |z| < 1");
}

/// Horner evaluation of f and its first two derivatives in one pass.
inline series_jet evaluate_jet(const truncated_series& f, std::complex<double> z) {
  require_in_disk(z);
  std::complex<double> p = 0.0, d1 = 0.0, d2 = 0.0;
  for (std::size_t n = f.order(); n >= 1; --n) {
    d2 = d2 * z + 2.0 * d1;
    d1 = d1 * z + p;
    p = p * z + f[n];
  }
  // p now holds sum a_n z^{n-1}; one more multiply by z gives f.
  return {p * z, d1 * z + p, d2 * z + 2.0 * d1};
}

/// f(z), f'(z) or f''(z) of the truncation for derivative order 0, 1 or 2.
inline std::complex<double> evaluate(const truncated_series& f, std::complex<double> z, int derivative = 0) {
  if (derivative < 0 || derivative > 2) {
    throw error(errc::invalid_parameter, "derivative order must be 0, 1 or 2");
  }
  const auto jet = evaluate_jet(f, z);
  return derivative == 0 ? jet.value : derivative == 1 ? jet.d1 : jet.d2;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  const auto last = s.find_last_not_of(ws);
  s.erase(last == std::string::npos ? 0 : last + 1);
  return s;
}

inline double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw error(errc::parse_error, "not a number: '" + text + "'");
  }
  if (used != text.size()) throw error(errc::parse_error, "not a number: '" + text + "'");
  return v;
}

}  // namespace detail

/// CSV with header "n,a_n" and one line per coefficient, shortest round-trip formatting.
inline void write_series_csv(std::ostream& os, const truncated_series& f) {
  os << "n,a_n\n";
  for (std::size_t n = 1; n <= f.order(); ++n) os << n << ',' << detail::format_double(f[n]) << '\n';
}

/// Reads the CSV written by write_series_csv. Indices must run 1, 2, ..., N and a_1 must be 1.
inline truncated_series read_series_csv(std::istream& is) {
  std::string line;
  bool header_seen = false;
  std::vector<double> coeffs;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "n,a_n") throw error(errc::parse_error, "expected header 'n,a_n'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw error(errc::parse_error, "line " + std::to_string(lineno) + ": expected 'n,a_n'");
    }
    const double n = detail::parse_double(detail::trim(line.substr(0, comma)));
    const double a = detail::parse_double(detail::trim(line.substr(comma + 1)));
    if (n != static_cast<double>(coeffs.size() + 1)) {
      throw error(errc::parse_error, "line " + std::to_string(lineno) + ": indices must be consecutive from 1");
    }
    coeffs.push_back(a);
  }
  if (!header_seen || coeffs.empty()) throw error(errc::parse_error, "no coefficients found");
  return truncated_series(std::move(coeffs));
}

}  // namespace touchard

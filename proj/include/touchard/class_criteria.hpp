#pragma once

// Coefficient criteria for M*(lambda, alpha) and N*(lambda, alpha), the closed
// forms they take on the Touchard series, and the R^tau(A,B) inclusion results.
//
// Every closed form has a brute-force twin: the coefficient sum evaluated on
// an explicit truncated series. The closed forms are written with the tail
// moment e^{-m} sum_{n>=1} n^l m^n/n!, which covers l = 0 and l >= 1 alike.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "touchard/compensated_sum.hpp"
#include "touchard/error.hpp"
#include "touchard/series.hpp"
#include "touchard/special_kernel.hpp"

namespace touchard {

/// Tolerance on the <= test of every membership verdict.
inline constexpr double kMembershipTolerance = 1e-12;

class class_params {
 public:
  class_params(double lambda, double alpha) : lambda_(lambda), alpha_(alpha) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
      throw error(errc::invalid_parameter, "lambda must lie in [0, 1)");
    }
    if (!(alpha > 1.0 && alpha <= 4.0 / 3.0)) {
      throw error(errc::invalid_parameter, "alpha must lie in (1, 4/3]");
    }
  }

  double lambda() const noexcept { return lambda_; }
  double alpha() const noexcept { return alpha_; }
  double bound() const noexcept { return alpha_ - 1.0; }

  /// w(n) = n - (1 + n lambda - lambda) alpha; negative for small n when alpha*lambda is large.
  double weight(std::size_t n) const noexcept {
    const double nd = static_cast<double>(n);
    return nd - (1.0 + nd * lambda_ - lambda_) * alpha_;
  }

 private:
  double lambda_;
  double alpha_;
};

class rtau_params {
 public:
  rtau_params(std::complex<double> tau, double A, double B) : tau_(tau), A_(A), B_(B) {
    if (tau == 0.0) throw error(errc::invalid_parameter, "tau must be nonzero");
    if (!(-1.0 <= B && B < A && A <= 1.0)) {
      throw error(errc::invalid_parameter, "need -1 <= B < A <= 1");
    }
  }

  std::complex<double> tau() const noexcept { return tau_; }
  double A() const noexcept { return A_; }
  double B() const noexcept { return B_; }

  /// (A - B)|tau|, the factor in the sharp coefficient bound.
  double scale() const noexcept { return (A_ - B_) * std::abs(tau_); }

 private:
  std::complex<double> tau_;
  double A_;
  double B_;
};

enum class report_method { closed_form, coefficient_sum, disk_sampled };

inline std::string to_string(report_method m) {
  switch (m) {
    case report_method::closed_form: return "closed_form";
    case report_method::coefficient_sum: return "coefficient_sum";
    case report_method::disk_sampled: return "disk_sampled";
  }
  return "unknown";
}

struct membership_report {
  double criterion_value = 0.0;
  double bound = 0.0;
  bool member = false;
  report_method method = report_method::closed_form;
  std::string detail;
};

inline bool within_bound(double value, double bound) { return value <= bound + kMembershipTolerance; }

namespace detail {

inline membership_report weighted_sum(const truncated_series& f, const class_params& p, bool extra_n,
                                      const char* name) {
  if (!f.nonnegative()) {
    throw error(errc::negative_coefficient, std::string(name) + " requires a_n >= 0 for n >= 2");
  }
  compensated_sum acc;
  bool negative_weight = false;
  for (std::size_t n = 2; n <= f.order(); ++n) {
    const double w = p.weight(n);
    if (w < 0.0 && f[n] > 0.0) negative_weight = true;
    acc += (extra_n ? static_cast<double>(n) * w : w) * f[n];
  }
  membership_report r;
  r.criterion_value = acc.value();
  r.bound = p.bound();
  r.member = within_bound(r.criterion_value, r.bound);
  r.method = report_method::coefficient_sum;
  r.detail = std::string(name) + " over n = 2.." + std::to_string(f.order());
  if (negative_weight) r.detail += "; negative weights contributed";
  return r;
}

inline membership_report closed_report(double value, const class_params& p, std::string detail) {
  membership_report r;
  r.criterion_value = value;
  r.bound = p.bound();
  r.member = within_bound(value, r.bound);
  r.method = report_method::closed_form;
  r.detail = std::move(detail);
  return r;
}

}  // namespace detail

/// sum_{n>=2} w(n) a_n against alpha - 1.
inline membership_report lemma_sum_M(const truncated_series& f, const class_params& p) {
  return detail::weighted_sum(f, p, false, "M* coefficient sum");
}

/// sum_{n>=2} n w(n) a_n against alpha - 1.
inline membership_report lemma_sum_N(const truncated_series& f, const class_params& p) {
  return detail::weighted_sum(f, p, true, "N* coefficient sum");
}

/// Closed form of lemma_sum_M on Phi_m^l: (1 - alpha lambda) T_{l+1} + (1 - alpha) T_l,
/// T_j the tail moment. Follows from w(n) = (n-1)(1 - alpha lambda) + (1 - alpha).
inline double theorem_M_value(const touchard_params& tp, const class_params& p) {
  const double a = p.alpha(), lam = p.lambda();
  return (1.0 - a * lam) * tail_moment(tp.l + 1, tp.m) + (1.0 - a) * tail_moment(tp.l, tp.m);
}

/// Closed form of lemma_sum_N on Phi_m^l, from
/// n w(n) = (1 - alpha lambda)(n-1)^2 + (2 - alpha lambda - alpha)(n-1) + (1 - alpha).
inline double theorem_N_value(const touchard_params& tp, const class_params& p) {
  const double a = p.alpha(), lam = p.lambda();
  return (1.0 - a * lam) * tail_moment(tp.l + 2, tp.m) + (2.0 - a * lam - a) * tail_moment(tp.l + 1, tp.m) +
         (1.0 - a) * tail_moment(tp.l, tp.m);
}

inline membership_report theorem_M_lhs(const touchard_params& tp, const class_params& p) {
  return detail::closed_report(theorem_M_value(tp, p), p, "Phi in M*: closed form via tail moments");
}

inline membership_report theorem_N_lhs(const touchard_params& tp, const class_params& p) {
  return detail::closed_report(theorem_N_value(tp, p), p, "Phi in N*: closed form via tail moments");
}

/// Sharp bound |a_n| <= (A - B)|tau| / n for members of R^tau(A,B).
inline double rtau_coeff_bound(std::size_t n, const rtau_params& r) {
  if (n < 2) throw error(errc::invalid_parameter, "coefficient bound defined for n >= 2");
  return r.scale() / static_cast<double>(n);
}

/// Sufficient condition for I(l,m,z)f in N* whenever f in R^tau(A,B).
///
/// With |a_n| <= (A-B)|tau|/n, the N* weight n w(n) loses its factor n, so the
/// bounding sum is (A-B)|tau| times the M* closed form on Phi.
inline membership_report theorem_rtau_inclusion(const touchard_params& tp, const class_params& p,
                                                const rtau_params& r) {
  return detail::closed_report(r.scale() * theorem_M_value(tp, p), p,
                               "I(l,m,z)f in N* for f in R^tau(A,B): sufficient condition "
                               "((A-B)|tau| times the M* closed form)");
}

/// L(l,m,z) in N*: the 1/n in the coefficients of L cancels the n in the N* weight,
/// so the criterion coincides with the M* closed form on Phi.
inline membership_report theorem_integral_operator(const touchard_params& tp, const class_params& p) {
  return detail::closed_report(theorem_M_value(tp, p), p,
                               "L(l,m,z) in N*: n-weight cancels the 1/n of L, equals the M* closed form");
}

}  // namespace touchard

#pragma once

// Samples the analytic conditions that define M(lambda,alpha), N(lambda,alpha)
// and R^tau(A,B) on a polar grid in the unit disk. Sampling is consistency
// evidence only: a violation disproves membership, no violation proves nothing.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "touchard/class_criteria.hpp"
#include "touchard/error.hpp"
#include "touchard/series.hpp"

namespace touchard {

inline constexpr double kViolationTolerance = 1e-9;
inline constexpr double kDegenerateDenominator = 1e-12;
inline constexpr double kDefaultMaxRadius = 0.95;

class disk_grid {
 public:
  /// Radii must lie in (0, 1); anything above 0.95 needs allow_near_boundary.
  disk_grid(std::vector<double> radii, std::size_t angles_per_ring, bool allow_near_boundary = false)
      : radii_(std::move(radii)), angles_(angles_per_ring) {
    if (radii_.empty() || angles_ == 0) throw error(errc::invalid_parameter, "empty disk grid");
    for (double r : radii_) {
      if (!(r > 0.0 && r < 1.0)) throw error(errc::invalid_parameter, "grid radii must lie in (0, 1)");
      if (r > kDefaultMaxRadius && !allow_near_boundary) {
        throw error(errc::invalid_parameter, "radii above 0.95 require the near-boundary opt-in");
      }
    }
  }

  /// `rings` radii r_max k / rings, k = 1..rings.
  static disk_grid uniform(double r_max, std::size_t rings, std::size_t angles, bool allow_near_boundary = false) {
    if (rings == 0) throw error(errc::invalid_parameter, "need at least one ring");
    std::vector<double> radii(rings);
    for (std::size_t k = 1; k < rings; ++k) radii[k - 1] = r_max * static_cast<double>(k) / static_cast<double>(rings);
    radii[rings - 1] = r_max;
    return disk_grid(std::move(radii), angles, allow_near_boundary);
  }

  /// Radii 0.05 k, k = 1..19, with 96 angles.
  static disk_grid default_grid() { return uniform(kDefaultMaxRadius, 19, 96); }

  const std::vector<double>& radii() const noexcept { return radii_; }
  std::size_t angles_per_ring() const noexcept { return angles_; }
  double r_max() const noexcept {
    double r = 0.0;
    for (double v : radii_) r = std::max(r, v);
    return r;
  }
  std::size_t size() const noexcept { return radii_.size() * angles_; }

  std::complex<double> point(std::size_t ring, std::size_t angle) const {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(angle) / static_cast<double>(angles_);
    return std::polar(radii_[ring], theta);
  }

 private:
  std::vector<double> radii_;
  std::size_t angles_;
};

enum class sampled_quantity { real_part, modulus };

struct disk_sample {
  std::complex<double> z;
  double value = 0.0;
  bool degenerate = false;
};

struct verification_report {
  /// Largest sampled real part (or modulus, for R^tau).
  double max_real_part = -INFINITY;
  std::complex<double> arg_of_max{0.0, 0.0};
  std::size_t violations = 0;
  std::size_t degenerate = 0;
  std::size_t samples = 0;
  double threshold = 0.0;
  sampled_quantity quantity = sampled_quantity::real_part;
};

namespace detail {

struct quotient {
  std::complex<double> num;
  std::complex<double> den;
};

// Visits the grid ring by ring, angle by angle; the report does not depend on anything else.
inline verification_report sample_disk(const truncated_series& f, const disk_grid& grid, double limit,
                                       sampled_quantity quantity,
                                       const std::function<quotient(const series_jet&, std::complex<double>)>& q,
                                       std::vector<disk_sample>* dump) {
  verification_report rep;
  rep.threshold = limit;
  rep.quantity = quantity;
  for (std::size_t i = 0; i < grid.radii().size(); ++i) {
    for (std::size_t j = 0; j < grid.angles_per_ring(); ++j) {
      const auto z = grid.point(i, j);
      const auto parts = q(evaluate_jet(f, z), z);
      ++rep.samples;
      disk_sample s{z, 0.0, false};
      if (std::abs(parts.den) < kDegenerateDenominator) {
        s.degenerate = true;
        ++rep.degenerate;
        ++rep.violations;
      } else {
        const auto w = parts.num / parts.den;
        s.value = quantity == sampled_quantity::real_part ? w.real() : std::abs(w);
        if (s.value > rep.max_real_part) {
          rep.max_real_part = s.value;
          rep.arg_of_max = z;
        }
        if (s.value >= limit - kViolationTolerance) ++rep.violations;
      }
      if (dump) dump->push_back(s);
    }
  }
  return rep;
}

}  // namespace detail

/// Re( z f' / ((1 - lambda) f + lambda z f') ) < alpha.
inline verification_report verify_M(const truncated_series& f, const class_params& p, const disk_grid& grid,
                                    std::vector<disk_sample>* dump = nullptr) {
  const double lam = p.lambda();
  return detail::sample_disk(
      f, grid, p.alpha(), sampled_quantity::real_part,
      [lam](const series_jet& j, std::complex<double> z) {
        return detail::quotient{z * j.d1, (1.0 - lam) * j.value + lam * z * j.d1};
      },
      dump);
}

/// Re( (f' + z f'') / (f' + lambda z f'') ) < alpha.
inline verification_report verify_N(const truncated_series& f, const class_params& p, const disk_grid& grid,
                                    std::vector<disk_sample>* dump = nullptr) {
  const double lam = p.lambda();
  return detail::sample_disk(
      f, grid, p.alpha(), sampled_quantity::real_part,
      [lam](const series_jet& j, std::complex<double> z) {
        return detail::quotient{j.d1 + z * j.d2, j.d1 + lam * z * j.d2};
      },
      dump);
}

/// | (f' - 1) / ((A - B) tau - B (f' - 1)) | < 1.
inline verification_report verify_rtau(const truncated_series& f, const rtau_params& r, const disk_grid& grid,
                                       std::vector<disk_sample>* dump = nullptr) {
  const auto scaled_tau = (r.A() - r.B()) * r.tau();
  const double B = r.B();
  return detail::sample_disk(
      f, grid, 1.0, sampled_quantity::modulus,
      [scaled_tau, B](const series_jet& j, std::complex<double>) {
        const auto d = j.d1 - 1.0;
        return detail::quotient{d, scaled_tau - B * d};
      },
      dump);
}

}  // namespace touchard

#pragma once

#include <cmath>

namespace touchard {

// Neumaier's variant of Kahan summation; also handles terms larger than the running sum.
class compensated_sum {
 public:
  compensated_sum& operator+=(double term) noexcept {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
      carry_ += (sum_ - t) + term;
    } else {
      carry_ += (term - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace touchard

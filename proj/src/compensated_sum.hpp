#pragma once

#include <cmath>

namespace fmaxwell::detail {

// Neumaier's variant of Kahan summation; robust when terms alternate in sign
// and exceed the running total in magnitude.
class CompensatedSum {
 public:
  void add(double term) {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace fmaxwell::detail

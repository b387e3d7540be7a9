// summation.hpp — Compensated (Neumaier) accumulation

#pragma once

#include <cmath>

namespace qreg {

// Kahan-Neumaier running sum; deterministic for a fixed order of adds.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0;
    double comp_ = 0;
};

}  // namespace qreg

#pragma once

#include <cmath>
#include <complex>

namespace birkhoff {

// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
// when an addend is larger in magnitude than the running sum.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

    CompensatedSum& operator+=(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    CompensatedComplexSum& operator+=(std::complex<double> z) noexcept {
        re_ += z.real();
        im_ += z.imag();
        return *this;
    }
    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

template <class Range>
double compensated_sum(const Range& values) {
    CompensatedSum acc;
    for (double v : values) acc += v;
    return acc.value();
}

// Fractional part in [0,1).
inline double frac(double x) noexcept {
    const double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

}  // namespace birkhoff

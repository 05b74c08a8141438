#pragma once

#include "birkhoff/polynomial.hpp"

#include <cstdint>
#include <string_view>

namespace birkhoff {

enum class WeightKind { uniform, sin_squared, exponential_bump };

// CLI spelling: uniform | sin2 | bump.
WeightKind parse_weight_kind(std::string_view name);
std::string_view weight_kind_name(WeightKind kind) noexcept;

// Integral of exp(-1/(t(1-t))) over (0,1), computed once on first use.
double bump_normalizer();

// Weighting function on [0,1] with unit integral.
//   uniform:          1 on [0,1)
//   sin_squared:      2 sin^2(pi x) on [0,1]
//   exponential_bump: exp(-1/(x(1-x))) / Z on (0,1)
// and zero everywhere else.
class WeightFunction {
public:
    explicit WeightFunction(WeightKind kind = WeightKind::exponential_bump);

    WeightKind kind() const noexcept { return kind_; }
    // Z for the bump, 1 for the other kinds.
    double normalizer() const noexcept { return normalizer_; }

    double operator()(double x) const noexcept;

private:
    WeightKind kind_;
    double normalizer_;
};

double eval_weight(const WeightFunction& w, double x) noexcept;

// A_N = sum_{s=0}^{N-1} w(s/N), compensated.
double weight_sum(const WeightFunction& w, std::int64_t n);

inline constexpr int kMaxBumpDerivative = 12;

// R_n with d^n/dx^n exp(g) = R_n exp(g), g(x) = -1/(x(1-x)). The denominator
// is (x(1-x))^{2n}; the numerator comes from the exact recurrence
//   P_{n+1} = u^2 P_n' + (1 - 2n u) u' P_n,   u = x(1-x).
RationalFunction bump_derivative_symbolic(int n);

// log |d^n/dx^n exp(-1/(x(1-x)))| at x in (0,1), unnormalized. Evaluated in
// log space so endpoint values far below the double range stay meaningful.
double log_abs_bump_derivative(int n, double x);

// ||w^{(n)}||_{L^1(0,1)} for the normalized bump, by adaptive quadrature split
// at the sign changes of R_n. Throws nonconvergence if 1e-12 relative is not met.
double bump_derivative_l1(int n);

}  // namespace birkhoff

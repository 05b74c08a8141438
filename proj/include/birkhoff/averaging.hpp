#pragma once

#include "birkhoff/observables.hpp"
#include "birkhoff/rotations.hpp"
#include "birkhoff/weights.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace birkhoff {

enum class AverageMode { discrete, continuous };

// Weighted multiple average of F_1(theta0 + . rho_1) ... F_ell(theta0 + . rho_ell).
struct AverageSpec {
    WeightFunction weight;
    std::vector<FourierObservable> observables;
    JointRotation joint;
    std::vector<double> theta0;
    AverageMode mode = AverageMode::discrete;
    std::int64_t N = 100;        // discrete
    double T = 10.0;             // continuous
    int nodes_per_period = 8;    // continuous, >= 8
    // Multiplies every weight. Cancels against A_N; exists for invariance checks.
    double weight_scale = 1.0;
};

struct AverageResult {
    double value = 0.0;
    double target = 0.0;     // product of the spatial averages
    double abs_error = 0.0;  // |value - target|
    double scale = 0.0;      // N or T
    double floor = 0.0;      // ~ 10 eps sum |w v| / A_N, rounding level of the sum
};

// Throws dimension_mismatch / invalid_argument on inconsistent specs.
void validate(const AverageSpec& spec);

// (1/A_N) sum_{n<N} w(n/N) prod_j F_j(theta0 + n rho_j), A_N = sum_{n<N} w(n/N).
// Orbit phases advance by repeated fractional addition, summation is compensated
// and in index order.
AverageResult dmw(const AverageSpec& spec);
AverageResult dmw(const AverageSpec& spec, std::int64_t N);

// int_0^1 w(y) prod_j F_j(theta0 + y T rho_j) dy by composite Gauss-Legendre with
// one panel per 1/nodes_per_period of the fastest combined oscillation.
AverageResult cmw(const AverageSpec& spec);
AverageResult cmw(const AverageSpec& spec, double T);

// Evaluations allowed per cmw call.
inline constexpr double kMaxQuadratureEvaluations = 1e8;
inline constexpr std::size_t kPanelOrder = 10;

// Both factors sin(2 pi .), sin^2 weight, theta0 = 0. Rotation speeds with
// (rho1 + rho2)/(rho1 - rho2) = 4/pi: rho1 = (4 + pi)/2, rho2 = (4 - pi)/2.
std::pair<double, double> counterexample_rotations();

// Closed form of the continuous average above; with u = (rho1 +- rho2) T,
//   H = (1/4pi) [sin(2pi u+)/(u+(u+^2 - 1)) - sin(2pi u-)/(u-(u-^2 - 1))].
// Throws singular when u+- is within 1e-12 of 0 or +-1.
double counterexample_H(double T);
double counterexample_H(double T, double rho1, double rho2);

// Same setup with rho1 = rho2 = rho:
//   (1/8)(4 - sin(4 pi T rho)/(pi T rho - 4 pi T^3 rho^3)) -> 1/2.
double resonant_H(double T, double rho);

// |H| along T_n = n / (rho1 - rho2), n = n_min..n_max: value H, target 0,
// floor at the rounding level of the two closed-form terms.
std::vector<AverageResult> counterexample_curve(int n_min, int n_max);

// resonant_H at each T: value, target 0 (the product of the means), floor 0.
std::vector<AverageResult> resonant_curve(std::span<const double> T, double rho);

// dmw or cmw at each scale, in order. Scales must be strictly increasing
// (and integral in discrete mode). Scales are evaluated in parallel.
std::vector<AverageResult> error_curve(const AverageSpec& spec, std::span<const double> scales);

}  // namespace birkhoff

#pragma once

#include "birkhoff/averaging.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace birkhoff {

struct CurvePoint {
    double scale = 0.0;
    double abs_error = 0.0;
    double floor = 0.0;
};

std::vector<CurvePoint> to_curve(std::span<const AverageResult> results);

// Drops points with abs_error <= floor, then replaces each remaining error by
// the maximum over the dyadic window [s, 2s) of surviving scales. Needs at
// least 6 input points and 3 survivors (too_few_points otherwise).
std::vector<CurvePoint> envelope(std::span<const CurvePoint> curve);

enum class RateModel { power, stretched_exp, log_stretched_exp };
RateModel parse_rate_model(std::string_view name);
std::string_view rate_model_name(RateModel model) noexcept;

struct RateFit {
    RateModel model = RateModel::power;
    // power: m, C (err ~ C N^-m); stretched: c, zeta (err ~ exp(-c N^zeta));
    // log_stretched: c, zeta (err ~ exp(-c (log N)^zeta)).
    std::vector<std::pair<std::string, double>> params;
    double residual = 0.0;  // RMS of log(err) residuals, comparable across models
    std::size_t points_used = 0;

    double param(std::string_view name) const;
};

// Least squares of log err against log scale. Points with err <= 0 are
// skipped; needs 3 points and two distinct scales.
RateFit fit_power(std::span<const CurvePoint> curve);
// Least squares of log(-log err) against log scale (stretched) or log log
// scale (log_stretched). Points with err >= 1 or err <= 0 are skipped; needs 4.
RateFit fit_stretched(std::span<const CurvePoint> curve, RateModel model);
RateFit fit(std::span<const CurvePoint> curve, RateModel model);

// Positive increasing function, evaluated through its logarithm so that
// values like exp(exp(x)) stay usable.
struct GrowthFunction {
    enum class Kind { power, exponential, double_exponential, log_power };
    Kind kind = Kind::power;
    double p = 1.0;

    static GrowthFunction power(double p) { return {Kind::power, p}; }                // x^p
    static GrowthFunction exponential(double rate) { return {Kind::exponential, rate}; }  // e^{rate x}
    static GrowthFunction double_exponential() { return {Kind::double_exponential, 1.0}; }  // e^{e^x}
    static GrowthFunction log_power(double u) { return {Kind::log_power, u}; }        // log^u(1 + x)

    double log_value(double x) const;
    double value(double x) const;
    double inverse(double y) const;
};

GrowthFunction parse_growth(std::string_view text);
std::string growth_name(const GrowthFunction& g);

// Frequency lattice of one factor: Z^d with the l1 norm, or finitely
// supported sequences with the eta-weighted norm.
struct LatticeSpace {
    bool infinite = false;
    std::size_t d = 1;
    int eta = 2;

    static LatticeSpace finite(std::size_t d) { return {false, d, 2}; }
    static LatticeSpace sequences(int eta) { return {true, 0, eta}; }

    // log #{k != 0 : norm(k) = r}, -inf when empty.
    double log_sphere_count(std::int64_t r) const;
};

inline constexpr std::int64_t kMaxInfiniteShell = 5000;
inline constexpr double kMaxAuditTerms = 1e8;

// Number of nonzero k in Z^d with ||k||_1 <= B.
std::uint64_t l1_ball_nonzero(std::size_t d, std::int64_t B);

// |S(x)| = (#{0 != k in Z^d : ||k||_1 <= B})^ell with B = floor(Delta^{-1}(x/phi(x)) / ell).
// Throws cap_exceeded if the count overflows 64 bits.
std::uint64_t truncated_space_size(const GrowthFunction& Delta, const GrowthFunction& phi, std::size_t ell,
                                   std::size_t d, double x);
std::uint64_t truncated_space_size(double tau, const GrowthFunction& phi, std::size_t ell, std::size_t d, double x);
std::int64_t truncation_radius(const GrowthFunction& Delta, const GrowthFunction& phi, std::size_t ell, double x);

enum class Condition { boundedness_finite, boundedness_infinite, truncated_smallness_finite, truncated_smallness_infinite };
std::string_view condition_name(Condition c) noexcept;

enum class Verdict { plateauing, diverging, inconclusive };
std::string_view verdict_name(Verdict v) noexcept;

struct ConditionAudit {
    Condition condition = Condition::boundedness_finite;
    std::vector<double> grid;        // cutoffs or x values
    std::vector<double> values;      // partial sums or tails
    std::vector<double> log_values;  // logs of the same (tails underflow)
    Verdict verdict = Verdict::inconclusive;
    // Truncated smallness only: -slope of the least-squares line of log tail
    // against x, the stretched exponent zeta of log(-log tail) against log x,
    // and zeta - 1 (about 0 for exponential decay).
    double rate = 0.0;
    double zeta = 0.0;
    double rate_trend = 0.0;
};

// Verdict thresholds.
inline constexpr double kPlateauRelTol = 1e-6;
inline constexpr double kExponentialTrendFloor = -0.25;

// Partial sums over cutoffs c of
//   sum_{0 != k^j, norm(k^j) <= c} Delta^m(sum_j norm(k^j)) / prod_j tDelta_j(norm(k^j)),
// grouped by radii. plateauing when the last two sums differ by < 1e-6
// relative, diverging when the increments grow, inconclusive otherwise.
ConditionAudit audit_boundedness(const GrowthFunction& Delta, std::span<const GrowthFunction> tilde_deltas, int m,
                                 const LatticeSpace& space, std::span<const std::int64_t> cutoffs);

// For each x, the sum of 1/prod_j tDelta_j(norm(k^j)) over all (k^1..k^ell),
// k^j != 0, outside the truncated space {norm(k^j) <= B(x) for all j}, with
// B(x) = Delta^{-1}(x/phi(x)) / ell. plateauing (exponentially small) when the
// tail decreases and log(-log tail / x) has slope >= -0.25 in log x; diverging
// when the tail does not decrease; inconclusive otherwise.
ConditionAudit audit_truncated_smallness(std::span<const GrowthFunction> tilde_deltas, const GrowthFunction& Delta,
                                         const GrowthFunction& phi, const LatticeSpace& space,
                                         std::span<const double> x_grid);

}  // namespace birkhoff

#pragma once

#include "birkhoff/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace birkhoff {

// Rotation frequencies of one torus map theta -> theta + rho (mod 1).
//
// Frequencies are stored as given and are not reduced mod 1: the continuous
// flow theta + s*rho depends on the full value (rho = 3.57 and rho = 0.57 are
// different flows), while discrete orbits reduce automatically.
struct RotationVector {
    std::vector<double> phases;
    std::optional<std::string> tag;

    std::size_t dim() const noexcept { return phases.size(); }

    static RotationVector from_phases(std::vector<double> phases);
    // (sqrt(5) - 1) / 2
    static RotationVector golden();
    static RotationVector one();
    static RotationVector rational(std::int64_t p, std::int64_t q);
    // 0.010010001, the printed truncation of the Liouville-type number.
    static RotationVector liouville_truncated();
    // 0.1001000100001... = sum_k 10^{-p_k}, p_1 = 1, p_{k+1} = p_k + k + 2, summed to
    // double precision.
    static RotationVector liouville_series();
    // Resolves "golden", "one", "liouville_trunc", "liouville_series", "p/q", or a decimal.
    static RotationVector from_tag(std::string_view tag);
};

struct JointRotation {
    std::size_t ell = 0;
    std::size_t d = 0;
    std::vector<RotationVector> components;
    std::vector<double> joint;  // (rho_1, ..., rho_ell) concatenated
};

// Throws dimension_mismatch when the components disagree on d.
JointRotation make_joint(std::vector<RotationVector> rotations);

enum class ScanMode { discrete, continuous };
ScanMode parse_scan_mode(std::string_view name);
std::string_view scan_mode_name(ScanMode mode) noexcept;

struct DivisorScan {
    int K = 0;
    ScanMode mode = ScanMode::discrete;
    double tau = 1.0;
    double min_divisor = 0.0;
    std::vector<std::int64_t> argmin_k;
    std::int64_t argmin_n = 0;   // nearest integer at the argmin (discrete)
    double alpha_estimate = 0.0; // min of divisor * ||k||^tau
    std::uint64_t candidates = 0;
    std::uint64_t trivial = 0;   // k supported only on integer coordinates (discrete)
};

inline constexpr double kMaxBallSize = 1e8;

// Number of k in Z^dim with ||k||_1 <= K, origin included.
double l1_ball_size(std::size_t dim, int K);

// Exhaustive scan of 0 != k in Z^{d ell}, ||k||_1 <= K. Discrete mode measures
// |k.rho - n| for the nearest integer n (ties away from zero); continuous mode
// measures |k.rho|. Since k and -k give the same divisor only the half lattice
// whose first nonzero entry is positive is visited, and ties are broken by
// the lexicographically smallest k.
//
// In discrete mode, coordinates of rho that are integers act as the identity
// on the torus: their contribution is dropped from k.rho, and vectors supported
// only on them are counted in `trivial` instead of reporting a zero divisor.
DivisorScan smallest_divisor(const JointRotation& joint, int K, ScanMode mode, double tau = 1.0);

// alpha_K = min over the scan of divisor * ||k||^tau; nonincreasing in K.
double diophantine_witness(const JointRotation& joint, int K, double tau, ScanMode mode);

struct ContinuedFraction {
    std::vector<BigInt> quotients;  // a_1, a_2, ... (a_0 = 0 omitted)
    std::vector<BigInt> numerators;
    std::vector<BigInt> denominators;
};

inline constexpr int kMaxContinuedFractionTerms = 40;

// Continued fraction of x in (0,1), taken exactly on the binary value of the
// double, so it terminates when the expansion of that rational is exhausted.
ContinuedFraction continued_fraction(double x, int n);

}  // namespace birkhoff

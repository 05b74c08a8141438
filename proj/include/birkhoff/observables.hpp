#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace birkhoff {

using Frequency = std::vector<std::int64_t>;
using Coefficients = std::map<Frequency, std::complex<double>>;

// f(theta) = sum_k c_k exp(2 pi i k.theta) on T^d, finitely many stored k.
// Immutable; evaluation walks the coefficients in map order (lexicographic k).
class FourierObservable {
public:
    FourierObservable() = default;
    // Throws invalid_argument on a key of the wrong length, imaginary_residue
    // when real_valued is set but c_{-k} != conj(c_k) for some stored k.
    FourierObservable(std::size_t dim, Coefficients coeffs, bool real_valued);

    std::size_t dim() const noexcept { return dim_; }
    bool real_valued() const noexcept { return real_valued_; }
    const Coefficients& coeffs() const noexcept { return coeffs_; }
    std::complex<double> coeff(const Frequency& k) const;

    std::complex<double> eval_complex(std::span<const double> theta) const;
    // Real part. Real-valued observables pair k with -k (their symmetry is
    // checked exactly on construction), so no imaginary part is formed.
    double eval(std::span<const double> theta) const;
    double eval(double theta) const { return eval(std::span<const double>(&theta, 1)); }

    // sum |c_k|
    double abs_sum() const noexcept { return abs_sum_; }
    // max over stored k of |k.rho|, the fastest oscillation along s -> theta + s rho.
    double max_speed(std::span<const double> rho) const;

private:
    std::size_t dim_ = 0;
    bool real_valued_ = false;
    Coefficients coeffs_;
    double abs_sum_ = 0.0;
    // Flattened copy of coeffs_ for the evaluation loop.
    std::vector<std::int64_t> flat_k_;
    std::vector<std::complex<double>> flat_c_;
    // Real-valued case: mean plus one representative per pair {k, -k}, so
    // f = c_0 + 2 sum Re(c_k e(k.theta)).
    double mean_ = 0.0;
    std::vector<std::int64_t> half_k_;
    std::vector<std::complex<double>> half_c_;
};

FourierObservable make_constant(std::size_t dim, double c);
// sin(2 pi theta_axis)
FourierObservable make_sin(std::size_t dim, std::size_t axis);
// sum_{k=1}^{kmax} k^{-2} sin(2 pi k theta) on T^1
FourierObservable make_weak_regularity_series(int kmax);
// Coefficients of modulus exp(-2 pi sigma ||k||_1) for 0 < ||k||_1 <= cutoff with
// seeded phases, conjugate-symmetric, and a seeded real mean in [-1, 1).
// Throws invalid_argument if exp(-2 pi sigma cutoff) >= 1e-16.
FourierObservable make_random_analytic(std::size_t dim, double sigma, int cutoff, std::uint64_t seed);

// c_0, or 0 if not stored.
std::complex<double> spatial_average(const FourierObservable& f);

// Coefficients c_k exp(2 pi i s k.rho): evaluating this at theta gives f(theta + s rho).
FourierObservable translate(const FourierObservable& f, double s, std::span<const double> rho);

// sum |c_k| exp(2 pi sigma ||k||_1)
double analytic_norm(const FourierObservable& f, double sigma);

enum class DecayFamily { trig_poly, polynomial, analytic };

struct DecaySpec {
    DecayFamily family = DecayFamily::trig_poly;
    double M = 0.0;      // polynomial: weight ||k||^M
    double sigma = 0.0;  // analytic: weight exp(2 pi sigma ||k||)
    std::int64_t cutoff = 0;  // trig_poly: largest admissible ||k||_1
};

struct DecayReport {
    double sup = 0.0;     // sup over stored k != 0 of weight(||k||) |c_k|
    Frequency argmax;
    bool passed = false;  // sup <= ceiling (and support within cutoff for trig_poly)
};

// Membership functional of the weighted coefficient space: sup weight(||k||_1) |c_k|.
DecayReport decay_audit(const FourierObservable& f, const DecaySpec& spec, double ceiling);

// Deterministic 64-bit generator (splitmix64).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace birkhoff

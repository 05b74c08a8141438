#include "birkhoff/observables.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

namespace birkhoff {

namespace {

std::int64_t l1(const Frequency& k) {
    std::int64_t s = 0;
    for (auto v : k) s += std::abs(v);
    return s;
}

Frequency negate(const Frequency& k) {
    Frequency m(k.size());
    std::transform(k.begin(), k.end(), m.begin(), [](std::int64_t v) { return -v; });
    return m;
}

std::complex<double> unit_phase(double turns) {
    const double a = 2.0 * std::numbers::pi * frac(turns);
    return {std::cos(a), std::sin(a)};
}

}  // namespace

FourierObservable::FourierObservable(std::size_t dim, Coefficients coeffs, bool real_valued)
    : dim_(dim), real_valued_(real_valued), coeffs_(std::move(coeffs)) {
    if (dim_ == 0) throw Error(ErrorKind::invalid_argument, "observable dimension must be positive");
    CompensatedSum abs_total;
    for (const auto& [k, c] : coeffs_) {
        if (k.size() != dim_) {
            throw Error(ErrorKind::dimension_mismatch, "frequency of length " + std::to_string(k.size()) +
                                                           " in a " + std::to_string(dim_) + "-dimensional observable");
        }
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw Error(ErrorKind::invalid_argument, "non-finite Fourier coefficient");
        }
        abs_total += std::abs(c);
    }
    abs_sum_ = abs_total.value();
    if (real_valued_) {
        for (const auto& [k, c] : coeffs_) {
            if (c != std::conj(coeff(negate(k)))) {
                throw Error(ErrorKind::imaginary_residue,
                            "real-valued observable lacks conjugate symmetry between k and -k");
            }
        }
    }
    flat_k_.reserve(coeffs_.size() * dim_);
    flat_c_.reserve(coeffs_.size());
    for (const auto& [k, c] : coeffs_) {
        flat_k_.insert(flat_k_.end(), k.begin(), k.end());
        flat_c_.push_back(c);
        if (!real_valued_) continue;
        const auto lead = std::find_if(k.begin(), k.end(), [](std::int64_t v) { return v != 0; });
        if (lead == k.end()) {
            mean_ = c.real();
        } else if (*lead > 0) {
            half_k_.insert(half_k_.end(), k.begin(), k.end());
            half_c_.push_back(c);
        }
    }
}

std::complex<double> FourierObservable::coeff(const Frequency& k) const {
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? std::complex<double>{} : it->second;
}

std::complex<double> FourierObservable::eval_complex(std::span<const double> theta) const {
    if (theta.size() != dim_) {
        throw Error(ErrorKind::dimension_mismatch, "evaluation point has dimension " + std::to_string(theta.size()) +
                                                       ", observable has " + std::to_string(dim_));
    }
    CompensatedComplexSum acc;
    const std::int64_t* k = flat_k_.data();
    for (const auto& c : flat_c_) {
        double turns = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (k[i] != 0) turns += static_cast<double>(k[i]) * theta[i];
        }
        k += dim_;
        acc += c * unit_phase(turns);
    }
    return acc.value();
}

double FourierObservable::eval(std::span<const double> theta) const {
    if (!real_valued_) return eval_complex(theta).real();
    if (theta.size() != dim_) {
        throw Error(ErrorKind::dimension_mismatch, "evaluation point has dimension " + std::to_string(theta.size()) +
                                                       ", observable has " + std::to_string(dim_));
    }
    CompensatedSum acc(mean_);
    const std::int64_t* k = half_k_.data();
    for (const auto& c : half_c_) {
        double turns = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (k[i] != 0) turns += static_cast<double>(k[i]) * theta[i];
        }
        k += dim_;
        const double a = 2.0 * std::numbers::pi * frac(turns);
        double v = 0.0;
        if (c.real() != 0.0) v += c.real() * std::cos(a);
        if (c.imag() != 0.0) v -= c.imag() * std::sin(a);
        acc += 2.0 * v;
    }
    return acc.value();
}

double FourierObservable::max_speed(std::span<const double> rho) const {
    if (rho.size() != dim_) throw Error(ErrorKind::dimension_mismatch, "rotation and observable dimensions differ");
    double best = 0.0;
    for (const auto& [k, c] : coeffs_) {
        double dot = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) dot += static_cast<double>(k[i]) * rho[i];
        best = std::max(best, std::abs(dot));
    }
    return best;
}

FourierObservable make_constant(std::size_t dim, double c) {
    Coefficients m;
    if (c != 0.0) m[Frequency(dim, 0)] = c;
    return FourierObservable(dim, std::move(m), true);
}

FourierObservable make_sin(std::size_t dim, std::size_t axis) {
    if (axis >= dim) {
        throw Error(ErrorKind::invalid_argument,
                    "axis " + std::to_string(axis) + " out of range for dimension " + std::to_string(dim));
    }
    Frequency e(dim, 0);
    e[axis] = 1;
    Coefficients m;
    m[e] = {0.0, -0.5};
    m[negate(e)] = {0.0, 0.5};
    return FourierObservable(dim, std::move(m), true);
}

FourierObservable make_weak_regularity_series(int kmax) {
    if (kmax < 1) throw Error(ErrorKind::invalid_argument, "series needs at least one term");
    Coefficients m;
    for (std::int64_t k = 1; k <= kmax; ++k) {
        const double a = 0.5 / static_cast<double>(k * k);
        m[{k}] = {0.0, -a};
        m[{-k}] = {0.0, a};
    }
    return FourierObservable(1, std::move(m), true);
}

FourierObservable make_random_analytic(std::size_t dim, double sigma, int cutoff, std::uint64_t seed) {
    if (dim == 0) throw Error(ErrorKind::invalid_argument, "observable dimension must be positive");
    if (!(sigma > 0.0)) throw Error(ErrorKind::invalid_argument, "sigma must be positive");
    if (cutoff < 1 || !(std::exp(-2.0 * std::numbers::pi * sigma * cutoff) < 1e-16)) {
        throw Error(ErrorKind::invalid_argument, "cutoff " + std::to_string(cutoff) +
                                                     " leaves a coefficient tail above 1e-16 for sigma " +
                                                     std::to_string(sigma));
    }
    // Enumerate the l1 ball; only the half with first nonzero entry positive draws a phase.
    std::vector<Frequency> ball;
    Frequency k(dim, 0);
    const auto fill = [&](auto&& self, std::size_t i, std::int64_t budget) -> void {
        if (i == dim) {
            ball.push_back(k);
            return;
        }
        for (std::int64_t v = -budget; v <= budget; ++v) {
            k[i] = v;
            self(self, i + 1, budget - std::abs(v));
        }
        k[i] = 0;
    };
    if (static_cast<double>(dim) * std::log(2.0 * cutoff + 1.0) > std::log(1e7)) {
        throw Error(ErrorKind::guard_exceeded, "random analytic observable would store too many coefficients");
    }
    fill(fill, 0, cutoff);

    SplitMix64 rng(seed);
    Coefficients m;
    m[Frequency(dim, 0)] = 2.0 * rng.uniform() - 1.0;
    for (const auto& f : ball) {
        const auto lead = std::find_if(f.begin(), f.end(), [](std::int64_t v) { return v != 0; });
        if (lead == f.end() || *lead < 0) continue;
        const double mag = std::exp(-2.0 * std::numbers::pi * sigma * static_cast<double>(l1(f)));
        const auto c = mag * unit_phase(rng.uniform());
        m[f] = c;
        m[negate(f)] = std::conj(c);
    }
    return FourierObservable(dim, std::move(m), true);
}

std::complex<double> spatial_average(const FourierObservable& f) {
    return f.coeff(Frequency(f.dim(), 0));
}

FourierObservable translate(const FourierObservable& f, double s, std::span<const double> rho) {
    if (rho.size() != f.dim()) throw Error(ErrorKind::dimension_mismatch, "rotation and observable dimensions differ");
    Coefficients m;
    for (const auto& [k, c] : f.coeffs()) {
        double turns = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i) turns += frac(s * static_cast<double>(k[i]) * rho[i]);
        m[k] = c * unit_phase(turns);
    }
    // Rotation keeps conjugate symmetry mathematically but not bitwise.
    return FourierObservable(f.dim(), std::move(m), false);
}

double analytic_norm(const FourierObservable& f, double sigma) {
    CompensatedSum acc;
    for (const auto& [k, c] : f.coeffs()) {
        acc += std::abs(c) * std::exp(2.0 * std::numbers::pi * sigma * static_cast<double>(l1(k)));
    }
    return acc.value();
}

DecayReport decay_audit(const FourierObservable& f, const DecaySpec& spec, double ceiling) {
    DecayReport r;
    bool support_ok = true;
    for (const auto& [k, c] : f.coeffs()) {
        const std::int64_t n = l1(k);
        if (n == 0) continue;
        double weight = 1.0;
        switch (spec.family) {
        case DecayFamily::trig_poly:
            if (n > spec.cutoff) support_ok = false;
            break;
        case DecayFamily::polynomial:
            weight = std::pow(static_cast<double>(n), spec.M);
            break;
        case DecayFamily::analytic:
            weight = std::exp(2.0 * std::numbers::pi * spec.sigma * static_cast<double>(n));
            break;
        }
        const double v = weight * std::abs(c);
        if (v > r.sup || r.argmax.empty()) {
            r.sup = v;
            r.argmax = k;
        }
    }
    r.passed = support_ok && r.sup <= ceiling;
    return r;
}

}  // namespace birkhoff

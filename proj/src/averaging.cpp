#include "birkhoff/averaging.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/kernels.hpp"
#include "birkhoff/quadrature.hpp"
#include "birkhoff/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace birkhoff {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double target_of(const AverageSpec& spec) {
    std::complex<double> t = 1.0;
    for (const auto& f : spec.observables) t *= spatial_average(f);
    return t.real();
}

std::span<const double> component(const AverageSpec& spec, std::size_t j) {
    return spec.joint.components[j].phases;
}

double finish_floor(double abs_weighted, double norm) { return 10.0 * kEps * abs_weighted / std::abs(norm); }

}  // namespace

void validate(const AverageSpec& spec) {
    const std::size_t ell = spec.observables.size();
    if (ell == 0) throw Error(ErrorKind::invalid_argument, "average needs at least one observable");
    if (spec.joint.ell != ell || spec.joint.components.size() != ell) {
        throw Error(ErrorKind::dimension_mismatch, std::to_string(ell) + " observables but " +
                                                       std::to_string(spec.joint.components.size()) + " rotations");
    }
    const std::size_t d = spec.theta0.size();
    if (d == 0) throw Error(ErrorKind::invalid_argument, "initial point is empty");
    for (std::size_t j = 0; j < ell; ++j) {
        if (spec.observables[j].dim() != d || spec.joint.components[j].dim() != d) {
            throw Error(ErrorKind::dimension_mismatch,
                        "factor " + std::to_string(j) + " disagrees with the initial point dimension " +
                            std::to_string(d));
        }
    }
    if (!(spec.weight_scale > 0.0) || !std::isfinite(spec.weight_scale)) {
        throw Error(ErrorKind::invalid_argument, "weight scale must be positive and finite");
    }
}

AverageResult dmw(const AverageSpec& spec) { return dmw(spec, spec.N); }

AverageResult dmw(const AverageSpec& spec, std::int64_t N) {
    validate(spec);
    if (N < 1) throw Error(ErrorKind::invalid_argument, "discrete average needs N >= 1");
    const std::size_t ell = spec.observables.size();
    const std::size_t d = spec.theta0.size();

    // phase[j*d + i] = frac(theta0_i + n rho_{j,i})
    std::vector<double> phase(ell * d);
    for (std::size_t j = 0; j < ell; ++j) {
        for (std::size_t i = 0; i < d; ++i) phase[j * d + i] = frac(spec.theta0[i]);
    }

    CompensatedSum num, den, abs_num;
    const double Nd = static_cast<double>(N);
    for (std::int64_t n = 0; n < N; ++n) {
        const double w = spec.weight_scale * spec.weight(static_cast<double>(n) / Nd);
        den += w;
        if (w != 0.0) {
            double prod = 1.0;
            for (std::size_t j = 0; j < ell; ++j) {
                prod *= spec.observables[j].eval(std::span<const double>(phase.data() + j * d, d));
            }
            num += w * prod;
            abs_num += std::abs(w * prod);
        }
        for (std::size_t j = 0; j < ell; ++j) {
            const auto rho = component(spec, j);
            for (std::size_t i = 0; i < d; ++i) phase[j * d + i] = frac(phase[j * d + i] + rho[i]);
        }
    }
    const double A = den.value();
    if (A == 0.0) {
        throw Error(ErrorKind::singular, "weight sum A_N vanishes at N = " + std::to_string(N));
    }
    AverageResult r;
    r.value = num.value() / A;
    r.target = target_of(spec);
    r.abs_error = std::abs(r.value - r.target);
    r.scale = Nd;
    r.floor = finish_floor(abs_num.value(), A);
    return r;
}

AverageResult cmw(const AverageSpec& spec) { return cmw(spec, spec.T); }

AverageResult cmw(const AverageSpec& spec, double T) {
    validate(spec);
    if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorKind::invalid_argument, "continuous average needs T > 0");
    if (spec.nodes_per_period < 8) {
        throw Error(ErrorKind::invalid_argument, "quadrature needs at least 8 nodes per period");
    }
    const std::size_t ell = spec.observables.size();
    const std::size_t d = spec.theta0.size();

    // Upper bound on the combined oscillation rate of the product in y.
    double speed = 0.0;
    for (std::size_t j = 0; j < ell; ++j) {
        std::int64_t kmax = 0;
        for (const auto& [k, c] : spec.observables[j].coeffs()) {
            std::int64_t n = 0;
            for (auto v : k) n += std::abs(v);
            kmax = std::max(kmax, n);
        }
        double rmax = 0.0;
        for (double r : component(spec, j)) rmax = std::max(rmax, std::abs(r));
        speed += static_cast<double>(kmax) * rmax;
    }
    const double want = std::ceil(spec.nodes_per_period * T * speed);
    const double panels_d = std::max(16.0, want);
    if (panels_d * static_cast<double>(kPanelOrder * ell) > kMaxQuadratureEvaluations) {
        throw Error(ErrorKind::guard_exceeded, "continuous average at T = " + std::to_string(T) +
                                                   " needs more than 1e8 observable evaluations");
    }
    const auto panels = static_cast<std::size_t>(panels_d);

    std::vector<double> point(d);
    const auto integrand = [&](double y) {
        const double w = spec.weight_scale * spec.weight(y);
        if (w == 0.0) return 0.0;
        double prod = 1.0;
        for (std::size_t j = 0; j < ell; ++j) {
            const auto rho = component(spec, j);
            for (std::size_t i = 0; i < d; ++i) point[i] = frac(spec.theta0[i] + y * T * rho[i]);
            prod *= spec.observables[j].eval(point);
        }
        return w * prod;
    };
    // Absolute integrand for the rounding floor, same nodes.
    const auto abs_integrand = [&](double y) { return std::abs(integrand(y)); };
    const double integral = quad::composite_gauss_legendre(integrand, 0.0, 1.0, panels, kPanelOrder);
    const double abs_integral = quad::composite_gauss_legendre(abs_integrand, 0.0, 1.0, panels, kPanelOrder);

    AverageResult r;
    r.value = integral / spec.weight_scale;
    r.target = target_of(spec);
    r.abs_error = std::abs(r.value - r.target);
    r.scale = T;
    r.floor = finish_floor(abs_integral, spec.weight_scale);
    return r;
}

std::pair<double, double> counterexample_rotations() {
    return {(4.0 + std::numbers::pi) / 2.0, (4.0 - std::numbers::pi) / 2.0};
}

double counterexample_H(double T) {
    const auto [r1, r2] = counterexample_rotations();
    return counterexample_H(T, r1, r2);
}

double counterexample_H(double T, double rho1, double rho2) {
    const auto term = [](double u) {
        if (std::abs(u) < 1e-12 || std::abs(u * u - 1.0) < 1e-12) {
            throw Error(ErrorKind::singular, "closed form is singular at (rho1 +- rho2) T = " + std::to_string(u));
        }
        return std::sin(2.0 * std::numbers::pi * u) / (u * (u * u - 1.0));
    };
    const double up = (rho1 + rho2) * T;
    const double um = (rho1 - rho2) * T;
    return (term(up) - term(um)) / (4.0 * std::numbers::pi);
}

double resonant_H(double T, double rho) {
    const double x = T * rho;
    if (std::abs(x) < 1e-12 || std::abs(4.0 * x * x - 1.0) < 1e-12) {
        throw Error(ErrorKind::singular, "resonant closed form is singular at T rho = " + std::to_string(x));
    }
    const double pi = std::numbers::pi;
    return (4.0 - std::sin(4.0 * pi * x) / (pi * x - 4.0 * pi * x * x * x)) / 8.0;
}

std::vector<AverageResult> counterexample_curve(int n_min, int n_max) {
    if (n_min < 1 || n_max < n_min) throw Error(ErrorKind::invalid_argument, "need 1 <= n_min <= n_max");
    const auto [r1, r2] = counterexample_rotations();
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<AverageResult> out;
    for (int n = n_min; n <= n_max; ++n) {
        const double T = n / (r1 - r2);
        AverageResult r;
        r.scale = T;
        r.value = counterexample_H(T, r1, r2);
        r.abs_error = std::abs(r.value);
        const double up = (r1 + r2) * T;
        const double um = (r1 - r2) * T;
        r.floor = 10.0 * eps * (1.0 / std::abs(up * (up * up - 1.0)) + 1.0 / std::abs(um * (um * um - 1.0))) /
                  (4.0 * std::numbers::pi);
        out.push_back(r);
    }
    return out;
}

std::vector<AverageResult> resonant_curve(std::span<const double> T, double rho) {
    std::vector<AverageResult> out;
    for (double t : T) {
        AverageResult r;
        r.scale = t;
        r.value = resonant_H(t, rho);
        r.abs_error = std::abs(r.value);
        out.push_back(r);
    }
    return out;
}

std::vector<AverageResult> error_curve(const AverageSpec& spec, std::span<const double> scales) {
    validate(spec);
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double s = scales[i];
        if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorKind::invalid_argument, "scales must be positive");
        if (spec.mode == AverageMode::discrete && s != std::floor(s)) {
            throw Error(ErrorKind::invalid_argument, "discrete scales must be integers");
        }
        if (i > 0 && !(scales[i - 1] < s)) {
            throw Error(ErrorKind::invalid_argument, "scales must be strictly increasing");
        }
    }
    std::vector<AverageResult> out(scales.size());
    kernels::map_indices_omp(scales.size(), [&](std::size_t i) {
        out[i] = spec.mode == AverageMode::discrete ? dmw(spec, static_cast<std::int64_t>(scales[i]))
                                                    : cmw(spec, scales[i]);
        return out[i].abs_error;
    });
    return out;
}

}  // namespace birkhoff

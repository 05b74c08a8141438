#include "birkhoff/weights.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/quadrature.hpp"
#include "birkhoff/summation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace birkhoff {

namespace {

double bump_exponent(double x) { return -1.0 / (x * (1.0 - x)); }

// u = x - x^2 and u' = 1 - 2x as integer polynomials.
const Polynomial& u_poly() {
    static const Polynomial u({0, 1, -1});
    return u;
}
const Polynomial& du_poly() {
    static const Polynomial du({1, -2});
    return du;
}

const std::array<Polynomial, kMaxBumpDerivative + 1>& numerators() {
    static const auto table = [] {
        std::array<Polynomial, kMaxBumpDerivative + 1> p;
        const Polynomial& u = u_poly();
        const Polynomial u2 = u * u;
        p[0] = Polynomial::constant(1);
        for (int n = 0; n < kMaxBumpDerivative; ++n) {
            const Polynomial factor = Polynomial::constant(1) - BigInt(2 * n) * u;
            p[n + 1] = u2 * p[n].derivative() + factor * du_poly() * p[n];
        }
        return p;
    }();
    return table;
}

void check_order(int n) {
    if (n < 0) throw Error(ErrorKind::invalid_argument, "derivative order must be nonnegative");
    if (n > kMaxBumpDerivative) {
        throw Error(ErrorKind::cap_exceeded,
                    "derivative order " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxBumpDerivative));
    }
}

// f^{(n)} / f for f = exp(g), from f^{(m+1)} = sum_k C(m,k) g^{(k+1)} f^{(m-k)} with
//   g^{(j)}(x) = -j! ((-1)^j / x^{j+1} + 1 / (1-x)^{j+1}).
// The monomial numerator loses about ten digits to cancellation near x = 1/2 by
// order 8; this form does not. Very close to 0 the terms would overflow, and
// there the numerator is dominated by its low coefficients, so it is used instead.
long double derivative_ratio(int n, long double x) {
    if (x < 1e-100L) {
        const long double u = x * (1.0L - x);
        return numerators()[static_cast<std::size_t>(n)].eval(x) / std::pow(u, 2.0L * n);
    }
    std::array<long double, kMaxBumpDerivative + 2> g{};
    std::array<long double, kMaxBumpDerivative + 1> h{};
    const long double a = 1.0L / x;
    const long double b = 1.0L / (1.0L - x);
    long double fact = 1.0L;
    long double pa = a;
    long double pb = b;
    for (int j = 1; j <= n; ++j) {
        fact *= j;
        pa *= a;
        pb *= b;
        g[static_cast<std::size_t>(j)] = -fact * ((j % 2 ? -pa : pa) + pb);
    }
    h[0] = 1.0L;
    for (int m = 0; m < n; ++m) {
        long double s = 0.0L;
        long double c = 1.0L;
        for (int k = 0; k <= m; ++k) {
            s += c * g[static_cast<std::size_t>(k + 1)] * h[static_cast<std::size_t>(m - k)];
            c = c * (m - k) / (k + 1);
        }
        h[static_cast<std::size_t>(m + 1)] = s;
    }
    return h[static_cast<std::size_t>(n)];
}

// Sign changes of the n-th derivative on (0,1), located on a uniform grid and
// refined by bisection.
std::vector<double> interior_roots(int n) {
    std::vector<double> roots;
    if (n < 1) return roots;
    constexpr int grid = 4096;
    long double prev_x = 1.0L / grid;
    long double prev = derivative_ratio(n, prev_x);
    for (int i = 2; i < grid; ++i) {
        const long double x = static_cast<long double>(i) / grid;
        const long double v = derivative_ratio(n, x);
        if (v == 0.0L) {
            roots.push_back(static_cast<double>(x));
        } else if ((prev < 0.0L && v > 0.0L) || (prev > 0.0L && v < 0.0L)) {
            long double lo = prev_x, hi = x, flo = prev;
            for (int it = 0; it < 80; ++it) {
                const long double mid = 0.5L * (lo + hi);
                const long double fm = derivative_ratio(n, mid);
                if ((fm < 0.0L) == (flo < 0.0L)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(static_cast<double>(0.5L * (lo + hi)));
        }
        prev_x = x;
        prev = v;
    }
    return roots;
}

}  // namespace

WeightKind parse_weight_kind(std::string_view name) {
    if (name == "uniform") return WeightKind::uniform;
    if (name == "sin2" || name == "sin_squared") return WeightKind::sin_squared;
    if (name == "bump" || name == "exponential_bump") return WeightKind::exponential_bump;
    throw Error(ErrorKind::parse, "unknown weight kind '" + std::string(name) + "' (expected uniform|sin2|bump)");
}

std::string_view weight_kind_name(WeightKind kind) noexcept {
    switch (kind) {
    case WeightKind::uniform: return "uniform";
    case WeightKind::sin_squared: return "sin2";
    case WeightKind::exponential_bump: return "bump";
    }
    return "bump";
}

double bump_normalizer() {
    static const double z = [] {
        quad::AdaptiveOptions opts;
        opts.rel_tol = 1e-12;
        const auto f = [](double t) { return (t > 0.0 && t < 1.0) ? std::exp(bump_exponent(t)) : 0.0; };
        const std::array<double, 3> cuts{0.0, 0.5, 1.0};
        const auto r = quad::adaptive_gk15(f, cuts, opts);
        if (!r.converged) throw Error(ErrorKind::nonconvergence, "bump normalizer quadrature did not converge");
        return r.value;
    }();
    return z;
}

WeightFunction::WeightFunction(WeightKind kind)
    : kind_(kind), normalizer_(kind == WeightKind::exponential_bump ? bump_normalizer() : 1.0) {}

double WeightFunction::operator()(double x) const noexcept {
    switch (kind_) {
    case WeightKind::uniform: return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
    case WeightKind::sin_squared: {
        if (x < 0.0 || x > 1.0) return 0.0;
        const double s = std::sin(std::numbers::pi * x);
        return 2.0 * s * s;
    }
    case WeightKind::exponential_bump:
        if (!(x > 0.0 && x < 1.0)) return 0.0;
        return std::exp(bump_exponent(x)) / normalizer_;
    }
    return 0.0;
}

double eval_weight(const WeightFunction& w, double x) noexcept { return w(x); }

double weight_sum(const WeightFunction& w, std::int64_t n) {
    if (n < 1) throw Error(ErrorKind::invalid_argument, "weight_sum needs N >= 1");
    CompensatedSum acc;
    const double inv = 1.0 / static_cast<double>(n);
    for (std::int64_t s = 0; s < n; ++s) acc += w(static_cast<double>(s) * inv);
    return acc.value();
}

RationalFunction bump_derivative_symbolic(int n) {
    check_order(n);
    Polynomial den = Polynomial::constant(1);
    for (int i = 0; i < 2 * n; ++i) den = den * u_poly();
    return {numerators()[static_cast<std::size_t>(n)], den};
}

double log_abs_bump_derivative(int n, double x) {
    check_order(n);
    if (!(x > 0.0 && x < 1.0)) return -std::numeric_limits<double>::infinity();
    const long double r = derivative_ratio(n, x);
    if (r == 0.0L) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(std::log(std::abs(r))) + bump_exponent(x);
}

double bump_derivative_l1(int n) {
    check_order(n);
    const double z = bump_normalizer();
    const auto integrand = [n, z](double x) -> double { return std::exp(log_abs_bump_derivative(n, x)) / z; };
    std::vector<double> cuts{0.0};
    for (double r : interior_roots(n)) cuts.push_back(r);
    cuts.push_back(1.0);
    quad::AdaptiveOptions opts;
    opts.rel_tol = 1e-12;
    const auto r = quad::adaptive_gk15(integrand, cuts, opts);
    if (!r.converged) {
        throw Error(ErrorKind::nonconvergence,
                    "L1 quadrature for derivative order " + std::to_string(n) + " missed 1e-12 relative");
    }
    return r.value;
}

}  // namespace birkhoff

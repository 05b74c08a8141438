#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace birkhoff::quad {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule, nodes found by Newton iteration on P_n.
// Rules are cached per order; the returned reference stays valid.
const GaussLegendreRule& gauss_legendre(std::size_t order);

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t intervals = 0;
    bool converged = false;
};

struct AdaptiveOptions {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    std::size_t max_intervals = 20000;
};

// Globally adaptive Gauss-Kronrod 7/15 on [a, b]: the interval with the
// largest error estimate is bisected until the total error estimate meets
// max(abs_tol, rel_tol * |integral|).
QuadResult adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                         const AdaptiveOptions& opts = {});

// Same, but each consecutive pair of breakpoints is integrated separately and
// the pieces are summed. Breakpoints must be sorted.
QuadResult adaptive_gk15(const std::function<double(double)>& f, std::span<const double> breakpoints,
                         const AdaptiveOptions& opts = {});

// Composite Gauss-Legendre: `panels` equal panels on [a, b], `order` nodes per
// panel, compensated accumulation in panel order.
double composite_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                std::size_t panels, std::size_t order);

}  // namespace birkhoff::quad

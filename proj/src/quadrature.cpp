#include "birkhoff/quadrature.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/summation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>

namespace birkhoff::quad {

namespace {

GaussLegendreRule build_rule(std::size_t n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Tricomi's initial guess for the i-th largest root.
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const long double pk = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) p0 = 1.0L;
            dp = n * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        // Recompute the derivative at the converged root.
        long double p0 = 1.0L, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const long double pk = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        if (n == 1) p0 = 1.0L;
        dp = n * (x * p1 - p0) / (x * x - 1.0L);
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        rule.nodes[i] = static_cast<double>(-x);
        rule.nodes[n - 1 - i] = static_cast<double>(x);
        rule.weights[i] = static_cast<double>(w);
        rule.weights[n - 1 - i] = static_cast<double>(w);
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

// QUADPACK qk15 abscissae and weights.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double s = f(c - dx) + f(c + dx);
        resk += wgk[j] * s;
        if (j % 2 == 1) resg += wg[j / 2] * s;
    }
    return {a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

const GaussLegendreRule& gauss_legendre(std::size_t order) {
    if (order == 0) throw Error(ErrorKind::invalid_argument, "Gauss-Legendre order must be positive");
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(order));
    return *slot;
}

QuadResult adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                         const AdaptiveOptions& opts) {
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    std::size_t count = 1;
    const auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (total_err > tolerance() && count < opts.max_intervals) {
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);  // interval cannot be split further in double
            break;
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum the final partition to shed the drift of incremental updates.
    CompensatedSum value, err;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    QuadResult out;
    out.value = value.value();
    out.abs_error = err.value();
    out.intervals = count;
    out.converged = out.abs_error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value));
    return out;
}

QuadResult adaptive_gk15(const std::function<double(double)>& f, std::span<const double> breakpoints,
                         const AdaptiveOptions& opts) {
    if (breakpoints.size() < 2) throw Error(ErrorKind::invalid_argument, "need at least two breakpoints");
    QuadResult out;
    out.converged = true;
    CompensatedSum value, err;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        AdaptiveOptions piece = opts;
        piece.max_intervals = std::max<std::size_t>(16, opts.max_intervals / (breakpoints.size() - 1));
        const QuadResult r = adaptive_gk15(f, breakpoints[i], breakpoints[i + 1], piece);
        value += r.value;
        err += r.abs_error;
        out.intervals += r.intervals;
        out.converged = out.converged && r.converged;
    }
    out.value = value.value();
    out.abs_error = err.value();
    return out;
}

double composite_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                std::size_t panels, std::size_t order) {
    if (panels == 0) throw Error(ErrorKind::invalid_argument, "panel count must be positive");
    const GaussLegendreRule& rule = gauss_legendre(order);
    const double width = (b - a) / static_cast<double>(panels);
    CompensatedSum acc;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const double mid = lo + 0.5 * width;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            acc += 0.5 * width * rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
        }
    }
    return acc.value();
}

}  // namespace birkhoff::quad

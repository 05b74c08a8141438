#include "birkhoff/analysis.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

namespace birkhoff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

struct Line {
    double slope = 0.0;
    double intercept = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error(ErrorKind::degenerate, "fit abscissae are all equal");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double rms(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return std::sqrt(s / static_cast<double>(r.size()));
}

double log_bigint(const BigInt& b) {
    if (b <= 0) return -kInf;
    const auto bits = static_cast<long>(boost::multiprecision::msb(b));
    if (bits < 1000) return std::log(static_cast<double>(b));
    const long shift = bits - 60;
    const BigInt top = b >> shift;
    return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace

std::vector<CurvePoint> to_curve(std::span<const AverageResult> results) {
    std::vector<CurvePoint> c;
    c.reserve(results.size());
    for (const auto& r : results) c.push_back({r.scale, r.abs_error, r.floor});
    return c;
}

std::vector<CurvePoint> envelope(std::span<const CurvePoint> curve) {
    if (curve.size() < 6) {
        throw Error(ErrorKind::too_few_points, "envelope needs at least 6 points, got " + std::to_string(curve.size()));
    }
    std::vector<CurvePoint> kept;
    for (const auto& p : curve) {
        if (p.abs_error > p.floor && std::isfinite(p.abs_error)) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.scale < b.scale; });
    if (kept.size() < 3) {
        throw Error(ErrorKind::too_few_points,
                    std::to_string(kept.size()) + " points above the error floor; need at least 3");
    }
    // Sliding-window maximum: both window ends move right as i increases.
    std::vector<CurvePoint> out(kept.size());
    std::deque<std::size_t> window;  // indices with decreasing errors
    std::size_t next = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        while (!window.empty() && window.front() < i) window.pop_front();
        while (next < kept.size() && kept[next].scale < 2.0 * kept[i].scale) {
            while (!window.empty() && kept[window.back()].abs_error <= kept[next].abs_error) window.pop_back();
            window.push_back(next++);
        }
        out[i] = kept[i];
        out[i].abs_error = kept[window.front()].abs_error;
    }
    return out;
}

RateModel parse_rate_model(std::string_view name) {
    if (name == "power") return RateModel::power;
    if (name == "stretched_exp" || name == "stretched") return RateModel::stretched_exp;
    if (name == "log_stretched_exp" || name == "log_stretched") return RateModel::log_stretched_exp;
    throw Error(ErrorKind::parse, "unknown rate model '" + std::string(name) + "'");
}

std::string_view rate_model_name(RateModel model) noexcept {
    switch (model) {
    case RateModel::power: return "power";
    case RateModel::stretched_exp: return "stretched_exp";
    case RateModel::log_stretched_exp: return "log_stretched_exp";
    }
    return "power";
}

double RateFit::param(std::string_view name) const {
    for (const auto& [k, v] : params) {
        if (k == name) return v;
    }
    throw Error(ErrorKind::invalid_argument, "fit has no parameter '" + std::string(name) + "'");
}

RateFit fit_power(std::span<const CurvePoint> curve) {
    std::vector<double> x, y;
    for (const auto& p : curve) {
        if (p.abs_error > 0.0 && p.scale > 0.0) {
            x.push_back(std::log(p.scale));
            y.push_back(std::log(p.abs_error));
        }
    }
    if (x.size() < 3) throw Error(ErrorKind::too_few_points, "power fit needs at least 3 positive points");
    const Line l = least_squares(x, y);
    std::vector<double> res(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) res[i] = y[i] - (l.intercept + l.slope * x[i]);
    RateFit f;
    f.model = RateModel::power;
    f.params = {{"m", -l.slope}, {"C", std::exp(l.intercept)}};
    f.residual = rms(res);
    f.points_used = x.size();
    return f;
}

RateFit fit_stretched(std::span<const CurvePoint> curve, RateModel model) {
    if (model == RateModel::power) return fit_power(curve);
    std::vector<double> x, y, logerr, base;
    for (const auto& p : curve) {
        if (!(p.abs_error > 0.0 && p.abs_error < 1.0 && p.scale > 1.0)) continue;
        const double b = model == RateModel::stretched_exp ? p.scale : std::log(p.scale);
        if (model == RateModel::log_stretched_exp && !(b > 1.0)) continue;  // log log scale must be finite and > 0
        x.push_back(std::log(b));
        y.push_back(std::log(-std::log(p.abs_error)));
        logerr.push_back(std::log(p.abs_error));
        base.push_back(b);
    }
    if (x.size() < 4) throw Error(ErrorKind::too_few_points, "stretched fit needs at least 4 points with 0 < err < 1");
    const Line l = least_squares(x, y);
    const double c = std::exp(l.intercept);
    const double zeta = l.slope;
    std::vector<double> res(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) res[i] = logerr[i] + c * std::pow(base[i], zeta);
    RateFit f;
    f.model = model;
    f.params = {{"c", c}, {"zeta", zeta}};
    f.residual = rms(res);
    f.points_used = x.size();
    return f;
}

RateFit fit(std::span<const CurvePoint> curve, RateModel model) {
    return model == RateModel::power ? fit_power(curve) : fit_stretched(curve, model);
}

double GrowthFunction::log_value(double x) const {
    switch (kind) {
    case Kind::power: return x > 0.0 ? p * std::log(x) : -kInf;
    case Kind::exponential: return p * x;
    case Kind::double_exponential: return std::exp(x);
    case Kind::log_power: {
        const double l = std::log1p(x);
        return l > 0.0 ? p * std::log(l) : -kInf;
    }
    }
    return 0.0;
}

double GrowthFunction::value(double x) const { return std::exp(log_value(x)); }

double GrowthFunction::inverse(double y) const {
    if (!(y > 0.0)) throw Error(ErrorKind::invalid_argument, "inverse needs a positive argument");
    switch (kind) {
    case Kind::power: return std::pow(y, 1.0 / p);
    case Kind::exponential: return std::log(y) / p;
    case Kind::double_exponential: return std::log(std::log(y));
    case Kind::log_power: return std::expm1(std::pow(y, 1.0 / p));
    }
    return 0.0;
}

GrowthFunction parse_growth(std::string_view text) {
    // power:P | exp:RATE | dexp | logpow:U
    const auto colon = text.find(':');
    const auto head = text.substr(0, colon);
    double p = 1.0;
    if (colon != std::string_view::npos) {
        const std::string tail(text.substr(colon + 1));
        char* end = nullptr;
        p = std::strtod(tail.c_str(), &end);
        if (tail.empty() || end != tail.c_str() + tail.size() || !std::isfinite(p) || !(p > 0.0)) {
            throw Error(ErrorKind::parse, "bad growth parameter in '" + std::string(text) + "'");
        }
    }
    if (head == "power") return GrowthFunction::power(p);
    if (head == "exp") return GrowthFunction::exponential(p);
    if (head == "dexp" && colon == std::string_view::npos) return GrowthFunction::double_exponential();
    if (head == "logpow") return GrowthFunction::log_power(p);
    throw Error(ErrorKind::parse, "unknown growth function '" + std::string(text) +
                                      "' (expected power:P, exp:RATE, dexp, logpow:U)");
}

std::string growth_name(const GrowthFunction& g) {
    char buf[64];
    switch (g.kind) {
    case GrowthFunction::Kind::power: std::snprintf(buf, sizeof buf, "power:%.17g", g.p); break;
    case GrowthFunction::Kind::exponential: std::snprintf(buf, sizeof buf, "exp:%.17g", g.p); break;
    case GrowthFunction::Kind::double_exponential: return "dexp";
    case GrowthFunction::Kind::log_power: std::snprintf(buf, sizeof buf, "logpow:%.17g", g.p); break;
    }
    return buf;
}

double LatticeSpace::log_sphere_count(std::int64_t r) const {
    if (r < 1) return -kInf;
    if (!infinite) return std::log(l1_sphere_count(d, r));
    if (r > kMaxInfiniteShell) {
        throw Error(ErrorKind::guard_exceeded, "eta-shell radius beyond " + std::to_string(kMaxInfiniteShell));
    }
    // Shell counts are reused heavily across grid points.
    static std::mutex mu;
    static std::map<std::pair<int, std::int64_t>, double> cache;
    std::lock_guard lock(mu);
    const auto key = std::make_pair(eta, r);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
    const double v = log_bigint(shell_count(eta, static_cast<int>(r)));
    cache.emplace(key, v);
    return v;
}

std::uint64_t l1_ball_nonzero(std::size_t d, std::int64_t B) {
    if (B < 1 || d == 0) return 0;
    BigInt total = 0, c_d = 1, c_b = 1, pow2 = 1;
    for (std::size_t i = 1; i <= d && static_cast<std::int64_t>(i) <= B; ++i) {
        c_d = c_d * (d - i + 1) / i;
        c_b = c_b * (B - static_cast<std::int64_t>(i) + 1) / i;
        pow2 *= 2;
        total += pow2 * c_d * c_b;
    }
    if (total > std::numeric_limits<std::uint64_t>::max()) {
        throw Error(ErrorKind::cap_exceeded, "lattice ball count exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(total);
}

std::int64_t truncation_radius(const GrowthFunction& Delta, const GrowthFunction& phi, std::size_t ell, double x) {
    if (ell == 0) throw Error(ErrorKind::invalid_argument, "ell must be positive");
    if (!(x > 0.0)) throw Error(ErrorKind::invalid_argument, "truncation needs x > 0");
    const double ratio = x / phi.value(x);
    if (!(ratio > 0.0) || !std::isfinite(ratio)) return 0;
    double B = Delta.inverse(ratio) / static_cast<double>(ell);
    // x = 100, phi = sqrt gives 9.999999999999998 through exp/log
    if (std::abs(B - std::round(B)) <= 1e-12 * B) B = std::round(B);
    if (!(B >= 1.0)) return 0;
    if (B > 9e15) throw Error(ErrorKind::cap_exceeded, "truncation radius too large");
    return static_cast<std::int64_t>(std::floor(B));
}

std::uint64_t truncated_space_size(const GrowthFunction& Delta, const GrowthFunction& phi, std::size_t ell,
                                   std::size_t d, double x) {
    const std::int64_t B = truncation_radius(Delta, phi, ell, x);
    const std::uint64_t one = l1_ball_nonzero(d, B);
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < ell; ++j) {
        if (__builtin_mul_overflow(total, one, &total)) {
            throw Error(ErrorKind::cap_exceeded, "truncated space size exceeds 64 bits");
        }
    }
    return total;
}

std::uint64_t truncated_space_size(double tau, const GrowthFunction& phi, std::size_t ell, std::size_t d, double x) {
    return truncated_space_size(GrowthFunction::power(tau), phi, ell, d, x);
}

std::string_view condition_name(Condition c) noexcept {
    switch (c) {
    case Condition::boundedness_finite: return "boundedness_finite";
    case Condition::boundedness_infinite: return "boundedness_infinite";
    case Condition::truncated_smallness_finite: return "truncated_smallness_finite";
    case Condition::truncated_smallness_infinite: return "truncated_smallness_infinite";
    }
    return "unknown";
}

std::string_view verdict_name(Verdict v) noexcept {
    switch (v) {
    case Verdict::plateauing: return "plateauing";
    case Verdict::diverging: return "diverging";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ConditionAudit audit_boundedness(const GrowthFunction& Delta, std::span<const GrowthFunction> tilde_deltas, int m,
                                 const LatticeSpace& space, std::span<const std::int64_t> cutoffs) {
    const std::size_t ell = tilde_deltas.size();
    if (ell == 0) throw Error(ErrorKind::invalid_argument, "boundedness audit needs at least one decay function");
    if (m < 1) throw Error(ErrorKind::invalid_argument, "boundedness audit needs m >= 1");
    if (cutoffs.empty()) throw Error(ErrorKind::invalid_argument, "boundedness audit needs cutoffs");
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (cutoffs[i] < 1 || (i > 0 && cutoffs[i] <= cutoffs[i - 1])) {
            throw Error(ErrorKind::invalid_argument, "cutoffs must be positive and strictly increasing");
        }
    }
    const std::int64_t cmax = cutoffs.back();
    if (std::pow(static_cast<double>(cmax), static_cast<double>(ell)) > kMaxAuditTerms) {
        throw Error(ErrorKind::guard_exceeded, "boundedness audit would visit more than 1e8 radius tuples");
    }

    // Per-radius log weights log count(r) - log tDelta_j(r).
    std::vector<std::vector<double>> lw(ell, std::vector<double>(static_cast<std::size_t>(cmax) + 1));
    for (std::int64_t r = 1; r <= cmax; ++r) {
        const double lc = space.log_sphere_count(r);
        for (std::size_t j = 0; j < ell; ++j) {
            lw[j][static_cast<std::size_t>(r)] = lc - tilde_deltas[j].log_value(static_cast<double>(r));
        }
    }

    ConditionAudit a;
    a.condition = space.infinite ? Condition::boundedness_infinite : Condition::boundedness_finite;
    double log_sum = -kInf;
    std::int64_t prev = 0;
    std::vector<std::int64_t> r(ell);
    for (const std::int64_t c : cutoffs) {
        // Tuples in [1, c]^ell with max entry > prev, in odometer order.
        std::fill(r.begin(), r.end(), 1);
        double log_shell = -kInf;
        while (true) {
            const std::int64_t top = *std::max_element(r.begin(), r.end());
            if (top > prev) {
                std::int64_t total = 0;
                double lt = 0.0;
                for (std::size_t j = 0; j < ell; ++j) {
                    total += r[j];
                    lt += lw[j][static_cast<std::size_t>(r[j])];
                }
                lt += m * Delta.log_value(static_cast<double>(total));
                log_shell = logaddexp(log_shell, lt);
            }
            std::size_t j = 0;
            while (j < ell && r[j] == c) r[j++] = 1;
            if (j == ell) break;
            ++r[j];
        }
        log_sum = logaddexp(log_sum, log_shell);
        a.grid.push_back(static_cast<double>(c));
        a.log_values.push_back(log_sum);
        a.values.push_back(std::exp(log_sum));
        prev = c;
    }

    const std::size_t n = a.log_values.size();
    if (n >= 2) {
        const double last = a.log_values[n - 1];
        const double before = a.log_values[n - 2];
        // S_n / S_{n-1} - 1 < tol, in log form
        if (std::isfinite(last) && std::expm1(last - before) < kPlateauRelTol) {
            a.verdict = Verdict::plateauing;
        } else if (n >= 3) {
            const auto log_increment = [&](std::size_t i) {
                const double hi = a.log_values[i], lo = a.log_values[i - 1];
                return hi + std::log(-std::expm1(lo - hi));
            };
            if (!std::isfinite(last) || log_increment(n - 1) >= log_increment(n - 2)) a.verdict = Verdict::diverging;
        }
    }
    return a;
}

namespace {

// log sum_{r >= from} count(r) / tDelta(r), stopping once terms are below
// 1e-20 of the sum and decreasing. Power-law decay in finite dimension gets a
// closed-form remainder past the summation horizon.
double log_radial_tail(const GrowthFunction& td, const LatticeSpace& space, std::int64_t from) {
    const std::int64_t horizon = space.infinite ? kMaxInfiniteShell : 200000;
    double log_sum = -kInf;
    double prev_term = kInf;
    std::int64_t r = std::max<std::int64_t>(from, 1);
    for (; r <= horizon; ++r) {
        const double lt = space.log_sphere_count(r) - td.log_value(static_cast<double>(r));
        log_sum = logaddexp(log_sum, lt);
        if (lt < prev_term && lt < log_sum - 46.0) return log_sum;
        prev_term = lt;
    }
    if (!space.infinite && td.kind == GrowthFunction::Kind::power) {
        const double d = static_cast<double>(space.d);
        if (td.p <= d) return kInf;
        // count_d(r) ~ 2^d r^{d-1} / (d-1)!
        const double R = static_cast<double>(r) - 0.5;
        const double lrem = d * std::log(2.0) - std::lgamma(d) + (d - td.p) * std::log(R) - std::log(td.p - d);
        return logaddexp(log_sum, lrem);
    }
    return kInf;  // terms still significant at the horizon
}

double log_radial_head(const GrowthFunction& td, const LatticeSpace& space, std::int64_t to) {
    double log_sum = -kInf;
    for (std::int64_t r = 1; r <= to; ++r) {
        log_sum = logaddexp(log_sum, space.log_sphere_count(r) - td.log_value(static_cast<double>(r)));
    }
    return log_sum;
}

}  // namespace

ConditionAudit audit_truncated_smallness(std::span<const GrowthFunction> tilde_deltas, const GrowthFunction& Delta,
                                         const GrowthFunction& phi, const LatticeSpace& space,
                                         std::span<const double> x_grid) {
    const std::size_t ell = tilde_deltas.size();
    if (ell == 0) throw Error(ErrorKind::invalid_argument, "smallness audit needs at least one decay function");
    if (x_grid.size() < 4) throw Error(ErrorKind::too_few_points, "smallness audit needs at least 4 grid points");
    for (std::size_t i = 1; i < x_grid.size(); ++i) {
        if (!(x_grid[i] > x_grid[i - 1])) throw Error(ErrorKind::invalid_argument, "x grid must be increasing");
    }

    std::vector<double> log_full(ell);
    for (std::size_t j = 0; j < ell; ++j) log_full[j] = log_radial_tail(tilde_deltas[j], space, 1);

    ConditionAudit a;
    a.condition = space.infinite ? Condition::truncated_smallness_infinite : Condition::truncated_smallness_finite;
    for (const double x : x_grid) {
        const std::int64_t B = truncation_radius(Delta, phi, ell, x);
        if (space.infinite && B > kMaxInfiniteShell) {
            throw Error(ErrorKind::guard_exceeded, "truncation radius beyond the shell guard");
        }
        // Split by the first factor j whose norm exceeds B:
        // tail = sum_j [prod_{i<j} head_i(B)] tail_j(B) [prod_{i>j} full_i].
        double log_tail = -kInf;
        double log_prefix = 0.0;
        for (std::size_t j = 0; j < ell; ++j) {
            double lt = log_prefix + log_radial_tail(tilde_deltas[j], space, B + 1);
            for (std::size_t i = j + 1; i < ell; ++i) lt += log_full[i];
            log_tail = logaddexp(log_tail, lt);
            log_prefix += log_radial_head(tilde_deltas[j], space, B);
        }
        a.grid.push_back(x);
        a.log_values.push_back(log_tail);
        a.values.push_back(std::exp(log_tail));
    }

    const double first = a.log_values.front();
    const double last = a.log_values.back();
    if (!std::isfinite(last) || !(last < first)) {
        a.verdict = Verdict::diverging;
        return a;
    }
    const Line lin = least_squares(std::vector<double>(a.grid.begin(), a.grid.end()), a.log_values);
    a.rate = -lin.slope;

    std::vector<double> lx, lz;
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        if (a.log_values[i] < 0.0 && a.grid[i] > 0.0) {
            lx.push_back(std::log(a.grid[i]));
            lz.push_back(std::log(-a.log_values[i]));
        }
    }
    if (lx.size() >= 3) {
        a.zeta = least_squares(lx, lz).slope;
        a.rate_trend = a.zeta - 1.0;  // slope of log(-log tail / x)
        a.verdict = a.rate > 0.0 && a.rate_trend >= kExponentialTrendFloor ? Verdict::plateauing
                                                                             : Verdict::inconclusive;
    }
    return a;
}

}  // namespace birkhoff

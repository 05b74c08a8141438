#include <doctest.h>

#include "birkhoff/analysis.hpp"
#include "birkhoff/error.hpp"

#include <cmath>
#include <numbers>

using namespace birkhoff;

namespace {

std::vector<CurvePoint> synthetic(double lo, double hi, double step, double (*err)(double)) {
    std::vector<CurvePoint> c;
    for (double n = lo; n <= hi; n += step) c.push_back({n, err(n), 0.0});
    return c;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("envelope keeps a decreasing curve") {
    const auto c = synthetic(10, 200, 10, [](double n) { return 1.0 / n; });
    const auto e = envelope(c);
    REQUIRE(e.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(e[i].scale == c[i].scale);
        CHECK(e[i].abs_error == c[i].abs_error);
    }
}

TEST_CASE("envelope drops points at the floor") {
    auto c = synthetic(10, 200, 10, [](double n) { return 1.0 / n; });
    for (auto& p : c) p.floor = 1.0 / 120.0;
    const auto e = envelope(c);
    CHECK(e.size() == 11);  // 10..110
    for (const auto& p : e) CHECK(p.abs_error > p.floor);

    for (auto& p : c) p.floor = 1.0;
    CHECK_THROWS_AS(envelope(c), Error);
    CHECK_THROWS_AS(envelope(std::vector<CurvePoint>(c.begin(), c.begin() + 5)), Error);
}

TEST_CASE("envelope recovers the trend under an oscillating factor") {
    const double C = 3.0;
    std::vector<CurvePoint> c;
    for (int n = 10; n <= 4000; ++n) c.push_back({double(n), C * std::abs(std::sin(double(n))) / n, 0.0});
    const auto e = envelope(c);
    for (const auto& p : e) {
        if (p.scale > 2000) break;  // last window is cut off by the data
        const double ratio = p.abs_error * p.scale / C;
        CHECK(ratio <= 1.0);
        CHECK(ratio >= 0.45);
    }
    CHECK(fit_power(e).param("m") == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("power fit on exact data") {
    const auto c = synthetic(10, 1000, 10, [](double n) { return 7.0 / (n * n); });
    const RateFit f = fit_power(c);
    CHECK(f.model == RateModel::power);
    CHECK(std::abs(f.param("m") - 2.0) < 1e-10);
    CHECK(f.param("C") == doctest::Approx(7.0).epsilon(1e-9));
    CHECK(f.residual < 1e-12);
    CHECK(f.points_used == c.size());
    CHECK_THROWS_AS(f.param("zeta"), Error);
}

TEST_CASE("stretched fits on exact data") {
    const auto s = synthetic(4, 400, 4, [](double n) { return std::exp(-std::sqrt(n)); });
    const RateFit fs = fit_stretched(s, RateModel::stretched_exp);
    CHECK(fs.param("zeta") == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fs.param("c") == doctest::Approx(1.0).epsilon(1e-10));

    const auto l = synthetic(10, 1000, 10, [](double n) { return std::exp(-std::pow(std::log(n), 1.2)); });
    const RateFit fl = fit(l, RateModel::log_stretched_exp);
    CHECK(fl.param("zeta") == doctest::Approx(1.2).epsilon(1e-10));
    CHECK(fl.residual < 1e-10);
}

TEST_CASE("model selection on synthetic data") {
    const auto s = synthetic(4, 400, 4, [](double n) { return std::exp(-std::sqrt(n)); });
    CHECK(fit(s, RateModel::stretched_exp).residual < fit(s, RateModel::power).residual);
    const auto p = synthetic(10, 1000, 10, [](double n) { return 1.0 / (n * n); });
    CHECK(fit(p, RateModel::power).residual < fit(p, RateModel::stretched_exp).residual);
}

TEST_CASE("fits need enough points") {
    const std::vector<CurvePoint> two{{1, 0.5, 0}, {2, 0.25, 0}};
    CHECK_THROWS_AS(fit_power(two), Error);
    const std::vector<CurvePoint> flat{{3, 0.5, 0}, {3, 0.25, 0}, {3, 0.1, 0}};
    CHECK_THROWS_AS(fit_power(flat), Error);
}

TEST_CASE("rate model names") {
    for (auto m : {RateModel::power, RateModel::stretched_exp, RateModel::log_stretched_exp}) {
        CHECK(parse_rate_model(rate_model_name(m)) == m);
    }
    CHECK_THROWS_AS(parse_rate_model("linear"), Error);
}

TEST_CASE("growth functions and their inverses") {
    const GrowthFunction g[] = {GrowthFunction::power(1.5), GrowthFunction::exponential(0.3),
                                GrowthFunction::double_exponential(), GrowthFunction::log_power(2.0)};
    for (const auto& f : g) {
        for (double x : {0.5, 2.0, 6.0}) {
            CHECK(f.inverse(f.value(x)) == doctest::Approx(x).epsilon(1e-12));
            CHECK(f.log_value(x) == doctest::Approx(std::log(f.value(x))).epsilon(1e-12));
        }
        CHECK(parse_growth(growth_name(f)).kind == f.kind);
    }
    CHECK(GrowthFunction::double_exponential().log_value(800.0) > 1e300);
    CHECK(parse_growth("power:2").p == 2.0);
    CHECK_THROWS_AS(parse_growth("cubic"), Error);
    CHECK_THROWS_AS(parse_growth("power:x"), Error);
}

TEST_CASE("truncated space sizes") {
    const auto sqrt_phi = GrowthFunction::power(0.5);
    // B = floor(100 / sqrt(100)) = 10: the nonzero integers in [-10, 10]
    CHECK(truncated_space_size(1.0, sqrt_phi, 1, 1, 100.0) == 20);
    CHECK(truncated_space_size(1.0, sqrt_phi, 1, 1, 0.5) == 0);
    CHECK(truncated_space_size(1.0, sqrt_phi, 2, 1, 400.0) == 400);  // B = 10, squared count
    CHECK(l1_ball_nonzero(2, 2) == 12);
    CHECK(l1_ball_nonzero(3, 0) == 0);

    std::uint64_t prev = 0;
    std::int64_t prevB = 0;
    for (double x = 1.0; x < 1e5; x *= 1.37) {
        const auto B = truncation_radius(GrowthFunction::power(2.0), sqrt_phi, 2, x);
        const auto n = truncated_space_size(GrowthFunction::power(2.0), sqrt_phi, 2, 2, x);
        if (B >= prevB) CHECK(n >= prev);
        prev = n;
        prevB = B;
    }
}

TEST_CASE("lattice spaces count spheres") {
    CHECK(std::exp(LatticeSpace::finite(2).log_sphere_count(3)) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(std::exp(LatticeSpace::sequences(2).log_sphere_count(4)) == doctest::Approx(18.0).epsilon(1e-14));
    CHECK(std::isinf(LatticeSpace::finite(1).log_sphere_count(0)));
}

TEST_CASE("boundedness audit: closed-form limit") {
    const std::vector<GrowthFunction> decay{GrowthFunction::exponential(1.0)};
    const std::vector<std::int64_t> cutoffs{10, 20, 40, 80};
    const auto a = audit_boundedness(GrowthFunction::power(1.0), decay, 1, LatticeSpace::finite(1), cutoffs);
    CHECK(a.condition == Condition::boundedness_finite);
    CHECK(a.verdict == Verdict::plateauing);
    CHECK(a.values.back() == doctest::Approx(2.0 * std::numbers::e / std::pow(std::numbers::e - 1.0, 2)).epsilon(1e-12));
    for (std::size_t i = 1; i < a.values.size(); ++i) CHECK(a.values[i] >= a.values[i - 1]);
    const std::size_t n = a.values.size();
    CHECK((a.values[n - 1] - a.values[n - 2]) / a.values[n - 1] < kPlateauRelTol);
}

TEST_CASE("boundedness audit: analytic decay against a diophantine bound") {
    const double sigma = 0.5;
    const std::vector<GrowthFunction> decay(2, GrowthFunction::exponential(2.0 * std::numbers::pi * sigma));
    const std::vector<std::int64_t> cutoffs{10, 20, 40, 80};
    for (int m = 1; m <= 5; ++m) {
        const auto a = audit_boundedness(GrowthFunction::power(3.0), decay, m, LatticeSpace::finite(1), cutoffs);
        CAPTURE(m);
        CHECK(a.verdict == Verdict::plateauing);
        for (std::size_t i = 1; i < a.values.size(); ++i) CHECK(a.values[i] >= a.values[i - 1]);
    }
}

TEST_CASE("boundedness audit: polynomial decay diverges") {
    const std::vector<GrowthFunction> decay{GrowthFunction::power(2.0)};
    const std::vector<std::int64_t> cutoffs{10, 20, 40, 80};
    const auto a = audit_boundedness(GrowthFunction::power(1.0), decay, 3, LatticeSpace::finite(1), cutoffs);
    CHECK(a.verdict == Verdict::diverging);
}

TEST_CASE("boundedness audit on sequences") {
    const std::vector<GrowthFunction> decay{GrowthFunction::exponential(2.0)};
    const std::vector<std::int64_t> cutoffs{10, 20, 40, 80, 160};
    const auto a = audit_boundedness(GrowthFunction::power(2.0), decay, 2, LatticeSpace::sequences(2), cutoffs);
    CHECK(a.condition == Condition::boundedness_infinite);
    CHECK(a.verdict == Verdict::plateauing);
}

TEST_CASE("boundedness audit input checks") {
    const std::vector<GrowthFunction> decay{GrowthFunction::exponential(1.0)};
    const std::vector<std::int64_t> bad{10, 5};
    CHECK_THROWS_AS(audit_boundedness(GrowthFunction::power(1.0), decay, 1, LatticeSpace::finite(1), bad), Error);
    const std::vector<std::int64_t> ok{10, 20};
    CHECK_THROWS_AS(audit_boundedness(GrowthFunction::power(1.0), decay, 0, LatticeSpace::finite(1), ok), Error);
    const std::vector<std::int64_t> huge{200000000};
    CHECK_THROWS_AS(audit_boundedness(GrowthFunction::power(1.0), decay, 1, LatticeSpace::finite(3), huge), Error);
}

TEST_CASE("smallness audit: analytic decay gives a stretched exponent (1 - eps) / tau") {
    std::vector<double> xs;
    for (double x = 100; x <= 1e7; x *= 1.5) xs.push_back(x);
    for (double tau : {1.5, 3.0}) {
        for (double eps : {0.25, 0.5}) {
            const std::vector<GrowthFunction> decay{GrowthFunction::exponential(std::numbers::pi)};
            const auto a = audit_truncated_smallness(decay, GrowthFunction::power(tau), GrowthFunction::power(eps),
                                                     LatticeSpace::finite(1), xs);
            CAPTURE(tau);
            CAPTURE(eps);
            CHECK(a.zeta == doctest::Approx((1.0 - eps) / tau).epsilon(0.1));
            CHECK(a.verdict == Verdict::inconclusive);
            for (std::size_t i = 1; i < a.values.size(); ++i) CHECK(a.log_values[i] <= a.log_values[i - 1]);
        }
    }
}

TEST_CASE("smallness audit: double-exponential decay is exponentially small") {
    std::vector<double> xs;
    for (double x = 5; x <= 3000; x *= 1.3) xs.push_back(x);
    for (std::size_t ell : {1u, 2u}) {
        const std::vector<GrowthFunction> decay(ell, GrowthFunction::double_exponential());
        const auto a = audit_truncated_smallness(decay, GrowthFunction::exponential(1.0 / (2.0 * ell)),
                                                 GrowthFunction::power(0.5), LatticeSpace::sequences(2), xs);
        CHECK(a.condition == Condition::truncated_smallness_infinite);
        CHECK(a.verdict == Verdict::plateauing);
        CHECK(a.rate >= 1.0 / 6.0);
        CHECK(a.rate_trend >= kExponentialTrendFloor);
    }
}

TEST_CASE("smallness audit: polynomial decay is not exponentially small") {
    std::vector<double> xs;
    for (double x = 5; x <= 3000; x *= 1.3) xs.push_back(x);
    const std::vector<GrowthFunction> decay{GrowthFunction::power(4.0)};
    const auto a = audit_truncated_smallness(decay, GrowthFunction::power(1.5), GrowthFunction::power(0.5),
                                             LatticeSpace::finite(1), xs);
    CHECK(a.verdict != Verdict::plateauing);
}

TEST_CASE("smallness audit: a tail that does not shrink diverges") {
    // Decay x^0.5 in one dimension: the tail sum is infinite at every x.
    std::vector<double> xs{10, 20, 40, 80};
    const std::vector<GrowthFunction> decay{GrowthFunction::power(0.5)};
    const auto a = audit_truncated_smallness(decay, GrowthFunction::power(1.5), GrowthFunction::power(0.5),
                                             LatticeSpace::finite(1), xs);
    CHECK(a.verdict == Verdict::diverging);
}

TEST_CASE("verdict and condition names") {
    CHECK(verdict_name(Verdict::plateauing) == "plateauing");
    CHECK(verdict_name(Verdict::diverging) == "diverging");
    CHECK(condition_name(Condition::truncated_smallness_finite) == "truncated_smallness_finite");
}

}

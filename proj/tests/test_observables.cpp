#include <doctest.h>

#include "birkhoff/error.hpp"
#include "birkhoff/lattice.hpp"
#include "birkhoff/observables.hpp"

#include <cmath>
#include <numbers>

using namespace birkhoff;

namespace {

double l1(const Frequency& k) {
    double s = 0.0;
    for (auto v : k) s += std::abs(static_cast<double>(v));
    return s;
}

double coeff_energy(const FourierObservable& f) {
    double s = 0.0;
    for (const auto& [k, c] : f.coeffs()) s += std::norm(c);
    return s;
}

}  // namespace

TEST_SUITE("observables") {

TEST_CASE("sine observable") {
    const FourierObservable f = make_sin(1, 0);
    CHECK(f.eval(0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(f.eval(0.0)) < 1e-16);
    CHECK(f.eval(0.125) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(spatial_average(f) == std::complex<double>(0.0, 0.0));
    CHECK(f.real_valued());

    const FourierObservable g = make_sin(3, 2);
    const double theta[] = {0.4, 0.7, 0.25};
    CHECK(g.eval(theta) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(make_sin(2, 2), Error);
}

TEST_CASE("constant observable") {
    const FourierObservable c = make_constant(2, -1.75);
    const double theta[] = {0.123, 0.987};
    CHECK(c.eval(theta) == -1.75);
    CHECK(spatial_average(c) == std::complex<double>(-1.75, 0.0));
}

TEST_CASE("weak-regularity sine series") {
    CHECK(make_weak_regularity_series(1).coeffs() == make_sin(1, 0).coeffs());
    const FourierObservable f = make_weak_regularity_series(100);
    CHECK(f.coeffs().size() == 200);
    CHECK(f.coeff({3}) == std::complex<double>(0.0, -1.0 / 18.0));
    CHECK(f.coeff({-3}) == std::complex<double>(0.0, 1.0 / 18.0));
    CHECK(std::abs(f.eval(0.0)) < 1e-15);
    // sum_{k<=100} sin(0.2 k pi) / k^2, summed independently at 40 digits
    CHECK(f.eval(0.1) == doctest::Approx(0.92360152443548717736).epsilon(1e-14));
    CHECK(spatial_average(f) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("real-valued observables must be conjugate symmetric") {
    Coefficients c;
    c[{1}] = {0.0, 0.5};
    c[{-1}] = {0.0, 0.5};
    try {
        FourierObservable f(1, c, true);
        FAIL("expected imaginary_residue");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::imaginary_residue);
    }
    CHECK_NOTHROW(FourierObservable(1, c, false));

    Coefficients bad;
    bad[{1, 0}] = 1.0;
    CHECK_THROWS_AS(FourierObservable(1, bad, false), Error);
}

TEST_CASE("random analytic observables are reproducible") {
    const FourierObservable a = make_random_analytic(2, 0.5, 14, 42);
    const FourierObservable b = make_random_analytic(2, 0.5, 14, 42);
    const FourierObservable c = make_random_analytic(2, 0.5, 14, 43);
    CHECK(a.coeffs() == b.coeffs());
    CHECK(a.coeffs() != c.coeffs());
    CHECK(a.real_valued());
    const double c0 = a.coeff({0, 0}).real();
    CHECK(spatial_average(a) == std::complex<double>(c0, 0.0));
    CHECK(c0 >= -1.0);
    CHECK(c0 < 1.0);
    for (const auto& [k, v] : a.coeffs()) {
        if (l1(k) == 0) continue;
        CHECK(std::abs(v) == doctest::Approx(std::exp(-2.0 * std::numbers::pi * 0.5 * l1(k))).epsilon(1e-14));
    }
}

TEST_CASE("random analytic cutoff must push the tail below rounding") {
    CHECK_THROWS_AS(make_random_analytic(1, 0.5, 5, 1), Error);
    CHECK_THROWS_AS(make_random_analytic(1, -0.5, 50, 1), Error);
}

TEST_CASE("analytic norm at half the strip width") {
    const double sigma = 0.4;
    const int cutoff = 16;
    const FourierObservable f = make_random_analytic(2, sigma, cutoff, 9);
    double expect = std::abs(f.coeff({0, 0}));
    for (int r = 1; r <= cutoff; ++r) expect += l1_sphere_count(2, r) * std::exp(-std::numbers::pi * sigma * r);
    CHECK(analytic_norm(f, sigma / 2.0) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("Parseval on a grid finer than twice the cutoff") {
    SUBCASE("one dimension") {
        const FourierObservable f = make_random_analytic(1, 0.6, 12, 5);
        const int P = 64;
        double s = 0.0;
        for (int p = 0; p < P; ++p) s += std::norm(f.eval_complex(std::span<const double>(std::vector<double>{double(p) / P})));
        CHECK(s / P == doctest::Approx(coeff_energy(f)).epsilon(1e-12));
    }
    SUBCASE("two dimensions") {
        const FourierObservable f = make_random_analytic(2, 0.6, 12, 6);
        const int P = 32;
        double s = 0.0;
        for (int p = 0; p < P; ++p) {
            for (int q = 0; q < P; ++q) {
                const double th[] = {double(p) / P, double(q) / P};
                const double v = f.eval(th);
                s += v * v;
            }
        }
        CHECK(s / (P * P) == doctest::Approx(coeff_energy(f)).epsilon(1e-12));
    }
}

TEST_CASE("real-valued observables have no imaginary part") {
    const FourierObservable f = make_random_analytic(3, 0.5, 14, 11);
    SplitMix64 rng(3);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double th[] = {rng.uniform(), rng.uniform(), rng.uniform()};
        const auto z = f.eval_complex(th);
        worst = std::max(worst, std::abs(z.imag()));
        CHECK(f.eval(th) == doctest::Approx(z.real()).epsilon(1e-12));
    }
    CHECK(worst < 1e-12 * f.abs_sum());
}

TEST_CASE("translation rotates the coefficients") {
    const FourierObservable f = make_random_analytic(2, 0.5, 14, 21);
    const double rho[] = {(std::sqrt(5.0) - 1.0) / 2.0, std::sqrt(2.0) - 1.0};
    SplitMix64 rng(17);
    for (int i = 0; i < 20; ++i) {
        const double s = 10.0 * rng.uniform();
        const double th[] = {rng.uniform(), rng.uniform()};
        const double moved[] = {th[0] + s * rho[0], th[1] + s * rho[1]};
        const FourierObservable g = translate(f, s, rho);
        CHECK_FALSE(g.real_valued());
        CHECK(g.eval_complex(th).real() == doctest::Approx(f.eval(moved)).epsilon(1e-12));
        CHECK(std::abs(g.eval_complex(th).imag()) < 1e-12 * f.abs_sum());
    }
}

TEST_CASE("largest oscillation speed along a direction") {
    const FourierObservable f = make_weak_regularity_series(10);
    const double rho[] = {0.3};
    CHECK(f.max_speed(rho) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("decay audits") {
    const double sigma = 0.3;
    const auto s = decay_audit(make_sin(1, 0), {DecayFamily::analytic, 0.0, sigma, 0}, 10.0);
    CHECK(s.sup == doctest::Approx(0.5 * std::exp(2.0 * std::numbers::pi * sigma)).epsilon(1e-15));
    CHECK(s.passed);

    const FourierObservable w = make_weak_regularity_series(100);
    const auto m2 = decay_audit(w, {DecayFamily::polynomial, 2.0, 0.0, 0}, 1.0);
    CHECK(m2.sup == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m2.passed);

    const auto m3 = decay_audit(w, {DecayFamily::polynomial, 3.0, 0.0, 0}, 1.0);
    CHECK(m3.sup == doctest::Approx(50.0).epsilon(1e-13));
    CHECK(l1(m3.argmax) == 100.0);
    CHECK_FALSE(m3.passed);
    // grows with the truncation
    CHECK(decay_audit(make_weak_regularity_series(200), {DecayFamily::polynomial, 3.0, 0.0, 0}, 1.0).sup > m3.sup);

    CHECK(decay_audit(w, {DecayFamily::trig_poly, 0.0, 0.0, 100}, 1.0).passed);
    CHECK_FALSE(decay_audit(w, {DecayFamily::trig_poly, 0.0, 0.0, 99}, 1.0).passed);
}

TEST_CASE("splitmix64 stream is fixed") {
    // Reference outputs of splitmix64 seeded with 0.
    SplitMix64 g(0);
    CHECK(g.next() == 0xe220a8397b1dcdafULL);
    CHECK(g.next() == 0x6e789e6aa1b965f4ULL);
    SplitMix64 h(0);
    h.next();
    h.next();
    const double u = h.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
}

}

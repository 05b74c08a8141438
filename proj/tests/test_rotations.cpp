#include <doctest.h>

#include "birkhoff/error.hpp"
#include "birkhoff/lattice.hpp"
#include "birkhoff/rotations.hpp"

#include <cmath>

using namespace birkhoff;

namespace {
const double kPhi = (std::sqrt(5.0) - 1.0) / 2.0;

JointRotation golden_joint() { return make_joint({RotationVector::golden(), RotationVector::one()}); }
}  // namespace

TEST_SUITE("rotations") {

TEST_CASE("tagged constants") {
    CHECK(RotationVector::golden().phases[0] == kPhi);
    CHECK(RotationVector::one().phases[0] == 1.0);
    CHECK(RotationVector::rational(1, 3).phases[0] == 1.0 / 3.0);
    CHECK(RotationVector::liouville_truncated().phases[0] == 0.010010001);
    CHECK(RotationVector::liouville_series().phases[0] == doctest::Approx(0.1001000100001).epsilon(1e-13));
    CHECK(RotationVector::from_tag("golden").phases[0] == kPhi);
    CHECK(RotationVector::from_tag("3/8").phases[0] == 0.375);
    CHECK(RotationVector::from_tag("0.25").phases[0] == 0.25);
    CHECK(RotationVector::from_tag("liouville_trunc").tag == "liouville_trunc");
    CHECK_THROWS_AS(RotationVector::from_tag("nonsense"), Error);
    CHECK_THROWS_AS(RotationVector::from_tag("1/0"), Error);
    CHECK_THROWS_AS(RotationVector::from_phases({}), Error);
}

TEST_CASE("phases are kept as given") {
    const auto r = RotationVector::from_phases({3.5707963267948966});
    CHECK(r.phases[0] == 3.5707963267948966);
}

TEST_CASE("joint rotation concatenates components") {
    const JointRotation one = make_joint({RotationVector::golden()});
    CHECK(one.ell == 1);
    CHECK(one.d == 1);
    CHECK(one.joint == std::vector<double>{kPhi});

    const JointRotation two = golden_joint();
    CHECK(two.ell == 2);
    CHECK(two.joint == std::vector<double>{kPhi, 1.0});

    try {
        make_joint({RotationVector::golden(), RotationVector::from_phases({0.1, 0.2})});
        FAIL("expected dimension_mismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::dimension_mismatch);
    }
}

TEST_CASE("smallest divisor of the golden joint") {
    const DivisorScan s = smallest_divisor(golden_joint(), 5, ScanMode::discrete);
    CHECK(s.min_divisor == doctest::Approx((5.0 * std::sqrt(5.0) - 11.0) / 2.0).epsilon(1e-14));
    CHECK(s.argmin_k == std::vector<std::int64_t>{5, 0});
    CHECK(s.argmin_n == 3);
    // (0, j) for j = 1..5 are counted, not scored
    CHECK(s.trivial == 5);
    CHECK(s.candidates + s.trivial == static_cast<std::uint64_t>((l1_ball_size(2, 5) - 1) / 2));
}

TEST_CASE("rational and continuous divisors") {
    const DivisorScan half = smallest_divisor(make_joint({RotationVector::rational(1, 2)}), 2, ScanMode::discrete);
    CHECK(half.min_divisor == 0.0);
    CHECK(half.argmin_k == std::vector<std::int64_t>{2});
    CHECK(half.argmin_n == 1);

    const DivisorScan cont = smallest_divisor(make_joint({RotationVector::golden()}), 1, ScanMode::continuous);
    CHECK(cont.min_divisor == kPhi);
    CHECK(cont.argmin_k == std::vector<std::int64_t>{1});
}

TEST_CASE("nearest-integer ties go away from zero") {
    // 1 * 0.5 is exactly half way between 0 and 1
    const DivisorScan s = smallest_divisor(make_joint({RotationVector::rational(1, 2)}), 1, ScanMode::discrete);
    CHECK(s.min_divisor == 0.5);
    CHECK(s.argmin_n == 1);
}

TEST_CASE("the minimum never grows with K") {
    const JointRotation j = make_joint({RotationVector::golden(), RotationVector::from_phases({std::sqrt(2.0) - 1.0})});
    double prev = INFINITY;
    for (int K = 1; K <= 30; ++K) {
        const double m = smallest_divisor(j, K, ScanMode::discrete).min_divisor;
        CHECK(m <= prev);
        prev = m;
    }
}

TEST_CASE("diophantine witness of the golden joint") {
    const JointRotation j = golden_joint();
    const double a10 = diophantine_witness(j, 10, 1.0, ScanMode::discrete);
    const double a50 = diophantine_witness(j, 50, 1.0, ScanMode::discrete);
    const double a100 = diophantine_witness(j, 100, 1.0, ScanMode::discrete);
    CHECK(a50 >= 0.2);
    CHECK(a100 >= 0.2);
    CHECK(a10 >= a50);
    CHECK(a50 >= a100);

    // The raw minimum falls like 1/K along Fibonacci numbers.
    for (int K : {13, 21, 34, 55, 89}) {
        const double raw = smallest_divisor(j, K, ScanMode::discrete).min_divisor;
        CAPTURE(K);
        CHECK(raw * K > 0.3);
        CHECK(raw * K < 1.0);
    }

    CHECK(diophantine_witness(make_joint({RotationVector::rational(1, 3)}), 3, 1.0, ScanMode::discrete) == 0.0);
    CHECK(diophantine_witness(make_joint({RotationVector::rational(1, 3)}), 7, 1.0, ScanMode::discrete) == 0.0);
    CHECK_THROWS_AS(diophantine_witness(j, 5, -1.0, ScanMode::discrete), Error);
}

TEST_CASE("scan guard") {
    const JointRotation big = make_joint({RotationVector::from_phases({0.1, 0.2, 0.3, 0.4, 0.5, 0.6})});
    CHECK_THROWS_AS(smallest_divisor(big, 60, ScanMode::discrete), Error);
    CHECK(l1_ball_size(1, 3) == 7.0);
    CHECK(l1_ball_size(2, 2) == 13.0);
}

TEST_CASE("scan mode names") {
    CHECK(parse_scan_mode("discrete") == ScanMode::discrete);
    CHECK(parse_scan_mode("continuous") == ScanMode::continuous);
    CHECK(scan_mode_name(ScanMode::continuous) == "continuous");
    CHECK_THROWS_AS(parse_scan_mode("both"), Error);
}

TEST_CASE("continued fraction of the golden number gives Fibonacci convergents") {
    const ContinuedFraction cf = continued_fraction(kPhi, 6);
    REQUIRE(cf.quotients.size() == 6);
    const int num[] = {1, 1, 2, 3, 5, 8};
    const int den[] = {1, 2, 3, 5, 8, 13};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(cf.quotients[i] == 1);
        CHECK(cf.numerators[i] == num[i]);
        CHECK(cf.denominators[i] == den[i]);
    }
}

TEST_CASE("continued fraction terminates on exact rationals") {
    const ContinuedFraction cf = continued_fraction(0.5, 10);
    REQUIRE(cf.quotients.size() == 1);
    CHECK(cf.quotients[0] == 2);
    CHECK(cf.numerators[0] == 1);
    CHECK(cf.denominators[0] == 2);
}

TEST_CASE("continued fraction of the truncated Liouville value") {
    // Exact expansion of the double nearest 0.010010001.
    const ContinuedFraction cf = continued_fraction(RotationVector::liouville_truncated().phases[0], 4);
    REQUIRE(cf.quotients.size() == 4);
    CHECK(cf.quotients[0] == 99);
    CHECK(cf.quotients[1] == 1);
    CHECK(cf.quotients[2] == 9);
    CHECK(cf.quotients[3] == 111);
    // q_{k+1} / q_k is not bounded by a constant: the last ratio jumps.
    const double r1 = static_cast<double>(cf.denominators[1]) / static_cast<double>(cf.denominators[0]);
    const double r3 = static_cast<double>(cf.denominators[3]) / static_cast<double>(cf.denominators[2]);
    CHECK(r3 > 50.0 * r1);
    CHECK_THROWS_AS(continued_fraction(0.3, 0), Error);
    CHECK_THROWS_AS(continued_fraction(0.3, kMaxContinuedFractionTerms + 1), Error);
}

}

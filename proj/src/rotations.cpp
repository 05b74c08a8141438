#include "birkhoff/rotations.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/kernels.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace birkhoff {

RotationVector RotationVector::from_phases(std::vector<double> phases) {
    if (phases.empty()) throw Error(ErrorKind::invalid_argument, "rotation vector needs at least one phase");
    for (double v : phases) {
        if (!std::isfinite(v)) throw Error(ErrorKind::invalid_argument, "rotation phases must be finite");
    }
    return {std::move(phases), std::nullopt};
}

RotationVector RotationVector::golden() { return {{(std::sqrt(5.0) - 1.0) / 2.0}, "golden"}; }

RotationVector RotationVector::one() { return {{1.0}, "one"}; }

RotationVector RotationVector::rational(std::int64_t p, std::int64_t q) {
    if (q == 0) throw Error(ErrorKind::invalid_argument, "rational rotation with zero denominator");
    return {{static_cast<double>(p) / static_cast<double>(q)}, std::to_string(p) + "/" + std::to_string(q)};
}

RotationVector RotationVector::liouville_truncated() {
    // One correctly rounded division of exact doubles.
    return {{10010001.0 / 1e9}, "liouville_trunc"};
}

RotationVector RotationVector::liouville_series() {
    double sum = 0.0;
    int pos = 1;
    for (int k = 1; pos < 330; ++k) {
        sum += std::pow(10.0, -pos);
        pos += k + 2;
    }
    return {{sum}, "liouville_series"};
}

RotationVector RotationVector::from_tag(std::string_view tag) {
    if (tag == "golden") return golden();
    if (tag == "one") return one();
    if (tag == "liouville_trunc") return liouville_truncated();
    if (tag == "liouville_series") return liouville_series();
    if (const auto slash = tag.find('/'); slash != std::string_view::npos) {
        std::int64_t p = 0, q = 0;
        const auto num = tag.substr(0, slash);
        const auto den = tag.substr(slash + 1);
        const auto r1 = std::from_chars(num.data(), num.data() + num.size(), p);
        const auto r2 = std::from_chars(den.data(), den.data() + den.size(), q);
        if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != num.data() + num.size() ||
            r2.ptr != den.data() + den.size()) {
            throw Error(ErrorKind::parse, "bad rational rotation '" + std::string(tag) + "'");
        }
        return rational(p, q);
    }
    const std::string s(tag);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw Error(ErrorKind::parse, "unknown rotation '" + s + "'");
    }
    return from_phases({v});
}

JointRotation make_joint(std::vector<RotationVector> rotations) {
    if (rotations.empty()) throw Error(ErrorKind::invalid_argument, "joint rotation needs at least one component");
    JointRotation j;
    j.d = rotations.front().dim();
    j.ell = rotations.size();
    for (const auto& r : rotations) {
        if (r.dim() != j.d) {
            throw Error(ErrorKind::dimension_mismatch, "rotation components have different dimensions (" +
                                                          std::to_string(j.d) + " vs " + std::to_string(r.dim()) +
                                                          ")");
        }
        j.joint.insert(j.joint.end(), r.phases.begin(), r.phases.end());
    }
    j.components = std::move(rotations);
    return j;
}

ScanMode parse_scan_mode(std::string_view name) {
    if (name == "discrete") return ScanMode::discrete;
    if (name == "continuous") return ScanMode::continuous;
    throw Error(ErrorKind::parse, "unknown scan mode '" + std::string(name) + "'");
}

std::string_view scan_mode_name(ScanMode mode) noexcept {
    return mode == ScanMode::discrete ? "discrete" : "continuous";
}

double l1_ball_size(std::size_t dim, int K) {
    // sum_i 2^i C(dim, i) C(K, i)
    double total = 0.0;
    double c_dim = 1.0, c_k = 1.0, pow2 = 1.0;
    for (std::size_t i = 0; i <= dim && static_cast<int>(i) <= K; ++i) {
        total += pow2 * c_dim * c_k;
        c_dim *= static_cast<double>(dim - i) / static_cast<double>(i + 1);
        c_k *= static_cast<double>(K - static_cast<int>(i)) / static_cast<double>(i + 1);
        pow2 *= 2.0;
    }
    return total;
}

DivisorScan smallest_divisor(const JointRotation& joint, int K, ScanMode mode, double tau) {
    return kernels::divisor_scan_omp(joint.joint, K, mode, tau);
}

double diophantine_witness(const JointRotation& joint, int K, double tau, ScanMode mode) {
    if (!(tau > 0.0)) throw Error(ErrorKind::invalid_argument, "diophantine witness needs tau > 0");
    return smallest_divisor(joint, K, mode, tau).alpha_estimate;
}

ContinuedFraction continued_fraction(double x, int n) {
    if (!(x > 0.0 && x < 1.0)) throw Error(ErrorKind::invalid_argument, "continued fraction needs x in (0,1)");
    if (n < 1 || n > kMaxContinuedFractionTerms) {
        throw Error(ErrorKind::cap_exceeded, "continued fraction term count must be in [1, 40]");
    }
    // x = mantissa / 2^shift exactly.
    int exp = 0;
    const double m = std::frexp(x, &exp);  // x = m 2^exp, m in [0.5, 1)
    const auto mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
    BigInt num = mantissa;
    BigInt den = BigInt(1) << (53 - exp);

    ContinuedFraction cf;
    BigInt p_prev = 1, p = 0;  // p_{-1}, p_0
    BigInt q_prev = 0, q = 1;
    // Expand den/num: x = num/den, so 1/x = den/num.
    while (static_cast<int>(cf.quotients.size()) < n && num != 0) {
        const BigInt a = den / num;
        const BigInt r = den % num;
        cf.quotients.push_back(a);
        const BigInt p_next = a * p + p_prev;
        const BigInt q_next = a * q + q_prev;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
        cf.numerators.push_back(p);
        cf.denominators.push_back(q);
        den = num;
        num = r;
    }
    return cf;
}

}  // namespace birkhoff

#include "birkhoff/error.hpp"
#include "birkhoff/kernels.hpp"
#include "divisor_scan_impl.hpp"

#include <string>

namespace birkhoff::kernels {

namespace detail {

void validate(std::span<const double> rho, int K, double tau) {
    if (rho.empty()) throw Error(ErrorKind::invalid_argument, "divisor scan needs a nonempty rotation");
    if (K < 1) throw Error(ErrorKind::invalid_argument, "divisor scan needs K >= 1");
    if (!(tau >= 0.0)) throw Error(ErrorKind::invalid_argument, "tau must be nonnegative");
    const double size = l1_ball_size(rho.size(), K);
    if (size > kMaxBallSize) {
        throw Error(ErrorKind::guard_exceeded, "lattice ball of " + std::to_string(size) +
                                                   " vectors exceeds the scan guard");
    }
}

DivisorScan finish(const Problem& p, const Best& best) {
    DivisorScan out;
    out.K = p.K;
    out.mode = p.mode;
    out.tau = p.tau;
    out.min_divisor = best.divisor;
    out.argmin_k = best.k;
    out.argmin_n = best.n;
    out.alpha_estimate = best.alpha;
    out.candidates = best.candidates;
    out.trivial = best.trivial;
    return out;
}

}  // namespace detail

DivisorScan divisor_scan_serial(std::span<const double> rho, int K, ScanMode mode, double tau) {
    detail::validate(rho, K, tau);
    const detail::Problem p = detail::make_problem(rho, K, mode, tau);
    detail::Cursor root;
    root.k.assign(rho.size(), 0);
    root.budget = K;
    detail::Best best;
    detail::descend(p, root, best);
    return detail::finish(p, best);
}

std::vector<double> map_indices_serial(std::size_t count, const std::function<double(std::size_t)>& fn) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
}

}  // namespace birkhoff::kernels

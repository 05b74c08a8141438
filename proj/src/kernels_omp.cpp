#include "birkhoff/error.hpp"
#include "birkhoff/kernels.hpp"
#include "divisor_scan_impl.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace birkhoff::kernels {

void set_thread_count(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

DivisorScan divisor_scan_omp(std::span<const double> rho, int K, ScanMode mode, double tau) {
    detail::validate(rho, K, tau);
    const detail::Problem p = detail::make_problem(rho, K, mode, tau);
    std::vector<detail::Cursor> tasks = detail::split_tasks(p);
    const auto count = static_cast<std::ptrdiff_t>(tasks.size());
    std::vector<detail::Best> partial(tasks.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t t = 0; t < count; ++t) {
        detail::descend(p, tasks[static_cast<std::size_t>(t)], partial[static_cast<std::size_t>(t)]);
    }

    // Reduction in task order; the (divisor, k) total order makes it
    // independent of scheduling anyway.
    detail::Best best;
    for (const auto& b : partial) best.merge(b);
    return detail::finish(p, best);
}

std::vector<double> map_indices_omp(std::size_t count, const std::function<double(std::size_t)>& fn) {
    std::vector<double> out(count);
    std::exception_ptr failure;
    const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(birkhoff_map_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace birkhoff::kernels

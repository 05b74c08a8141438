#pragma once

#include "birkhoff/polynomial.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace birkhoff {

// <j> = max(1, |j|)
constexpr std::int64_t bracket(std::int64_t j) noexcept { return j < 1 ? 1 : j; }

std::int64_t ipow(std::int64_t base, int exp);

// Finite-support vector in Z^infinity with the eta-weighted norm
// |k|_eta = sum_j <j>^eta |k_j|. Entries are kept sorted by index and nonzero.
class LatticeVector {
public:
    using Entry = std::pair<std::size_t, std::int64_t>;

    LatticeVector() = default;
    LatticeVector(std::vector<Entry> entries, int eta);
    // From a dense prefix k_0, k_1, ...; zeros are dropped.
    static LatticeVector from_dense(const std::vector<std::int64_t>& dense, int eta);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    int eta() const noexcept { return eta_; }
    bool is_zero() const noexcept { return entries_.empty(); }
    std::int64_t eta_norm() const;
    std::int64_t at(std::size_t j) const;
    // Largest index in the support; 0 for the zero vector.
    std::size_t max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().first; }
    std::vector<std::int64_t> dense() const;

    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

private:
    std::vector<Entry> entries_;
    int eta_ = 2;
};

inline constexpr int kMaxShellNu = 30;

// Every k with |k|_eta = nu, ordered by (max support index, dense entries
// lexicographically). Support indices satisfy j <= nu^{1/eta}.
std::vector<LatticeVector> enumerate_eta_shell(int eta, int nu);

// |shell(eta, nu)| by a generating-function recurrence, no enumeration and no guard.
BigInt shell_count(int eta, int nu);

// prod_{j in support} (1 + |k_j|^mu <j>^mu)
double theta_product(const LatticeVector& k, double mu);

// sup of theta_product(k, eta) over 0 < |k|_eta <= N, by shell enumeration.
double sup_theta_over_ball(int eta, int N);

// Number of k in Z^dim with ||k||_1 = r exactly.
double l1_sphere_count(std::size_t dim, std::int64_t r);

}  // namespace birkhoff

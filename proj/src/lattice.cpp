#include "birkhoff/lattice.hpp"

#include "birkhoff/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace birkhoff {

std::int64_t ipow(std::int64_t base, int exp) {
    if (exp < 0) throw Error(ErrorKind::invalid_argument, "ipow with negative exponent");
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(r, base, &r)) throw Error(ErrorKind::cap_exceeded, "integer power overflows");
    }
    return r;
}

LatticeVector::LatticeVector(std::vector<Entry> entries, int eta) : eta_(eta) {
    std::sort(entries.begin(), entries.end());
    for (const auto& [j, v] : entries) {
        if (v == 0) continue;
        if (!entries_.empty() && entries_.back().first == j) {
            throw Error(ErrorKind::invalid_argument, "duplicate index " + std::to_string(j) + " in lattice vector");
        }
        entries_.emplace_back(j, v);
    }
}

LatticeVector LatticeVector::from_dense(const std::vector<std::int64_t>& dense, int eta) {
    std::vector<Entry> e;
    for (std::size_t j = 0; j < dense.size(); ++j) {
        if (dense[j] != 0) e.emplace_back(j, dense[j]);
    }
    return LatticeVector(std::move(e), eta);
}

std::int64_t LatticeVector::eta_norm() const {
    std::int64_t s = 0;
    for (const auto& [j, v] : entries_) s += ipow(bracket(static_cast<std::int64_t>(j)), eta_) * std::abs(v);
    return s;
}

std::int64_t LatticeVector::at(std::size_t j) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{j, std::numeric_limits<std::int64_t>::min()});
    return it != entries_.end() && it->first == j ? it->second : 0;
}

std::vector<std::int64_t> LatticeVector::dense() const {
    if (entries_.empty()) return {};
    std::vector<std::int64_t> d(max_index() + 1, 0);
    for (const auto& [j, v] : entries_) d[j] = v;
    return d;
}

namespace {

void check_eta(int eta) {
    if (eta < 2) throw Error(ErrorKind::invalid_argument, "eta must be at least 2");
}

// Largest j with <j>^eta <= nu.
std::size_t max_support_index(int eta, int nu) {
    std::size_t j = 1;
    while (ipow(static_cast<std::int64_t>(j + 1), eta) <= nu) ++j;
    return j;
}

void fill_shell(const std::vector<std::int64_t>& weight, std::size_t j, std::int64_t remaining,
                std::vector<std::int64_t>& k, int eta, std::vector<LatticeVector>& out) {
    if (j == weight.size()) {
        if (remaining == 0) out.push_back(LatticeVector::from_dense(k, eta));
        return;
    }
    const std::int64_t top = remaining / weight[j];
    for (std::int64_t v = -top; v <= top; ++v) {
        k[j] = v;
        fill_shell(weight, j + 1, remaining - weight[j] * std::abs(v), k, eta, out);
    }
    k[j] = 0;
}

}  // namespace

std::vector<LatticeVector> enumerate_eta_shell(int eta, int nu) {
    check_eta(eta);
    if (nu > kMaxShellNu) {
        throw Error(ErrorKind::guard_exceeded, "shell enumeration is capped at nu = " + std::to_string(kMaxShellNu));
    }
    if (nu <= 0) return {};
    const std::size_t J = max_support_index(eta, nu);
    std::vector<std::int64_t> weight(J + 1);
    for (std::size_t j = 0; j <= J; ++j) weight[j] = ipow(bracket(static_cast<std::int64_t>(j)), eta);
    std::vector<std::int64_t> k(J + 1, 0);
    std::vector<LatticeVector> out;
    fill_shell(weight, 0, nu, k, eta, out);
    std::sort(out.begin(), out.end(), [](const LatticeVector& a, const LatticeVector& b) {
        if (a.max_index() != b.max_index()) return a.max_index() < b.max_index();
        const auto da = a.dense();
        const auto db = b.dense();
        return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
    });
    return out;
}

BigInt shell_count(int eta, int nu) {
    check_eta(eta);
    if (nu <= 0) return 0;
    // Coefficients of prod_j (1 + 2 sum_{m >= 1} x^{m <j>^eta}) up to x^nu.
    std::vector<BigInt> c(static_cast<std::size_t>(nu) + 1, 0);
    c[0] = 1;
    const std::size_t J = max_support_index(eta, nu);
    for (std::size_t j = 0; j <= J; ++j) {
        const auto w = static_cast<std::size_t>(ipow(bracket(static_cast<std::int64_t>(j)), eta));
        std::vector<BigInt> next = c;
        for (std::size_t s = 0; s <= static_cast<std::size_t>(nu); ++s) {
            if (c[s] == 0) continue;
            for (std::size_t t = s + w; t <= static_cast<std::size_t>(nu); t += w) next[t] += 2 * c[s];
        }
        c = std::move(next);
    }
    return c[static_cast<std::size_t>(nu)];
}

double theta_product(const LatticeVector& k, double mu) {
    double p = 1.0;
    for (const auto& [j, v] : k.entries()) {
        p *= 1.0 + std::pow(static_cast<double>(std::abs(v)), mu) *
                       std::pow(static_cast<double>(bracket(static_cast<std::int64_t>(j))), mu);
    }
    return p;
}

double sup_theta_over_ball(int eta, int N) {
    check_eta(eta);
    if (N < 1) throw Error(ErrorKind::invalid_argument, "sup_theta_over_ball needs N >= 1");
    double best = 0.0;
    for (int nu = 1; nu <= N; ++nu) {
        for (const auto& k : enumerate_eta_shell(eta, nu)) best = std::max(best, theta_product(k, eta));
    }
    return best;
}

double l1_sphere_count(std::size_t dim, std::int64_t r) {
    if (r < 0) return 0.0;
    if (r == 0) return 1.0;
    // sum_i 2^i C(dim, i) C(r-1, i-1)
    double total = 0.0;
    double c_dim = static_cast<double>(dim);  // C(dim, 1)
    double c_r = 1.0;                          // C(r-1, 0)
    double pow2 = 2.0;
    for (std::size_t i = 1; i <= dim && static_cast<std::int64_t>(i) <= r; ++i) {
        total += pow2 * c_dim * c_r;
        c_dim *= static_cast<double>(dim - i) / static_cast<double>(i + 1);
        c_r *= static_cast<double>(r - static_cast<std::int64_t>(i)) / static_cast<double>(i);
        pow2 *= 2.0;
    }
    return total;
}

}  // namespace birkhoff

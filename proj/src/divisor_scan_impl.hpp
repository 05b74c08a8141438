#pragma once

// Shared machinery of the serial and OpenMP divisor scans.

#include "birkhoff/rotations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace birkhoff::kernels::detail {

struct Best {
    double divisor = std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> k;
    std::int64_t n = 0;
    double alpha = std::numeric_limits<double>::infinity();
    std::uint64_t candidates = 0;
    std::uint64_t trivial = 0;

    // Total order on (divisor, k lexicographic): merging partial results in
    // any order gives the same winner.
    void offer(double d, const std::vector<std::int64_t>& cand, std::int64_t cand_n) {
        if (d < divisor || (d == divisor && (k.empty() || std::lexicographical_compare(cand.begin(), cand.end(),
                                                                                       k.begin(), k.end())))) {
            divisor = d;
            k = cand;
            n = cand_n;
        }
    }

    void merge(const Best& other) {
        if (!other.k.empty()) offer(other.divisor, other.k, other.n);
        alpha = std::min(alpha, other.alpha);
        candidates += other.candidates;
        trivial += other.trivial;
    }
};

struct Problem {
    std::vector<double> rho;      // effective frequencies (integer coords zeroed in discrete mode)
    std::vector<bool> trivial;    // coordinate acts as identity on the torus
    int K = 0;
    ScanMode mode = ScanMode::discrete;
    double tau = 1.0;
};

inline Problem make_problem(std::span<const double> rho, int K, ScanMode mode, double tau) {
    Problem p;
    p.rho.assign(rho.begin(), rho.end());
    p.trivial.assign(rho.size(), false);
    p.K = K;
    p.mode = mode;
    p.tau = tau;
    if (mode == ScanMode::discrete) {
        for (std::size_t i = 0; i < rho.size(); ++i) {
            if (std::isfinite(rho[i]) && rho[i] == std::floor(rho[i])) {
                p.trivial[i] = true;
                p.rho[i] = 0.0;
            }
        }
    }
    return p;
}

// Partial state of one branch of the enumeration.
struct Cursor {
    std::vector<std::int64_t> k;
    std::size_t depth = 0;
    int budget = 0;           // remaining l1 norm
    double dot = 0.0;         // sum_{i < depth} k_i rho_i, accumulated in index order
    bool committed = false;   // a nonzero (hence positive) leading entry has been placed
    bool nontrivial = false;  // support touches a non-identity coordinate
};

inline void visit_leaf(const Problem& p, const Cursor& c, Best& best) {
    if (!c.committed) return;  // origin
    if (p.mode == ScanMode::discrete && !c.nontrivial) {
        ++best.trivial;
        return;
    }
    ++best.candidates;
    double d;
    std::int64_t n = 0;
    if (p.mode == ScanMode::discrete) {
        const double r = std::round(c.dot);  // half away from zero
        d = std::abs(c.dot - r);
        n = static_cast<std::int64_t>(r);
    } else {
        d = std::abs(c.dot);
    }
    const int norm = p.K - c.budget;
    const double alpha = d * std::pow(static_cast<double>(norm), p.tau);
    best.alpha = std::min(best.alpha, alpha);
    if (d <= best.divisor) best.offer(d, c.k, n);
}

inline void descend(const Problem& p, Cursor& c, Best& best) {
    if (c.depth == p.rho.size()) {
        visit_leaf(p, c, best);
        return;
    }
    const std::size_t i = c.depth;
    const int budget = c.budget;
    const double dot = c.dot;
    const bool committed = c.committed;
    const bool nontrivial = c.nontrivial;
    const int lo = committed ? -budget : 0;
    for (int v = lo; v <= budget; ++v) {
        c.k[i] = v;
        c.depth = i + 1;
        c.budget = budget - std::abs(v);
        c.dot = dot + static_cast<double>(v) * p.rho[i];
        c.committed = committed || v != 0;
        c.nontrivial = nontrivial || (v != 0 && !p.trivial[i]);
        descend(p, c, best);
    }
    c.k[i] = 0;
    c.depth = i;
    c.budget = budget;
    c.dot = dot;
    c.committed = committed;
    c.nontrivial = nontrivial;
}

// Prefix cursors of depth min(2, dim) that partition the half lattice.
inline std::vector<Cursor> split_tasks(const Problem& p) {
    Cursor root;
    root.k.assign(p.rho.size(), 0);
    root.budget = p.K;
    std::vector<Cursor> frontier{root};
    const std::size_t levels = std::min<std::size_t>(2, p.rho.size());
    for (std::size_t level = 0; level < levels; ++level) {
        std::vector<Cursor> next_frontier;
        for (const Cursor& c : frontier) {
            const int lo = c.committed ? -c.budget : 0;
            for (int v = lo; v <= c.budget; ++v) {
                Cursor n = c;
                n.k[level] = v;
                n.depth = level + 1;
                n.budget = c.budget - std::abs(v);
                n.dot = c.dot + static_cast<double>(v) * p.rho[level];
                n.committed = c.committed || v != 0;
                n.nontrivial = c.nontrivial || (v != 0 && !p.trivial[level]);
                next_frontier.push_back(std::move(n));
            }
        }
        frontier = std::move(next_frontier);
    }
    return frontier;
}

DivisorScan finish(const Problem& p, const Best& best);
void validate(std::span<const double> rho, int K, double tau);

}  // namespace birkhoff::kernels::detail

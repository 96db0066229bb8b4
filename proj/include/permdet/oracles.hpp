#pragma once

// Brute-force reference computations. Nothing here shares a code path with the
// determinant expansion in engine.hpp except the graph and cycle primitives.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cycles.hpp"
#include "determinant.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "exact_int.hpp"
#include "graph.hpp"

namespace permdet {

struct OracleLimits {
    std::size_t ryser_max_n = 30;
    std::size_t naive_max_n = 10;
    std::size_t sachs_max_n = 14;
    std::size_t sachs_max_count = 10'000'000;
    std::size_t theorem2_max_n = 14;
    std::size_t cycle_cap = default_cycle_cap;
};

namespace detail {

inline void guard(std::size_t n, std::size_t limit, const char* what) {
    if (n > limit)
        throw GuardExceeded(std::string(what) + ": size " + std::to_string(n) + " exceeds guard " +
                            std::to_string(limit));
}

inline ExactInt from_int128(__int128 v) {
    bool negative = v < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    ExactInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return negative ? ExactInt(-r) : r;
}

// Gray-code walk over column subsets; row sums are updated by one column per step.
template <typename Acc>
Acc ryser_sum(const BinaryMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::int64_t> row_sum(n, 0);
    Acc total = 0;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
        const int j = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << j;
        const std::int64_t delta = (gray & bit) ? -1 : 1;
        gray ^= bit;
        for (std::size_t i = 0; i < n; ++i) row_sum[i] += delta * m(i, static_cast<std::size_t>(j));
        Acc prod = 1;
        for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= Acc(row_sum[i]);
        if (std::popcount(gray) % 2 == 0)
            total += prod;
        else
            total -= prod;
    }
    return total;
}

}  // namespace detail

/// per(m) by Ryser's inclusion-exclusion, O(2^n n).
inline ExactInt per_ryser(const BinaryMatrix& m, std::size_t max_n = OracleLimits{}.ryser_max_n) {
    if (!m.square()) throw std::invalid_argument("permanent of a non-square matrix");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0 && m(i, j) != 1) throw std::invalid_argument("per_ryser expects a 0/1 matrix");
    const std::size_t n = m.rows();
    detail::guard(n, std::min<std::size_t>(max_n, 62), "per_ryser");
    if (n == 0) return 1;
    // n^n * 2^n stays inside 127 bits up to n = 20
    ExactInt sum = n <= 20 ? detail::from_int128(detail::ryser_sum<__int128>(m)) : detail::ryser_sum<ExactInt>(m);
    return n % 2 == 0 ? sum : ExactInt(-sum);
}

/// Sum over all n! permutations; `sign_weighted` turns it into the Leibniz determinant.
template <typename T>
ExactInt permutation_sum(const Matrix<T>& m, bool sign_weighted, std::size_t max_n) {
    if (!m.square()) throw std::invalid_argument("permutation sum of a non-square matrix");
    const std::size_t n = m.rows();
    detail::guard(n, max_n, "permutation expansion");
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    ExactInt total = 0;
    do {
        ExactInt prod = 1;
        for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= ExactInt(m(i, sigma[i]));
        if (prod == 0) continue;
        if (sign_weighted) {
            std::size_t inversions = 0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b) inversions += sigma[a] > sigma[b];
            if (inversions % 2) prod = -prod;
        }
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

template <typename T>
ExactInt per_naive(const Matrix<T>& m, std::size_t max_n = OracleLimits{}.naive_max_n) {
    return permutation_sum(m, false, max_n);
}

template <typename T>
ExactInt det_naive(const Matrix<T>& m, std::size_t max_n = OracleLimits{}.naive_max_n) {
    return permutation_sum(m, true, max_n);
}

/// Subgraph whose components are single edges (K2) or cycles of the host graph.
struct SachsSubgraph {
    std::vector<Graph::Edge> edge_components;
    std::vector<Cycle> cycle_components;

    std::size_t r() const noexcept { return edge_components.size(); }
    std::size_t c() const noexcept { return cycle_components.size(); }
    std::size_t p() const noexcept { return c() + r(); }
    std::size_t s() const noexcept {
        return static_cast<std::size_t>(std::count_if(cycle_components.begin(), cycle_components.end(),
                                                      [](const Cycle& cy) { return cy.length() % 4 == 0; }));
    }
    std::size_t t() const noexcept {
        return static_cast<std::size_t>(std::count_if(cycle_components.begin(), cycle_components.end(),
                                                      [](const Cycle& cy) { return cy.length() % 4 == 2; }));
    }
    /// Vertices covered.
    std::size_t i() const noexcept {
        std::size_t v = 2 * r();
        for (const auto& cy : cycle_components) v += cy.length();
        return v;
    }
    VertexSet vertex_set() const {
        VertexSet out;
        for (auto [a, b] : edge_components) {
            out.insert(a);
            out.insert(b);
        }
        for (const auto& cy : cycle_components) out |= cy.vertex_set;
        return out;
    }
};

struct SachsOptions {
    std::size_t max_count = OracleLimits{}.sachs_max_count;
    std::size_t cycle_cap = default_cycle_cap;
};

namespace detail {

/// Vertices are decided in increasing order: each uncovered vertex either stays out of
/// the subgraph or becomes the smallest vertex of a new component. That makes every
/// Sachs subgraph reachable by exactly one branch.
class SachsSearch {
public:
    SachsSearch(const Graph& g, std::size_t target, const SachsOptions& opts)
        : g_(g), target_(target), opts_(opts), by_min_(static_cast<std::size_t>(g.order())) {
        cycles_ = enumerate_cycles(g, CycleOptions{std::nullopt, opts.cycle_cap});
        for (auto [u, v] : g.edges()) {
            VertexSet s{u, v};
            by_min_[static_cast<std::size_t>(u)].push_back({s, -1 - static_cast<long>(edge_index_.size())});
            edge_index_.push_back({u, v});
        }
        for (std::size_t k = 0; k < cycles_.size(); ++k)
            by_min_[static_cast<std::size_t>(cycles_[k].vertices.front())].push_back(
                {cycles_[k].vertex_set, static_cast<long>(k)});
    }

    template <typename Visitor>
    std::size_t run(Visitor&& visit) {
        const auto n = static_cast<std::size_t>(g_.order());
        if (target_ > n) return 0;
        std::size_t count = 0;
        std::vector<long> chosen;
        VertexSet used;
        auto rec = [&](auto&& self, int v, std::size_t covered, std::size_t skipped) -> void {
            if (covered == target_) {
                if (++count > opts_.max_count)
                    throw GuardExceeded("Sachs enumeration exceeded " + std::to_string(opts_.max_count) + " subgraphs");
                visit(materialize(chosen));
                return;
            }
            if (static_cast<std::size_t>(v) == n) return;
            if (used.contains(v)) {
                self(self, v + 1, covered, skipped);
                return;
            }
            for (const auto& comp : by_min_[static_cast<std::size_t>(v)]) {
                const std::size_t k = comp.vertices.size();
                if (covered + k > target_ || comp.vertices.intersects(used)) continue;
                VertexSet saved = used;
                used |= comp.vertices;
                chosen.push_back(comp.id);
                self(self, v + 1, covered + k, skipped);
                chosen.pop_back();
                used = saved;
            }
            if (skipped + 1 <= n - target_) {
                used.insert(v);
                self(self, v + 1, covered, skipped + 1);
                used.erase(v);
            }
        };
        rec(rec, 0, 0, 0);
        return count;
    }

private:
    struct Component {
        VertexSet vertices;
        long id;  // >= 0: cycle index; < 0: -1 - edge index
    };

    SachsSubgraph materialize(const std::vector<long>& chosen) const {
        SachsSubgraph s;
        for (long id : chosen) {
            if (id >= 0)
                s.cycle_components.push_back(cycles_[static_cast<std::size_t>(id)]);
            else
                s.edge_components.push_back(edge_index_[static_cast<std::size_t>(-1 - id)]);
        }
        return s;
    }

    const Graph& g_;
    std::size_t target_;
    SachsOptions opts_;
    std::vector<Cycle> cycles_;
    std::vector<Graph::Edge> edge_index_;
    std::vector<std::vector<Component>> by_min_;
};

}  // namespace detail

/// Calls visit(SachsSubgraph) for every Sachs subgraph on exactly i vertices; returns the count.
template <typename Visitor>
std::size_t for_each_sachs(const Graph& g, std::size_t i, Visitor&& visit, const SachsOptions& opts = {}) {
    return detail::SachsSearch(g, i, opts).run(visit);
}

/// All Sachs subgraphs on exactly i vertices. Odd i yields none for bipartite hosts;
/// i = 0 yields the single empty subgraph.
inline std::vector<SachsSubgraph> enumerate_sachs(const Graph& g, std::size_t i, const SachsOptions& opts = {}) {
    std::vector<SachsSubgraph> out;
    for_each_sachs(g, i, [&](SachsSubgraph s) { out.push_back(std::move(s)); }, opts);
    return out;
}

namespace detail {

inline ExactInt signed_unit(bool negative) { return negative ? ExactInt(-1) : ExactInt(1); }

inline ExactInt pow2(std::size_t k) {
    ExactInt r = 1;
    r <<= k;
    return r;
}

}  // namespace detail

/// det(A(g)) = sum over spanning Sachs subgraphs U of (-1)^(n - p(U)) 2^c(U).
inline ExactInt det_via_sachs(const Graph& g, const OracleLimits& limits = {}) {
    const auto n = static_cast<std::size_t>(g.order());
    detail::guard(n, limits.sachs_max_n, "det_via_sachs");
    ExactInt total = 0;
    for_each_sachs(g, n, [&](const SachsSubgraph& u) {
        total += detail::signed_unit((n - u.p()) % 2 == 1) * detail::pow2(u.c());
    }, SachsOptions{limits.sachs_max_count, limits.cycle_cap});
    return total;
}

/// per(A(g)) = sum over spanning Sachs subgraphs of 2^c(U), cross-checked against the
/// grouped form sum 2^(s+t) of a bipartite host.
inline ExactInt per_via_sachs(const Graph& g, const OracleLimits& limits = {}) {
    bipartition(g);
    const auto n = static_cast<std::size_t>(g.order());
    detail::guard(n, limits.sachs_max_n, "per_via_sachs");
    ExactInt by_cycles = 0;
    ExactInt grouped = 0;
    for_each_sachs(g, n, [&](const SachsSubgraph& u) {
        by_cycles += detail::pow2(u.c());
        grouped += detail::pow2(u.s() + u.t());
    }, SachsOptions{limits.sachs_max_count, limits.cycle_cap});
    if (by_cycles != grouped) throw std::logic_error("per_via_sachs: 2^c and 2^(s+t) sums disagree");
    return by_cycles;
}

/// Every spanning Sachs subgraph of an even-order bipartite graph satisfies
/// n/2 = t + r (mod 2), so det = sum (-1)^(s + n/2) 2^(s+t). Checks both the per-subgraph
/// congruence and the regrouped sum against the plain Sachs sum and against Bareiss.
/// An odd-order graph passes iff it has no spanning Sachs subgraph and det = 0.
inline bool check_parity_identity(const Graph& g, const OracleLimits& limits = {}) {
    bipartition(g);
    const auto n = static_cast<std::size_t>(g.order());
    detail::guard(n, limits.sachs_max_n, "check_parity_identity");
    bool congruent = true;
    ExactInt plain = 0;
    ExactInt regrouped = 0;
    const std::size_t spanning = for_each_sachs(g, n, [&](const SachsSubgraph& u) {
        congruent = congruent && (n / 2) % 2 == (u.t() + u.r()) % 2;
        plain += detail::signed_unit((n - u.p()) % 2 == 1) * detail::pow2(u.c());
        regrouped += detail::signed_unit((u.s() + n / 2) % 2 == 1) * detail::pow2(u.s() + u.t());
    }, SachsOptions{limits.sachs_max_count, limits.cycle_cap});
    const ExactInt bareiss = determinant(g.adjacency());
    if (n % 2 != 0) return spanning == 0 && bareiss == 0;
    return congruent && plain == regrouped && regrouped == bareiss;
}

/// sum over 4k-cycles R of det(g \ R), computed by Bareiss, against
/// sum over R and spanning Sachs U containing R of (-1)^(s-1+n/2) 2^(s+t-1).
inline bool check_removal_identity(const Graph& g, const OracleLimits& limits = {}) {
    bipartition(g);
    const auto n = static_cast<std::size_t>(g.order());
    detail::guard(n, limits.sachs_max_n, "check_removal_identity");
    auto c4k = four_k_cycles(enumerate_cycles(g, CycleOptions{std::nullopt, limits.cycle_cap}));

    DetCache cache(g);
    ExactInt lhs = 0;
    for (const auto& r : c4k) lhs += det_after_removal(g, r.vertex_set, cache);
    if (n % 2 != 0) return lhs == 0;

    // each spanning U contributes once per 4k-cycle component it contains
    ExactInt rhs = 0;
    for_each_sachs(g, n, [&](const SachsSubgraph& u) {
        const std::size_t s = u.s();
        if (s == 0) return;
        ExactInt term = detail::signed_unit((s - 1 + n / 2) % 2 == 1) * detail::pow2(s + u.t() - 1);
        rhs += ExactInt(s) * term;
    }, SachsOptions{limits.sachs_max_count, limits.cycle_cap});
    return lhs == rhs;
}

struct Theorem2Result {
    bool holds_for_all = true;
    std::optional<VertexSet> violating_subset;  // vertices of g, 0-based
};

/// For every even-size vertex subset S (S = {} included), compares per(G[S]) by Ryser
/// against the expansion on G[S] truncated at family size m. The first violating subset
/// in increasing bitmask order is reported.
inline Theorem2Result verify_theorem2(const Graph& g, std::size_t m, const OracleLimits& limits = {}) {
    bipartition(g);
    const auto n = static_cast<std::size_t>(g.order());
    detail::guard(n, std::min<std::size_t>(limits.theorem2_max_n, 30), "verify_theorem2");
    const CycleOptions cycle_opts{std::nullopt, limits.cycle_cap};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (std::popcount(mask) % 2 != 0) continue;
        VertexSet keep;
        for (std::size_t v = 0; v < n; ++v)
            if ((mask >> v) & 1U) keep.insert(static_cast<int>(v));
        Graph sub = induced_subgraph(g, keep);
        if (per_ryser(sub.adjacency(), limits.ryser_max_n) != truncated_expansion(sub, m, cycle_opts))
            return Theorem2Result{false, keep};
    }
    return {};
}

}  // namespace permdet

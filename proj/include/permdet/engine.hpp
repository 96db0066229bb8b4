#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

#include "cycles.hpp"
#include "determinant.hpp"
#include "errors.hpp"
#include "exact_int.hpp"
#include "graph.hpp"

namespace permdet {

enum class PermanentPath { odd_shortcut, corollary_fast_path, theorem1_expansion };

inline std::string_view to_string(PermanentPath p) {
    switch (p) {
        case PermanentPath::odd_shortcut: return "odd_shortcut";
        case PermanentPath::corollary_fast_path: return "corollary_fast_path";
        case PermanentPath::theorem1_expansion: return "theorem1_expansion";
    }
    return "?";
}

/// One vertex-disjoint 4k-cycle family and its contribution 4^z * det(G \ covered).
struct FamilyTerm {
    std::vector<std::size_t> cycle_indices;  // into PermanentReport::four_k_cycles
    VertexSet covered;
    ExactInt det;
    ExactInt coefficient;  // 4^z

    std::size_t z() const noexcept { return cycle_indices.size(); }
};

/// Terms of one family size z, in both the unordered and the ordered-tuple reading:
/// ordered_sum = z! * unordered_sum, and ordered_sum * 4^z / z! = contribution.
struct SizeSummary {
    std::size_t z = 0;
    std::size_t families = 0;
    ExactInt unordered_sum;
    ExactInt ordered_sum;
    ExactInt coefficient;
    ExactInt contribution;
};

struct PermanentReport {
    ExactInt value;
    int n = 0;
    PermanentPath path = PermanentPath::odd_shortcut;
    // The fields below are left empty on the odd shortcut, which enumerates nothing.
    std::optional<std::size_t> m;
    std::optional<std::size_t> num_cycles;
    std::vector<Cycle> four_k_cycles;
    std::optional<std::size_t> num_4k_plus_2_cycles;
    std::vector<FamilyTerm> terms;
    std::size_t cache_hits = 0;
    std::size_t cache_misses = 0;

    std::size_t num_4k_cycles() const noexcept { return four_k_cycles.size(); }

    /// (-1)^(n/2) for even n.
    int sign() const noexcept { return (n / 2) % 2 == 0 ? 1 : -1; }

    std::vector<SizeSummary> by_size() const {
        std::vector<SizeSummary> out;
        for (const auto& t : terms) {
            while (out.size() <= t.z()) {
                SizeSummary s;
                s.z = out.size();
                s.coefficient = pow4(static_cast<unsigned>(s.z));
                out.push_back(s);
            }
            auto& s = out[t.z()];
            ++s.families;
            s.unordered_sum += t.det;
        }
        for (auto& s : out) {
            s.ordered_sum = factorial(static_cast<unsigned>(s.z)) * s.unordered_sum;
            s.contribution = s.coefficient * s.unordered_sum;
        }
        return out;
    }
};

struct EngineOptions {
    CycleOptions cycles;
    /// 0 means std::thread::hardware_concurrency().
    unsigned threads = 1;
};

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            try {
                for (std::size_t i = next++; i < count; i = next++) body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    workers.clear();
    if (failure) std::rethrow_exception(failure);
}

inline void check_nonnegative(const PermanentReport& r) {
    if (r.value < 0) throw std::logic_error("negative permanent " + r.value.str() + ": engine invariant violated");
}

inline PermanentReport expand(const Graph& g, std::vector<Cycle> cycles, const EngineOptions& opts) {
    PermanentReport r;
    r.n = g.order();
    r.path = PermanentPath::theorem1_expansion;
    r.num_cycles = cycles.size();
    r.four_k_cycles = four_k_cycles(cycles);
    r.num_4k_plus_2_cycles = cycles.size() - r.four_k_cycles.size();

    auto families = enumerate_disjoint_families(r.four_k_cycles);
    r.m = max_disjoint(families);

    DetCache cache(g);
    r.terms.resize(families.size());
    parallel_for(families.size(), opts.threads, [&](std::size_t i) {
        auto& t = r.terms[i];
        t.cycle_indices = families[i].cycle_indices;
        t.covered = families[i].covered;
        t.det = cache.get(t.covered);
        t.coefficient = pow4(static_cast<unsigned>(t.z()));
    });

    ExactInt sum = 0;
    for (const auto& t : r.terms) sum += t.coefficient * t.det;
    r.value = r.sign() * sum;
    r.cache_hits = cache.hits();
    r.cache_misses = cache.misses();
    check_nonnegative(r);
    return r;
}

inline PermanentReport odd_report(const Graph& g) {
    PermanentReport r;
    r.n = g.order();
    r.value = 0;
    r.path = PermanentPath::odd_shortcut;
    return r;
}

}  // namespace detail

/// per(A(g)) = (-1)^(n/2) * sum over unordered vertex-disjoint 4k-cycle families F of
/// 4^|F| * det(G \ V(F)), the empty family included; 0 for odd n.
inline PermanentReport permanent_theorem1(const Graph& g, const EngineOptions& opts = {}) {
    bipartition(g);
    if (g.order() % 2 != 0) return detail::odd_report(g);
    return detail::expand(g, enumerate_cycles(g, opts.cycles), opts);
}

/// The expansion with families restricted to size <= max_z, for any even-order bipartite
/// graph. Equals per(g) exactly when g has no max_z + 1 vertex-disjoint 4k-cycles.
inline ExactInt truncated_expansion(const Graph& g, std::size_t max_z, const CycleOptions& opts = {}) {
    if (g.order() % 2 != 0) throw std::invalid_argument("truncated_expansion needs an even vertex count");
    auto c4k = four_k_cycles(enumerate_cycles(g, opts));
    ExactInt sum = 0;
    for_each_disjoint_family(c4k, [&](const DisjointFamily& f) {
        if (f.size() <= max_z) sum += pow4(static_cast<unsigned>(f.size())) * det_after_removal(g, f.covered);
    });
    return (g.order() / 2) % 2 == 0 ? sum : ExactInt(-sum);
}

/// Same value as permanent_theorem1, but a graph with no 4k-cycles skips the family
/// expansion: per = (-1)^(n/2) det.
inline PermanentReport permanent_auto(const Graph& g, const EngineOptions& opts = {}) {
    bipartition(g);
    if (g.order() % 2 != 0) return detail::odd_report(g);
    auto cycles = enumerate_cycles(g, opts.cycles);
    if (std::any_of(cycles.begin(), cycles.end(), [](const Cycle& c) { return c.is_4k(); }))
        return detail::expand(g, std::move(cycles), opts);

    PermanentReport r;
    r.n = g.order();
    r.path = PermanentPath::corollary_fast_path;
    r.m = 0;
    r.num_cycles = cycles.size();
    r.num_4k_plus_2_cycles = cycles.size();
    ExactInt det = determinant(g.adjacency());
    r.terms.push_back(FamilyTerm{{}, VertexSet{}, det, ExactInt(1)});
    r.value = r.sign() * det;
    r.cache_misses = 1;
    detail::check_nonnegative(r);
    return r;
}

/// Number of perfect matchings of the bipartite graph with biadjacency `b`, i.e. per(b).
///
/// A symmetric, hollow `b` that is itself the adjacency matrix of a bipartite graph is
/// handed to the engine directly. Anything else goes through the graph G_b on p+q
/// vertices, whose adjacency [[0,b],[b^T,0]] has permanent per(b)^2.
inline ExactInt count_perfect_matchings(const BinaryMatrix& b, const EngineOptions& opts = {}) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (b(i, j) != 0 && b(i, j) != 1) throw std::invalid_argument("biadjacency entry outside {0,1}");
    if (b.rows() != b.cols()) return 0;

    bool hollow_symmetric = true;
    for (std::size_t i = 0; i < b.rows() && hollow_symmetric; ++i)
        for (std::size_t j = 0; j <= i && hollow_symmetric; ++j)
            hollow_symmetric = b(i, j) == b(j, i) && (i != j || b(i, i) == 0);
    if (hollow_symmetric) {
        Graph direct = Graph::from_adjacency(b);
        if (is_bipartite(direct)) return permanent_auto(direct, opts).value;
    }

    ExactInt squared = permanent_auto(graph_from_biadjacency(b), opts).value;
    auto root = exact_sqrt(squared);
    if (!root) throw NotAPerfectSquare("per(A(G_b)) = " + squared.str() + " is not a perfect square");
    return *root;
}

struct EfficiencyClass {
    bool is_cactus = true;
    std::optional<std::size_t> girth;
    int n = 0;
    std::size_t girth_cycles = 0;  // cycles of length == girth
    bool condition_holds = true;
};

/// Cactus structure plus the girth inequality g * (c + 2) > n + c(c-1)/2 + c, with g the
/// girth and c the number of shortest cycles. Acyclic graphs qualify trivially.
inline EfficiencyClass classify_efficient(const Graph& g, const CycleOptions& opts = {}) {
    bipartition(g);
    auto cycles = enumerate_cycles(g, opts);
    EfficiencyClass e;
    e.n = g.order();
    for (std::size_t i = 0; i < cycles.size() && e.is_cactus; ++i)
        for (std::size_t j = i + 1; j < cycles.size() && e.is_cactus; ++j)
            e.is_cactus = (cycles[i].vertex_set & cycles[j].vertex_set).size() <= 1;
    if (cycles.empty()) return e;

    e.girth = cycles.front().length();  // sorted by length
    e.girth_cycles = static_cast<std::size_t>(std::count_if(
        cycles.begin(), cycles.end(), [&](const Cycle& c) { return c.length() == *e.girth; }));
    const ExactInt c = e.girth_cycles;
    const ExactInt lhs = ExactInt(*e.girth) * (c + 2);
    const ExactInt rhs = ExactInt(e.n) + c * (c - 1) / 2 + c;
    e.condition_holds = e.is_cactus && lhs > rhs;
    return e;
}

}  // namespace permdet

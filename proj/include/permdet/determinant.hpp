#pragma once

#include <atomic>
#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "exact_int.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "vertex_set.hpp"

namespace permdet {

/// Fraction-free (Bareiss) elimination. Every intermediate is an exact leading minor,
/// so each division is exact. det of the 0x0 matrix is 1.
template <typename T>
T determinant(Matrix<T> m) {
    if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return T(1);
    T sign(1);
    T prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return T(0);
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

inline ExactInt determinant(const BinaryMatrix& m) { return determinant(m.cast<ExactInt>()); }

/// Memo of det(G \ removed) for one graph, keyed by the removed vertex set.
///
/// Safe for concurrent callers: lookups take a shared lock, the determinant itself is
/// computed unlocked, and the first writer for a key wins. Two racers on the same key
/// compute the same exact value, so which one lands is unobservable.
class DetCache {
public:
    explicit DetCache(Graph g) : graph_(std::move(g)) {}
    DetCache(const DetCache&) = delete;
    DetCache& operator=(const DetCache&) = delete;

    const Graph& graph() const noexcept { return graph_; }

    ExactInt get(const VertexSet& removed) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = entries_.find(removed); it != entries_.end()) {
                hits_.fetch_add(1, std::memory_order_relaxed);
                return it->second;
            }
        }
        misses_.fetch_add(1, std::memory_order_relaxed);
        ExactInt value = determinant(adjacency_after_removal(graph_, removed));
        std::unique_lock lock(mutex_);
        return entries_.try_emplace(removed, std::move(value)).first->second;
    }

    std::size_t hits() const noexcept { return hits_.load(std::memory_order_relaxed); }
    std::size_t misses() const noexcept { return misses_.load(std::memory_order_relaxed); }
    std::size_t entries() const {
        std::shared_lock lock(mutex_);
        return entries_.size();
    }

private:
    Graph graph_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<VertexSet, ExactInt> entries_;
    std::atomic<std::size_t> hits_{0};
    std::atomic<std::size_t> misses_{0};
};

/// det of the principal submatrix of A(g) on the vertices not in `removed`.
inline ExactInt det_after_removal(const Graph& g, const VertexSet& removed, DetCache& cache) {
    if (!(cache.graph() == g)) throw std::invalid_argument("DetCache belongs to a different graph");
    check_within(g, removed);
    return cache.get(removed);
}

inline ExactInt det_after_removal(const Graph& g, const VertexSet& removed) {
    return determinant(adjacency_after_removal(g, removed));
}

}  // namespace permdet

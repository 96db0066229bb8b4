#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "vertex_set.hpp"

namespace permdet {

/// Elementary cycle in canonical form: vertices[0] is the smallest vertex and
/// vertices[1] < vertices.back(), which quotients out rotation and reflection.
struct Cycle {
    std::vector<int> vertices;  // 0-based, traversal order
    VertexSet vertex_set;

    std::size_t length() const noexcept { return vertices.size(); }
    bool is_4k() const noexcept { return length() % 4 == 0; }

    std::vector<int> labels() const {
        std::vector<int> l(vertices);
        for (int& v : l) ++v;
        return l;
    }

    friend bool operator==(const Cycle& a, const Cycle& b) { return a.vertices == b.vertices; }
    /// (length, vertices) lexicographic.
    friend bool operator<(const Cycle& a, const Cycle& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.vertices < b.vertices;
    }
};

/// Rotates/reflects an arbitrary traversal into canonical form.
inline Cycle canonical_cycle(std::vector<int> walk) {
    auto it = std::min_element(walk.begin(), walk.end());
    std::rotate(walk.begin(), it, walk.end());
    if (walk.size() > 2 && walk[1] > walk.back()) std::reverse(walk.begin() + 1, walk.end());
    Cycle c{std::move(walk), {}};
    for (int v : c.vertices) c.vertex_set.insert(v);
    return c;
}

inline constexpr std::size_t default_cycle_cap = 1'000'000;

struct CycleOptions {
    std::optional<std::size_t> max_len;
    std::size_t cap = default_cycle_cap;
};

namespace detail {

/// Johnson's circuit search run on the symmetric digraph of an undirected graph.
/// Each undirected cycle appears twice (once per orientation) plus every edge as a
/// 2-circuit; only the orientation with path[1] < path.back() and length >= 3 is kept.
class CycleSearch {
public:
    CycleSearch(const Graph& g, const CycleOptions& opts) : g_(g), opts_(opts) {}

    std::vector<Cycle> run() {
        const int n = g_.order();
        for (s_ = 0; s_ < n; ++s_) {
            restrict_to_component();
            if (allowed_.size() < 3) continue;
            blocked_.assign(static_cast<std::size_t>(n), false);
            pending_.assign(static_cast<std::size_t>(n), {});
            if (opts_.max_len)
                bounded(s_);
            else
                circuit(s_);
        }
        std::sort(out_.begin(), out_.end());
        return std::move(out_);
    }

private:
    bool allowed(int v) const { return allowed_set_.contains(v); }

    // vertices >= s reachable from s through vertices >= s
    void restrict_to_component() {
        allowed_set_ = VertexSet{};
        allowed_.clear();
        std::vector<int> stack{s_};
        allowed_set_.insert(s_);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            allowed_.push_back(u);
            for (int w : g_.neighbors(u))
                if (w > s_ && !allowed_set_.contains(w)) {
                    allowed_set_.insert(w);
                    stack.push_back(w);
                }
        }
    }

    void emit() {
        if (path_.size() < 3 || path_[1] > path_.back()) return;
        if (out_.size() >= opts_.cap) throw CycleCapExceeded(opts_.cap);
        Cycle c{path_, {}};
        for (int v : path_) c.vertex_set.insert(v);
        out_.push_back(std::move(c));
    }

    void unblock(int u) {
        blocked_[static_cast<std::size_t>(u)] = false;
        auto& waiting = pending_[static_cast<std::size_t>(u)];
        while (!waiting.empty()) {
            int w = waiting.back();
            waiting.pop_back();
            if (blocked_[static_cast<std::size_t>(w)]) unblock(w);
        }
    }

    bool circuit(int v) {
        bool found = false;
        path_.push_back(v);
        blocked_[static_cast<std::size_t>(v)] = true;
        for (int w : g_.neighbors(v)) {
            if (!allowed(w)) continue;
            if (w == s_) {
                emit();
                found = true;
            } else if (!blocked_[static_cast<std::size_t>(w)] && circuit(w)) {
                found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (int w : g_.neighbors(v)) {
                if (!allowed(w)) continue;
                auto& waiting = pending_[static_cast<std::size_t>(w)];
                if (std::find(waiting.begin(), waiting.end(), v) == waiting.end()) waiting.push_back(v);
            }
        }
        path_.pop_back();
        return found;
    }

    // Blocking is unsound under a length bound, so bounded searches use plain backtracking.
    void bounded(int v) {
        path_.push_back(v);
        blocked_[static_cast<std::size_t>(v)] = true;
        for (int w : g_.neighbors(v)) {
            if (!allowed(w)) continue;
            if (w == s_)
                emit();
            else if (!blocked_[static_cast<std::size_t>(w)] && path_.size() < *opts_.max_len)
                bounded(w);
        }
        blocked_[static_cast<std::size_t>(v)] = false;
        path_.pop_back();
    }

    const Graph& g_;
    CycleOptions opts_;
    int s_ = 0;
    VertexSet allowed_set_;
    std::vector<int> allowed_;
    std::vector<bool> blocked_;
    std::vector<std::vector<int>> pending_;
    std::vector<int> path_;
    std::vector<Cycle> out_;
};

}  // namespace detail

/// Every elementary cycle of `g` (optionally only those of length <= max_len), canonical
/// and sorted by (length, vertices). Throws CycleCapExceeded past `cap` cycles.
inline std::vector<Cycle> enumerate_cycles(const Graph& g, const CycleOptions& opts = {}) {
    return detail::CycleSearch(g, opts).run();
}

inline std::vector<Cycle> four_k_cycles(const std::vector<Cycle>& cycles) {
    std::vector<Cycle> out;
    std::copy_if(cycles.begin(), cycles.end(), std::back_inserter(out), [](const Cycle& c) { return c.is_4k(); });
    return out;
}

inline std::vector<Cycle> four_k_plus_2_cycles(const std::vector<Cycle>& cycles) {
    std::vector<Cycle> out;
    std::copy_if(cycles.begin(), cycles.end(), std::back_inserter(out),
                 [](const Cycle& c) { return c.length() % 4 == 2; });
    return out;
}

/// Unordered set of pairwise vertex-disjoint cycles, by index into a cycle list.
struct DisjointFamily {
    std::vector<std::size_t> cycle_indices;  // sorted
    VertexSet covered;

    std::size_t size() const noexcept { return cycle_indices.size(); }

    friend bool operator==(const DisjointFamily&, const DisjointFamily&) = default;
};

/// Calls `visit` for every family (the empty one first), in backtracking index order.
template <typename Visitor>
void for_each_disjoint_family(const std::vector<Cycle>& cycles, Visitor&& visit) {
    DisjointFamily current;
    std::function<void(std::size_t)> extend = [&](std::size_t start) {
        visit(static_cast<const DisjointFamily&>(current));
        for (std::size_t i = start; i < cycles.size(); ++i) {
            if (cycles[i].vertex_set.intersects(current.covered)) continue;
            VertexSet saved = current.covered;
            current.cycle_indices.push_back(i);
            current.covered |= cycles[i].vertex_set;
            extend(i + 1);
            current.cycle_indices.pop_back();
            current.covered = saved;
        }
    };
    extend(0);
}

/// All families including the empty one, sorted by (size, indices).
inline std::vector<DisjointFamily> enumerate_disjoint_families(const std::vector<Cycle>& c4k) {
    std::vector<DisjointFamily> out;
    for_each_disjoint_family(c4k, [&](const DisjointFamily& f) { out.push_back(f); });
    std::stable_sort(out.begin(), out.end(), [](const DisjointFamily& a, const DisjointFamily& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.cycle_indices < b.cycle_indices;
    });
    return out;
}

inline std::size_t max_disjoint(const std::vector<DisjointFamily>& families) {
    std::size_t m = 0;
    for (const auto& f : families) m = std::max(m, f.size());
    return m;
}

}  // namespace permdet

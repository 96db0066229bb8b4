#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "vertex_set.hpp"

namespace permdet {

/// Simple undirected graph. Vertices are 0-based internally and printed 1-based.
/// Immutable after construction.
class Graph {
public:
    using Edge = std::pair<int, int>;  // u < v

    Graph() = default;

    /// Duplicate edges are collapsed; edges may be given in either orientation.
    Graph(int n, const std::vector<Edge>& edges) : n_(n), adj_(to_size(n), to_size(n), 0), nbrs_(to_size(n)) {
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::out_of_range("edge endpoint outside 0.." + std::to_string(n - 1));
            if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u + 1));
            adj_(to_size(u), to_size(v)) = 1;
            adj_(to_size(v), to_size(u)) = 1;
        }
        finish();
    }

    /// From a symmetric 0/1 matrix with zero diagonal.
    static Graph from_adjacency(const BinaryMatrix& a) {
        if (!a.square()) throw std::invalid_argument("adjacency matrix is not square");
        std::vector<Edge> edges;
        const int n = static_cast<int>(a.rows());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                int x = a(to_size(i), to_size(j));
                if (x != 0 && x != 1) throw std::invalid_argument("adjacency entry outside {0,1}");
                if (x != a(to_size(j), to_size(i))) throw std::invalid_argument("adjacency matrix is not symmetric");
                if (i == j && x) throw std::invalid_argument("adjacency matrix has a nonzero diagonal");
                if (i < j && x) edges.emplace_back(i, j);
            }
        }
        return Graph(n, edges);
    }

    int order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const BinaryMatrix& adjacency() const noexcept { return adj_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    /// Neighbours of `v` in increasing order.
    const std::vector<int>& neighbors(int v) const { return nbrs_.at(to_size(v)); }
    bool adjacent(int u, int v) const { return adj_(to_size(u), to_size(v)) != 0; }
    VertexSet all_vertices() const { return VertexSet::first(to_size(n_)); }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

private:
    static std::size_t to_size(int v) { return static_cast<std::size_t>(v); }

    void finish() {
        if (to_size(n_) > VertexSet::capacity)
            throw std::invalid_argument("graphs are limited to " + std::to_string(VertexSet::capacity) + " vertices");
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (adj_(to_size(i), to_size(j))) {
                    nbrs_[to_size(i)].push_back(j);
                    if (i < j) edges_.emplace_back(i, j);
                }
    }

    int n_ = 0;
    BinaryMatrix adj_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> nbrs_;
};

/// Two-colouring of a bipartite graph, as sorted 0-based vertex lists.
struct Bipartition {
    std::vector<int> left;
    std::vector<int> right;

    friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

/// Non-blank lines split on whitespace, with 1-based line numbers.
inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++number;
        Line l{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j > i) l.tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (!l.tokens.empty()) out.push_back(std::move(l));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

inline long long to_integer(std::string_view tok, std::size_t line) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(ParseErrorKind::NonInteger, line, "not an integer: '" + std::string(tok) + "'");
    return v;
}

inline int to_binary(std::string_view tok, std::size_t line) {
    long long v = to_integer(tok, line);
    if (v != 0 && v != 1)
        throw ParseError(ParseErrorKind::EntryNotBinary, line, "entry outside {0,1}: " + std::string(tok));
    return static_cast<int>(v);
}

/// Reads `rows` lines of exactly `cols` binary entries starting at lines[first].
inline BinaryMatrix read_rows(const std::vector<Line>& lines, std::size_t first, std::size_t rows, std::size_t cols) {
    if (lines.size() - first != rows) {
        std::size_t at = lines.size() > first + rows ? lines[first + rows].number : 0;
        throw ParseError(ParseErrorKind::NotSquare, at,
                         "expected " + std::to_string(rows) + " rows, found " + std::to_string(lines.size() - first));
    }
    BinaryMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Line& l = lines[first + i];
        if (l.tokens.size() != cols)
            throw ParseError(ParseErrorKind::NotSquare, l.number,
                             "expected " + std::to_string(cols) + " entries, found " + std::to_string(l.tokens.size()));
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = to_binary(l.tokens[j], l.number);
    }
    return m;
}

}  // namespace detail

/// "n m" header followed by m lines "u v" (1-based). Duplicate edges collapse.
inline Graph parse_edge_list(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(ParseErrorKind::MalformedHeader, 1, "missing \"n m\" header");
    const auto& header = lines.front();
    if (header.tokens.size() != 2)
        throw ParseError(ParseErrorKind::MalformedHeader, header.number, "header must be \"n m\"");
    long long n = detail::to_integer(header.tokens[0], header.number);
    long long m = detail::to_integer(header.tokens[1], header.number);
    if (n < 0 || m < 0) throw ParseError(ParseErrorKind::MalformedHeader, header.number, "negative count in header");
    if (static_cast<unsigned long long>(n) > VertexSet::capacity)
        throw ParseError(ParseErrorKind::MalformedHeader, header.number,
                         "at most " + std::to_string(VertexSet::capacity) + " vertices are supported");
    if (static_cast<long long>(lines.size()) - 1 != m) {
        std::size_t at = lines.size() > static_cast<std::size_t>(m) + 1 ? lines[static_cast<std::size_t>(m) + 1].number
                                                                        : lines.back().number;
        throw ParseError(ParseErrorKind::EdgeCountMismatch, at,
                         "header declares " + std::to_string(m) + " edges, found " + std::to_string(lines.size() - 1));
    }
    std::vector<Graph::Edge> edges;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& l = lines[k];
        if (l.tokens.size() != 2) throw ParseError(ParseErrorKind::MalformedHeader, l.number, "edge line must be \"u v\"");
        long long u = detail::to_integer(l.tokens[0], l.number);
        long long v = detail::to_integer(l.tokens[1], l.number);
        if (u < 1 || u > n || v < 1 || v > n)
            throw ParseError(ParseErrorKind::VertexOutOfRange, l.number,
                             "vertex outside 1.." + std::to_string(n));
        if (u == v) throw ParseError(ParseErrorKind::SelfLoop, l.number, "self-loop at vertex " + std::to_string(u));
        edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    }
    return Graph(static_cast<int>(n), edges);
}

/// n rows of n entries in {0,1}; symmetric with zero diagonal.
inline Graph parse_adjacency_matrix(std::string_view text) {
    auto lines = detail::tokenize(text);
    const std::size_t n = lines.empty() ? 0 : lines.front().tokens.size();
    BinaryMatrix a = detail::read_rows(lines, 0, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i)) throw ParseError(ParseErrorKind::NonzeroDiagonal, lines[i].number, "nonzero diagonal entry");
        for (std::size_t j = 0; j < i; ++j)
            if (a(i, j) != a(j, i))
                throw ParseError(ParseErrorKind::Asymmetric, lines[i].number,
                                 "matrix is not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
    if (n > VertexSet::capacity)
        throw ParseError(ParseErrorKind::NotSquare, 0, "at most " + std::to_string(VertexSet::capacity) + " vertices are supported");
    return Graph::from_adjacency(a);
}

/// "p q" header followed by p rows of q entries in {0,1}.
inline BinaryMatrix parse_biadjacency(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(ParseErrorKind::MalformedHeader, 1, "missing \"p q\" header");
    const auto& header = lines.front();
    if (header.tokens.size() != 2)
        throw ParseError(ParseErrorKind::MalformedHeader, header.number, "header must be \"p q\"");
    long long p = detail::to_integer(header.tokens[0], header.number);
    long long q = detail::to_integer(header.tokens[1], header.number);
    if (p < 0 || q < 0) throw ParseError(ParseErrorKind::MalformedHeader, header.number, "negative dimension in header");
    return detail::read_rows(lines, 1, static_cast<std::size_t>(p), static_cast<std::size_t>(q));
}

inline std::string render_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.order() << ' ' << g.size() << '\n';
    for (auto [u, v] : g.edges()) os << u + 1 << ' ' << v + 1 << '\n';
    return os.str();
}

inline std::string render_adjacency_matrix(const Graph& g) {
    std::ostringstream os;
    const auto& a = g.adjacency();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j);
        os << '\n';
    }
    return os.str();
}

/// Canonical two-colouring: BFS per component from its smallest vertex, which goes left.
/// Throws NotBipartite with an odd cycle as witness.
inline Bipartition bipartition(const Graph& g) {
    const int n = g.order();
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> depth(static_cast<std::size_t>(n), 0);
    auto at = [](std::vector<int>& v, int i) -> int& { return v[static_cast<std::size_t>(i)]; };

    for (int s = 0; s < n; ++s) {
        if (at(colour, s) != -1) continue;
        at(colour, s) = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.neighbors(u)) {
                if (at(colour, v) == -1) {
                    at(colour, v) = 1 - at(colour, u);
                    at(parent, v) = u;
                    at(depth, v) = at(depth, u) + 1;
                    q.push(v);
                } else if (at(colour, v) == at(colour, u)) {
                    // climb both tree paths to their meeting point
                    std::vector<int> a{u}, b{v};
                    int x = u, y = v;
                    while (at(depth, x) > at(depth, y)) a.push_back(x = at(parent, x));
                    while (at(depth, y) > at(depth, x)) b.push_back(y = at(parent, y));
                    while (x != y) {
                        a.push_back(x = at(parent, x));
                        b.push_back(y = at(parent, y));
                    }
                    b.pop_back();  // meeting point already ends `a`
                    std::vector<int> cycle(a.begin(), a.end());
                    cycle.insert(cycle.end(), b.rbegin(), b.rend());
                    for (int& c : cycle) ++c;
                    throw NotBipartite(std::move(cycle));
                }
            }
        }
    }
    Bipartition p;
    for (int v = 0; v < n; ++v) (at(colour, v) == 0 ? p.left : p.right).push_back(v);
    return p;
}

inline bool is_bipartite(const Graph& g) {
    try {
        bipartition(g);
        return true;
    } catch (const NotBipartite&) {
        return false;
    }
}

/// Graph on p+q vertices: left 0..p-1, right p..p+q-1, edge (i, p+j) iff b(i,j) = 1.
inline Graph graph_from_biadjacency(const BinaryMatrix& b) {
    std::vector<Graph::Edge> edges;
    const int p = static_cast<int>(b.rows());
    const int q = static_cast<int>(b.cols());
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            int x = b(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (x != 0 && x != 1) throw std::invalid_argument("biadjacency entry outside {0,1}");
            if (x) edges.emplace_back(i, p + j);
        }
    return Graph(p + q, edges);
}

/// Rows indexed by `rows`, columns by `cols` (both 0-based vertex lists).
inline BinaryMatrix biadjacency(const Graph& g, const std::vector<int>& rows, const std::vector<int>& cols) {
    BinaryMatrix b(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = g.adjacent(rows[i], cols[j]) ? 1 : 0;
    return b;
}

inline void check_within(const Graph& g, const VertexSet& s) {
    if (!s.subset_of(g.all_vertices()))
        throw std::out_of_range("vertex set has members outside 1.." + std::to_string(g.order()));
}

/// Principal submatrix on the kept vertices, in increasing label order.
inline BinaryMatrix adjacency_after_removal(const Graph& g, const VertexSet& removed) {
    check_within(g, removed);
    auto kept = (g.all_vertices() - removed).members();
    BinaryMatrix m(kept.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = 0; j < kept.size(); ++j) m(i, j) = g.adjacent(kept[i], kept[j]) ? 1 : 0;
    return m;
}

/// Induced subgraph on `keep`, relabelled 0.. in increasing original order.
inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
    check_within(g, keep);
    return Graph::from_adjacency(adjacency_after_removal(g, g.all_vertices() - keep));
}

}  // namespace permdet

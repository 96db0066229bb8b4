#include <gtest/gtest.h>

#include <random>
#include <set>

#include "permdet/cycles.hpp"
#include "support/generators.hpp"

using namespace permdet;
using namespace permdet::testing;

namespace {

std::vector<std::vector<int>> labels_of(const std::vector<Cycle>& cycles) {
    std::vector<std::vector<int>> out;
    for (const auto& c : cycles) out.push_back(c.labels());
    return out;
}

Graph complete(int n) {
    std::vector<Graph::Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e);
}

}  // namespace

TEST(EnumerateCycles, TenVertexExample) {
    auto cycles = enumerate_cycles(load_edges("ten_vertex.edges"));
    EXPECT_EQ(labels_of(cycles), (std::vector<std::vector<int>>{
                                     {1, 2, 3, 4}, {3, 4, 5, 6}, {7, 8, 9, 10}, {1, 2, 3, 6, 5, 4}}));
}

TEST(EnumerateCycles, TreesAndCycleGraphs) {
    std::mt19937_64 rng(3);
    EXPECT_TRUE(enumerate_cycles(random_tree(12, rng)).empty());
    EXPECT_TRUE(enumerate_cycles(Graph{}).empty());
    auto c6 = enumerate_cycles(cycle_graph(6));
    ASSERT_EQ(c6.size(), 1u);
    EXPECT_EQ(c6[0].labels(), (std::vector<int>{1, 2, 3, 4, 5, 6}));
}

TEST(EnumerateCycles, KnownCounts) {
    // K4: 4 triangles + 3 squares; K5: 10 + 15 + 12; K3,3: 9 squares + 6 hexagons
    EXPECT_EQ(enumerate_cycles(complete(4)).size(), 7u);
    EXPECT_EQ(enumerate_cycles(complete(5)).size(), 37u);
    auto k33 = enumerate_cycles(graph_from_biadjacency(BinaryMatrix(3, 3, 1)));
    EXPECT_EQ(k33.size(), 15u);
    EXPECT_EQ(four_k_cycles(k33).size(), 9u);
}

TEST(EnumerateCycles, CanonicalFormAndOrder) {
    for (const auto& c : enumerate_cycles(complete(6))) {
        EXPECT_EQ(c.vertices.front(), *std::min_element(c.vertices.begin(), c.vertices.end()));
        EXPECT_LT(c.vertices[1], c.vertices.back());
        EXPECT_EQ(canonical_cycle(c.vertices), c);
        std::vector<int> rotated(c.vertices.rbegin(), c.vertices.rend());
        std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
        EXPECT_EQ(canonical_cycle(rotated), c);
    }
    auto cycles = enumerate_cycles(complete(6));
    EXPECT_TRUE(std::is_sorted(cycles.begin(), cycles.end()));
}

TEST(EnumerateCycles, MatchesExhaustiveSearch) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> size(0, 9);
        const int n = size(rng);
        std::bernoulli_distribution edge(trial % 2 ? 0.35 : 0.6);
        std::vector<Graph::Edge> e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (edge(rng)) e.emplace_back(u, v);
        Graph g(n, e);  // not necessarily bipartite

        auto cycles = enumerate_cycles(g);
        std::set<std::vector<int>> got;
        for (const auto& c : cycles) {
            EXPECT_TRUE(got.insert(c.vertices).second) << "duplicate cycle";
            std::set<int> distinct(c.vertices.begin(), c.vertices.end());
            EXPECT_EQ(distinct.size(), c.length());
            for (std::size_t i = 0; i < c.length(); ++i)
                EXPECT_TRUE(g.adjacent(c.vertices[i], c.vertices[(i + 1) % c.length()]));
        }
        EXPECT_EQ(got, brute_force_cycles(g));
    }
}

TEST(EnumerateCycles, BipartiteHostsOnlyHaveEvenCycles) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random_bipartite(10, 0.4, rng);
        for (const auto& c : enumerate_cycles(g)) {
            EXPECT_EQ(c.length() % 2, 0u);
            EXPECT_EQ(c.is_4k(), c.length() % 4 == 0);
        }
    }
}

TEST(EnumerateCycles, LengthBoundAndCap) {
    Graph k5 = complete(5);
    auto short_ones = enumerate_cycles(k5, CycleOptions{4, default_cycle_cap});
    EXPECT_EQ(short_ones.size(), 25u);
    for (const auto& c : short_ones) EXPECT_LE(c.length(), 4u);

    EXPECT_THROW(enumerate_cycles(k5, CycleOptions{std::nullopt, 36}), CycleCapExceeded);
    EXPECT_EQ(enumerate_cycles(k5, CycleOptions{std::nullopt, 37}).size(), 37u);
    try {
        enumerate_cycles(k5, CycleOptions{std::nullopt, 10});
    } catch (const CycleCapExceeded& e) {
        EXPECT_EQ(e.cap(), 10u);
    }
}

TEST(FourKCycles, Examples) {
    auto fig = four_k_cycles(enumerate_cycles(load_edges("ten_vertex.edges")));
    EXPECT_EQ(labels_of(fig), (std::vector<std::vector<int>>{{1, 2, 3, 4}, {3, 4, 5, 6}, {7, 8, 9, 10}}));
    EXPECT_TRUE(four_k_cycles(enumerate_cycles(cycle_graph(6))).empty());
    auto c8 = four_k_cycles(enumerate_cycles(cycle_graph(8)));
    ASSERT_EQ(c8.size(), 1u);
    EXPECT_EQ(c8[0].length(), 8u);
}

TEST(DisjointFamilies, TenVertexExample) {
    auto c4k = four_k_cycles(enumerate_cycles(load_edges("ten_vertex.edges")));
    auto families = enumerate_disjoint_families(c4k);
    std::vector<std::vector<std::size_t>> idx;
    for (const auto& f : families) idx.push_back(f.cycle_indices);
    EXPECT_EQ(idx, (std::vector<std::vector<std::size_t>>{{}, {0}, {1}, {2}, {0, 2}, {1, 2}}));
    EXPECT_EQ(families[4].covered, VertexSet::from_labels({1, 2, 3, 4, 7, 8, 9, 10}));
    EXPECT_EQ(max_disjoint(families), 2u);

    // the ordered tuples T_2 number 2! times the unordered pairs
    EXPECT_EQ(ordered_tuples(c4k, 1), 3u);
    EXPECT_EQ(ordered_tuples(c4k, 2), 4u);
    EXPECT_EQ(ordered_tuples(c4k, 3), 0u);
}

TEST(DisjointFamilies, SmallCases) {
    auto empty = enumerate_disjoint_families({});
    ASSERT_EQ(empty.size(), 1u);
    EXPECT_TRUE(empty[0].covered.empty());
    EXPECT_EQ(max_disjoint(empty), 0u);

    Graph two = load_edges("two_c4.edges");
    EXPECT_EQ(enumerate_disjoint_families(four_k_cycles(enumerate_cycles(two))).size(), 4u);

    Graph three = disjoint_union(two, cycle_graph(4));
    EXPECT_EQ(max_disjoint(enumerate_disjoint_families(four_k_cycles(enumerate_cycles(three)))), 3u);
    EXPECT_EQ(max_disjoint(enumerate_disjoint_families(four_k_cycles(enumerate_cycles(cycle_graph(10))))), 0u);
}

TEST(DisjointFamilies, SameVertexSetCyclesStayDistinct) {
    // K4,4 has many 8-cycles on the same 8 vertices; each is its own family
    auto c4k = four_k_cycles(enumerate_cycles(graph_from_biadjacency(BinaryMatrix(4, 4, 1))));
    std::size_t eights = 0;
    for (const auto& c : c4k) eights += c.length() == 8;
    EXPECT_EQ(eights, 72u);  // 4! * 3! / 2
    auto families = enumerate_disjoint_families(c4k);
    std::size_t singles = 0;
    for (const auto& f : families) singles += f.size() == 1;
    EXPECT_EQ(singles, c4k.size());
}

TEST(DisjointFamilies, PropertiesOnRandomGraphs) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 80; ++trial) {
        Graph g = random_bipartite(10, 0.35, rng);
        auto c4k = four_k_cycles(enumerate_cycles(g));
        if (c4k.size() > 20) continue;
        auto families = enumerate_disjoint_families(c4k);
        std::set<std::vector<std::size_t>> seen;
        std::vector<std::size_t> by_size(c4k.size() + 1, 0);
        for (const auto& f : families) {
            EXPECT_TRUE(seen.insert(f.cycle_indices).second);
            EXPECT_TRUE(std::is_sorted(f.cycle_indices.begin(), f.cycle_indices.end()));
            std::size_t total = 0;
            VertexSet cover;
            for (auto i : f.cycle_indices) {
                EXPECT_FALSE(c4k[i].vertex_set.intersects(cover));
                cover |= c4k[i].vertex_set;
                total += c4k[i].length();
            }
            EXPECT_EQ(cover, f.covered);
            EXPECT_EQ(f.covered.size(), total);
            EXPECT_EQ(f.covered.size() % 4, 0u);
            ++by_size[f.size()];
        }
        EXPECT_EQ(max_disjoint(families), brute_force_max_disjoint(c4k));
        std::size_t factorial = 1;
        for (std::size_t z = 0; z <= std::min<std::size_t>(3, c4k.size()); ++z) {
            if (z > 0) factorial *= z;
            EXPECT_EQ(ordered_tuples(c4k, z), factorial * by_size[z]);
        }
    }
}

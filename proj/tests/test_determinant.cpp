#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "permdet/determinant.hpp"
#include "permdet/oracles.hpp"
#include "support/generators.hpp"

using namespace permdet;
using namespace permdet::testing;

TEST(Determinant, Examples) {
    EXPECT_EQ(determinant(BinaryMatrix(0, 0)), 1);
    EXPECT_EQ(determinant(BinaryMatrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(determinant(BinaryMatrix{{0}}), 0);
    EXPECT_EQ(determinant(load_edges("ten_vertex.edges").adjacency()), 0);
    EXPECT_EQ(determinant(cycle_graph(4).adjacency()), 0);
    EXPECT_EQ(determinant(cycle_graph(6).adjacency()), -4);
    EXPECT_EQ(determinant(path_graph(4).adjacency()), 1);
    EXPECT_THROW(determinant(BinaryMatrix(2, 3)), std::invalid_argument);
}

TEST(Determinant, NeedsPivotingOnZeroDiagonal) {
    Matrix<ExactInt> m{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    EXPECT_EQ(determinant(m), -1);
    Matrix<ExactInt> singular{{0, 0, 1}, {0, 0, 1}, {1, 1, 0}};
    EXPECT_EQ(determinant(singular), 0);
}

TEST(Determinant, AgreesWithPermutationExpansion) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 400; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(0, 6);
        const std::size_t n = dim(rng);
        BinaryMatrix b = random_binary(n, n, trial % 3 == 0 ? 0.2 : 0.5, rng);
        EXPECT_EQ(determinant(b), det_naive(b));
    }
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 6);
        std::uniform_int_distribution<int> entry(-1000, 1000);
        const std::size_t n = dim(rng);
        Matrix<ExactInt> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
        EXPECT_EQ(determinant(m), det_naive(m));
    }
}

TEST(Determinant, LargeValuesStayExact) {
    // Sylvester-Hadamard matrix of order 32: |det| = 32^16 = 2^80
    Matrix<ExactInt> h{{1}};
    for (int k = 0; k < 5; ++k) {
        Matrix<ExactInt> next(h.rows() * 2, h.cols() * 2);
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < h.cols(); ++j) {
                next(i, j) = h(i, j);
                next(i, j + h.cols()) = h(i, j);
                next(i + h.rows(), j) = h(i, j);
                next(i + h.rows(), j + h.cols()) = -h(i, j);
            }
        h = next;
    }
    EXPECT_EQ(abs(determinant(h)), ExactInt(1) << 80);
}

TEST(Determinant, InvariantUnderSimultaneousPermutation) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random_bipartite(12, 0.35, rng);
        Graph h = relabel(g, random_permutation(12, rng));
        EXPECT_EQ(determinant(g.adjacency()), determinant(h.adjacency()));
    }
}

TEST(Determinant, OddBipartiteRemainderVanishes) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random_bipartite(11, 0.5, rng);
        EXPECT_EQ(determinant(g.adjacency()), 0);
        Graph h = random_bipartite(10, 0.5, rng);
        EXPECT_EQ(det_after_removal(h, VertexSet{static_cast<int>(trial % 10)}), 0);
    }
}

TEST(DetAfterRemoval, TenVertexExample) {
    Graph g = load_edges("ten_vertex.edges");
    DetCache cache(g);
    EXPECT_EQ(det_after_removal(g, VertexSet::from_labels({7, 8, 9, 10}), cache), -1);
    EXPECT_EQ(det_after_removal(g, VertexSet::from_labels({1, 2, 3, 4}), cache), 0);
    EXPECT_EQ(det_after_removal(g, VertexSet::from_labels({3, 4, 5, 6}), cache), 0);
    EXPECT_EQ(det_after_removal(g, VertexSet::from_labels({1, 2, 3, 4, 7, 8, 9, 10}), cache), -1);
    EXPECT_EQ(det_after_removal(g, VertexSet::from_labels({3, 4, 5, 6, 7, 8, 9, 10}), cache), -1);
    EXPECT_EQ(det_after_removal(g, g.all_vertices(), cache), 1);
    EXPECT_EQ(cache.misses(), 6u);
    EXPECT_EQ(cache.hits(), 0u);
    EXPECT_EQ(det_after_removal(g, VertexSet::from_labels({7, 8, 9, 10}), cache), -1);
    EXPECT_EQ(cache.hits(), 1u);
    EXPECT_EQ(cache.entries(), 6u);
}

TEST(DetAfterRemoval, CacheIsTransparent) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_bipartite(12, 0.4, rng);
        DetCache cache(g);
        std::bernoulli_distribution coin(0.4);
        for (int k = 0; k < 20; ++k) {
            VertexSet removed;
            for (int v = 0; v < 12; ++v)
                if (coin(rng)) removed.insert(v);
            ExactInt uncached = det_after_removal(g, removed);
            EXPECT_EQ(det_after_removal(g, removed, cache), uncached);
            EXPECT_EQ(det_after_removal(g, removed, cache), uncached);
        }
        EXPECT_GE(cache.hits(), 20u);
    }
}

TEST(DetAfterRemoval, RejectsForeignCacheAndBadSets) {
    Graph g = cycle_graph(4);
    DetCache other(cycle_graph(6));
    EXPECT_THROW(det_after_removal(g, {}, other), std::invalid_argument);
    DetCache mine(g);
    EXPECT_THROW(det_after_removal(g, VertexSet{5}, mine), std::out_of_range);
}

TEST(DetAfterRemoval, ConcurrentReadersAgree) {
    std::mt19937_64 rng(31);
    Graph g = random_bipartite(16, 0.4, rng);
    std::vector<VertexSet> sets;
    std::vector<ExactInt> expected;
    for (int k = 0; k < 40; ++k) {
        VertexSet s;
        for (int v = 0; v < 16; ++v)
            if ((rng() & 3U) == 0) s.insert(v);
        sets.push_back(s);
        expected.push_back(det_after_removal(g, s));
    }
    DetCache cache(g);
    std::vector<std::jthread> workers;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 8; ++t)
        workers.emplace_back([&, t] {
            for (std::size_t k = 0; k < sets.size(); ++k) {
                std::size_t idx = (k + static_cast<std::size_t>(t) * 5) % sets.size();
                if (det_after_removal(g, sets[idx], cache) != expected[idx]) ++mismatches;
            }
        });
    workers.clear();
    EXPECT_EQ(mismatches.load(), 0);
    EXPECT_LE(cache.entries(), sets.size());
    EXPECT_EQ(cache.hits() + cache.misses(), 8 * sets.size());
}

#include <catch2/catch_amalgamated.hpp>

#include "gpr/graph_apps.hpp"
#include "support/oracles.hpp"

using namespace gpr;

namespace {

BoolMatrix randomDigraph(std::size_t n, SplitMix64& rng, double p) {
    BoolMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) m.set(i, j, rng.coin(p));
    return m;
}

BoolMatrix randomUndirected(std::size_t n, SplitMix64& rng, double p) {
    BoolMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.coin(p)) {
                m.set(i, j, true);
                m.set(j, i, true);
            }
    return m;
}

} // namespace

TEST_CASE("apsp worked examples") {
    CostLedger ledger;
    BoolMatrix path(3);
    path.set(0, 1, true);
    path.set(1, 2, true);
    DistanceMatrix d = apspUnweighted(path, ledger);
    CHECK(d.at(0, 2) == 2);
    CHECK(d.at(0, 1) == 1);
    CHECK(d.at(2, 0) == -1);
    CHECK(d.at(1, 1) == 0);

    BoolMatrix empty(4);
    DistanceMatrix de = apspUnweighted(empty, ledger);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(de.at(i, j) == (i == j ? 0 : -1));

    BoolMatrix k4(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) k4.set(i, j, true);
    DistanceMatrix dk = apspUnweighted(k4, ledger);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(dk.at(i, j) == (i == j ? 0 : 1));
}

TEST_CASE("apsp agrees with BFS and respects the product-call budget") {
    SplitMix64 rng(83);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(2, 32));
        BoolMatrix g = randomDigraph(n, rng, 0.15);
        CostLedger ledger;
        DistanceMatrix got = apspUnweighted(g, ledger);
        auto want = oracle::bfsAllPairs(g);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) REQUIRE(got.at(i, j) == want[i][j]);
        std::uint64_t logn = 0;
        while ((std::size_t(1) << logn) < n) ++logn;
        CHECK(ledger.bmmCalls <= logn + 1);
    }
}

TEST_CASE("triangle worked examples") {
    CostLedger ledger;
    BoolMatrix k3(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) k3.set(i, j, true);
    TriangleResult r = triangleDetect(k3, ledger);
    CHECK(r.hasTriangle);
    CHECK(r.count == Int(1));

    BoolMatrix p3(3);
    p3.set(0, 1, true);
    p3.set(1, 0, true);
    p3.set(1, 2, true);
    p3.set(2, 1, true);
    TriangleResult rp = triangleDetect(p3, ledger);
    CHECK_FALSE(rp.hasTriangle);
    CHECK(rp.count == Int(0));

    BoolMatrix asym(2);
    asym.set(0, 1, true);
    CHECK_THROWS_AS(triangleDetect(asym, ledger), AsymmetricInput);
    BoolMatrix loop(2);
    loop.set(0, 0, true);
    CHECK_THROWS_AS(triangleDetect(loop, ledger), AsymmetricInput);
}

TEST_CASE("triangle counts are exhaustive-exact for n <= 5") {
    // all graphs on 5 vertices: 2^10 edge subsets
    for (unsigned mask = 0; mask < 1024; ++mask) {
        BoolMatrix g(5);
        unsigned bit = 0;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j, ++bit)
                if (mask & (1u << bit)) {
                    g.set(i, j, true);
                    g.set(j, i, true);
                }
        CostLedger ledger;
        TriangleResult r = triangleDetect(g, ledger);
        REQUIRE(r.count == Int(static_cast<std::int64_t>(oracle::countTriangles(g))));
    }
}

TEST_CASE("triangle counts match enumeration on random graphs up to n = 16") {
    SplitMix64 rng(89);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(4, 16));
        BoolMatrix g = randomUndirected(n, rng, 0.5);
        CostLedger ledger;
        TriangleResult r = triangleDetect(g, ledger);
        REQUIRE(r.count == Int(static_cast<std::int64_t>(oracle::countTriangles(g))));
        CHECK(ledger.bmmCalls == 2);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "gpr/extractor.hpp"
#include "gpr/packing.hpp"
#include "support/oracles.hpp"

using namespace gpr;

namespace {

IntMatrix scalar(std::int64_t v) {
    IntMatrix m(1, 1);
    m.at(0, 0) = v;
    return m;
}

PackedMatrix randomPacked(std::vector<int> degrees, std::size_t rows, std::size_t cols,
                          std::int64_t bound, SplitMix64& rng) {
    std::vector<std::pair<int, IntMatrix>> parts;
    for (int d : degrees) parts.emplace_back(d, IntMatrix::random(rows, cols, bound, rng));
    return embed(parts);
}

} // namespace

TEST_CASE("embed builds the canonical packings and rejects misuse") {
    SplitMix64 rng(7);
    IntMatrix a11 = IntMatrix::random(2, 2, 5, rng), a12 = IntMatrix::random(2, 2, 5, rng);
    a11.at(0, 0) = 1; // keep blocks nonzero so the support is exactly as declared
    a12.at(0, 0) = 1;
    PackedMatrix r = embed({{0, a11}, {-1, a12}});
    CHECK(r.support() == std::set<int>{-1, 0});

    PackedMatrix s = embed({{0, a11}, {1, a12}});
    CHECK(s.support() == std::set<int>{0, 1});

    CHECK_THROWS_AS(embed({{0, a11}, {0, a12}}), DuplicateDegree);
    CHECK_THROWS_AS(embed({{0, a11}, {1, IntMatrix(3, 3)}}), ShapeMismatch);
    CHECK_THROWS_AS(embed({{9, a11}}), DegreeOutOfRange);
}

TEST_CASE("project: identity, absent degree, product band") {
    SplitMix64 rng(13);
    IntMatrix x = IntMatrix::random(3, 3, 9, rng);
    PackedMatrix p = embed({{0, x}});
    CHECK(project(p, 0) == x);
    CHECK(project(p, 5).isZero());

    // degree-0 band of the canonical packing is A11*B11 + A12*B21
    CostLedger ledger;
    IntMatrix a11 = IntMatrix::random(2, 2, 7, rng), a12 = IntMatrix::random(2, 2, 7, rng);
    IntMatrix b11 = IntMatrix::random(2, 2, 7, rng), b21 = IntMatrix::random(2, 2, 7, rng);
    PackedMatrix r = embed({{0, a11}, {-1, a12}});
    PackedMatrix s = embed({{0, b11}, {1, b21}});
    IntMatrix band = project(formalProduct(r, s, ledger), 0);
    auto want = oracle::matMul(a11, b11);
    auto other = oracle::matMul(a12, b21);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(oracle::toBig(band.at(i, j)) == want[i][j] + other[i][j]);
}

TEST_CASE("projection is linear in each packed argument") {
    SplitMix64 rng(99);
    CostLedger ledger;
    for (int trial = 0; trial < 20; ++trial) {
        PackedMatrix u = randomPacked({-1, 0}, 2, 2, 4, rng);
        PackedMatrix v = randomPacked({0, 1}, 2, 2, 4, rng);
        PackedMatrix v2 = randomPacked({0, 1}, 2, 2, 4, rng);
        // bilinearity probe: U*(V+V2) band e equals U*V band e + U*V2 band e
        PackedMatrix vs;
        for (int d : {0, 1})
            vs.setBlock(d, project(v, d) + project(v2, d));
        for (int e = -2; e <= 2; ++e) {
            IntMatrix lhs = project(formalProduct(u, vs, ledger), e);
            IntMatrix rhs = project(formalProduct(u, v, ledger), e) +
                            project(formalProduct(u, v2, ledger), e);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("formalProduct scalar example and support rules") {
    CostLedger ledger;
    PackedMatrix r = embed({{0, scalar(1)}, {-1, scalar(2)}});
    PackedMatrix s = embed({{0, scalar(3)}, {1, scalar(4)}});
    PackedMatrix w = formalProduct(r, s, ledger);
    CHECK(w.support() == std::set<int>{-1, 0, 1});
    CHECK(project(w, -1).at(0, 0) == Int(6));
    CHECK(project(w, 0).at(0, 0) == Int(11)); // 1*3 + 2*4
    CHECK(project(w, 1).at(0, 0) == Int(4));

    SplitMix64 rng(3);
    PackedMatrix u0 = randomPacked({0}, 2, 2, 3, rng);
    PackedMatrix v0 = randomPacked({0}, 2, 2, 3, rng);
    PackedMatrix w0 = formalProduct(u0, v0, ledger);
    CHECK(w0.support() == std::set<int>{0});
    CHECK(oracle::matEquals(project(w0, 0), oracle::matMul(project(u0, 0), project(v0, 0))));
}

TEST_CASE("convolution identity against the brute-force band oracle") {
    SplitMix64 rng(42);
    CostLedger ledger;
    for (int trial = 0; trial < 30; ++trial) {
        PackedMatrix u = randomPacked({-2, 0, 1}, 4, 4, 3, rng);
        PackedMatrix v = randomPacked({-1, 2}, 4, 4, 3, rng);
        PackedMatrix w = formalProduct(u, v, ledger);
        for (int e = -4; e <= 4; ++e)
            CHECK(oracle::matEquals(project(w, e), oracle::packedProductBand(u, v, e)));
    }
}

TEST_CASE("convolutionWidth") {
    SplitMix64 rng(1);
    PackedMatrix r = randomPacked({-1, 0}, 2, 2, 2, rng);
    PackedMatrix s = randomPacked({0, 1}, 2, 2, 2, rng);
    CHECK(convolutionWidth(r, s, 0) == 2);  // (0,0) and (-1,+1)
    CHECK(convolutionWidth(r, s, -1) == 1); // only (-1,0)
    CHECK(convolutionWidth(r, s, 5) == 0);
}

TEST_CASE("materializeScaled") {
    CostLedger ledger;
    GlobalBase base = baseFromExponent(6); // beta = 64
    PackedMatrix p;
    p.setBlock(-1, scalar(6));
    p.setBlock(0, scalar(11));
    p.setBlock(1, scalar(4));
    CHECK(materializeScaled(p, base, ledger).at(0, 0) == Int(17094)); // 4*4096 + 11*64 + 6

    PackedMatrix q;
    q.setBlock(0, scalar(9));
    CHECK(materializeScaled(q, base, ledger).at(0, 0) == Int(9 * 64));

    PackedMatrix bad;
    bad.setBlock(-2, scalar(1));
    CHECK_THROWS_AS(materializeScaled(bad, base, ledger), UnsupportedSupport);
}

TEST_CASE("materializeScaled is injective under the slack bounds") {
    SplitMix64 rng(77);
    GlobalBase base = baseFromExponent(8); // beta = 256
    CostLedger ledger;
    std::int64_t beta = 256;
    for (int trial = 0; trial < 2000; ++trial) {
        std::int64_t m1 = rng.range(-(beta - 1) / 2, (beta - 1) / 2);
        std::int64_t l1 = rng.range(-(beta - 1) / 4, (beta - 1) / 4);
        std::int64_t m2 = rng.range(-(beta - 1) / 2, (beta - 1) / 2);
        std::int64_t l2 = rng.range(-(beta - 1) / 4, (beta - 1) / 4);
        if (m1 == m2 && l1 == l2) continue;
        PackedMatrix p1, p2;
        p1.setBlock(0, scalar(m1));
        p1.setBlock(-1, scalar(l1));
        p2.setBlock(0, scalar(m2));
        p2.setBlock(-1, scalar(l2));
        CHECK_FALSE(materializeScaled(p1, base, ledger).at(0, 0) ==
                    materializeScaled(p2, base, ledger).at(0, 0));
    }
}

TEST_CASE("matrix text format round trip") {
    SplitMix64 rng(8);
    IntMatrix m = IntMatrix::random(3, 5, 1000000, rng);
    std::istringstream in(m.toText());
    CHECK(IntMatrix::fromText(in) == m);
}

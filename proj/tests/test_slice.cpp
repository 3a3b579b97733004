#include <catch2/catch_amalgamated.hpp>

#include "gpr/slice_staged.hpp"
#include "support/oracles.hpp"

using namespace gpr;

TEST_CASE("perSliceExtract: pass zero is midBeta at base sigma") {
    SplitMix64 rng(3);
    CostLedger ledger;
    GlobalBase sigma = baseFromExponent(7); // 128
    for (int trial = 0; trial < 500; ++trial) {
        std::int64_t u = rng.range(-64, 64);
        std::int64_t m = rng.range(-63, 63);
        std::int64_t l = rng.range(-31, 31);
        Int v = Int(u).shiftedLeft(14) + Int(m).shiftedLeft(7) + Int(l);
        CHECK(perSliceExtract(v, sigma, 0, 0, {}, ledger) == midBeta(v, sigma, ledger));
    }
}

TEST_CASE("perSliceExtract digit walk example") {
    CostLedger ledger;
    GlobalBase sigma = baseFromExponent(3); // sigma = 8
    Int m = Int(2 * 8 + 3);                 // 2*sigma + 3
    Int v = m.shiftedLeft(3);               // scaled by sigma
    Int d0 = perSliceExtract(v, sigma, 0, 0, {}, ledger);
    CHECK(d0 == Int(3));
    Int d1 = perSliceExtract(v, sigma, 0, 1, {d0}, ledger);
    CHECK(d1 == Int(2));
    CHECK(reconstruct({d0, d1}, sigma, ledger) == m);
}

TEST_CASE("wrong previous digits raise InexactShift") {
    CostLedger ledger;
    GlobalBase sigma = baseFromExponent(3);
    Int v = Int(2 * 8 + 3).shiftedLeft(3);
    CHECK_THROWS_AS(perSliceExtract(v, sigma, 0, 1, {Int(2)}, ledger), InexactShift);
}

TEST_CASE("digit round trip against the balanced-digit oracle") {
    SplitMix64 rng(17);
    CostLedger ledger;
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t n = std::size_t(1) << rng.range(2, 5);
        std::int64_t bmax = rng.range(1, 3);
        GlobalBase sigma = chooseGlobalBase(n, bmax);
        unsigned k = static_cast<unsigned>(rng.range(2, 3));
        std::int64_t s0 = sigma.S0.toInt64();
        Int m(rng.range(-2 * s0, 2 * s0));
        Int v = m.shiftedLeft(sigma.Q);
        std::vector<Int> digits;
        for (unsigned s = 0; s < k; ++s)
            digits.push_back(perSliceExtract(v, sigma, 0, s, digits, ledger));
        auto want = oracle::balancedDigits(oracle::toBig(m), oracle::BigInt(1) << sigma.Q, k);
        for (unsigned s = 0; s < k; ++s) CHECK(oracle::equalsBig(digits[s], want[s]));
        CHECK(reconstruct(digits, sigma, ledger) == m);
    }
}

TEST_CASE("reconstruct examples") {
    CostLedger ledger;
    GlobalBase sigma8 = baseFromExponent(3);
    CHECK(reconstruct({Int(3), Int(2)}, sigma8, ledger) == Int(19));
    CHECK(reconstruct({Int(0), Int(0), Int(0)}, sigma8, ledger) == Int(0));
}

TEST_CASE("slice-staged equals the plain recursion") {
    GprConfig cfg;
    cfg.Bmax = 1;
    CostLedger l1, l2;
    IntMatrix ones = IntMatrix::filled(4, 4, 1);
    IntMatrix sliced = gprTopSliceStaged(ones, ones, 2, cfg, l1);
    IntMatrix plain = gprTop(ones, ones, cfg, l2);
    CHECK(sliced == plain);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(sliced.at(i, j) == Int(4));
    CHECK(l1.topLevelPasses == 2);

    SplitMix64 rng(23);
    for (unsigned k : {2u, 3u}) {
        cfg.Bmax = 3;
        IntMatrix a = IntMatrix::random(8, 8, 3, rng), b = IntMatrix::random(8, 8, 3, rng);
        CostLedger ls, lp;
        CHECK(gprTopSliceStaged(a, b, k, cfg, ls) == gprTop(a, b, cfg, lp));
        CHECK(ls.topLevelPasses == k);
    }
}

TEST_CASE("slice-staged differential at a larger size and bound") {
    GprConfig cfg;
    cfg.Bmax = 7;
    SplitMix64 rng(31);
    IntMatrix a = IntMatrix::random(64, 64, 7, rng), b = IntMatrix::random(64, 64, 7, rng);
    CostLedger ls, lp;
    CHECK(gprTopSliceStaged(a, b, 2, cfg, ls) == gprTop(a, b, cfg, lp));
}

TEST_CASE("K = 1 is rejected") {
    GprConfig cfg;
    CostLedger ledger;
    IntMatrix a = IntMatrix::filled(4, 4, 1);
    CHECK_THROWS_AS(gprTopSliceStaged(a, a, 1, cfg, ledger), BadArgument);
}

TEST_CASE("per-pass extraction width sits in the sigma digit window") {
    GprConfig cfg;
    cfg.Bmax = 1;
    SplitMix64 rng(29);
    for (unsigned k : {2u, 3u, 4u}) {
        IntMatrix a = IntMatrix::random(16, 16, 1, rng), b = IntMatrix::random(16, 16, 1, rng);
        CostLedger ledger;
        SliceRunStats stats;
        gprTopSliceStaged(a, b, k, cfg, ledger, &stats);
        REQUIRE(stats.perPassExtractionPeak.size() == k);
        CHECK(stats.betaBits == k * stats.sigmaBits);
        for (auto width : stats.perPassExtractionPeak) {
            // measured per-pass width equals (1/K) log2(beta) within 2 bits
            std::uint64_t target = stats.betaBits / k;
            CHECK(width + 2 >= target);
            CHECK(width <= target + 2);
        }
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "gpr/costed_ops.hpp"
#include "gpr/rng.hpp"

using namespace gpr;

TEST_CASE("counters are monotone and additive under merge") {
    SplitMix64 rng(5);
    CostLedger a, b, whole;
    for (int i = 0; i < 500; ++i) {
        Int x(rng.range(-1000000, 1000000));
        Int y(rng.range(-1000000, 1000000));
        CostLedger& part = i % 2 ? a : b;
        costedAdd(x, y, part);
        costedAdd(x, y, whole);
        costedMul(x, y, part);
        costedMul(x, y, whole);
    }
    CostLedger merged;
    merged.merge(a);
    merged.merge(b);
    CHECK(merged.bitAdds == whole.bitAdds);
    CHECK(merged.bitMults == whole.bitMults);
    CHECK(merged.wordOps == whole.wordOps);
    CHECK(merged.peakBitLength == whole.peakBitLength);
    CHECK(merged.scalarMults == whole.scalarMults);
}

TEST_CASE("value and cost are separated: word size changes counters only") {
    auto run = [](std::uint64_t w) {
        CostLedger ledger;
        ledger.w = w;
        ledger.model = CostModel::WordRam;
        Int acc = 1;
        for (int i = 0; i < 50; ++i) acc = costedMul(acc, Int(3), ledger);
        acc = costedAdd(acc, Int::pow2(70), ledger);
        return std::pair{acc, ledger.wordOps};
    };
    auto [v64, w64] = run(64);
    auto [v8, w8] = run(8);
    CHECK(v64 == v8);   // values identical
    CHECK(w8 > w64);    // counters differ with the model parameter
}

TEST_CASE("per-depth peaks stay below the global peak") {
    CostLedger ledger;
    ledger.noteOperandWidth(10);
    {
        DepthScope d1(ledger);
        ledger.noteOperandWidth(14);
        {
            DepthScope d2(ledger);
            ledger.noteOperandWidth(12);
        }
    }
    ledger.notePeak(30);
    CHECK(ledger.perDepthPeak.at(0) == 10);
    CHECK(ledger.perDepthPeak.at(1) == 14);
    CHECK(ledger.perDepthPeak.at(2) == 12);
    for (auto& [d, bits] : ledger.perDepthPeak) CHECK(bits <= ledger.peakBitLength);
    CHECK(ledger.depth == 0);
}

TEST_CASE("default word size satisfies the model hypothesis") {
    CHECK(defaultWordSize(256, 1) == 64);
    CHECK(defaultWordSize(1 << 20, 1 << 16) == 64);
    std::uint64_t w = defaultWordSize(std::uint64_t(1) << 50, std::uint64_t(1) << 20);
    CHECK(w >= 50);
}

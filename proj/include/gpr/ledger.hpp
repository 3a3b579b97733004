#pragma once
// ledger.hpp - Cost ledger: every arithmetic step of the library is routed
// through one of these.
//
// Counter semantics, pinned here once so reports and tests agree:
//   bitAdds    - operand bit-length t per addition/subtraction.
//   bitMults   - Mult(t) = t * ceil(log2(t+1)) per multiplication. The model
//                charge is independent of the multiplication routine actually
//                used (schoolbook computes the value, the ledger prices the
//                FFT-model cost).
//   bitShifts  - operand bit-length t per shift. Charging t covers both the
//                O(w) word-shift convention (t <= w) and multi-word operands.
//   wordOps    - ceil(t/w) per add/shift/move; m*ceil(log2(m+1)) with
//                m = ceil(t/w) per multiplication. Moves are block placements
//                and packing slices: memory traffic counts as word work but
//                not as bit arithmetic.
//   peakBitLength - widest value materialized anywhere.
//   perDepthPeak  - per recursion depth, the widest PACKED-OPERAND entry
//                   handled at that depth, measured as the width of its
//                   fixed-point representative. Product accumulators and
//                   extraction scratch feed peakBitLength only; the per-depth
//                   table tracks what the packing itself must carry.
//   extractionPeakBits - gauge for digit-extraction scratch (digit values,
//                   balanced residues, rounding offsets). Slice-staged runs
//                   reset it per pass to report per-pass extraction width.
//
// Single writer. Parallel subcomputations own private ledgers and merge().

#include <cstdint>
#include <map>
#include <string>

namespace gpr {

enum class CostModel { UniformBit, WordRam };

struct CostLedger {
    CostModel model = CostModel::UniformBit;
    std::uint64_t w = 64; // Word-RAM word size

    std::uint64_t bitAdds = 0;
    std::uint64_t bitMults = 0;
    std::uint64_t bitShifts = 0;
    std::uint64_t wordOps = 0;
    std::uint64_t peakBitLength = 0;
    std::map<int, std::uint64_t> perDepthPeak;

    // auxiliary meters
    std::uint64_t leafProducts = 0;   // leaf-level packed products
    std::uint64_t scalarMults = 0;    // costed multiplications, by count
    std::uint64_t topLevelPasses = 0; // slice-staged passes
    std::uint64_t bmmCalls = 0;       // Boolean products routed through the integer path
    std::uint64_t extractionPeakBits = 0;

    int depth = 0;

    static std::uint64_t ceilLog2Plus1(std::uint64_t t) {
        std::uint64_t v = t + 1, r = 0;
        while ((std::uint64_t(1) << r) < v) ++r;
        return r;
    }

    std::uint64_t words(std::uint64_t t) const { return (t + w - 1) / w; }

    void chargeAdd(std::uint64_t t) {
        bitAdds += t;
        wordOps += words(t);
    }

    void chargeMul(std::uint64_t t) {
        bitMults += t * ceilLog2Plus1(t);
        std::uint64_t m = words(t);
        wordOps += m * ceilLog2Plus1(m);
        ++scalarMults;
    }

    void chargeShift(std::uint64_t t) {
        bitShifts += t;
        wordOps += words(t);
    }

    void chargeMove(std::uint64_t t) { wordOps += words(t); }

    void notePeak(std::uint64_t bits) {
        if (bits > peakBitLength) peakBitLength = bits;
    }

    void noteOperandWidth(std::uint64_t bits) {
        auto& slot = perDepthPeak[depth];
        if (bits > slot) slot = bits;
        notePeak(bits);
    }

    void noteExtractionValue(std::uint64_t bits) {
        if (bits > extractionPeakBits) extractionPeakBits = bits;
        notePeak(bits);
    }

    std::uint64_t bitTotal() const { return bitAdds + bitMults + bitShifts; }

    void merge(const CostLedger& other) {
        bitAdds += other.bitAdds;
        bitMults += other.bitMults;
        bitShifts += other.bitShifts;
        wordOps += other.wordOps;
        leafProducts += other.leafProducts;
        scalarMults += other.scalarMults;
        topLevelPasses += other.topLevelPasses;
        bmmCalls += other.bmmCalls;
        notePeak(other.peakBitLength);
        if (other.extractionPeakBits > extractionPeakBits)
            extractionPeakBits = other.extractionPeakBits;
        for (const auto& [d, bits] : other.perDepthPeak) {
            auto& slot = perDepthPeak[d];
            if (bits > slot) slot = bits;
        }
    }
};

// RAII depth scope for per-depth attribution.
class DepthScope {
public:
    explicit DepthScope(CostLedger& ledger) : ledger_(ledger) { ++ledger_.depth; }
    ~DepthScope() { --ledger_.depth; }
    DepthScope(const DepthScope&) = delete;
    DepthScope& operator=(const DepthScope&) = delete;

private:
    CostLedger& ledger_;
};

// Default word size: large enough for indices and the global base, per the
// Word-RAM hypothesis w = Omega(log n + log Bmax).
inline std::uint64_t defaultWordSize(std::uint64_t n, std::uint64_t bmax) {
    std::uint64_t ln = CostLedger::ceilLog2Plus1(n);
    std::uint64_t lb = CostLedger::ceilLog2Plus1(bmax);
    std::uint64_t need = ln + 2 * lb + 4;
    return need < 64 ? 64 : need;
}

} // namespace gpr

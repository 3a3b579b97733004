#pragma once
// poly_conv.hpp - Exact integer polynomial convolution through the halved
// packing: f = f0 + beta^-1 f1 against g = g1 + beta g0, so the three bands
// of one packed product are f1*g1, the cross term f0*g1 + f1*g0, and f0*g0,
// and the full convolution assembles from band projections alone.

#include <vector>

#include "gpr/extractor.hpp"

namespace gpr {

namespace detail {

// Packed-coefficient convolution, split four ways per level; every element
// is already a materialized packed scalar, so the leaf is one multiplication
// and results accumulate positionwise.
inline void packedConvRecurse(const std::vector<Int>& f, std::size_t f0, std::size_t flen,
                              const std::vector<Int>& g, std::size_t g0, std::size_t glen,
                              std::vector<Int>& out, std::size_t outPos, CostLedger& ledger) {
    if (flen == 1 && glen == 1) {
        out[outPos] = costedAdd(out[outPos], costedMul(f[f0], g[g0], ledger), ledger);
        return;
    }
    std::size_t fh = flen / 2, gh = glen / 2;
    DepthScope scope(ledger);
    packedConvRecurse(f, f0, fh, g, g0, gh, out, outPos, ledger);
    packedConvRecurse(f, f0, fh, g, g0 + gh, gh, out, outPos + gh, ledger);
    packedConvRecurse(f, f0 + fh, fh, g, g0, gh, out, outPos + fh, ledger);
    packedConvRecurse(f, f0 + fh, fh, g, g0 + gh, gh, out, outPos + fh + gh, ledger);
}

} // namespace detail

// Exact f * g for equal power-of-two lengths. The three bands are extracted
// once per output position of the packed product, then placed at offsets
// 0, n/2 and n of the result.
inline std::vector<Int> polyConvolutionGpr(const std::vector<Int>& f, const std::vector<Int>& g,
                                           CostLedger& ledger) {
    if (f.size() != g.size())
        throw LengthMismatch("polyConvolutionGpr: coefficient sequences differ in length");
    std::size_t n = f.size();
    if (n == 0 || !isPowerOfTwo(n))
        throw BadArgument("polyConvolutionGpr: length must be a power of two >= 1");
    if (n == 1) return {costedMul(f[0], g[0], ledger)};

    std::int64_t bmax = 1;
    for (const auto& c : f) bmax = std::max(bmax, c.abs().fitsInt64() ? c.abs().toInt64() : INT64_MAX);
    for (const auto& c : g) bmax = std::max(bmax, c.abs().fitsInt64() ? c.abs().toInt64() : INT64_MAX);
    GlobalBase base = chooseGlobalBase(n, bmax);

    std::size_t half = n / 2;
    // left carrier beta*f0[k] + f1[k]; right carrier g1[k] + beta*g0[k]
    std::vector<Int> fc(half), gc(half);
    for (std::size_t k = 0; k < half; ++k) {
        fc[k] = costedAdd(costedShift(f[k], static_cast<std::int64_t>(base.Q), ledger), f[k + half],
                          ledger);
        gc[k] = costedAdd(g[k + half],
                          costedShift(g[k], static_cast<std::int64_t>(base.Q), ledger), ledger);
        ledger.noteOperandWidth(fc[k].bitLength());
        ledger.noteOperandWidth(gc[k].bitLength());
    }

    std::vector<Int> packed(2 * half - 1);
    detail::packedConvRecurse(fc, 0, half, gc, 0, half, packed, 0, ledger);

    std::vector<Int> result(2 * n - 1);
    for (std::size_t j = 0; j < packed.size(); ++j) {
        Int low = extractBand(packed[j], base, -1, ledger); // (f1*g1)[j]
        Int mid = extractBand(packed[j], base, 0, ledger);  // cross[j]
        Int high = extractBand(packed[j], base, 1, ledger); // (f0*g0)[j]
        result[j] = costedAdd(result[j], high, ledger);
        result[j + half] = costedAdd(result[j + half], mid, ledger);
        result[j + n] = costedAdd(result[j + n], low, ledger);
    }
    return result;
}

} // namespace gpr

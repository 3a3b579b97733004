#pragma once
// extractor.hpp - Two-round middle-digit extractor, slack predicates, depth
// bounds, and global base selection. All digit arithmetic runs on the scaled
// integer V = beta * z, so rounding is exact integer work.

#include "gpr/costed_ops.hpp"
#include "gpr/packing.hpp"

namespace gpr {

inline bool isPowerOfTwo(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

// S_l = (n / 2^(l+1)) * Bmax^2.
inline Int depthBound(std::size_t n, std::int64_t bmax, unsigned ell) {
    if ((std::uint64_t(2) << ell) > n)
        throw DepthTooDeep("depthBound: 2^(l+1) exceeds n at depth " + std::to_string(ell));
    Int b2 = Int(bmax) * Int(bmax);
    return Int(static_cast<std::int64_t>(n >> (ell + 1))) * b2;
}

struct DepthBoundEntry {
    std::size_t n;
    std::int64_t Bmax;
    unsigned ell;
    Int value; // (n / 2^(l+1)) Bmax^2
};

inline DepthBoundEntry makeDepthBound(std::size_t n, std::int64_t bmax, unsigned ell) {
    return {n, bmax, ell, depthBound(n, bmax, ell)};
}

// beta = 2^ceil(log2(4*S0 + 1)) with S0 = (n/2) Bmax^2. Always rounds up to a
// power of two so every base operation stays a shift.
inline GlobalBase chooseGlobalBase(std::size_t n, std::int64_t bmax) {
    if (n < 2 || !isPowerOfTwo(n))
        throw BadArgument("chooseGlobalBase: n must be a power of two >= 2 (pad first)");
    if (bmax < 1) throw BadArgument("chooseGlobalBase: Bmax must be >= 1");
    GlobalBase base;
    base.n = n;
    base.Bmax = bmax;
    base.S0 = Int(static_cast<std::int64_t>(n / 2)) * Int(bmax) * Int(bmax);
    Int target = Int(4) * base.S0 + Int(1);
    std::uint64_t q = target.bitLength();
    // bitLength gives ceil(log2(x+1)); for x = 2^k exactly we need k, else the
    // bit length of x already equals ceil(log2 x) + ... adjust explicitly.
    if (Int::pow2(q - 1) >= target) q -= 1;
    base.Q = q;
    base.beta = Int::pow2(q);
    return base;
}

// A base that is just an exponent, for property tests over many beta.
inline GlobalBase baseFromExponent(std::uint64_t q) {
    GlobalBase base;
    base.Q = q;
    base.beta = Int::pow2(q);
    return base;
}

// Both integer slack bounds of the extractor: 2|M| <= beta-1 and 4|L| <= beta-1.
inline bool slackHolds(const Int& m, const Int& l, const Int& beta) {
    Int betaMinus1 = beta - Int(1);
    return m.abs().shiftedLeft(1) <= betaMinus1 && l.abs().shiftedLeft(2) <= betaMinus1;
}

inline bool slackHolds(const Int& m, const Int& l, const GlobalBase& base) {
    return slackHolds(m, l, base.beta);
}

// mid_beta on the scaled integer V = beta*z: round(z) - beta*round(z/beta).
// Exactly M whenever the two gap conditions hold; a tie in either rounding
// surfaces as TieDetected.
inline Int midBeta(const Int& vScaled, const GlobalBase& base, CostLedger& ledger) {
    Int r1 = roundDivPow2(vScaled, base.Q, ledger);
    Int r2 = roundDivPow2(vScaled, 2 * base.Q, ledger);
    Int result = costedSub(r1, costedShift(r2, static_cast<std::int64_t>(base.Q), ledger), ledger);
    ledger.noteExtractionValue(base.Q); // rounding offset beta/2 lives in the digit window
    ledger.noteExtractionValue(result.bitLength());
    return result;
}

// Degree-e0 band of a scaled value (V = beta * z): the digit at position
// beta^(e0+1) of V. e0 = 0 is midBeta; other targets shift the window, with
// rounding standing in for the shift when low bands make it inexact.
inline Int extractBand(const Int& vScaled, const GlobalBase& base, int e0, CostLedger& ledger) {
    Int v = vScaled;
    if (e0 > 0) {
        v = roundDivPow2(v, static_cast<std::uint64_t>(e0) * base.Q, ledger);
    } else if (e0 < 0) {
        v = costedShift(v, static_cast<std::int64_t>(-e0) * static_cast<std::int64_t>(base.Q),
                        ledger);
    }
    return midBeta(v, base, ledger);
}

inline IntMatrix midBetaEntrywise(const IntMatrix& vScaled, const GlobalBase& base, int e0,
                                  CostLedger& ledger) {
    IntMatrix out(vScaled.rows(), vScaled.cols(), Provenance::Product);
    for (std::size_t r = 0; r < vScaled.rows(); ++r)
        for (std::size_t c = 0; c < vScaled.cols(); ++c)
            out.at(r, c) = extractBand(vScaled.at(r, c), base, e0, ledger);
    return out;
}

} // namespace gpr

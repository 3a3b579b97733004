#pragma once
// costed_ops.hpp - Ledger-metered primitives on Int.

#include "gpr/bigint.hpp"
#include "gpr/ledger.hpp"

namespace gpr {

inline std::uint64_t bitLength(const Int& x) { return x.bitLength(); }

inline Int costedAdd(const Int& x, const Int& y, CostLedger& ledger) {
    std::uint64_t t = std::max(x.bitLength(), y.bitLength());
    ledger.chargeAdd(t);
    Int r = x + y;
    ledger.notePeak(r.bitLength());
    return r;
}

inline Int costedSub(const Int& x, const Int& y, CostLedger& ledger) {
    std::uint64_t t = std::max(x.bitLength(), y.bitLength());
    ledger.chargeAdd(t);
    Int r = x - y;
    ledger.notePeak(r.bitLength());
    return r;
}

inline Int costedMul(const Int& x, const Int& y, CostLedger& ledger) {
    std::uint64_t t = std::max(x.bitLength(), y.bitLength());
    ledger.chargeMul(t);
    Int r = x * y;
    ledger.notePeak(r.bitLength());
    return r;
}

// x * 2^k. Negative k must shift out only zero bits; anything else means a
// packing invariant was already broken.
inline Int costedShift(const Int& x, std::int64_t k, CostLedger& ledger) {
    ledger.chargeShift(x.bitLength());
    if (k >= 0) {
        Int r = x.shiftedLeft(static_cast<std::uint64_t>(k));
        ledger.notePeak(r.bitLength());
        return r;
    }
    auto down = static_cast<std::uint64_t>(-k);
    if (!x.lowBitsZero(down))
        throw InexactShift("costedShift: shift by 2^-" + std::to_string(down) +
                           " would discard nonzero bits of " + x.toString());
    Int r = x.shiftedRightTruncate(down);
    ledger.notePeak(r.bitLength());
    return r;
}

// round(x / 2^k), half away from zero. The half point raises TieDetected:
// compliant inputs can never reach it, so reaching it is a diagnosis, not a
// value to resolve.
inline Int roundDivPow2(const Int& x, std::uint64_t k, CostLedger& ledger) {
    if (k == 0) return x;
    ledger.chargeShift(x.bitLength());
    ledger.chargeAdd(std::max<std::uint64_t>(x.bitLength(), k));
    Int q = x.shiftedRightTruncate(k); // toward zero
    Int rem = x.lowBits(k);            // carries x's sign
    if (rem.isZero()) return q;
    Int twice = rem.abs().shiftedLeft(1);
    Int mod = Int::pow2(k);
    auto c = twice <=> mod;
    if (c == std::strong_ordering::equal)
        throw TieDetected("roundDivPow2: exact half at bit " + std::to_string(k) +
                          " for " + x.toString());
    if (c == std::strong_ordering::greater)
        q += x.isNegative() ? Int(-1) : Int(1);
    ledger.notePeak(q.bitLength());
    return q;
}

// Balanced remainder: x - 2^k * round(x / 2^k), in (-2^(k-1), 2^(k-1)).
inline Int balancedRemPow2(const Int& x, std::uint64_t k, CostLedger& ledger) {
    Int q = roundDivPow2(x, k, ledger);
    Int r = costedSub(x, q.shiftedLeft(k), ledger);
    return r;
}

} // namespace gpr

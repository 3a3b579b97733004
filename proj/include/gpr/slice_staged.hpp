#pragma once
// slice_staged.hpp - K-pass digit-sliced extraction: factor the wide base as
// beta = sigma^K, extract one balanced base-sigma digit of the target band
// per pass, and reconstruct the band as sum of digit * sigma^s.

#include <vector>

#include "gpr/gpr_matmul.hpp"

namespace gpr {

struct SliceConfig {
    unsigned K = 2;
    GlobalBase sigma;   // per-stage base, smallest compliant power of two
    Int beta;           // sigma^K
    std::uint64_t betaBits = 0; // log2(beta) = K * sigma.Q
};

inline SliceConfig makeSliceConfig(std::size_t n, std::int64_t bmax, unsigned k) {
    if (k < 2) throw BadArgument("slice staging requires K >= 2");
    SliceConfig cfg;
    cfg.K = k;
    cfg.sigma = chooseGlobalBase(n, bmax);
    cfg.betaBits = static_cast<std::uint64_t>(k) * cfg.sigma.Q;
    cfg.beta = Int::pow2(cfg.betaBits);
    return cfg;
}

// Digit s of the target band: mid_sigma(sigma^(-e0-s) Z - sum_{t<s} d_t sigma^(t-s))
// evaluated on the scaled integer V = sigma * Z. The subtraction must cancel
// the digit positions below s exactly; a nonzero residue there means the
// previous digits were wrong and raises InexactShift.
inline Int perSliceExtract(const Int& vScaled, const GlobalBase& sigma, int e0, unsigned s,
                           const std::vector<Int>& previousDigits, CostLedger& ledger) {
    if (previousDigits.size() != s)
        throw BadArgument("perSliceExtract: need exactly s previous digits");
    if (e0 < -1) throw BadArgument("perSliceExtract: target degree below the carried bands");
    Int n = vScaled;
    for (unsigned t = 0; t < s; ++t) {
        std::int64_t up = (e0 + static_cast<std::int64_t>(t) + 1) *
                          static_cast<std::int64_t>(sigma.Q);
        n = costedSub(n, costedShift(previousDigits[t], up, ledger), ledger);
    }
    std::uint64_t dExp = static_cast<std::uint64_t>(e0 + 1) + s;

    if (s > 0) {
        // digits 0..s-1 of the remaining mid band must have cancelled
        Int core = roundDivPow2(n, static_cast<std::uint64_t>(e0 + 1) * sigma.Q, ledger);
        Int low = balancedRemPow2(core, static_cast<std::uint64_t>(s) * sigma.Q, ledger);
        if (!low.isZero())
            throw InexactShift("perSliceExtract: residue " + low.toString() +
                               " below digit " + std::to_string(s) +
                               "; previous digits are inconsistent");
    }

    Int r1 = roundDivPow2(n, dExp * sigma.Q, ledger);
    Int r2 = roundDivPow2(n, (dExp + 1) * sigma.Q, ledger);
    Int digit = costedSub(r1, costedShift(r2, static_cast<std::int64_t>(sigma.Q), ledger), ledger);
    ledger.noteExtractionValue(sigma.Q); // rounding offset sigma/2 in the digit window
    ledger.noteExtractionValue(digit.bitLength());
    return digit;
}

// M = sum over s of digits[s] * sigma^s.
inline Int reconstruct(const std::vector<Int>& digits, const GlobalBase& sigma,
                       CostLedger& ledger) {
    Int m = 0;
    for (std::size_t s = digits.size(); s-- > 0;)
        m = costedAdd(costedShift(m, static_cast<std::int64_t>(sigma.Q), ledger), digits[s],
                      ledger);
    return m;
}

struct SliceRunStats {
    unsigned K = 0;
    std::uint64_t sigmaBits = 0;
    std::uint64_t betaBits = 0;
    std::vector<std::uint64_t> perPassExtractionPeak;
};

namespace detail {

// One per-slice pass of the panel recursion. prevDigits holds, for every
// already-finished pass, the digit matrix restricted to this call's output
// block. The upper band of the leaf value sits directly above the digit
// window, so it is masked by a balanced remainder before digit extraction.
inline IntMatrix perSlicePass(const PackedMatrix& r, const PackedMatrix& s,
                              const GlobalBase& sigma, int e0, unsigned pass,
                              const std::vector<IntMatrix>& prevDigits, const GprConfig& cfg,
                              CostLedger& ledger) {
    notePackedOperand(r, sigma, ledger);
    notePackedOperand(s, sigma, ledger);
    std::size_t h = r.rows(), w = s.cols();
    if (h <= cfg.n0 && w <= cfg.n0) {
        IntMatrix z = leafScaledProduct(r, s, sigma, ledger);
        IntMatrix out(h, w, Provenance::Product);
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j) {
                Int masked = balancedRemPow2(z.at(i, j),
                                             static_cast<std::uint64_t>(e0 + 2) * sigma.Q,
                                             ledger);
                std::vector<Int> prev;
                prev.reserve(prevDigits.size());
                for (const auto& dm : prevDigits) prev.push_back(dm.at(i, j));
                out.at(i, j) = perSliceExtract(masked, sigma, e0, pass, prev, ledger);
            }
        return out;
    }
    if (h % 2 != 0 || w % 2 != 0) throw OddDimension("perSlicePass: odd block dimension");

    std::size_t m = r.cols();
    IntMatrix x0 = project(r, 0), x1 = project(r, -1);
    IntMatrix y0 = project(s, 0), y1 = project(s, 1);
    IntMatrix out(h, w, Provenance::Product);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            PackedMatrix cr(h / 2, m), cs(m, w / 2);
            cr.setBlock(0, x0.block(i * h / 2, 0, h / 2, m));
            cr.setBlock(-1, x1.block(i * h / 2, 0, h / 2, m));
            cs.setBlock(0, y0.block(0, j * w / 2, m, w / 2));
            cs.setBlock(1, y1.block(0, j * w / 2, m, w / 2));
            std::vector<IntMatrix> childPrev;
            childPrev.reserve(prevDigits.size());
            for (const auto& dm : prevDigits)
                childPrev.push_back(dm.block(i * h / 2, j * w / 2, h / 2, w / 2));
            IntMatrix q;
            {
                DepthScope scope(ledger);
                q = perSlicePass(cr, cs, sigma, e0, pass, childPrev, cfg, ledger);
            }
            chargePlacement(q, ledger);
            out.place(q, i * h / 2, j * w / 2);
        }
    return out;
}

} // namespace detail

// K-pass driver: same output as gprTop, with per-pass extraction running in
// the sigma digit window instead of the full beta window.
inline IntMatrix gprTopSliceStaged(const IntMatrix& a, const IntMatrix& b, unsigned k,
                                   const GprConfig& cfgIn, CostLedger& ledger,
                                   SliceRunStats* stats = nullptr) {
    if (k < 2) throw BadArgument("gprTopSliceStaged: K must be >= 2");
    GprConfig cfg = cfgIn;
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw ShapeMismatch("gprTopSliceStaged: inputs must be square and equal-sized");
    Int bound(cfg.Bmax);
    if (a.maxAbs() > bound || b.maxAbs() > bound)
        throw EntryBoundViolation("gprTopSliceStaged: entry exceeds Bmax");

    std::size_t n = a.rows();
    std::size_t padded = detail::nextPowerOfTwo(n);
    IntMatrix pa = padded == n ? a : a.paddedTo(padded, padded);
    IntMatrix pb = padded == n ? b : b.paddedTo(padded, padded);

    if (padded <= cfg.n0) return schoolbookOracle(a, b, ledger);

    SliceConfig slice = makeSliceConfig(padded, cfg.Bmax, k);
    if (stats) {
        stats->K = k;
        stats->sigmaBits = slice.sigma.Q;
        stats->betaBits = slice.betaBits;
        stats->perPassExtractionPeak.clear();
    }

    auto packs = quadrantPackings(pa, pb);
    std::size_t half = padded / 2;
    std::vector<IntMatrix> digits; // digit matrices of the full (padded) output
    for (unsigned s = 0; s < k; ++s) {
        ++ledger.topLevelPasses;
        ledger.extractionPeakBits = 0;
        IntMatrix pass(padded, padded, Provenance::Product);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                const auto& pk = packs[i * 2 + j];
                std::vector<IntMatrix> prevBlocks;
                prevBlocks.reserve(digits.size());
                for (const auto& dm : digits)
                    prevBlocks.push_back(dm.block(i * half, j * half, half, half));
                IntMatrix q = detail::perSlicePass(pk.R, pk.S, slice.sigma, 0, s, prevBlocks,
                                                   cfg, ledger);
                detail::chargePlacement(q, ledger);
                pass.place(q, i * half, j * half);
            }
        if (stats) stats->perPassExtractionPeak.push_back(ledger.extractionPeakBits);
        digits.push_back(std::move(pass));
    }

    IntMatrix out(padded, padded, Provenance::Product);
    for (std::size_t i = 0; i < padded; ++i)
        for (std::size_t j = 0; j < padded; ++j) {
            std::vector<Int> ds;
            ds.reserve(k);
            for (const auto& dm : digits) ds.push_back(dm.at(i, j));
            out.at(i, j) = reconstruct(ds, slice.sigma, ledger);
        }
    return padded == n ? out : out.block(0, 0, n, n);
}

} // namespace gpr

#pragma once
// gpr_matmul.hpp - Recursive packed matrix multiplication: the top-level
// driver, the packed recursion in its three variants, the schoolbook oracle,
// and the conformance harness.
//
// Recursion variants, because the packed recursion can be read two ways:
//   LiteralRecursion  - children receive the i-th block-row panel of the left
//                       coefficients and the j-th block-column panel of the
//                       right ones. The per-level two-pair sum is realized
//                       inside the child, whose leaf therefore evaluates a
//                       packed dot product. Reproduces the classical product.
//   SquareRecursion   - children receive coefficient quadrants (i,j) and stay
//                       square, giving the T(n) = 4T(n/2) + O(n^2) recurrence.
//                       Each leaf carries exactly two scalar products, so the
//                       cross-block dot terms are never formed: output differs
//                       from the classical product for n >= 4. Kept as a
//                       measurable realization of that recurrence; conformance
//                       runs against it document the discrepancy.
//   SingleLevelPacked - one packing level per call; the four band products of
//                       each quadrant are computed by recursive top-level
//                       calls on unpacked blocks, then assembled, materialized
//                       and extracted. Correct by the projection identity
//                       alone; serves as the fallback comparator.

#include <array>
#include <optional>
#include <string>

#include "gpr/extractor.hpp"
#include "gpr/packing.hpp"

namespace gpr {

enum class RecursionMode { LiteralRecursion, SingleLevelPacked, SquareRecursion };

inline const char* modeName(RecursionMode m) {
    switch (m) {
    case RecursionMode::LiteralRecursion: return "literal";
    case RecursionMode::SingleLevelPacked: return "single-level";
    case RecursionMode::SquareRecursion: return "square";
    }
    return "?";
}

struct GprConfig {
    std::size_t n0 = 1; // base-case cutoff, power of two
    bool auditCO = false;
    RecursionMode mode = RecursionMode::LiteralRecursion;
    std::int64_t Bmax = 1;
};

// Coefficient Ownership audit: packed operands must be unscaled input blocks
// with the canonical supports, and extracted values must stay within the
// global slack (2*S0 <= (beta-1)/2). Per-depth maxima of returned entries are
// recorded as data either way.
struct CoAudit {
    bool enabled = false;
    std::int64_t bmax = 1;
    Int returnBound; // 2 * S0
    std::uint64_t packedChecked = 0;
    std::map<int, Int> perDepthReturnMax;
    std::vector<std::string> violations;

    void checkOperand(const PackedMatrix& p, bool left, int depth) {
        if (!enabled) return;
        ++packedChecked;
        for (int d : p.support()) {
            bool ok = left ? (d == -1 || d == 0) : (d == 0 || d == 1);
            if (!ok)
                fail("degree " + std::to_string(d) + " in " + (left ? "left" : "right") +
                     " operand at depth " + std::to_string(depth));
        }
        Int bound(bmax);
        for (const auto& [d, m] : p.blocks()) {
            if (m.provenance() != Provenance::Input)
                fail("product-derived block repacked at degree " + std::to_string(d) +
                     ", depth " + std::to_string(depth));
            if (m.maxAbs() > bound)
                fail("coefficient above Bmax at degree " + std::to_string(d) + ", depth " +
                     std::to_string(depth));
        }
    }

    void checkReturn(const IntMatrix& m, int depth) {
        if (!enabled) return;
        Int mx = m.maxAbs();
        auto it = perDepthReturnMax.find(depth);
        if (it == perDepthReturnMax.end() || mx > it->second) perDepthReturnMax[depth] = mx;
        if (!returnBound.isZero() && mx > returnBound)
            fail("returned coefficient " + mx.toString() + " exceeds 2*S0 = " +
                 returnBound.toString() + " at depth " + std::to_string(depth));
    }

    void fail(const std::string& what) {
        violations.push_back(what);
        throw ContractViolation("coefficient ownership: " + what);
    }
};

inline IntMatrix schoolbookOracle(const IntMatrix& a, const IntMatrix& b, CostLedger& ledger) {
    return costedMatMul(a, b, ledger);
}

struct QuadrantPacking {
    PackedMatrix R, S;
};

// The four packings, one per output quadrant:
//   R_i1 = A_i1 + beta^-1 A_i2,  S_1j = B_1j + beta B_2j  (indices collapsed
//   so quadrant (i,j) pairs block row i of A with block column j of B).
inline std::array<QuadrantPacking, 4> quadrantPackings(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() % 2 != 0 || a.cols() % 2 != 0 || b.rows() % 2 != 0 || b.cols() % 2 != 0)
        throw OddDimension("quadrantPackings: dimensions must be even");
    std::size_t h = a.rows() / 2, m = a.cols() / 2, w = b.cols() / 2;
    std::array<QuadrantPacking, 4> out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            PackedMatrix r(h, m), s(m, w);
            r.setBlock(0, a.block(i * h, 0, h, m));
            r.setBlock(-1, a.block(i * h, m, h, m));
            s.setBlock(0, b.block(0, j * w, m, w));
            s.setBlock(1, b.block(m, j * w, m, w));
            out[i * 2 + j] = {std::move(r), std::move(s)};
        }
    return out;
}

namespace detail {

// sum over d of beta^d P^[d]; valid once all degrees are nonnegative.
inline IntMatrix materializeNonnegative(const PackedMatrix& p, const GlobalBase& base,
                                        CostLedger& ledger) {
    if (!p.blocks().empty() && p.minDegree() < 0)
        throw UnsupportedSupport("materializeNonnegative: negative degree present");
    IntMatrix v(p.rows(), p.cols(), Provenance::Product);
    for (const auto& [d, m] : p.blocks()) {
        std::int64_t up = d * static_cast<std::int64_t>(base.Q);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (m.at(r, c).isZero()) continue;
                v.at(r, c) = costedAdd(v.at(r, c), costedShift(m.at(r, c), up, ledger), ledger);
            }
    }
    return v;
}

// Leaf evaluation: materialize the left side scaled (beta * r) and the right
// side as-is (degrees {0,+1} are already integral), multiply and accumulate.
// The running sum is the scaled product beta * z, ready for extraction.
inline IntMatrix leafScaledProduct(const PackedMatrix& r, const PackedMatrix& s,
                                   const GlobalBase& base, CostLedger& ledger) {
    IntMatrix vr = materializeScaled(r, base, ledger);      // beta^(d+1): exact for {-1,0}
    IntMatrix vs = materializeNonnegative(s, base, ledger); // beta^d: exact for {0,+1}
    IntMatrix z(r.rows(), s.cols(), Provenance::Product);
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) {
            Int acc = 0;
            for (std::size_t k = 0; k < r.cols(); ++k)
                acc = costedAdd(acc, costedMul(vr.at(i, k), vs.at(k, j), ledger), ledger);
            z.at(i, j) = acc;
        }
    ++ledger.leafProducts;
    return z;
}

inline void chargePlacement(const IntMatrix& m, CostLedger& ledger) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) ledger.chargeMove(m.at(r, c).bitLength());
}

} // namespace detail

// Packed recursion. Returns the extracted degree-e0 coefficient matrix of the
// product R(beta) * S(beta); extraction happens only at leaves.
inline IntMatrix gprPacked(const PackedMatrix& r, const PackedMatrix& s, const GlobalBase& base,
                           int e0, const GprConfig& cfg, CostLedger& ledger, int depth,
                           CoAudit* audit = nullptr) {
    if (r.cols() != s.rows()) throw ShapeMismatch("gprPacked: inner dimensions differ");
    notePackedOperand(r, base, ledger);
    notePackedOperand(s, base, ledger);
    if (audit) {
        audit->checkOperand(r, true, depth);
        audit->checkOperand(s, false, depth);
    }

    std::size_t h = r.rows(), w = s.cols();
    if (h <= cfg.n0 && w <= cfg.n0) {
        IntMatrix z = detail::leafScaledProduct(r, s, base, ledger);
        IntMatrix out = midBetaEntrywise(z, base, e0, ledger);
        if (audit) audit->checkReturn(out, depth);
        return out;
    }
    if (h % 2 != 0 || w % 2 != 0) throw OddDimension("gprPacked: odd block dimension");

    std::size_t m = r.cols();
    IntMatrix x0 = project(r, 0), x1 = project(r, -1);
    IntMatrix y0 = project(s, 0), y1 = project(s, 1);
    IntMatrix out(h, w, Provenance::Product);

    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            PackedMatrix cr, cs;
            if (cfg.mode == RecursionMode::SquareRecursion) {
                if (m % 2 != 0) throw OddDimension("gprPacked: odd inner dimension");
                cr = PackedMatrix(h / 2, m / 2);
                cr.setBlock(0, x0.block(i * h / 2, j * m / 2, h / 2, m / 2));
                cr.setBlock(-1, x1.block(i * h / 2, j * m / 2, h / 2, m / 2));
                cs = PackedMatrix(m / 2, w / 2);
                cs.setBlock(0, y0.block(i * m / 2, j * w / 2, m / 2, w / 2));
                cs.setBlock(1, y1.block(i * m / 2, j * w / 2, m / 2, w / 2));
            } else {
                cr = PackedMatrix(h / 2, m);
                cr.setBlock(0, x0.block(i * h / 2, 0, h / 2, m));
                cr.setBlock(-1, x1.block(i * h / 2, 0, h / 2, m));
                cs = PackedMatrix(m, w / 2);
                cs.setBlock(0, y0.block(0, j * w / 2, m, w / 2));
                cs.setBlock(1, y1.block(0, j * w / 2, m, w / 2));
            }
            IntMatrix q;
            {
                DepthScope scope(ledger);
                q = gprPacked(cr, cs, base, e0, cfg, ledger, depth + 1, audit);
            }
            detail::chargePlacement(q, ledger);
            out.place(q, i * h / 2, j * w / 2);
        }
    if (audit) audit->checkReturn(out, depth);
    return out;
}

namespace detail {

inline std::size_t nextPowerOfTwo(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline IntMatrix gprTopImpl(const IntMatrix& a, const IntMatrix& b, const GprConfig& cfg,
                            CostLedger& ledger, CoAudit* audit);

// One packing level; band products by recursive top-level calls on unpacked
// blocks; numeric extraction of the degree-0 band with this level's base.
inline IntMatrix singleLevelQuadrant(const IntMatrix& a, const IntMatrix& b, std::size_t i,
                                     std::size_t j, const GlobalBase& base, const GprConfig& cfg,
                                     CostLedger& ledger, CoAudit* audit) {
    std::size_t half = a.rows() / 2;
    IntMatrix ai1 = a.block(i * half, 0, half, half);
    IntMatrix ai2 = a.block(i * half, half, half, half);
    IntMatrix b1j = b.block(0, j * half, half, half);
    IntMatrix b2j = b.block(half, j * half, half, half);

    PackedMatrix z(half, half);
    z.setBlock(-1, gprTopImpl(ai2, b1j, cfg, ledger, audit));
    z.setBlock(0, costedMatAdd(gprTopImpl(ai1, b1j, cfg, ledger, audit),
                               gprTopImpl(ai2, b2j, cfg, ledger, audit), ledger));
    z.setBlock(1, gprTopImpl(ai1, b2j, cfg, ledger, audit));
    IntMatrix scaled = materializeScaled(z, base, ledger);
    return midBetaEntrywise(scaled, base, 0, ledger);
}

inline IntMatrix gprTopImpl(const IntMatrix& a, const IntMatrix& b, const GprConfig& cfg,
                            CostLedger& ledger, CoAudit* audit) {
    std::size_t n = a.rows();
    if (n <= cfg.n0) return schoolbookOracle(a, b, ledger);

    GlobalBase base = chooseGlobalBase(n, cfg.Bmax);
    if (audit && audit->enabled && audit->returnBound.isZero())
        audit->returnBound = base.S0.shiftedLeft(1);

    IntMatrix c(n, n, Provenance::Product);
    if (cfg.mode == RecursionMode::SingleLevelPacked) {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                IntMatrix q = singleLevelQuadrant(a, b, i, j, base, cfg, ledger, audit);
                chargePlacement(q, ledger);
                c.place(q, i * n / 2, j * n / 2);
            }
        return c;
    }

    auto packs = quadrantPackings(a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const auto& pk = packs[i * 2 + j];
            IntMatrix q = gprPacked(pk.R, pk.S, base, 0, cfg, ledger, 0, audit);
            chargePlacement(q, ledger);
            c.place(q, i * n / 2, j * n / 2);
        }
    return c;
}

} // namespace detail

// Top-level driver: validates the entry bound, zero-pads to a power of two,
// runs the configured recursion, and strips the padding again.
inline IntMatrix gprTop(const IntMatrix& a, const IntMatrix& b, const GprConfig& cfg,
                        CostLedger& ledger, CoAudit* audit = nullptr) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw ShapeMismatch("gprTop: inputs must be square and equal-sized");
    Int bound(cfg.Bmax);
    if (a.maxAbs() > bound || b.maxAbs() > bound)
        throw EntryBoundViolation("gprTop: entry exceeds Bmax = " + std::to_string(cfg.Bmax));

    std::size_t n = a.rows();
    std::size_t padded = detail::nextPowerOfTwo(n);
    if (padded == n) return detail::gprTopImpl(a, b, cfg, ledger, audit);
    IntMatrix pa = a.paddedTo(padded, padded);
    IntMatrix pb = b.paddedTo(padded, padded);
    IntMatrix pc = detail::gprTopImpl(pa, pb, cfg, ledger, audit);
    return pc.block(0, 0, n, n);
}

struct Mismatch {
    std::uint64_t trial = 0;
    std::size_t row = 0, col = 0;
    std::string expected, got;
    std::string quadrantPath; // top-down quadrant labels for the entry
    int depth = 0;
};

struct ConformanceReport {
    std::size_t n = 0;
    std::int64_t bmax = 1;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    RecursionMode mode = RecursionMode::LiteralRecursion;
    bool passed = true;
    std::optional<Mismatch> firstMismatch;
    CostLedger ledger;
};

inline std::string quadrantPathOf(std::size_t row, std::size_t col, std::size_t n,
                                  std::size_t n0) {
    std::string path;
    std::size_t size = n;
    while (size > n0 && size > 1) {
        std::size_t half = size / 2;
        path += std::to_string(row / half + 1);
        path += std::to_string(col / half + 1);
        row %= half;
        col %= half;
        size = half;
        if (size > n0) path += '.';
    }
    return path;
}

// Random-instance comparison against the schoolbook oracle. A mismatch is a
// report outcome, not an error: the harness records the first offending entry
// with everything needed to replay it.
inline ConformanceReport runConformance(std::size_t n, std::int64_t bmax, std::uint64_t trials,
                                        std::uint64_t seed, const GprConfig& cfgIn) {
    GprConfig cfg = cfgIn;
    cfg.Bmax = bmax;
    ConformanceReport rep;
    rep.n = n;
    rep.bmax = bmax;
    rep.seed = seed;
    rep.trials = trials;
    rep.mode = cfg.mode;
    rep.ledger.w = defaultWordSize(n, static_cast<std::uint64_t>(bmax));
    SplitMix64 rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        IntMatrix a = IntMatrix::random(n, n, bmax, rng);
        IntMatrix b = IntMatrix::random(n, n, bmax, rng);
        IntMatrix got = gprTop(a, b, cfg, rep.ledger);
        CostLedger oracleLedger;
        IntMatrix want = schoolbookOracle(a, b, oracleLedger);
        if (got == want) continue;
        for (std::size_t r = 0; r < n && !rep.firstMismatch; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (!(got.at(r, c) == want.at(r, c))) {
                    Mismatch m;
                    m.trial = t;
                    m.row = r;
                    m.col = c;
                    m.expected = want.at(r, c).toString();
                    m.got = got.at(r, c).toString();
                    std::size_t padded = detail::nextPowerOfTwo(n);
                    m.quadrantPath = quadrantPathOf(r, c, padded, cfg.n0);
                    m.depth = static_cast<int>(m.quadrantPath.size() / 3) + 1;
                    rep.firstMismatch = m;
                    rep.passed = false;
                    break;
                }
        if (!rep.passed) break;
    }
    return rep;
}

} // namespace gpr

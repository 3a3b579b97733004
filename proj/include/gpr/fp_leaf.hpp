#pragma once
// fp_leaf.hpp - Floating-point leaf evaluation with exact integral projection:
// bandwise pairwise reductions under a certified error budget, the U-free
// two-round extractor, the guard inequality, and the classical-dot comparator.

#include <cmath>
#include <utility>
#include <vector>

#include "gpr/gpr_matmul.hpp"
#include "gpr/rational.hpp"

namespace gpr {

// ---- double-double scratch type ------------------------------------------

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2. Error-free transforms are
// the usual two-sum / fma product split.
struct DD {
    double hi = 0.0, lo = 0.0;

    static DD twoSum(double a, double b) {
        double s = a + b;
        double bb = s - a;
        double err = (a - (s - bb)) + (b - bb);
        return {s, err};
    }

    static DD twoProd(double a, double b) {
        double p = a * b;
        double err = std::fma(a, b, -p);
        return {p, err};
    }

    friend DD operator+(const DD& a, const DD& b) {
        DD s = twoSum(a.hi, b.hi);
        double lo = s.lo + a.lo + b.lo;
        DD r = twoSum(s.hi, lo);
        return r;
    }

    // Exact when the divisor is a power of two.
    DD scaledByPow2(double inv) const { return {hi * inv, lo * inv}; }

    double value() const { return hi + lo; }
};

enum class FpPrecision { Double, DoubleDouble };

inline const char* precisionName(FpPrecision p) {
    return p == FpPrecision::Double ? "double" : "double-double";
}

// Unit roundoff of the working format. 2^-53 for IEEE double; the
// double-double bound is taken conservatively as 2^-100.
inline Rational unitRoundoff(FpPrecision p) {
    return p == FpPrecision::Double ? Rational::pow2(-53) : Rational::pow2(-100);
}

// gamma_p = p*u / (1 - p*u), the pairwise-summation coefficient.
inline Rational gammaOf(std::uint64_t p, const Rational& u) {
    Rational pu = Rational(Int(static_cast<std::int64_t>(p))) * u;
    return pu / (Rational(Int(1)) - pu);
}

// The single working precision sufficient for every depth:
// u <= 1 / (8 * ceil(log2(n/2)) * n * Bmax^2).
inline Rational requiredUnitRoundoff(std::size_t n, std::int64_t bmax) {
    if (n < 4 || !isPowerOfTwo(n))
        throw BadArgument("requiredUnitRoundoff: n must be a power of two >= 4");
    std::uint64_t p = 0;
    while ((std::uint64_t(1) << p) < n / 2) ++p; // ceil(log2(n/2)), n/2 a power of two
    Int den = Int(8) * Int(static_cast<std::int64_t>(p)) * Int(static_cast<std::int64_t>(n)) *
              Int(bmax) * Int(bmax);
    return Rational(Int(1), den);
}

// Cheapest available format whose roundoff meets the requirement.
inline FpPrecision selectPrecision(const Rational& uRequired) {
    if (unitRoundoff(FpPrecision::Double) <= uRequired) return FpPrecision::Double;
    if (unitRoundoff(FpPrecision::DoubleDouble) <= uRequired) return FpPrecision::DoubleDouble;
    throw PrecisionInsufficient("no available format reaches u <= " +
                                uRequired.num.toString() + "/" + uRequired.den.toString());
}

// Middle/lower band estimates with their certified budgets.
struct BandPair {
    DD mHat, lHat;
    Rational deltaMBound; // certified |mHat - M|
    Rational etaL;        // certified |lHat - L|
};

struct FpGuard {
    Int S0;
    Int SLell;
    Rational etaL;
    Rational deltaMBound;
    Int beta;
};

// Exact evaluation of both guard clauses:
// beta >= 4(S0 + etaL) + 1  and  deltaM + (S_l + etaL)/beta < 1/2.
inline bool fpGuardHolds(const FpGuard& g) {
    Rational beta{g.beta};
    Rational four{Int(4)};
    if (beta < four * (Rational(g.S0) + g.etaL) + Rational(Int(1))) return false;
    Rational lhs = g.deltaMBound + (Rational(g.SLell) + g.etaL) / beta;
    return lhs < Rational(Int(1), Int(2));
}

// beta = 2^ceil(log2(4(S0 + etaL) + 1)).
inline GlobalBase choosePlugAndPlayBase(const Int& s0, const Rational& etaL) {
    if (etaL < Rational(Int(0))) throw BadArgument("choosePlugAndPlayBase: etaL must be >= 0");
    Rational target = Rational(Int(4)) * (Rational(s0) + etaL) + Rational(Int(1));
    std::uint64_t q = 1;
    while (Rational::pow2(static_cast<std::int64_t>(q)) < target) ++q;
    GlobalBase base;
    base.Q = q;
    base.beta = Int::pow2(q);
    base.S0 = s0;
    return base;
}

namespace detail {

inline double toDoubleExact(const Int& x) {
    if (x.abs() >= Int::pow2(53))
        throw PrecisionInsufficient("integer " + x.toString() + " not exactly representable");
    return x.toDouble();
}

// ceil(log2(m)) for m >= 1.
inline std::uint64_t ceilLog2(std::uint64_t m) {
    std::uint64_t p = 0;
    while ((std::uint64_t(1) << p) < m) ++p;
    return p;
}

// Pairwise (balanced-tree) summation.
inline DD pairwiseSumDD(std::vector<DD>& xs, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return xs[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwiseSumDD(xs, lo, mid) + pairwiseSumDD(xs, mid, hi);
}

inline double pairwiseSumD(std::vector<double>& xs, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return xs[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwiseSumD(xs, lo, mid) + pairwiseSumD(xs, mid, hi);
}

inline DD reduceProducts(const std::vector<std::pair<Int, Int>>& terms, FpPrecision prec) {
    if (terms.empty()) return {};
    if (prec == FpPrecision::Double) {
        std::vector<double> prods;
        prods.reserve(terms.size());
        for (const auto& [x, y] : terms) {
            // the certified budget covers summation only; products must not round
            if (!x.isZero() && !y.isZero() && x.bitLength() + y.bitLength() > 53)
                throw PrecisionInsufficient("product of " + x.toString() + " and " +
                                            y.toString() + " would round in double");
            prods.push_back(toDoubleExact(x) * toDoubleExact(y));
        }
        return {pairwiseSumD(prods, 0, prods.size()), 0.0};
    }
    std::vector<DD> prods;
    prods.reserve(terms.size());
    for (const auto& [x, y] : terms)
        prods.push_back(DD::twoProd(toDoubleExact(x), toDoubleExact(y)));
    return pairwiseSumDD(prods, 0, prods.size());
}

inline Int roundDDToInt(const DD& v) {
    double y = std::nearbyint(v.hi);
    double frac = (v.hi - y) + v.lo; // exact: y is integral, v.hi close to it
    if (frac > 0.5)
        y += 1.0;
    else if (frac < -0.5)
        y -= 1.0;
    return Int(static_cast<std::int64_t>(std::llround(y)));
}

} // namespace detail

// Separate pairwise reductions of the two bands. midBudget and lowBudget are
// the a-priori sums of absolute products (2*S_l and S_l); the certified
// errors are gamma_p times these budgets, never an empirical estimate.
// (R*) is enforced with a fixed strictness margin tau = 2^-20.
inline BandPair bandwiseReduce(const std::vector<std::pair<Int, Int>>& midTerms,
                               const std::vector<std::pair<Int, Int>>& lowTerms,
                               FpPrecision precision, const Rational& midBudget,
                               const Rational& lowBudget) {
    BandPair out;
    out.mHat = detail::reduceProducts(midTerms, precision);
    out.lHat = detail::reduceProducts(lowTerms, precision);
    Rational u = unitRoundoff(precision);
    std::uint64_t pMid = midTerms.empty() ? 0 : detail::ceilLog2(midTerms.size());
    std::uint64_t pLow = lowTerms.empty() ? 0 : detail::ceilLog2(lowTerms.size());
    out.deltaMBound = pMid == 0 ? Rational(Int(0)) : gammaOf(pMid, u) * midBudget;
    out.etaL = pLow == 0 ? Rational(Int(0)) : gammaOf(pLow, u) * lowBudget;
    Rational quarter(Int(1), Int(4));
    Rational tau = Rational::pow2(-20);
    if (out.deltaMBound > quarter - tau)
        throw PrecisionInsufficient("band reduction cannot certify |dM| <= 1/4 - 2^-20");
    return out;
}

// U-free extractor: r1 = round(M^ + L^/beta), r2 = round(M^/beta + L^/beta^2),
// result r1 - beta*r2. The U band is never formed. Under the guard the result
// is the exact integer band.
inline Int uFreeExtract(const BandPair& pair, const GlobalBase& base,
                        const FpGuard* guard = nullptr) {
    if (guard && !fpGuardHolds(*guard))
        throw GuardViolated("uFreeExtract: guard inequality fails; fall back to the exact leaf");
    double invBeta = std::ldexp(1.0, -static_cast<int>(base.Q));
    DD arg1 = pair.mHat + pair.lHat.scaledByPow2(invBeta);
    DD arg2 = pair.mHat.scaledByPow2(invBeta) + pair.lHat.scaledByPow2(invBeta * invBeta);
    Int r1 = detail::roundDDToInt(arg1);
    Int r2 = detail::roundDDToInt(arg2);
    return r1 - r2.shiftedLeft(base.Q);
}

// Pairwise dot product in the given precision together with its a-priori
// bound gamma_p * sum |a_i b_i| (p = ceil(log2 n)).
struct FpDotResult {
    double value = 0.0;
    Rational errorBound;
};

inline FpDotResult classicalDotFp(const std::vector<Int>& a, const std::vector<Int>& b,
                                  FpPrecision precision) {
    if (a.size() != b.size()) throw LengthMismatch("classicalDotFp: length mismatch");
    FpDotResult res;
    if (a.empty()) return res;
    std::vector<std::pair<Int, Int>> terms;
    terms.reserve(a.size());
    Int absSum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        terms.emplace_back(a[i], b[i]);
        absSum += (a[i] * b[i]).abs();
    }
    res.value = detail::reduceProducts(terms, precision).value();
    std::uint64_t p = detail::ceilLog2(a.size());
    res.errorBound = p == 0 ? Rational(Int(0)) : gammaOf(p, unitRoundoff(precision)) * Rational(absSum);
    return res;
}

// ---- FP-leaf GPR ----------------------------------------------------------

struct FpRunSetup {
    FpPrecision precision = FpPrecision::Double;
    GlobalBase base;
    FpGuard guard;
};

// Precision from the constructive bound, base from the plug-and-play rule,
// guard assembled from the analytic budgets of the leaf reductions.
inline FpRunSetup makeFpRunSetup(std::size_t n, std::int64_t bmax) {
    FpRunSetup setup;
    Rational uReq = requiredUnitRoundoff(n, bmax);
    setup.precision = selectPrecision(uReq);
    Int s0 = Int(static_cast<std::int64_t>(n / 2)) * Int(bmax) * Int(bmax);
    Rational u = unitRoundoff(setup.precision);
    // leaf reductions: n mid terms, n/2 low terms, budgets 2*S0 and S0
    Rational gammaMid = gammaOf(detail::ceilLog2(n), u);
    Rational gammaLow = gammaOf(detail::ceilLog2(std::max<std::size_t>(n / 2, 1)), u);
    setup.guard.S0 = s0;
    setup.guard.SLell = s0;
    setup.guard.etaL = gammaLow * Rational(s0);
    setup.guard.deltaMBound = gammaMid * (Rational(Int(2)) * Rational(s0));
    setup.base = choosePlugAndPlayBase(s0, setup.guard.etaL);
    setup.guard.beta = setup.base.beta;
    if (!fpGuardHolds(setup.guard))
        throw GuardViolated("makeFpRunSetup: guard cannot be satisfied at this size");
    return setup;
}

namespace detail {

inline IntMatrix fpGprPacked(const PackedMatrix& r, const PackedMatrix& s,
                             const FpRunSetup& setup, const GprConfig& cfg,
                             CostLedger& ledger) {
    notePackedOperand(r, setup.base, ledger);
    notePackedOperand(s, setup.base, ledger);
    std::size_t h = r.rows(), w = s.cols();
    if (h <= cfg.n0 && w <= cfg.n0) {
        std::size_t m = r.cols();
        IntMatrix x0 = project(r, 0), x1 = project(r, -1);
        IntMatrix y0 = project(s, 0), y1 = project(s, 1);
        IntMatrix out(h, w, Provenance::Product);
        Rational s0r(setup.guard.S0);
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j) {
                std::vector<std::pair<Int, Int>> mid, low;
                mid.reserve(2 * m);
                low.reserve(m);
                for (std::size_t k = 0; k < m; ++k) {
                    mid.emplace_back(x0.at(i, k), y0.at(k, j));
                    mid.emplace_back(x1.at(i, k), y1.at(k, j));
                    low.emplace_back(x1.at(i, k), y0.at(k, j));
                }
                BandPair bands = bandwiseReduce(mid, low, setup.precision,
                                                Rational(Int(2)) * s0r, s0r);
                out.at(i, j) = uFreeExtract(bands, setup.base, &setup.guard);
            }
        ++ledger.leafProducts;
        return out;
    }
    if (h % 2 != 0 || w % 2 != 0) throw OddDimension("fpGprPacked: odd block dimension");

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
            IntMatrix q;
            {
                DepthScope scope(ledger);
                q = fpGprPacked(cr, cs, setup, cfg, ledger);
            }
            chargePlacement(q, ledger);
            out.place(q, i * h / 2, j * w / 2);
        }
    return out;
}

} // namespace detail

// Integer recursion, floating-point leaves under the guard. Output is
// identical to the all-integer path; errors are confined to leaf reductions
// and projected away before any reuse.
inline IntMatrix fpGprTop(const IntMatrix& a, const IntMatrix& b, const GprConfig& cfgIn,
                          CostLedger& ledger) {
    GprConfig cfg = cfgIn;
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw ShapeMismatch("fpGprTop: inputs must be square and equal-sized");
    Int bound(cfg.Bmax);
    if (a.maxAbs() > bound || b.maxAbs() > bound)
        throw EntryBoundViolation("fpGprTop: entry exceeds Bmax");

    std::size_t n = a.rows();
    std::size_t padded = detail::nextPowerOfTwo(n);
    IntMatrix pa = padded == n ? a : a.paddedTo(padded, padded);
    IntMatrix pb = padded == n ? b : b.paddedTo(padded, padded);
    if (padded <= cfg.n0 || padded < 4) return schoolbookOracle(a, b, ledger);

    FpRunSetup setup = makeFpRunSetup(padded, cfg.Bmax);
    auto packs = quadrantPackings(pa, pb);
    IntMatrix c(padded, padded, Provenance::Product);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            IntMatrix q = detail::fpGprPacked(packs[i * 2 + j].R, packs[i * 2 + j].S, setup,
                                              cfg, ledger);
            detail::chargePlacement(q, ledger);
            c.place(q, i * padded / 2, j * padded / 2);
        }
    return padded == n ? c : c.block(0, 0, n, n);
}

} // namespace gpr

// acceptance.cpp - End-to-end acceptance runner. Each numbered criterion
// prints exactly one [PASS]/[FAIL] line; the process exits nonzero if any
// criterion fails. Tolerances and thresholds are pinned here, in code.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <vector>

#include "gpr/experiments.hpp"
#include "gpr/graph_apps.hpp"
#include "gpr/poly_conv.hpp"
#include "support/oracles.hpp"

using namespace gpr;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << detail
              << std::endl;
    if (!pass) ++failures;
}

double seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Extractor exactness: >= 1e5 random tuples inside the integer slack
// extract the middle digit exactly; zero failures, zero ties.
void criterion1() {
    auto start = std::chrono::steady_clock::now();
    SplitMix64 rng(101);
    CostLedger ledger;
    const int tuples = 100000;
    int bad = 0, ties = 0;
    for (int i = 0; i < tuples; ++i) {
        std::uint64_t q = static_cast<std::uint64_t>(rng.range(1, 20));
        std::int64_t beta = std::int64_t(1) << q;
        std::int64_t m = rng.range(-(beta - 1) / 2, (beta - 1) / 2);
        std::int64_t l = rng.range(-(beta - 1) / 4, (beta - 1) / 4);
        std::int64_t u = rng.range(-beta, beta);
        Int v = Int(u).shiftedLeft(2 * q) + Int(m).shiftedLeft(q) + Int(l);
        try {
            if (!(midBeta(v, baseFromExponent(q), ledger) == Int(m))) ++bad;
        } catch (const TieDetected&) {
            ++ties;
        }
    }
    std::ostringstream d;
    d << "extractor exactness, " << tuples << " tuples, " << bad << " failures, " << ties
      << " ties (" << seconds(start) << " s)";
    report(1, bad == 0 && ties == 0 && seconds(start) < 10.0, d.str());
}

// 2. One-level packing identity: 500 random instances over n in {2,4,8} and
// Bmax in {1,3,7}; the degree-0 projection of each quadrant's packed product
// equals the matching quadrant of the schoolbook product, exactly.
void criterion2() {
    auto start = std::chrono::steady_clock::now();
    SplitMix64 rng(202);
    int checked = 0, bad = 0;
    const std::size_t sizes[] = {2, 4, 8};
    const std::int64_t bounds[] = {1, 3, 7};
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = sizes[trial % 3];
        std::int64_t bmax = bounds[(trial / 3) % 3];
        IntMatrix a = IntMatrix::random(n, n, bmax, rng);
        IntMatrix b = IntMatrix::random(n, n, bmax, rng);
        CostLedger ledger;
        IntMatrix c = schoolbookOracle(a, b, ledger);
        auto packs = quadrantPackings(a, b);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                IntMatrix band = project(formalProduct(packs[i * 2 + j].R, packs[i * 2 + j].S,
                                                       ledger), 0);
                IntMatrix want = c.block(i * n / 2, j * n / 2, n / 2, n / 2);
                if (!(band == want)) ++bad;
            }
        ++checked;
    }
    std::ostringstream d;
    d << "one-level packing identity, " << checked << " instances, " << bad << " bad quadrants ("
      << seconds(start) << " s)";
    report(2, bad == 0 && seconds(start) < 10.0, d.str());
}

// 3. Conformance with the mismatch protocol: literal-mode runs over
// n in {2,4,8,16,32} x Bmax in {1,3}, 200 trials each. Equality is the
// expected outcome; a mismatch is acceptable only as a fully reproducible
// report plus a clean single-level suite on the same instances.
void criterion3() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream d;
    int mismatches = 0;
    for (std::size_t n : {2, 4, 8, 16, 32}) {
        for (std::int64_t bmax : {1, 3}) {
            GprConfig cfg;
            cfg.Bmax = bmax;
            ConformanceReport rep = runConformance(n, bmax, 200, 303, cfg);
            if (!rep.passed) {
                ++mismatches;
                bool reported = rep.firstMismatch.has_value() &&
                                !rep.firstMismatch->quadrantPath.empty() &&
                                !rep.firstMismatch->expected.empty();
                cfg.mode = RecursionMode::SingleLevelPacked;
                ConformanceReport fb = runConformance(n, bmax, 200, 303, cfg);
                if (!(reported && fb.passed)) ok = false;
            }
        }
    }
    d << "conformance, literal recursion, 10 configurations x 200 trials, " << mismatches
      << " mismatching configurations";
    if (mismatches > 0) d << " (mismatch protocol applied)";
    d << " (" << seconds(start) << " s)";
    report(3, ok && seconds(start) < 120.0, d.str());
}

// 4. Bounded width: Bmax = 1, n in {8..256}; the per-depth packed-operand
// width table is flat within 8 bits and the global peak stays below 3Q + 8.
void criterion4() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::uint64_t worstSpread = 0, worstExcess = 0;
    for (std::size_t n : {8, 16, 32, 64, 128, 256}) {
        SplitMix64 rng(404 + n);
        IntMatrix a = IntMatrix::random(n, n, 1, rng);
        IntMatrix b = IntMatrix::random(n, n, 1, rng);
        GprConfig cfg;
        cfg.Bmax = 1;
        CostLedger ledger;
        gprTop(a, b, cfg, ledger);
        GlobalBase base = chooseGlobalBase(n, 1);
        std::uint64_t lo = UINT64_MAX, hi = 0;
        for (const auto& [depth, bits] : ledger.perDepthPeak) {
            lo = std::min(lo, bits);
            hi = std::max(hi, bits);
        }
        std::uint64_t spread = hi - lo;
        worstSpread = std::max(worstSpread, spread);
        if (spread > 8) ok = false;
        if (ledger.peakBitLength > 3 * base.Q + 8) {
            ok = false;
            worstExcess = std::max(worstExcess, ledger.peakBitLength - 3 * base.Q);
        }
    }
    std::ostringstream d;
    d << "bounded width, Bmax=1, n in {8..256}, per-depth spread <= " << worstSpread
      << " bits, peak within 3Q+8 (" << seconds(start) << " s)";
    report(4, ok && seconds(start) < 60.0, d.str());
}

// 5. Scaling: the fitted log-log slope of wordOps over n in {16..256} for the
// recursion realizing T(n) = 4T(n/2) + O(n^2) lies in [1.9, 2.4], and its bit
// counters stay within x2 of n^2 (log n + log Bmax) log n after fitting one
// constant. The value-conformant panel recursion cannot meet this band (its
// leaves carry full dot products); its measured slope is printed as evidence.
void criterion5() {
    auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<double, double>> squareWord, literalWord;
    std::vector<double> measuredBit, predictedBit;
    for (std::size_t n : {16, 32, 64, 128, 256}) {
        SplitMix64 rng(505 + n);
        IntMatrix a = IntMatrix::random(n, n, 1, rng);
        IntMatrix b = IntMatrix::random(n, n, 1, rng);
        for (RecursionMode mode :
             {RecursionMode::SquareRecursion, RecursionMode::LiteralRecursion}) {
            GprConfig cfg;
            cfg.Bmax = 1;
            cfg.mode = mode;
            CostLedger ledger;
            ledger.model = CostModel::WordRam;
            ledger.w = defaultWordSize(n, 1);
            gprTop(a, b, cfg, ledger);
            if (mode == RecursionMode::SquareRecursion) {
                squareWord.push_back({double(n), double(ledger.wordOps)});
                double logn = std::log2(double(n));
                measuredBit.push_back(double(ledger.bitTotal()));
                predictedBit.push_back(double(n) * double(n) * logn * logn);
            } else {
                literalWord.push_back({double(n), double(ledger.wordOps)});
            }
        }
    }
    double slopeSquare = fitLogLogSlope(squareWord);
    double slopeLiteral = fitLogLogSlope(literalWord);
    // single fitted constant: geometric mean of measured/predicted
    double logSum = 0;
    for (std::size_t i = 0; i < measuredBit.size(); ++i)
        logSum += std::log(measuredBit[i] / predictedBit[i]);
    double c = std::exp(logSum / double(measuredBit.size()));
    double worstRatio = 1.0;
    for (std::size_t i = 0; i < measuredBit.size(); ++i) {
        double r = measuredBit[i] / (c * predictedBit[i]);
        worstRatio = std::max(worstRatio, std::max(r, 1.0 / r));
    }
    bool ok = slopeSquare >= 1.9 && slopeSquare <= 2.4 && worstRatio <= 2.0;
    std::ostringstream d;
    d << "scaling, quadratic-recurrence wordOps slope " << slopeSquare
      << " in [1.9,2.4], bit counters within x" << worstRatio
      << " of n^2 log^2 n (panel recursion slope " << slopeLiteral
      << ", cubic as analyzed) (" << seconds(start) << " s)";
    report(5, ok && seconds(start) < 300.0, d.str());
}

// 6. Slice staging: K-pass runs equal the plain recursion on 100 instances
// per K in {2,3,4} with n <= 32, and the measured per-pass extraction width
// equals (1/K) log2(beta) within 2 bits.
void criterion6() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    SplitMix64 rng(606);
    for (unsigned k : {2u, 3u, 4u}) {
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t sizes[] = {4, 8, 16, 32};
            std::size_t n = sizes[trial % 4];
            GprConfig cfg;
            cfg.Bmax = 1;
            IntMatrix a = IntMatrix::random(n, n, 1, rng);
            IntMatrix b = IntMatrix::random(n, n, 1, rng);
            CostLedger ls, lp;
            SliceRunStats stats;
            IntMatrix sliced = gprTopSliceStaged(a, b, k, cfg, ls, &stats);
            IntMatrix plain = gprTop(a, b, cfg, lp);
            if (!(sliced == plain)) ok = false;
            if (ls.topLevelPasses != k) ok = false;
            std::uint64_t target = stats.betaBits / k;
            for (std::uint64_t width : stats.perPassExtractionPeak)
                if (width + 2 < target || width > target + 2) ok = false;
        }
    }
    std::ostringstream d;
    d << "slice staging, 100 instances per K in {2,3,4}, outputs equal, per-pass width within 2 "
         "bits of log2(beta)/K ("
      << seconds(start) << " s)";
    report(6, ok && seconds(start) < 60.0, d.str());
}

// 7. FP guard: with the constructive precision and plug-and-play base, the
// FP-leaf run is bit-identical to the integer run on 100 instances (n <= 16,
// Bmax <= 3); on the same fixed-point suite the classical pairwise dot shows
// nonzero forward error somewhere while the FP-leaf path shows none.
void criterion7() {
    auto start = std::chrono::steady_clock::now();
    ExperimentSpec spec;
    spec.sizes = {4, 8, 16};
    spec.bmaxes = {1, 3};
    spec.trials = 17; // 6 configurations x 17 = 102 instances
    spec.seed = 707;
    FpExperimentResult res = runFpExperiment(spec);
    bool ok = res.fpMatchesInteger && res.fpAllExact && res.classicalErrSomewhere;
    std::ostringstream d;
    d << "fp guard, 102 instances, fp==integer " << (res.fpMatchesInteger ? "yes" : "NO")
      << ", fp error 0 " << (res.fpAllExact ? "yes" : "NO") << ", classical error observed "
      << (res.classicalErrSomewhere ? "yes" : "NO") << " (" << seconds(start) << " s)";
    report(7, ok && seconds(start) < 60.0, d.str());
}

// 8. Type-2 applications: recognition vs CYK on 200 grammar/string pairs;
// APSP vs BFS on 100 digraphs (n <= 32) within the product-call budget;
// triangle counts exhaustive for n <= 5 and oracle-exact for random n <= 16;
// convolution vs schoolbook on 200 ternary pairs up to length 64.
void criterion8() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream parts;

    { // recognition
        SplitMix64 rng(808);
        static const std::vector<std::string> nts = {"S", "A", "B", "C", "D"};
        int bad = 0;
        for (int trial = 0; trial < 200; ++trial) {
            CnfGrammar g;
            g.start = "S";
            std::size_t numNts = static_cast<std::size_t>(rng.range(2, 5));
            for (std::size_t i = 0; i < numNts; ++i) g.nonterminals.insert(nts[i]);
            for (const auto& t : {"a", "b", "c"}) g.terminals.insert(t);
            for (const auto& a : g.nonterminals)
                for (const auto& t : {"a", "b", "c"})
                    if (rng.coin(0.4)) g.unaryRules.emplace_back(a, t);
            std::vector<std::string> pool(g.nonterminals.begin(), g.nonterminals.end());
            for (const auto& a : g.nonterminals)
                for (int r = 0; r < 3; ++r)
                    if (rng.coin(0.5))
                        g.binaryRules.emplace_back(a, pool[rng.range(0, pool.size() - 1)],
                                                   pool[rng.range(0, pool.size() - 1)]);
            std::string w;
            std::size_t len = static_cast<std::size_t>(rng.range(1, 12));
            for (std::size_t i = 0; i < len; ++i)
                w.push_back(static_cast<char>('a' + rng.range(0, 2)));
            CostLedger ledger;
            if (valiantRecognize(g, w, ledger) != oracle::cykRecognize(g, w)) ++bad;
        }
        parts << "cfg 200 pairs " << bad << " bad";
        ok = ok && bad == 0;
    }

    { // APSP
        SplitMix64 rng(809);
        int bad = 0, overBudget = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::size_t n = static_cast<std::size_t>(rng.range(2, 32));
            BoolMatrix g(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j) g.set(i, j, rng.coin(0.15));
            CostLedger ledger;
            DistanceMatrix got = apspUnweighted(g, ledger);
            auto want = oracle::bfsAllPairs(g);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (got.at(i, j) != want[i][j]) ++bad;
            std::uint64_t logn = 0;
            while ((std::size_t(1) << logn) < n) ++logn;
            if (ledger.bmmCalls > logn + 1) ++overBudget;
        }
        parts << "; apsp 100 graphs " << bad << " bad " << overBudget << " over-budget";
        ok = ok && bad == 0 && overBudget == 0;
    }

    { // triangles
        int bad = 0;
        for (unsigned mask = 0; mask < 1024; ++mask) {
            BoolMatrix g(5);
            unsigned bit = 0;
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = i + 1; j < 5; ++j, ++bit)
                    if (mask & (1u << bit)) {
                        g.set(i, j, true);
                        g.set(j, i, true);
                    }
            CostLedger ledger;
            if (!(triangleDetect(g, ledger).count ==
                  Int(static_cast<std::int64_t>(oracle::countTriangles(g)))))
                ++bad;
        }
        SplitMix64 rng(810);
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t n = static_cast<std::size_t>(rng.range(4, 16));
            BoolMatrix g(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (rng.coin(0.5)) {
                        g.set(i, j, true);
                        g.set(j, i, true);
                    }
            CostLedger ledger;
            if (!(triangleDetect(g, ledger).count ==
                  Int(static_cast<std::int64_t>(oracle::countTriangles(g)))))
                ++bad;
        }
        parts << "; triangles exhaustive+random " << bad << " bad";
        ok = ok && bad == 0;
    }

    { // convolution
        SplitMix64 rng(811);
        int bad = 0;
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t n = std::size_t(1) << rng.range(0, 6); // up to 64
            std::vector<Int> f, g;
            for (std::size_t i = 0; i < n; ++i) {
                f.emplace_back(rng.range(-1, 1));
                g.emplace_back(rng.range(-1, 1));
            }
            CostLedger ledger;
            auto got = polyConvolutionGpr(f, g, ledger);
            auto want = oracle::convolve(f, g);
            for (std::size_t i = 0; i < got.size(); ++i)
                if (!oracle::equalsBig(got[i], want[i])) ++bad;
        }
        parts << "; conv 200 pairs " << bad << " bad";
        ok = ok && bad == 0;
    }

    std::ostringstream d;
    d << "type-2 applications: " << parts.str() << " (" << seconds(start) << " s)";
    report(8, ok && seconds(start) < 120.0, d.str());
}

// 9. Classifier: the three worked recurrences produce cases 1/2/3 with the
// case-3 exponent solving its defining equation to 1e-9.
void criterion9() {
    auto c1 = classifyType2({{0.5, 0.5}, 1});
    auto c2 = classifyType2({std::vector<double>(4, 0.5), 1});
    auto c3 = classifyType2({std::vector<double>(8, 0.5), 1});
    double residual = 8.0 * std::pow(0.5, c3.exponent) - 1.0;
    bool ok = c1.caseId == 1 && c1.exponent == 2.0 && c1.alphaSquareSum == 0.5 &&
              c2.caseId == 2 && c2.extraLogPower == 1 && c3.caseId == 3 &&
              std::fabs(c3.exponent - 3.0) <= 1e-9 && std::fabs(residual) <= 1e-9;
    std::ostringstream d;
    d << "classifier cases 1/2/3, gamma = " << c3.exponent << ", residual " << residual;
    report(9, ok, d.str());
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (" << failures
              << " failing)" << std::endl;
    return failures == 0 ? 0 : 1;
}

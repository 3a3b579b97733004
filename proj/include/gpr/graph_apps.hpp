#pragma once
// graph_apps.hpp - Reachability doubling for unweighted APSP and trace-based
// triangle counting, both on top of the integer-embedded Boolean product.

#include <vector>

#include "gpr/boolmat.hpp"

namespace gpr {

struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<std::int64_t> d; // -1 encodes unreachable

    explicit DistanceMatrix(std::size_t n_) : n(n_), d(n_ * n_, -1) {}
    std::int64_t& at(std::size_t i, std::size_t j) { return d[i * n + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return d[i * n + j]; }
    bool reachable(std::size_t i, std::size_t j) const { return at(i, j) >= 0; }
};

namespace detail {

inline std::vector<std::uint8_t> rowTimes(const std::vector<std::uint8_t>& row,
                                          const BoolMatrix& m) {
    std::size_t n = m.size();
    std::vector<std::uint8_t> out(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        if (!row[k]) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (m.get(k, j)) out[j] = 1;
    }
    return out;
}

} // namespace detail

// Doubling schedule P_{k+1} = P_k | (P_k o P_k), one Boolean product per
// doubling step, then exact hop counts by per-pair binary descent over the
// stored powers. The descent itself uses plain row-by-matrix sweeps; only the
// doubling squarings go through the integer-embedded product.
inline DistanceMatrix apspUnweighted(const BoolMatrix& adj, CostLedger& ledger,
                                     const GprConfig& cfg = {}) {
    std::size_t n = adj.size();
    DistanceMatrix dist(n);
    for (std::size_t i = 0; i < n; ++i) dist.at(i, i) = 0;
    if (n == 1) return dist;

    std::vector<BoolMatrix> powers; // powers[k] = reachability within 2^k steps
    powers.push_back(adj);
    while ((std::size_t(1) << (powers.size() - 1)) < n - 1) {
        const BoolMatrix& p = powers.back();
        powers.push_back(p | booleanProduct(p, p, ledger, cfg));
    }
    std::size_t levels = powers.size() - 1; // max step budget 2^levels

    for (std::size_t i = 0; i < n; ++i) {
        // rows cached by the step budget t they correspond to
        std::map<std::uint64_t, std::vector<std::uint8_t>> rows;
        std::vector<std::uint8_t> self(n, 0);
        self[i] = 1;
        rows[0] = std::move(self);
        const BoolMatrix& full = powers.back();
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (!full.get(i, j) && !adj.get(i, j)) continue; // beyond 2^levels means no path
            // greedy from the top bit: keep j unreachable within t as long as
            // possible; then d = t + 1
            std::uint64_t t = 0;
            for (std::size_t k = levels; k-- > 0;) {
                std::uint64_t cand = t + (std::uint64_t(1) << k);
                auto it = rows.find(cand);
                if (it == rows.end())
                    it = rows.emplace(cand, detail::rowTimes(rows.at(t), powers[k])).first;
                if (!it->second[j]) t = cand;
            }
            dist.at(i, j) = static_cast<std::int64_t>(t) + 1;
        }
    }
    return dist;
}

struct TriangleResult {
    bool hasTriangle = false;
    Int count;
};

// count = trace(A^3) / 6; A^2 via the Bmax=1 product, A * A^2 with the bound
// raised to n since two-path counts reach n.
inline TriangleResult triangleDetect(const BoolMatrix& adj, CostLedger& ledger,
                                     const GprConfig& cfgIn = {}) {
    std::size_t n = adj.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (adj.get(i, i)) throw AsymmetricInput("triangleDetect: nonzero diagonal");
        for (std::size_t j = i + 1; j < n; ++j)
            if (adj.get(i, j) != adj.get(j, i))
                throw AsymmetricInput("triangleDetect: adjacency not symmetric");
    }
    IntMatrix a = adj.toInt();
    GprConfig cfg = cfgIn;
    cfg.Bmax = 1;
    IntMatrix a2 = gprTop(a, a, cfg, ledger);
    ++ledger.bmmCalls;
    cfg.Bmax = static_cast<std::int64_t>(std::max<std::size_t>(n, 1));
    IntMatrix a3 = gprTop(a, a2, cfg, ledger);
    ++ledger.bmmCalls;

    Int trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace = costedAdd(trace, a3.at(i, i), ledger);
    auto [count, rem] = trace.divmodSmall(6);
    if (rem != 0)
        throw Error("triangleDetect: trace(A^3) = " + trace.toString() + " not divisible by 6");
    TriangleResult res;
    res.count = count;
    res.hasTriangle = count.sign() > 0;
    return res;
}

} // namespace gpr

#pragma once
// cfg.hpp - Chomsky-normal-form grammars and chart-based recognition with the
// binary-rule update batched through the offset Boolean product.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gpr/boolmat.hpp"

namespace gpr {

struct CnfGrammar {
    std::set<std::string> nonterminals;
    std::set<std::string> terminals; // single-character symbols
    std::vector<std::pair<std::string, std::string>> unaryRules;            // A -> a
    std::vector<std::tuple<std::string, std::string, std::string>> binaryRules; // A -> B C
    std::string start;
};

using Chart = std::map<std::string, BoolMatrix>;

// Chart recognition: initialize the diagonals from unary rules, then close
// the charts under M_A |= M_B ** M_C, sweeping in span-length order until a
// fixed point. Accept iff the start chart covers the whole string.
inline bool valiantRecognize(const CnfGrammar& g, const std::string& w, CostLedger& ledger,
                             const GprConfig& cfg = {}) {
    if (w.empty()) throw BadArgument("valiantRecognize: empty string");
    for (char c : w)
        if (!g.terminals.count(std::string(1, c)))
            throw UnknownTerminal("valiantRecognize: symbol '" + std::string(1, c) +
                                  "' is not a terminal");
    std::size_t n = w.size();

    if (n == 1) {
        for (const auto& [a, t] : g.unaryRules)
            if (a == g.start && t == std::string(1, w[0])) return true;
        return false;
    }

    Chart chart;
    for (const auto& a : g.nonterminals) chart.emplace(a, BoolMatrix(n));
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [a, t] : g.unaryRules)
            if (t == std::string(1, w[i])) chart.at(a).set(i, i, true);

    // span lengths 2..n; each round combines all rules once, and the loop
    // stops early once no chart changes
    for (std::size_t round = 2; round <= n; ++round) {
        bool changed = false;
        for (const auto& [a, bsym, csym] : g.binaryRules) {
            BoolMatrix combined = offsetBooleanProduct(chart.at(bsym), chart.at(csym), ledger, cfg);
            BoolMatrix updated = chart.at(a) | combined;
            if (!(updated == chart.at(a))) {
                chart.at(a) = updated;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return chart.at(g.start).get(0, n - 1);
}

} // namespace gpr

#pragma once
// reports.hpp - JSON views of ledgers and run artifacts. ordered_json keeps
// key order stable so fixed-seed runs serialize byte-identically.

#include <json.hpp>

#include "gpr/gpr_matmul.hpp"

namespace gpr {

using Json = nlohmann::ordered_json;

inline Json ledgerToJson(const CostLedger& ledger) {
    Json j;
    j["model"] = ledger.model == CostModel::UniformBit ? "uniform-bit" : "word-ram";
    j["w"] = ledger.w;
    j["bitAdds"] = ledger.bitAdds;
    j["bitMults"] = ledger.bitMults;
    j["bitShifts"] = ledger.bitShifts;
    j["wordOps"] = ledger.wordOps;
    j["peakBitLength"] = ledger.peakBitLength;
    Json depths = Json::object();
    for (const auto& [d, bits] : ledger.perDepthPeak) depths[std::to_string(d)] = bits;
    j["perDepthPeak"] = depths;
    return j;
}

inline Json mismatchToJson(const Mismatch& m) {
    Json j;
    j["trial"] = m.trial;
    j["row"] = m.row;
    j["col"] = m.col;
    j["expected"] = m.expected;
    j["got"] = m.got;
    j["quadrantPath"] = m.quadrantPath;
    j["depth"] = m.depth;
    return j;
}

inline Json conformanceToJson(const ConformanceReport& r) {
    Json j;
    j["n"] = r.n;
    j["bmax"] = r.bmax;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["mode"] = modeName(r.mode);
    j["passed"] = r.passed;
    if (r.firstMismatch) j["firstMismatch"] = mismatchToJson(*r.firstMismatch);
    j["ledger"] = ledgerToJson(r.ledger);
    return j;
}

// Least-squares slope of log2(y) against log2(x).
inline double fitLogLogSlope(const std::vector<std::pair<double, double>>& points) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = static_cast<double>(points.size());
    for (auto [x, y] : points) {
        double lx = std::log2(x), ly = std::log2(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace gpr

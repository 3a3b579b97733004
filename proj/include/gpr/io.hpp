#pragma once
// io.hpp - File formats: matrix text, packed-matrix JSON, grammar JSON, and
// edge-list graphs.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gpr/boolmat.hpp"
#include "gpr/cfg.hpp"
#include "gpr/packing.hpp"

namespace gpr {

inline std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

inline IntMatrix loadMatrixText(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return IntMatrix::fromText(in);
}

// {"support": [d...], "blocks": {"d": "<matrix text>" | {"file": path}}}
inline nlohmann::ordered_json packedToJson(const PackedMatrix& p) {
    nlohmann::ordered_json j;
    j["support"] = nlohmann::ordered_json::array();
    for (int d : p.support()) j["support"].push_back(d);
    j["blocks"] = nlohmann::ordered_json::object();
    for (const auto& [d, m] : p.blocks()) j["blocks"][std::to_string(d)] = m.toText();
    return j;
}

inline PackedMatrix packedFromJson(const nlohmann::json& j) {
    PackedMatrix p;
    if (!j.contains("blocks")) throw IoError("packed matrix JSON: missing blocks");
    for (const auto& [key, val] : j.at("blocks").items()) {
        int d = std::stoi(key);
        std::string text = val.is_object() ? readFile(val.at("file").get<std::string>())
                                           : val.get<std::string>();
        std::istringstream in(text);
        p.setBlock(d, IntMatrix::fromText(in));
    }
    return p;
}

// {"start": "S", "unary": [["A","a"],...], "binary": [["S","A","B"],...]}
inline CnfGrammar grammarFromJson(const nlohmann::json& j) {
    CnfGrammar g;
    g.start = j.at("start").get<std::string>();
    g.nonterminals.insert(g.start);
    for (const auto& rule : j.at("unary")) {
        std::string a = rule.at(0).get<std::string>();
        std::string t = rule.at(1).get<std::string>();
        g.nonterminals.insert(a);
        g.terminals.insert(t);
        g.unaryRules.emplace_back(a, t);
    }
    for (const auto& rule : j.at("binary")) {
        std::string a = rule.at(0).get<std::string>();
        std::string b = rule.at(1).get<std::string>();
        std::string c = rule.at(2).get<std::string>();
        g.nonterminals.insert(a);
        g.nonterminals.insert(b);
        g.nonterminals.insert(c);
        g.binaryRules.emplace_back(a, b, c);
    }
    return g;
}

inline CnfGrammar loadGrammar(const std::string& path) {
    return grammarFromJson(nlohmann::json::parse(readFile(path)));
}

// Edge list, one "u v" pair per line, 0-indexed vertices.
inline BoolMatrix loadEdgeList(const std::string& path, bool symmetric) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t maxV = 0, u = 0, v = 0;
    while (in >> u >> v) {
        edges.emplace_back(u, v);
        maxV = std::max({maxV, u, v});
    }
    BoolMatrix m(maxV + 1);
    for (auto [a, b] : edges) {
        m.set(a, b, true);
        if (symmetric) m.set(b, a, true);
    }
    return m;
}

} // namespace gpr

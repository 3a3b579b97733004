// gpr.cpp - Command-line driver: verification bundle, cost-scaling tables,
// slice staging, the floating-point stability comparison, and the graph /
// grammar / recurrence runners. Reports are JSON (or CSV where noted); with a
// fixed seed they are byte-identical across runs.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "gpr/experiments.hpp"
#include "gpr/graph_apps.hpp"
#include "gpr/io.hpp"

namespace {

std::string resolveOut(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("GPR_OUT_DIR");
    if (dir && *dir && path.front() != '/') return std::string(dir) + "/" + path;
    return path;
}

void emit(const gpr::Json& report, const std::string& outPath) {
    std::string text = report.dump(2);
    text.push_back('\n');
    std::string path = resolveOut(outPath);
    if (path.empty())
        std::cout << text;
    else
        gpr::writeFile(path, text);
}

std::vector<double> parseAlphas(const std::string& s) {
    // comma list with an optional xN repeat suffix per item, e.g. "0.5x4"
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto xpos = item.find('x');
        int repeat = 1;
        std::string num = item;
        if (xpos != std::string::npos) {
            repeat = std::stoi(item.substr(xpos + 1));
            num = item.substr(0, xpos);
        }
        for (int i = 0; i < repeat; ++i) out.push_back(std::stod(num));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact packed-recursion matrix kernels with bit-cost metering"};
    app.require_subcommand(1);

    gpr::ExperimentSpec spec;
    std::string outPath, alphasArg, modelArg = "wordram";
    std::string graphPath, grammarPath, word;
    std::string sizesArg = "2,4", bmaxArg = "1";

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_option("--sizes", sizesArg, "comma-separated matrix sizes");
        cmd->add_option("--bmax", bmaxArg, "comma-separated entry bounds");
        cmd->add_option("--trials", spec.trials, "instances per configuration");
        cmd->add_option("--seed", spec.seed, "RNG seed (fixed seed => identical report)");
        cmd->add_option("--out", outPath, "report path (default stdout)");
        cmd->add_option("--format", spec.format, "json or csv");
        cmd->add_option("--model", modelArg, "wordram or bit");
        cmd->add_option("--w", spec.w, "Word-RAM word size override");
    };

    auto* verify = app.add_subcommand("verify", "conformance + extractor + audit + width suites");
    addCommon(verify);
    auto* bench = app.add_subcommand("bench", "cost-scaling tables and fitted slopes");
    addCommon(bench);
    auto* slices = app.add_subcommand("slices", "K-pass digit-sliced runs vs the plain recursion");
    addCommon(slices);
    slices->add_option("--k", spec.K, "slice count K >= 2");
    auto* fp = app.add_subcommand("fp", "floating-point stability comparison");
    addCommon(fp);
    auto* cfgCmd = app.add_subcommand("cfg", "grammar recognition via Boolean products");
    cfgCmd->add_option("--grammar", grammarPath, "grammar JSON file")->required();
    cfgCmd->add_option("--word", word, "input string")->required();
    cfgCmd->add_option("--out", outPath, "report path (default stdout)");
    auto* apsp = app.add_subcommand("apsp", "unweighted all-pairs shortest paths");
    apsp->add_option("--graph", graphPath, "edge list file, one 'u v' per line")->required();
    apsp->add_option("--out", outPath, "report path (default stdout)");
    auto* tri = app.add_subcommand("triangle", "triangle detection and counting");
    tri->add_option("--graph", graphPath, "edge list file (undirected)")->required();
    tri->add_option("--out", outPath, "report path (default stdout)");
    auto* classify = app.add_subcommand("classify", "recurrence case analysis");
    classify->add_option("--alphas", alphasArg, "e.g. 0.5,0.5 or 0.5x8")->required();
    classify->add_option("--c", spec.c, "polylog exponent of the kernel cost");
    classify->add_option("--out", outPath, "report path (default stdout)");

    std::string aPath, bPath, modeArg = "literal";
    std::int64_t mulBmax = 0;
    unsigned mulK = 0;
    auto* multiply = app.add_subcommand("multiply", "multiply two matrix text files");
    multiply->add_option("--a", aPath, "left matrix (text format)")->required();
    multiply->add_option("--b", bPath, "right matrix (text format)")->required();
    multiply->add_option("--bmax", mulBmax, "entry bound (default: derived from inputs)");
    multiply->add_option("--mode", modeArg, "literal, single-level, or square");
    multiply->add_option("--k", mulK, "use K-pass digit-sliced extraction");
    multiply->add_option("--out", outPath, "product path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        auto parseSizes = [&] {
            spec.sizes.clear();
            std::stringstream ss(sizesArg);
            std::string item;
            while (std::getline(ss, item, ',')) spec.sizes.push_back(std::stoul(item));
            spec.bmaxes.clear();
            std::stringstream sb(bmaxArg);
            while (std::getline(sb, item, ',')) spec.bmaxes.push_back(std::stol(item));
        };

        spec.model = modelArg == "bit" ? gpr::CostModel::UniformBit : gpr::CostModel::WordRam;
        if (*verify) {
            parseSizes();
            gpr::VerifyOutcome out = gpr::runVerify(spec);
            emit(out.report, outPath);
            return out.exitCode;
        }
        if (*bench) {
            parseSizes();
            emit(gpr::runBench(spec), outPath);
            return 0;
        }
        if (*slices) {
            parseSizes();
            emit(gpr::runSlices(spec), outPath);
            return 0;
        }
        if (*fp) {
            parseSizes();
            gpr::FpExperimentResult res = gpr::runFpExperiment(spec);
            if (spec.format == "csv") {
                std::string path = resolveOut(outPath);
                if (path.empty())
                    std::cout << gpr::fpRowsToCsv(res);
                else
                    gpr::writeFile(path, gpr::fpRowsToCsv(res));
            } else {
                emit(gpr::fpResultToJson(res), outPath);
            }
            return 0;
        }
        if (*cfgCmd) {
            gpr::CnfGrammar g = gpr::loadGrammar(grammarPath);
            gpr::CostLedger ledger;
            bool accepted = gpr::valiantRecognize(g, word, ledger);
            gpr::Json rep;
            rep["command"] = "cfg";
            rep["word"] = word;
            rep["accepted"] = accepted;
            rep["bmmCalls"] = ledger.bmmCalls;
            emit(rep, outPath);
            return 0;
        }
        if (*apsp) {
            gpr::BoolMatrix g = gpr::loadEdgeList(graphPath, false);
            gpr::CostLedger ledger;
            gpr::DistanceMatrix d = gpr::apspUnweighted(g, ledger);
            gpr::Json rep;
            rep["command"] = "apsp";
            rep["n"] = d.n;
            rep["bmmCalls"] = ledger.bmmCalls;
            gpr::Json rows = gpr::Json::array();
            for (std::size_t i = 0; i < d.n; ++i) {
                gpr::Json row = gpr::Json::array();
                for (std::size_t j = 0; j < d.n; ++j)
                    row.push_back(d.at(i, j) < 0 ? gpr::Json("inf") : gpr::Json(d.at(i, j)));
                rows.push_back(std::move(row));
            }
            rep["distances"] = rows;
            emit(rep, outPath);
            return 0;
        }
        if (*tri) {
            gpr::BoolMatrix g = gpr::loadEdgeList(graphPath, true);
            gpr::CostLedger ledger;
            gpr::TriangleResult r = gpr::triangleDetect(g, ledger);
            gpr::Json rep;
            rep["command"] = "triangle";
            rep["hasTriangle"] = r.hasTriangle;
            rep["count"] = r.count.toString();
            rep["bmmCalls"] = ledger.bmmCalls;
            emit(rep, outPath);
            return 0;
        }
        if (*classify) {
            spec.alphas = parseAlphas(alphasArg);
            emit(gpr::runClassify(spec), outPath);
            return 0;
        }
        if (*multiply) {
            gpr::IntMatrix a = gpr::loadMatrixText(aPath);
            gpr::IntMatrix b = gpr::loadMatrixText(bPath);
            gpr::GprConfig cfg;
            if (modeArg == "single-level")
                cfg.mode = gpr::RecursionMode::SingleLevelPacked;
            else if (modeArg == "square")
                cfg.mode = gpr::RecursionMode::SquareRecursion;
            else if (modeArg != "literal")
                throw gpr::BadArgument("unknown mode: " + modeArg);
            cfg.Bmax = mulBmax > 0 ? mulBmax
                                   : std::max<std::int64_t>(
                                         1, std::max(a.maxAbs(), b.maxAbs()).toInt64());
            gpr::CostLedger ledger;
            gpr::IntMatrix c = mulK >= 2 ? gpr::gprTopSliceStaged(a, b, mulK, cfg, ledger)
                                         : gpr::gprTop(a, b, cfg, ledger);
            std::string text = c.toText();
            std::string path = resolveOut(outPath);
            if (path.empty())
                std::cout << text;
            else
                gpr::writeFile(path, text);
            std::cerr << gpr::ledgerToJson(ledger).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treedist/barcode.hpp"
#include "treedist/bracket.hpp"
#include "treedist/cophenetic.hpp"
#include "treedist/errors.hpp"
#include "treedist/filtration.hpp"
#include "treedist/fuzz.hpp"
#include "treedist/interleaving.hpp"
#include "treedist/io.hpp"
#include "treedist/lp.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitInput = 2;
constexpr int kExitScale = 3;

using treedist::io::json;

double parse_p(const std::string& s) {
    if (s == "inf") return treedist::kInf;
    try {
        size_t used = 0;
        double p = std::stod(s, &used);
        if (used != s.size()) throw treedist::InputError("--p: trailing characters");
        if (!treedist::is_valid_p(p)) throw treedist::InputError("--p must lie in [1, inf]");
        return p;
    } catch (const std::invalid_argument&) {
        throw treedist::InputError("--p: expected a number or \"inf\"");
    } catch (const std::out_of_range&) {
        throw treedist::InputError("--p: out of range");
    }
}

json base_report(const std::string& command, json config) {
    json j;
    j["tool"] = "treedist";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = std::move(config);
    return j;
}

void print_value(double v) {
    if (v == treedist::kInf) std::printf("inf\n");
    else std::printf("%.17g\n", v);
}

struct Args {
    std::vector<std::string> inputs;
    std::string p_text = "1";
    int budget = 4;
    std::vector<std::string> pivots;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    std::string out;
    std::string mutate;
};

int run(const std::string& cmd, const Args& a) {
    using namespace treedist;
    InterleavingOptions opt;
    opt.tol = a.tolerance;

    if (cmd == "validate") {
        auto data = io::tree_data_from_json(io::load_file(a.inputs[0]));
        auto violations = validate(data);
        if (violations.empty()) {
            std::printf("valid\n");
            return kExitOk;
        }
        for (const auto& v : violations) {
            std::string ids;
            for (const auto& id : v.node_ids) ids += " " + id;
            std::printf("violation [%s] %s:%s\n", v.invariant.c_str(), v.message.c_str(),
                        ids.c_str());
        }
        return kExitInput;
    }

    if (cmd == "barcode") {
        auto tree = io::tree_from_json(io::load_file(a.inputs[0]));
        auto bars = elder_barcode(tree);
        std::printf("bars: %zu\n", bars.size());
        json j = io::barcode_to_json(bars);
        if (!a.out.empty()) io::write_file(a.out, j);
        else std::cout << j.dump(2) << '\n';
        return kExitOk;
    }

    if (cmd == "wasserstein") {
        double p = parse_p(a.p_text);
        auto b = io::barcode_from_json(io::load_file(a.inputs[0]));
        auto c = io::barcode_from_json(io::load_file(a.inputs[1]));
        auto r = wasserstein(b, c, p);
        print_value(r.value);
        json config;
        config["p"] = io::p_to_json(p);
        config["inputs"] = a.inputs;
        config["tolerance"] = a.tolerance;
        json rep = base_report("wasserstein", config);
        rep["result"]["value"] = r.value == kInf ? json("inf") : json(r.value);
        rep["result"]["matching"] = io::matching_to_json(r.matching);
        if (!a.out.empty()) io::write_file(a.out, rep);
        return kExitOk;
    }

    if (cmd == "cophenetic") {
        double p = parse_p(a.p_text);
        auto m = io::tree_from_json(io::load_file(a.inputs[0]));
        auto n = io::tree_from_json(io::load_file(a.inputs[1]));
        // --budget caps the label count; default n_m + n_n
        int kmax = a.budget > 4 ? a.budget : -1;
        double v = cophenetic_distance(m, n, p, kmax);
        print_value(v);
        json config;
        config["p"] = io::p_to_json(p);
        config["inputs"] = a.inputs;
        config["kMax"] = kmax;
        json rep = base_report("cophenetic", config);
        rep["result"]["value"] = v;
        if (!a.out.empty()) io::write_file(a.out, rep);
        return kExitOk;
    }

    if (cmd == "interleaving") {
        auto m = io::tree_from_json(io::load_file(a.inputs[0]));
        auto n = io::tree_from_json(io::load_file(a.inputs[1]));
        double v = interleaving_distance(m, n, opt);
        auto w = interleaving_exists(m, n, v, opt);
        print_value(v);
        json config;
        config["inputs"] = a.inputs;
        config["tolerance"] = a.tolerance;
        json rep = base_report("interleaving", config);
        rep["result"]["value"] = v;
        if (w) rep["result"]["witness"] = io::witness_to_json(*w);
        if (!a.out.empty()) io::write_file(a.out, rep);
        return kExitOk;
    }

    if (cmd == "presentation") {
        double p = parse_p(a.p_text);
        auto m = io::tree_from_json(io::load_file(a.inputs[0]));
        auto n = io::tree_from_json(io::load_file(a.inputs[1]));
        std::vector<MergeTree> pivots;
        for (const auto& path : a.pivots)
            pivots.push_back(io::tree_from_json(io::load_file(path)));
        auto br = presentation_distance_bracket(m, n, p, pivots, a.budget, opt);
        std::printf("lower %.17g upper %.17g\n", br.lower, br.upper);
        json config;
        config["p"] = io::p_to_json(p);
        config["inputs"] = a.inputs;
        config["pivots"] = a.pivots;
        config["budget"] = a.budget;
        config["tolerance"] = a.tolerance;
        json rep = base_report("presentation", config);
        rep["result"] = io::bracket_to_json(br);
        if (!a.out.empty()) io::write_file(a.out, rep);
        return kExitOk;
    }

    if (cmd == "lift") {
        auto pm = io::presentation_from_json(io::load_file(a.inputs[0]));
        auto pn = io::presentation_from_json(io::load_file(a.inputs[1]));
        auto lift = geometric_lift(pm, pn);
        std::printf("cells: %d vertices, %zu edges\n", lift.complex.vertex_count,
                    lift.complex.edges.size());
        json j;
        j["complex"] = io::complex_to_json(lift.complex);
        j["f"] = io::function_to_json(lift.f);
        j["g"] = io::function_to_json(lift.g);
        if (!a.out.empty()) io::write_file(a.out, j);
        else std::cout << j.dump(2) << '\n';
        return kExitOk;
    }

    if (cmd == "filtrate") {
        json in = io::load_file(a.inputs[0]);
        auto x = io::complex_from_json(in.at("complex"));
        auto f = io::function_from_json(in.at("f"));
        auto forest = sublevel_merge_forest(x, f);
        std::printf("trees: %zu\n", forest.trees.size());
        json j = io::forest_to_json(forest);
        if (!a.out.empty()) io::write_file(a.out, j);
        else std::cout << j.dump(2) << '\n';
        return kExitOk;
    }

    if (cmd == "fuzz") {
        FuzzConfig config;
        config.seed = a.seed;
        config.trials = a.budget;
        config.tol = a.tolerance;
        config.mutation = a.mutate;
        config.out_dir = a.out.empty() ? "." : a.out;
        if (config.trials == 0) {
            std::printf("warning: zero trials requested, vacuous pass\n");
            return kExitOk;
        }
        auto report = run_fuzz(config);
        std::printf("fuzz: %d trials, %lld checks, %s\n", report.trials_run, report.checks,
                    report.passed() ? "pass" : "FAIL");
        for (const auto& f : report.failures)
            std::printf("failure [%s] %s (reproducer: %s)\n", f.invariant.c_str(),
                        f.detail.c_str(), f.reproducer_path.c_str());
        return report.passed() ? kExitOk : kExitInvariant;
    }

    throw treedist::InputError("unknown command " + cmd);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"merge tree distances: barcodes, matchings, interleavings, "
                 "presentation brackets"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Args args;
    std::vector<std::pair<std::string, CLI::App*>> subs;
    auto add = [&](const std::string& name, const std::string& desc, int n_inputs,
                   bool has_p = false) {
        CLI::App* c = app.add_subcommand(name, desc);
        if (n_inputs > 0)
            c->add_option("inputs", args.inputs, "input files")
                ->expected(n_inputs)
                ->check(CLI::ExistingFile);
        if (has_p) c->add_option("--p", args.p_text, "norm parameter in [1, inf] or \"inf\"");
        c->add_option("--budget", args.budget, "search effort / trials / label cap");
        c->add_option("--seed", args.seed, "random seed");
        c->add_option("--tolerance", args.tolerance, "absolute tolerance");
        c->add_option("--out", args.out, "output file (or directory for fuzz)");
        subs.push_back({name, c});
        return c;
    };

    add("validate", "check a merge tree file against the format invariants", 1);
    add("barcode", "elder-rule barcode of a merge tree", 1);
    add("wasserstein", "p-Wasserstein / bottleneck distance between barcodes", 2, true);
    add("cophenetic", "p-cophenetic distance between merge trees", 2, true);
    add("interleaving", "interleaving distance between merge trees", 2);
    auto* pres = add("presentation", "p-presentation distance bracket with certificates", 2, true);
    pres->add_option("--pivot", args.pivots, "pivot tree file (repeatable)")
        ->check(CLI::ExistingFile);
    add("lift", "geometric lift of two compatible presentations", 2);
    add("filtrate", "sublevel merge forest of a monotone cellular function", 1);
    auto* fuzz = add("fuzz", "randomized invariant suite with shrinking", 0);
    fuzz->add_option("--mutate", args.mutate, "inject a named defect (harness self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        for (auto& [name, sub] : subs)
            if (sub->parsed()) return run(name, args);
        return kExitInput;
    } catch (const treedist::ScaleGuardError& e) {
        std::fprintf(stderr, "scale guard: %s (limit %lld)\n", e.what(), e.limit());
        return kExitScale;
    } catch (const treedist::InputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "invariant failure: %s\n", e.what());
        return kExitInvariant;
    }
}

#include "qipwsd/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qipwsd/concept_network.hpp"
#include "qipwsd/eval.hpp"
#include "qipwsd/similarity.hpp"
#include "qipwsd/solvers.hpp"

namespace qipwsd {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kConfigError = 2;

struct SolveArgs {
    std::string corpus;
    std::string out;
    double lambda1 = 1.0, lambda2 = 1.0, lambda3 = 1.0;
    double beta = 1.0;
    double theta = 1.0;
    std::string variant = "full";
    std::string solver = "bnb";
    std::uint64_t seed = 0;
    std::uint32_t restarts = 8;
};

int run_solve(const SolveArgs& args) {
    PipelineOptions options;
    options.config.params = {args.lambda1, args.lambda2, args.lambda3};
    options.config.beta = args.beta;
    options.config.theta = args.theta;
    options.config.variant = *variant_from_name(args.variant);
    options.solver = *solver_kind_from_name(args.solver);
    options.seed = args.seed;
    options.restarts = args.restarts;

    const EvalReport report = run_pipeline(args.corpus, options, std::filesystem::path(args.out));
    std::cout << "solved " << report.instances << " instance" << (report.instances == 1 ? "" : "s")
              << " (" << report.words << " words) with " << solver_kind_name(options.solver);
    if (report.accuracy) std::cout << "; accuracy " << *report.accuracy;
    std::cout << "; report written to " << args.out << "\n";
    return kOk;
}

int run_compare(const std::string& path_a, const std::string& path_b) {
    const EvalReport a = load_report(path_a);
    const EvalReport b = load_report(path_b);
    const CompareSummary summary = compare_runs(a, b);
    std::cout << compare_to_json(summary).dump(2) << "\n";
    return kOk;
}

struct OrderDemoArgs {
    std::string corpus;
    std::string out;
    std::size_t instance = 0;
    std::size_t max_orders = 5040;
    std::uint64_t seed = 0;
};

const Instance& pick_instance(const std::vector<Instance>& corpus, std::size_t index) {
    if (index >= corpus.size())
        throw InstanceError("instance index " + std::to_string(index) + " out of range; corpus has " +
                            std::to_string(corpus.size()) + " instances");
    return corpus[index];
}

int run_order_demo(const OrderDemoArgs& args) {
    const auto corpus = load_corpus(args.corpus);
    const Instance& inst = pick_instance(corpus, args.instance);
    const SimTables tables = build_sim_tables(inst);

    // thread the path through each word's best own-sense match
    Assignment a;
    a.choices.resize(inst.word_count());
    for (std::size_t i = 0; i < inst.word_count(); ++i) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < tables.sense_count(i); ++k) {
            if (tables.c(i, k) > tables.c(i, best)) best = k;
        }
        a.choices[i] = best;
    }

    const OrderDependenceReport report =
        demonstrate_order_dependence(inst, tables, a, args.max_orders, args.seed);

    nlohmann::json j;
    j["instance"] = args.instance;
    j["choices"] = a.choices;
    nlohmann::json senses = nlohmann::json::array();
    for (std::size_t i = 0; i < inst.word_count(); ++i)
        senses.push_back(inst.words[i].senses[a.choices[i]].sense_id);
    j["assignment"] = std::move(senses);
    j["orders"] = report.entries.size();
    j["exhaustive"] = report.exhaustive;
    j["min_length"] = report.min_length;
    j["max_length"] = report.max_length;
    j["spread"] = report.spread();
    j["entries"] = nlohmann::json::array();
    for (const auto& entry : report.entries) {
        j["entries"].push_back({{"order", entry.order}, {"length", entry.length}});
    }

    std::ofstream out(args.out);
    if (!out) throw InstanceError("cannot write '" + args.out + "'");
    out << j.dump(2) << "\n";
    std::cout << "enumerated " << report.entries.size() << " orders; spread " << report.spread()
              << "; table written to " << args.out << "\n";
    return kOk;
}

int run_dump_tables(const std::string& corpus_path, std::size_t index, const std::string& out_path) {
    const auto corpus = load_corpus(corpus_path);
    const Instance& inst = pick_instance(corpus, index);
    std::ofstream out(out_path);
    if (!out) throw InstanceError("cannot write '" + out_path + "'");
    out << dump_sim_tables(build_sim_tables(inst)).dump(2) << "\n";
    return kOk;
}

}  // namespace

int cli_main(std::vector<std::string> args) {
    CLI::App app{"quadratic 0-1 sense-selection solver and evaluation harness"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "solve a corpus and write a run report");
    solve->add_option("--corpus", solve_args.corpus, "corpus file (JSON array of instances)")->required();
    solve->add_option("--lambda1", solve_args.lambda1, "through-the-word relatedness weight");
    solve->add_option("--lambda2", solve_args.lambda2, "direct sense-sense relatedness weight");
    solve->add_option("--lambda3", solve_args.lambda3, "context-term relatedness weight");
    solve->add_option("--beta", solve_args.beta, "quadratic term adjustment coefficient");
    solve->add_option("--theta", solve_args.theta, "margin-fixing threshold in [0,1]; 1 disables fixing")
        ->check(CLI::Range(0.0, 1.0));
    solve->add_option("--variant", solve_args.variant, "pair structure: full, adjacent, or qipr")
        ->check(CLI::IsMember({"full", "adjacent", "qipr"}));
    solve->add_option("--solver", solve_args.solver, "brute, bnb, dp, qipr, or local")
        ->check(CLI::IsMember({"brute", "bnb", "dp", "qipr", "local"}));
    solve->add_option("--seed", solve_args.seed, "random seed for the local-search solver");
    solve->add_option("--restarts", solve_args.restarts, "local-search restarts");
    solve->add_option("--out", solve_args.out, "report output path")->required();

    std::string compare_a, compare_b;
    auto* compare = app.add_subcommand("compare", "diff two run reports over the same corpus");
    compare->add_option("report_a", compare_a, "first report")->required();
    compare->add_option("report_b", compare_b, "second report")->required();

    OrderDemoArgs demo_args;
    auto* demo = app.add_subcommand("order-demo",
                                    "path lengths of all disambiguation orders for one instance");
    demo->add_option("--corpus", demo_args.corpus, "corpus file")->required();
    demo->add_option("--instance", demo_args.instance, "instance index within the corpus")->required();
    demo->add_option("--max-orders", demo_args.max_orders, "sample cap on enumerated orders");
    demo->add_option("--seed", demo_args.seed, "sampling seed used above the cap");
    demo->add_option("--out", demo_args.out, "output path for the (order, length) table")->required();

    std::string dump_corpus, dump_out;
    std::size_t dump_instance = 0;
    auto* dump = app.add_subcommand("dump-tables", "write one instance's similarity tables");
    dump->add_option("--corpus", dump_corpus, "corpus file")->required();
    dump->add_option("--instance", dump_instance, "instance index within the corpus")->required();
    dump->add_option("--out", dump_out, "output path")->required();

    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (compare->parsed()) return run_compare(compare_a, compare_b);
        if (demo->parsed()) return run_order_demo(demo_args);
        if (dump->parsed()) return run_dump_tables(dump_corpus, dump_instance, dump_out);
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace qipwsd

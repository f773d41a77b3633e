#include "qipwsd/eval.hpp"

#include <fstream>

#include "qipwsd/similarity.hpp"

namespace qipwsd {

std::string solver_kind_name(SolverKind kind) {
    switch (kind) {
        case SolverKind::kBruteForce: return "brute";
        case SolverKind::kBranchAndBound: return "bnb";
        case SolverKind::kChainDp: return "dp";
        case SolverKind::kQipR: return "qipr";
        case SolverKind::kLocalSearch: return "local";
    }
    return "bnb";
}

std::optional<SolverKind> solver_kind_from_name(const std::string& name) {
    if (name == "brute") return SolverKind::kBruteForce;
    if (name == "bnb") return SolverKind::kBranchAndBound;
    if (name == "dp") return SolverKind::kChainDp;
    if (name == "qipr") return SolverKind::kQipR;
    if (name == "local") return SolverKind::kLocalSearch;
    return std::nullopt;
}

void validate_pipeline_config(const PipelineOptions& options) {
    const Variant variant = options.config.variant;
    switch (options.solver) {
        case SolverKind::kChainDp:
            if (variant != Variant::kAdjacent)
                throw SolverError("the dp solver requires --variant adjacent, got " + variant_name(variant));
            break;
        case SolverKind::kQipR:
            if (variant != Variant::kQipR && options.config.beta != 0.0)
                throw SolverError("the qipr solver requires --variant qipr or --beta 0");
            break;
        default:
            break;
    }
}

SolveResult run_solver(const QipModel& model, const PipelineOptions& options) {
    switch (options.solver) {
        case SolverKind::kBruteForce: return solve_brute_force(model, options.brute_force_cap);
        case SolverKind::kBranchAndBound: return solve_branch_and_bound(model);
        case SolverKind::kChainDp: return solve_chain_dp(model);
        case SolverKind::kQipR: return solve_qip_r(model);
        case SolverKind::kLocalSearch: return solve_local_search(model, options.seed, options.restarts);
    }
    throw SolverError("unknown solver");
}

EvalReport evaluate_corpus(const std::vector<Instance>& corpus, const PipelineOptions& options) {
    validate_pipeline_config(options);

    EvalReport report;
    report.options = options;
    report.instances = corpus.size();

    bool all_gold = true;
    std::size_t total_correct = 0;

    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
        const Instance& inst = corpus[idx];
        const SimTables tables = build_sim_tables(inst);
        const QipModel model = build_model(inst, tables, options.config);
        const SolveResult solved = run_solver(model, options);

        InstanceRecord record;
        record.index = idx;
        record.words = inst.word_count();
        record.objective = solved.objective;
        record.optimal = solved.optimal;
        record.stats = solved.stats;
        record.assignment.reserve(inst.word_count());
        for (std::size_t i = 0; i < inst.word_count(); ++i) {
            record.assignment.push_back(inst.words[i].senses[solved.assignment.choices[i]].sense_id);
        }
        if (inst.gold) {
            std::size_t correct = 0;
            for (std::size_t i = 0; i < inst.word_count(); ++i) {
                if (record.assignment[i] == (*inst.gold)[i]) ++correct;
            }
            record.correct = correct;
            total_correct += correct;
        } else {
            all_gold = false;
        }
        report.words += record.words;
        report.records.push_back(std::move(record));
    }

    if (all_gold && !corpus.empty()) {
        report.correct = total_correct;
        if (report.words > 0) report.accuracy = static_cast<double>(total_correct) / report.words;
    }
    return report;
}

EvalReport run_pipeline(const std::filesystem::path& corpus_path, const PipelineOptions& options,
                        const std::optional<std::filesystem::path>& out_path) {
    validate_pipeline_config(options);  // reject before any load or solve
    const std::vector<Instance> corpus = load_corpus(corpus_path);
    EvalReport report = evaluate_corpus(corpus, options);
    if (out_path) write_report(report, *out_path);
    return report;
}

nlohmann::json report_to_json(const EvalReport& report) {
    nlohmann::json j;
    j["config"] = {
        {"lambda1", report.options.config.params.lambda1},
        {"lambda2", report.options.config.params.lambda2},
        {"lambda3", report.options.config.params.lambda3},
        {"beta", report.options.config.beta},
        {"theta", report.options.config.theta},
        {"variant", variant_name(report.options.config.variant)},
        {"solver", solver_kind_name(report.options.solver)},
        {"seed", report.options.seed},
        {"restarts", report.options.restarts},
    };
    nlohmann::json aggregate;
    aggregate["instances"] = report.instances;
    aggregate["words"] = report.words;
    if (report.correct) aggregate["correct"] = *report.correct;
    if (report.accuracy) aggregate["accuracy"] = *report.accuracy;
    j["aggregate"] = std::move(aggregate);

    j["instances"] = nlohmann::json::array();
    for (const auto& record : report.records) {
        nlohmann::json jr;
        jr["index"] = record.index;
        jr["words"] = record.words;
        jr["assignment"] = record.assignment;
        jr["objective"] = record.objective;
        jr["optimal"] = record.optimal;
        jr["stats"] = {
            {"nodes_explored", record.stats.nodes_explored},
            {"restarts", record.stats.restarts},
            {"elapsed_seconds", record.stats.elapsed_seconds},
        };
        if (record.correct) jr["correct"] = *record.correct;
        j["instances"].push_back(std::move(jr));
    }
    return j;
}

EvalReport report_from_json(const nlohmann::json& j) {
    try {
        EvalReport report;
        const auto& config = j.at("config");
        report.options.config.params.lambda1 = config.at("lambda1").get<double>();
        report.options.config.params.lambda2 = config.at("lambda2").get<double>();
        report.options.config.params.lambda3 = config.at("lambda3").get<double>();
        report.options.config.beta = config.at("beta").get<double>();
        report.options.config.theta = config.at("theta").get<double>();
        const auto variant = variant_from_name(config.at("variant").get<std::string>());
        if (!variant) throw ReportError("unknown variant in report config");
        report.options.config.variant = *variant;
        const auto solver = solver_kind_from_name(config.at("solver").get<std::string>());
        if (!solver) throw ReportError("unknown solver in report config");
        report.options.solver = *solver;
        report.options.seed = config.at("seed").get<std::uint64_t>();
        report.options.restarts = config.at("restarts").get<std::uint32_t>();

        const auto& aggregate = j.at("aggregate");
        report.instances = aggregate.at("instances").get<std::size_t>();
        report.words = aggregate.at("words").get<std::size_t>();
        if (aggregate.contains("correct")) report.correct = aggregate["correct"].get<std::size_t>();
        if (aggregate.contains("accuracy")) report.accuracy = aggregate["accuracy"].get<double>();

        for (const auto& jr : j.at("instances")) {
            InstanceRecord record;
            record.index = jr.at("index").get<std::size_t>();
            record.words = jr.at("words").get<std::size_t>();
            record.assignment = jr.at("assignment").get<std::vector<std::string>>();
            record.objective = jr.at("objective").get<double>();
            record.optimal = jr.at("optimal").get<bool>();
            const auto& stats = jr.at("stats");
            record.stats.nodes_explored = stats.at("nodes_explored").get<std::uint64_t>();
            record.stats.restarts = stats.at("restarts").get<std::uint64_t>();
            record.stats.elapsed_seconds = stats.at("elapsed_seconds").get<double>();
            if (jr.contains("correct")) record.correct = jr["correct"].get<std::size_t>();
            report.records.push_back(std::move(record));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ReportError(std::string("malformed report: ") + e.what());
    }
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ReportError("cannot write '" + path.string() + "'");
    out << report_to_json(report).dump(2) << "\n";
}

EvalReport load_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ReportError("cannot open '" + path.string() + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ReportError("malformed JSON in '" + path.string() + "': " + e.what());
    }
    return report_from_json(j);
}

std::string report_comparison_canon(const nlohmann::json& report_json) {
    nlohmann::json canon = report_json;
    if (canon.contains("instances")) {
        for (auto& jr : canon["instances"]) {
            if (jr.contains("stats")) jr["stats"].erase("elapsed_seconds");
        }
    }
    return canon.dump(2);
}

CompareSummary compare_runs(const EvalReport& a, const EvalReport& b) {
    if (a.records.size() != b.records.size())
        throw ReportError("corpus mismatch: report A has " + std::to_string(a.records.size()) +
                          " instances, report B has " + std::to_string(b.records.size()));
    CompareSummary summary;
    summary.instances = a.records.size();
    for (std::size_t idx = 0; idx < a.records.size(); ++idx) {
        const auto& ra = a.records[idx];
        const auto& rb = b.records[idx];
        if (ra.words != rb.words || ra.assignment.size() != rb.assignment.size())
            throw ReportError("corpus mismatch: instance " + std::to_string(idx) + " has " +
                              std::to_string(ra.words) + " words in report A, " +
                              std::to_string(rb.words) + " in report B");
        summary.words += ra.words;
        summary.objective_delta.push_back(rb.objective - ra.objective);
        for (std::size_t w = 0; w < ra.assignment.size(); ++w) {
            if (ra.assignment[w] == rb.assignment[w]) {
                ++summary.agreements;
            } else {
                summary.disagreements.push_back({idx, w, ra.assignment[w], rb.assignment[w]});
            }
        }
    }
    summary.agreement_rate =
        summary.words > 0 ? static_cast<double>(summary.agreements) / summary.words : 0.0;
    return summary;
}

nlohmann::json compare_to_json(const CompareSummary& summary) {
    nlohmann::json j;
    j["instances"] = summary.instances;
    j["words"] = summary.words;
    j["agreements"] = summary.agreements;
    j["agreement_rate"] = summary.agreement_rate;
    j["objective_delta"] = summary.objective_delta;
    j["disagreements"] = nlohmann::json::array();
    for (const auto& d : summary.disagreements) {
        j["disagreements"].push_back({
            {"instance", d.instance},
            {"word", d.word},
            {"a", d.a_sense},
            {"b", d.b_sense},
        });
    }
    return j;
}

}  // namespace qipwsd

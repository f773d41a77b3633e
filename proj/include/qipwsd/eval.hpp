#pragma once
// End-to-end pipeline: load a corpus, build tables and model per instance,
// solve, score against gold labels, and read/write/diff run reports.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qipwsd/instance.hpp"
#include "qipwsd/qip_model.hpp"
#include "qipwsd/solvers.hpp"

namespace qipwsd {

class ReportError : public std::runtime_error {
  public:
    explicit ReportError(const std::string& what) : std::runtime_error(what) {}
};

enum class SolverKind { kBruteForce, kBranchAndBound, kChainDp, kQipR, kLocalSearch };

std::string solver_kind_name(SolverKind kind);  // brute | bnb | dp | qipr | local
std::optional<SolverKind> solver_kind_from_name(const std::string& name);

struct PipelineOptions {
    SolverConfig config{};
    SolverKind solver = SolverKind::kBranchAndBound;
    std::uint64_t seed = 0;
    std::uint32_t restarts = 8;
    std::uint64_t brute_force_cap = 10'000'000;
};

struct InstanceRecord {
    std::size_t index = 0;
    std::size_t words = 0;
    std::vector<std::string> assignment;  // chosen sense_id per word
    double objective = 0.0;
    bool optimal = false;
    SolveStats stats{};
    std::optional<std::size_t> correct;  // present only when the instance has gold
};

struct EvalReport {
    PipelineOptions options{};
    std::vector<InstanceRecord> records;
    std::size_t instances = 0;
    std::size_t words = 0;
    std::optional<std::size_t> correct;   // present only when every instance has gold
    std::optional<double> accuracy;       // correct / words
};

/// Rejects solver/variant combinations that cannot run: the chain DP needs
/// the adjacent variant, the QIP-R solver needs beta = 0 or the qipr variant.
void validate_pipeline_config(const PipelineOptions& options);

/// Dispatches to the solver selected in `options`.
SolveResult run_solver(const QipModel& model, const PipelineOptions& options);

/// Solves every instance in order and aggregates scores.
EvalReport evaluate_corpus(const std::vector<Instance>& corpus, const PipelineOptions& options);

/// Loads the corpus, validates the config before any solve, evaluates, and
/// writes the report to `out_path` when given.
EvalReport run_pipeline(const std::filesystem::path& corpus_path, const PipelineOptions& options,
                        const std::optional<std::filesystem::path>& out_path = std::nullopt);

nlohmann::json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);
void write_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport load_report(const std::filesystem::path& path);

/// Canonical bytes of a report for run-to-run comparison: timing fields are
/// volatile and excluded, everything else is deterministic.
std::string report_comparison_canon(const nlohmann::json& report_json);

struct Disagreement {
    std::size_t instance = 0;
    std::size_t word = 0;
    std::string a_sense;
    std::string b_sense;
};

struct CompareSummary {
    std::size_t instances = 0;
    std::size_t words = 0;
    std::size_t agreements = 0;
    double agreement_rate = 0.0;               // agreements / words
    std::vector<double> objective_delta;       // per instance, B minus A
    std::vector<Disagreement> disagreements;
};

/// Word-level diff of two runs over the same corpus; throws ReportError when
/// instance counts or per-instance word counts do not match.
CompareSummary compare_runs(const EvalReport& a, const EvalReport& b);
nlohmann::json compare_to_json(const CompareSummary& summary);

}  // namespace qipwsd

#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "qipwsd/cli.hpp"
#include "qipwsd/eval.hpp"
#include "support/random_instance.hpp"
#include "support/temp_path.hpp"

using namespace qipwsd;

namespace {

std::filesystem::path make_corpus(std::uint64_t seed, std::size_t count, bool with_gold = true) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> corpus;
    testing::GeneratorOptions options;
    options.with_gold = with_gold;
    for (std::size_t k = 0; k < count; ++k) corpus.push_back(testing::random_instance(rng, options));
    const auto path = qipwsd::testing::temp_file("cli-corpus");
    save_corpus(corpus, path);
    return path;
}

}  // namespace

TEST_CASE("solve subcommand writes a report and exits 0") {
    const auto corpus = make_corpus(301, 3);
    const auto out = qipwsd::testing::temp_file("cli-report");
    CHECK(cli_main({"solve", "--corpus", corpus.string(), "--out", out.string()}) == 0);
    const EvalReport report = load_report(out);
    CHECK(report.instances == 3);
    CHECK(report.accuracy.has_value());
}

TEST_CASE("solve accepts the full flag surface") {
    const auto corpus = make_corpus(307, 2);
    const auto out = qipwsd::testing::temp_file("cli-flags");
    CHECK(cli_main({"solve", "--corpus", corpus.string(), "--lambda1", "0.5", "--lambda2", "2",
                    "--lambda3", "0", "--beta", "0.7", "--theta", "0.3", "--variant", "adjacent",
                    "--solver", "dp", "--seed", "4", "--restarts", "2", "--out", out.string()}) == 0);
    const EvalReport report = load_report(out);
    CHECK(report.options.config.variant == Variant::kAdjacent);
    CHECK(report.options.config.theta == 0.3);
}

TEST_CASE("input problems exit 1") {
    const auto out = qipwsd::testing::temp_file("cli-no-report");
    CHECK(cli_main({"solve", "--corpus", "missing-file.json", "--out", out.string()}) == 1);
    CHECK(cli_main({"solve", "--corpus", "x.json", "--theta", "1.5", "--out", out.string()}) == 1);
    CHECK(cli_main({"solve", "--corpus", "x.json"}) == 1);  // --out required
    CHECK(cli_main({"nonsense"}) == 1);
    CHECK(cli_main({}) == 1);
}

TEST_CASE("incompatible solver and variant exit 2 before any solve") {
    const auto corpus = make_corpus(311, 1);
    const auto out = qipwsd::testing::temp_file("cli-incompat");
    CHECK(cli_main({"solve", "--corpus", corpus.string(), "--solver", "dp", "--out", out.string()}) == 2);
    CHECK(cli_main({"solve", "--corpus", corpus.string(), "--solver", "qipr", "--out", out.string()}) == 2);
    CHECK_FALSE(std::filesystem::exists(out));
    // the same checks pass with a compatible variant
    CHECK(cli_main({"solve", "--corpus", corpus.string(), "--solver", "qipr", "--beta", "0",
                    "--out", out.string()}) == 0);
}

TEST_CASE("compare subcommand diffs two runs") {
    const auto corpus = make_corpus(313, 2);
    const auto out_a = qipwsd::testing::temp_file("cli-cmp-a");
    const auto out_b = qipwsd::testing::temp_file("cli-cmp-b");
    REQUIRE(cli_main({"solve", "--corpus", corpus.string(), "--out", out_a.string()}) == 0);
    REQUIRE(cli_main({"solve", "--corpus", corpus.string(), "--beta", "0", "--solver", "qipr",
                      "--out", out_b.string()}) == 0);
    CHECK(cli_main({"compare", out_a.string(), out_b.string()}) == 0);

    const auto other = make_corpus(317, 3);
    const auto out_c = qipwsd::testing::temp_file("cli-cmp-c");
    REQUIRE(cli_main({"solve", "--corpus", other.string(), "--out", out_c.string()}) == 0);
    CHECK(cli_main({"compare", out_a.string(), out_c.string()}) == 1);  // corpus mismatch
}

TEST_CASE("order-demo emits an order/length table") {
    std::mt19937_64 rng(331);
    const std::vector<Instance> corpus{testing::random_instance_with_counts(rng, {4, 3, 4, 5})};
    const auto corpus_path = qipwsd::testing::temp_file("cli-demo-corpus");
    save_corpus(corpus, corpus_path);
    const auto out = qipwsd::testing::temp_file("cli-demo-out");

    CHECK(cli_main({"order-demo", "--corpus", corpus_path.string(), "--instance", "0",
                    "--out", out.string()}) == 0);
    std::ifstream in(out);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["orders"] == 24);
    CHECK(j["exhaustive"] == true);
    CHECK(j["entries"].size() == 24);
    CHECK(j["spread"].get<double>() >= 0.0);

    CHECK(cli_main({"order-demo", "--corpus", corpus_path.string(), "--instance", "9",
                    "--out", out.string()}) == 1);  // index out of range
}

TEST_CASE("dump-tables writes the similarity tables") {
    const auto corpus = make_corpus(337, 1);
    const auto out = qipwsd::testing::temp_file("cli-dump");
    CHECK(cli_main({"dump-tables", "--corpus", corpus.string(), "--instance", "0",
                    "--out", out.string()}) == 0);
    std::ifstream in(out);
    const auto j = nlohmann::json::parse(in);
    CHECK(j.contains("c"));
    CHECK(j.contains("h"));
    CHECK(j.contains("b"));
    CHECK(j.contains("e"));
}

TEST_CASE("help exits 0") {
    CHECK(cli_main({"--help"}) == 0);
    CHECK(cli_main({"solve", "--help"}) == 0);
}

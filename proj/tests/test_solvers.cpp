#include <doctest.h>

#include <cmath>

#include "qipwsd/solvers.hpp"
#include "support/random_instance.hpp"

using namespace qipwsd;

namespace {

QipModel model_for(const Instance& inst, const SolverConfig& cfg) {
    return build_model(inst, build_sim_tables(inst), cfg);
}

QipModel bare_model(std::vector<std::vector<double>> linear) {
    QipModel model;
    model.linear = std::move(linear);
    model.fixed.assign(model.linear.size(), std::nullopt);
    model.variant = Variant::kQipR;
    return model;
}

}  // namespace

TEST_CASE("brute force takes the argmax of a single word") {
    const QipModel model = bare_model({{0.1, 0.9, 0.3}});
    const SolveResult result = solve_brute_force(model);
    CHECK(result.assignment.choices == std::vector<std::size_t>{1});
    CHECK(result.objective == doctest::Approx(0.9));
    CHECK(result.optimal);
}

TEST_CASE("brute force explores the full assignment space") {
    std::mt19937_64 rng(101);
    const Instance inst = testing::random_instance_with_counts(rng, {4, 3, 4, 5});
    const SolveResult result = solve_brute_force(model_for(inst, {}));
    CHECK(result.stats.nodes_explored == 240);
}

TEST_CASE("brute force breaks total ties to the lexicographically smallest assignment") {
    const QipModel model = bare_model({{0, 0, 0}, {0, 0}, {0, 0, 0, 0}});
    const SolveResult result = solve_brute_force(model);
    CHECK(result.assignment.choices == std::vector<std::size_t>{0, 0, 0});
    CHECK(result.objective == 0.0);
}

TEST_CASE("brute force enforces its search-space cap") {
    std::mt19937_64 rng(103);
    const Instance inst = testing::random_instance_with_counts(rng, {5, 5, 5});
    CHECK_THROWS_AS(solve_brute_force(model_for(inst, {}), /*cap=*/100), SolverError);
    CHECK_NOTHROW(solve_brute_force(model_for(inst, {}), /*cap=*/125));
}

TEST_CASE("qipr solver matches brute force on linear-only models") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance inst = testing::random_instance(rng);
        SolverConfig cfg;
        cfg.variant = Variant::kQipR;
        const QipModel model = model_for(inst, cfg);
        const SolveResult fast = solve_qip_r(model);
        const SolveResult oracle = solve_brute_force(model);
        CHECK(fast.assignment.choices == oracle.assignment.choices);
        CHECK(fast.objective == doctest::Approx(oracle.objective).epsilon(1e-12));
    }
}

TEST_CASE("qipr solver tie-breaks to the lower sense index") {
    const SolveResult result = solve_qip_r(bare_model({{0.5, 0.5}}));
    CHECK(result.assignment.choices == std::vector<std::size_t>{0});
}

TEST_CASE("qipr solver picks the least negative sense when all gains are negative") {
    const SolveResult result = solve_qip_r(bare_model({{-0.9, -0.2, -0.5}}));
    CHECK(result.assignment.choices == std::vector<std::size_t>{1});
    CHECK(result.objective == doctest::Approx(-0.2));
}

TEST_CASE("qipr solver rejects models with an active quadratic part") {
    std::mt19937_64 rng(109);
    const Instance inst = testing::random_instance_with_counts(rng, {2, 2});
    SolverConfig cfg;  // full variant, beta 1
    CHECK_THROWS_AS(solve_qip_r(model_for(inst, cfg)), SolverError);
    cfg.beta = 0.0;
    CHECK_NOTHROW(solve_qip_r(model_for(inst, cfg)));  // quadratic term weighted away
}

TEST_CASE("chain dp is exact on adjacent-variant models") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = testing::random_instance(rng, {.min_words = 2, .max_words = 5});
        SolverConfig cfg;
        cfg.variant = Variant::kAdjacent;
        cfg.beta = (trial % 3 == 0) ? -0.8 : 1.2;
        const QipModel model = model_for(inst, cfg);
        const SolveResult dp = solve_chain_dp(model);
        const SolveResult oracle = solve_brute_force(model);
        CHECK(dp.assignment.choices == oracle.assignment.choices);
        CHECK(dp.objective == doctest::Approx(oracle.objective).epsilon(1e-12));
        CHECK(dp.optimal);
    }
}

TEST_CASE("chain dp with beta 0 equals the qipr solution") {
    std::mt19937_64 rng(127);
    const Instance inst = testing::random_instance(rng);
    SolverConfig cfg;
    cfg.variant = Variant::kAdjacent;
    cfg.beta = 0.0;
    const QipModel model = model_for(inst, cfg);
    CHECK(solve_chain_dp(model).assignment.choices == solve_qip_r(model).assignment.choices);
}

TEST_CASE("chain dp handles a one-word chain and rejects other variants") {
    std::mt19937_64 rng(131);
    const Instance one = testing::random_instance_with_counts(rng, {4});
    SolverConfig cfg;
    cfg.variant = Variant::kAdjacent;
    const SolveResult result = solve_chain_dp(model_for(one, cfg));
    CHECK(result.assignment.choices == solve_qip_r(model_for(one, cfg)).assignment.choices);

    cfg.variant = Variant::kFull;
    CHECK_THROWS_AS(solve_chain_dp(model_for(one, cfg)), SolverError);
}

TEST_CASE("branch and bound agrees with brute force") {
    std::mt19937_64 rng(137);
    for (int trial = 0; trial < 40; ++trial) {
        const Instance inst = testing::random_instance(rng);
        SolverConfig cfg;
        cfg.beta = (trial % 4 == 0) ? -0.5 : 1.0;
        cfg.theta = (trial % 5 == 0) ? 0.4 : 1.0;
        cfg.params = {1.0, 1.0, (trial % 2 == 0) ? 1.0 : -0.6};
        const QipModel model = model_for(inst, cfg);
        const SolveResult bnb = solve_branch_and_bound(model);
        const SolveResult oracle = solve_brute_force(model);
        CHECK(bnb.assignment.choices == oracle.assignment.choices);
        CHECK(bnb.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
        CHECK(bnb.optimal);
    }
}

TEST_CASE("branch and bound on a fully fixed model visits a single node") {
    // theta 0 with every top similarity positive fixes all words
    std::mt19937_64 rng(139);
    Instance inst;
    inst.dimension = 2;
    for (int i = 0; i < 3; ++i) {
        TargetWord w;
        w.word_id = "w" + std::to_string(i);
        w.context_embedding = {1.0, 0.1 * (i + 1)};
        w.senses.push_back({w.word_id + "#a", {1.0, 0.0}, {}});
        w.senses.push_back({w.word_id + "#b", {0.8, 0.3}, {}});
        inst.words.push_back(w);
    }
    SolverConfig cfg;
    cfg.theta = 0.0;
    const QipModel model = model_for(inst, cfg);
    REQUIRE(model.fixed_count() == 3);
    const SolveResult result = solve_branch_and_bound(model);
    CHECK(result.stats.nodes_explored == 1);
    CHECK(result.optimal);
}

TEST_CASE("branch and bound with beta 0 equals the qipr solution") {
    std::mt19937_64 rng(149);
    const Instance inst = testing::random_instance(rng);
    SolverConfig cfg;
    cfg.beta = 0.0;
    const QipModel model = model_for(inst, cfg);
    CHECK(solve_branch_and_bound(model).assignment.choices == solve_qip_r(model).assignment.choices);
}

TEST_CASE("local search with beta 0 converges to the qipr solution in one sweep") {
    std::mt19937_64 rng(151);
    const Instance inst = testing::random_instance(rng);
    SolverConfig cfg;
    cfg.beta = 0.0;
    const QipModel model = model_for(inst, cfg);
    const SolveResult result = solve_local_search(model, 0, 1);
    CHECK(result.assignment.choices == solve_qip_r(model).assignment.choices);
    CHECK_FALSE(result.optimal);
}

TEST_CASE("local search never falls below its argmax starting point") {
    std::mt19937_64 rng(157);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance inst = testing::random_instance(rng);
        const QipModel model = model_for(inst, {});
        const SolveResult result = solve_local_search(model, 42, 4);
        const double start = objective(model, linear_argmax_assignment(model));
        CHECK(result.objective >= start - 1e-12);
        CHECK(result.stats.restarts == 4);
    }
}

TEST_CASE("coordinate ascent traces a nondecreasing objective") {
    std::mt19937_64 rng(163);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance inst = testing::random_instance(rng);
        const QipModel model = model_for(inst, {});
        Assignment a;
        for (std::size_t i = 0; i < inst.word_count(); ++i) {
            std::uniform_int_distribution<std::size_t> pick(0, inst.sense_count(i) - 1);
            a.choices.push_back(pick(rng));
        }
        std::vector<double> trace;
        const double final_value = coordinate_ascent(model, a, &trace);
        REQUIRE(trace.size() >= 2);
        for (std::size_t s = 1; s < trace.size(); ++s) CHECK(trace[s] >= trace[s - 1]);
        CHECK(final_value == trace.back());
        CHECK(final_value == doctest::Approx(objective(model, a)).epsilon(1e-9));
    }
}

TEST_CASE("local search reports its gap to the optimum on a hard instance") {
    std::mt19937_64 rng(167);
    const Instance inst = testing::random_instance(rng, {.min_words = 6, .max_words = 6, .min_senses = 3});
    const QipModel model = model_for(inst, {});
    const SolveResult heuristic = solve_local_search(model, 5, 16);
    const SolveResult oracle = solve_brute_force(model);
    CHECK(heuristic.objective <= oracle.objective + 1e-9);
    MESSAGE("local-search gap: ", oracle.objective - heuristic.objective,
            " (optimum ", oracle.objective, ")");
}

TEST_CASE("local search is deterministic for a given seed") {
    std::mt19937_64 rng(173);
    const Instance inst = testing::random_instance(rng);
    const QipModel model = model_for(inst, {});
    const SolveResult a = solve_local_search(model, 9, 8);
    const SolveResult b = solve_local_search(model, 9, 8);
    CHECK(a.assignment.choices == b.assignment.choices);
    CHECK(a.objective == b.objective);
    CHECK(a.stats.nodes_explored == b.stats.nodes_explored);
}

TEST_CASE("every solver honors fixed variables") {
    std::mt19937_64 rng(179);
    for (int trial = 0; trial < 10; ++trial) {
        const Instance inst = testing::random_instance(rng, {.min_words = 3, .max_words = 5});
        SolverConfig cfg;
        cfg.theta = 0.2;
        cfg.variant = (trial % 2 == 0) ? Variant::kFull : Variant::kAdjacent;
        const QipModel model = model_for(inst, cfg);

        std::vector<SolveResult> results;
        results.push_back(solve_brute_force(model));
        results.push_back(solve_branch_and_bound(model));
        results.push_back(solve_local_search(model, 1, 4));
        if (cfg.variant == Variant::kAdjacent) results.push_back(solve_chain_dp(model));
        for (const auto& result : results) {
            for (std::size_t i = 0; i < model.word_count(); ++i) {
                if (model.fixed[i]) CHECK(result.assignment.choices[i] == *model.fixed[i]);
            }
        }
    }
}

TEST_CASE("fixing variables can only lower the attainable objective") {
    std::mt19937_64 rng(181);
    for (int trial = 0; trial < 10; ++trial) {
        const Instance inst = testing::random_instance(rng);
        SolverConfig free_cfg;  // theta 1, nothing fixed
        SolverConfig tight_cfg;
        tight_cfg.theta = 0.3;
        const double z_free = solve_branch_and_bound(model_for(inst, free_cfg)).objective;
        const double z_tight = solve_branch_and_bound(model_for(inst, tight_cfg)).objective;
        CHECK(z_free >= z_tight - 1e-12);
    }
}

TEST_CASE("solver choice is invariant to positive embedding scaling") {
    std::mt19937_64 rng(191);
    for (int trial = 0; trial < 10; ++trial) {
        const Instance inst = testing::random_instance(rng);
        const Instance scaled = testing::scale_embeddings(inst, 3.7);
        const SolveResult a = solve_branch_and_bound(model_for(inst, {}));
        const SolveResult b = solve_branch_and_bound(model_for(scaled, {}));
        CHECK(a.assignment.choices == b.assignment.choices);
    }
}

TEST_CASE("solvers reject structurally broken models") {
    QipModel broken = bare_model({{0.1, 0.2}});
    broken.fixed.clear();
    CHECK_THROWS_AS(solve_brute_force(broken), std::invalid_argument);
    broken = bare_model({{0.1, 0.2}});
    broken.fixed[0] = 7;
    CHECK_THROWS_AS(solve_qip_r(broken), std::invalid_argument);
}

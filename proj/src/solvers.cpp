#include "qipwsd/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace qipwsd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Slack when pruning against the incumbent: a subtree whose bound ties the
// incumbent may still hold an equal-objective, lexicographically smaller
// assignment, so only clearly dominated subtrees are cut.
constexpr double kBoundSlack = 1e-12;

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Recomputes the canonical objective and stores it; a solver whose claimed
// value drifts beyond tolerance indicates a bug, not an input problem.
void finalize(const QipModel& model, SolveResult& result, double claimed) {
    const double canonical = objective(model, result.assignment);
    if (std::abs(canonical - claimed) > 1e-9)
        throw std::logic_error("solver result does not re-evaluate to its claimed objective");
    result.objective = canonical;
}

// Incident quadratic blocks per word, with the word's side within the block.
struct BlockRef {
    std::size_t block = 0;
    bool is_i = false;
};

std::vector<std::vector<BlockRef>> index_blocks(const QipModel& model) {
    std::vector<std::vector<BlockRef>> by_word(model.word_count());
    for (std::size_t b = 0; b < model.quadratic.size(); ++b) {
        by_word[model.quadratic[b].i].push_back({b, true});
        by_word[model.quadratic[b].j].push_back({b, false});
    }
    return by_word;
}

// c(i, k) + beta * sum of r over blocks incident to word i, with every
// other word held at its current choice.
double word_score(const QipModel& model, const std::vector<std::vector<BlockRef>>& by_word,
                  const std::vector<std::size_t>& choices, std::size_t i, std::size_t k) {
    double r_sum = 0.0;
    for (const BlockRef& ref : by_word[i]) {
        const QuadBlock& block = model.quadratic[ref.block];
        r_sum += ref.is_i ? block.r_at(k, choices[block.j]) : block.r_at(choices[block.i], k);
    }
    return model.linear[i][k] + model.beta * r_sum;
}

}  // namespace

Assignment linear_argmax_assignment(const QipModel& model) {
    if (model.fixed.size() != model.word_count()) validate_model(model);
    Assignment a;
    a.choices.resize(model.word_count());
    for (std::size_t i = 0; i < model.word_count(); ++i) {
        if (model.fixed[i]) {
            a.choices[i] = *model.fixed[i];
            continue;
        }
        std::size_t best = 0;
        for (std::size_t k = 1; k < model.sense_count(i); ++k) {
            if (model.linear[i][k] > model.linear[i][best]) best = k;
        }
        a.choices[i] = best;
    }
    return a;
}

SolveResult solve_brute_force(const QipModel& model, std::uint64_t cap) {
    Stopwatch timer;
    validate_model(model);
    const std::size_t n = model.word_count();

    std::uint64_t space = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (model.fixed[i]) continue;
        const std::uint64_t m = model.sense_count(i);
        if (space > cap / m) throw SolverError("solve_brute_force: search space exceeds cap of " +
                                               std::to_string(cap) + " assignments");
        space *= m;
    }

    SolveResult result;
    Assignment a;
    a.choices.resize(n);
    for (std::size_t i = 0; i < n; ++i) a.choices[i] = model.fixed[i] ? *model.fixed[i] : 0;

    double best = -kInf;
    std::uint64_t explored = 0;
    while (true) {
        const double z = objective(model, a);
        ++explored;
        if (z > best) {
            best = z;
            result.assignment = a;
        }
        // lexicographic advance over free words, last word least significant
        std::size_t i = n;
        bool done = true;
        while (i > 0) {
            --i;
            if (model.fixed[i]) continue;
            if (++a.choices[i] < model.sense_count(i)) {
                done = false;
                break;
            }
            a.choices[i] = 0;
        }
        if (done) break;
    }

    result.optimal = true;
    result.stats.nodes_explored = explored;
    finalize(model, result, best);
    result.stats.elapsed_seconds = timer.seconds();
    return result;
}

SolveResult solve_qip_r(const QipModel& model) {
    Stopwatch timer;
    validate_model(model);
    if (!model.quadratic.empty() && model.beta != 0.0)
        throw SolverError("solve_qip_r: model has a nonzero quadratic part");

    SolveResult result;
    result.assignment = linear_argmax_assignment(model);
    result.optimal = true;
    std::uint64_t scanned = 0;
    for (std::size_t i = 0; i < model.word_count(); ++i) scanned += model.sense_count(i);
    result.stats.nodes_explored = scanned;
    finalize(model, result, objective(model, result.assignment));
    result.stats.elapsed_seconds = timer.seconds();
    return result;
}

SolveResult solve_chain_dp(const QipModel& model) {
    Stopwatch timer;
    validate_model(model);
    if (model.variant != Variant::kAdjacent)
        throw SolverError("solve_chain_dp: requires the adjacent variant, got " + variant_name(model.variant));

    const std::size_t n = model.word_count();

    // blocks are (i, i+1) in order for the adjacent variant
    std::vector<const QuadBlock*> edge(n, nullptr);
    for (const auto& block : model.quadratic) edge[block.i] = &block;

    auto allowed = [&](std::size_t i) {
        std::vector<std::size_t> ks;
        if (model.fixed[i]) {
            ks.push_back(*model.fixed[i]);
        } else {
            for (std::size_t k = 0; k < model.sense_count(i); ++k) ks.push_back(k);
        }
        return ks;
    };

    // suffix[i][u]: best achievable value of words i..n-1 given word i picks u
    std::vector<std::vector<double>> suffix(n);
    std::uint64_t states = 0;
    for (std::size_t ri = 0; ri < n; ++ri) {
        const std::size_t i = n - 1 - ri;
        suffix[i].assign(model.sense_count(i), -kInf);
        for (std::size_t u : allowed(i)) {
            ++states;
            double value = model.linear[i][u];
            if (i + 1 < n) {
                double best_next = -kInf;
                for (std::size_t v : allowed(i + 1)) {
                    const double t = (edge[i] ? model.beta * edge[i]->r_at(u, v) : 0.0) + suffix[i + 1][v];
                    if (t > best_next) best_next = t;
                }
                value += best_next;
            }
            suffix[i][u] = value;
        }
    }

    // forward greedy over the same table values; lowest index wins exact ties,
    // which yields the lexicographically smallest optimal assignment
    SolveResult result;
    result.assignment.choices.resize(n);
    double claimed = -kInf;
    {
        std::size_t pick = 0;
        double best = -kInf;
        for (std::size_t u : allowed(0)) {
            if (suffix[0][u] > best) {
                best = suffix[0][u];
                pick = u;
            }
        }
        result.assignment.choices[0] = pick;
        claimed = best;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t u = result.assignment.choices[i];
        std::size_t pick = 0;
        double best = -kInf;
        for (std::size_t v : allowed(i + 1)) {
            const double t = (edge[i] ? model.beta * edge[i]->r_at(u, v) : 0.0) + suffix[i + 1][v];
            if (t > best) {
                best = t;
                pick = v;
            }
        }
        result.assignment.choices[i + 1] = pick;
    }

    result.optimal = true;
    result.stats.nodes_explored = states;
    finalize(model, result, claimed);
    result.stats.elapsed_seconds = timer.seconds();
    return result;
}

double coordinate_ascent(const QipModel& model, Assignment& a,
                         std::vector<double>* sweep_trace, std::uint64_t* reopt_count) {
    const auto by_word = index_blocks(model);
    const std::size_t n = model.word_count();

    double value = objective(model, a);
    if (sweep_trace) sweep_trace->push_back(value);

    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (model.fixed[i]) continue;
            if (reopt_count) ++*reopt_count;
            const double current = word_score(model, by_word, a.choices, i, a.choices[i]);
            std::size_t best_k = a.choices[i];
            double best_score = current;
            for (std::size_t k = 0; k < model.sense_count(i); ++k) {
                const double s = word_score(model, by_word, a.choices, i, k);
                if (s > best_score) {
                    best_score = s;
                    best_k = k;
                }
            }
            if (best_score > current) {
                a.choices[i] = best_k;
                value += best_score - current;  // strict float increase, no cycling
                improved = true;
            }
        }
        if (sweep_trace) sweep_trace->push_back(value);
    }
    return value;
}

SolveResult solve_local_search(const QipModel& model, std::uint64_t seed, std::uint32_t restarts) {
    Stopwatch timer;
    validate_model(model);
    const std::size_t n = model.word_count();
    if (restarts == 0) restarts = 1;

    std::mt19937_64 rng(seed);
    SolveResult result;
    double best = -kInf;
    std::uint64_t reopts = 0;

    for (std::uint32_t t = 0; t < restarts; ++t) {
        Assignment a;
        if (t == 0) {
            a = linear_argmax_assignment(model);
        } else {
            a.choices.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (model.fixed[i]) {
                    a.choices[i] = *model.fixed[i];
                } else {
                    std::uniform_int_distribution<std::size_t> pick(0, model.sense_count(i) - 1);
                    a.choices[i] = pick(rng);
                }
            }
        }
        coordinate_ascent(model, a, nullptr, &reopts);
        const double z = objective(model, a);
        if (z > best || (z == best && lex_less(a.choices, result.assignment.choices))) {
            best = z;
            result.assignment = std::move(a);
        }
    }

    result.optimal = false;
    result.stats.nodes_explored = reopts;
    result.stats.restarts = restarts;
    finalize(model, result, best);
    result.stats.elapsed_seconds = timer.seconds();
    return result;
}

namespace {

struct BnbContext {
    const QipModel& model;
    std::vector<std::size_t> order;             // free words, branch order
    std::vector<std::vector<BlockRef>> by_word;
    std::vector<double> block_max;              // max over (u, v) of beta * r
    std::vector<bool> assigned;
    std::vector<std::size_t> choices;
    std::vector<std::size_t> incumbent;
    double incumbent_value = -kInf;
    std::uint64_t nodes = 0;

    explicit BnbContext(const QipModel& m) : model(m), by_word(index_blocks(m)) {}

    // Upper bound on any completion: the partial value, each remaining
    // word's best linear-plus-edges-to-assigned gain, and for every pair of
    // still-free words the block's maximum possible contribution (counted
    // once, valid for either sign of beta).
    double bound(double partial) const {
        double total = partial;
        for (std::size_t d = 0; d < order.size(); ++d) {
            const std::size_t w = order[d];
            if (assigned[w]) continue;
            double best = -kInf;
            for (std::size_t k = 0; k < model.sense_count(w); ++k) {
                double s = model.linear[w][k];
                for (const BlockRef& ref : by_word[w]) {
                    const QuadBlock& block = model.quadratic[ref.block];
                    const std::size_t other = ref.is_i ? block.j : block.i;
                    if (!assigned[other]) continue;
                    s += model.beta *
                         (ref.is_i ? block.r_at(k, choices[other]) : block.r_at(choices[other], k));
                }
                if (s > best) best = s;
            }
            total += best;
        }
        for (std::size_t b = 0; b < model.quadratic.size(); ++b) {
            const QuadBlock& block = model.quadratic[b];
            if (!assigned[block.i] && !assigned[block.j]) total += block_max[b];
        }
        return total;
    }

    void dfs(std::size_t depth, double partial) {
        ++nodes;
        if (depth == order.size()) {
            Assignment a{choices};
            const double z = objective(model, a);
            if (z > incumbent_value ||
                (z == incumbent_value && lex_less(choices, incumbent))) {
                incumbent_value = z;
                incumbent = choices;
            }
            return;
        }
        if (bound(partial) < incumbent_value - kBoundSlack) return;

        const std::size_t w = order[depth];
        for (std::size_t k = 0; k < model.sense_count(w); ++k) {
            double delta = model.linear[w][k];
            for (const BlockRef& ref : by_word[w]) {
                const QuadBlock& block = model.quadratic[ref.block];
                const std::size_t other = ref.is_i ? block.j : block.i;
                if (!assigned[other]) continue;
                delta += model.beta *
                         (ref.is_i ? block.r_at(k, choices[other]) : block.r_at(choices[other], k));
            }
            choices[w] = k;
            assigned[w] = true;
            dfs(depth + 1, partial + delta);
            assigned[w] = false;
        }
        choices[w] = 0;
    }
};

}  // namespace

SolveResult solve_branch_and_bound(const QipModel& model) {
    Stopwatch timer;
    validate_model(model);
    const std::size_t n = model.word_count();

    BnbContext ctx(model);
    ctx.block_max.resize(model.quadratic.size());
    for (std::size_t b = 0; b < model.quadratic.size(); ++b) {
        double mx = -kInf;
        for (double r : model.quadratic[b].r) mx = std::max(mx, model.beta * r);
        ctx.block_max[b] = mx;
    }

    ctx.assigned.assign(n, false);
    ctx.choices.assign(n, 0);
    double fixed_linear = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (model.fixed[i]) {
            ctx.choices[i] = *model.fixed[i];
            ctx.assigned[i] = true;
            fixed_linear += model.linear[i][*model.fixed[i]];
        } else {
            ctx.order.push_back(i);
        }
    }
    // quadratic value already realized between fixed words
    for (const auto& block : model.quadratic) {
        if (ctx.assigned[block.i] && ctx.assigned[block.j])
            fixed_linear += model.beta * block.r_at(ctx.choices[block.i], ctx.choices[block.j]);
    }
    std::stable_sort(ctx.order.begin(), ctx.order.end(), [&](std::size_t a, std::size_t b) {
        return model.sense_count(a) > model.sense_count(b);
    });

    const SolveResult warm = solve_local_search(model, 0, 1);
    ctx.incumbent = warm.assignment.choices;
    ctx.incumbent_value = warm.objective;

    ctx.dfs(0, fixed_linear);

    SolveResult result;
    result.assignment.choices = ctx.incumbent;
    result.optimal = true;
    result.stats.nodes_explored = ctx.nodes;
    finalize(model, result, ctx.incumbent_value);
    result.stats.elapsed_seconds = timer.seconds();
    return result;
}

}  // namespace qipwsd

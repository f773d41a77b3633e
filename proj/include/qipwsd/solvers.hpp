#pragma once
// Maximizers for the assembled model. All solvers are deterministic: sense
// argmax ties resolve to the lowest index and equal-objective assignments
// to the lexicographically smallest choices vector, so exact solvers agree
// with the exhaustive oracle bit-for-bit on the returned assignment.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qipwsd/instance.hpp"
#include "qipwsd/qip_model.hpp"

namespace qipwsd {

/// Thrown when a solver is invoked outside its contract (wrong variant,
/// nonzero quadratic part, search-space cap exceeded).
class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct SolveStats {
    std::uint64_t nodes_explored = 0;  // solver-specific unit, see each solver
    std::uint64_t restarts = 0;
    double elapsed_seconds = 0.0;
};

struct SolveResult {
    Assignment assignment;
    double objective = 0.0;  // always the value of objective(model, assignment)
    bool optimal = false;
    SolveStats stats;
};

/// Exhaustive search over all assignments consistent with the fixed set,
/// in lexicographic order. nodes_explored counts evaluated assignments.
/// Throws SolverError when the (free-word) search space exceeds `cap`.
SolveResult solve_brute_force(const QipModel& model, std::uint64_t cap = 10'000'000);

/// Per-word argmax of the linear gains; exact when the quadratic term is
/// absent or weighted by beta = 0, rejected otherwise. Runs in sum(M_i).
SolveResult solve_qip_r(const QipModel& model);

/// Exact forward dynamic program over the word chain for the adjacent-pairs
/// variant: state = sense of word i, transition weight = beta * r.
/// nodes_explored counts evaluated DP states. Rejects other variants.
SolveResult solve_chain_dp(const QipModel& model);

/// Exact depth-first branch and bound. Words branch in descending
/// sense-count order (index breaks ties); the bound combines each remaining
/// word's best linear-plus-assigned-edge gain with per-pair maxima between
/// remaining words; the incumbent is seeded by a short local-search run.
/// nodes_explored counts visited search-tree nodes (the root included).
SolveResult solve_branch_and_bound(const QipModel& model);

/// Coordinate-ascent heuristic: the first start is the per-word linear
/// argmax, subsequent starts are seeded-random assignments; each run sweeps
/// single-word re-selections until no strict improvement remains. Returns
/// the best result across starts (ties lexicographic); optimal is false.
/// nodes_explored counts single-word re-optimizations.
SolveResult solve_local_search(const QipModel& model, std::uint64_t seed, std::uint32_t restarts);

/// One ascent run from `a` (modified in place); returns the final objective.
/// When given, `sweep_trace` receives the objective before the first sweep
/// and after each sweep — a nondecreasing sequence.
double coordinate_ascent(const QipModel& model, Assignment& a,
                         std::vector<double>* sweep_trace = nullptr,
                         std::uint64_t* reopt_count = nullptr);

/// Fixed-respecting per-word argmax of the linear gains (lowest index wins
/// ties); the QIP-R solution and the local-search starting point.
Assignment linear_argmax_assignment(const QipModel& model);

}  // namespace qipwsd

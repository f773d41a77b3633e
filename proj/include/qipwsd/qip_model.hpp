#pragma once
// Assembly and evaluation of the quadratic 0-1 semi-assignment program:
// linear sense-word gains, pairwise relatedness gains weighted by beta,
// and margin-based variable fixing.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qipwsd/instance.hpp"
#include "qipwsd/similarity.hpp"

namespace qipwsd {

/// Which word pairs carry a quadratic term.
enum class Variant {
    kFull,      // all unordered word pairs i < j
    kAdjacent,  // consecutive pairs (i, i+1) only
    kQipR,      // no quadratic term; per-word argmax of the linear gains
};

std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);

struct SolverConfig {
    double beta = 1.0;
    double theta = 1.0;  // in [0, 1]; 1 disables margin fixing
    RelatednessParams params{};
    Variant variant = Variant::kFull;
};

/// Quadratic coefficients for one interacting word pair, i < j.
struct QuadBlock {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t senses_i = 0;
    std::size_t senses_j = 0;
    std::vector<double> r;  // senses_i x senses_j, row-major

    double r_at(std::size_t u, std::size_t v) const { return r[u * senses_j + v]; }
};

struct QipModel {
    std::vector<std::vector<double>> linear;          // c(i, k)
    std::vector<QuadBlock> quadratic;                 // pair set dictated by variant
    double beta = 1.0;
    std::vector<std::optional<std::size_t>> fixed;    // at most one forced sense per word
    Variant variant = Variant::kFull;

    std::size_t word_count() const { return linear.size(); }
    std::size_t sense_count(std::size_t i) const { return linear[i].size(); }
    std::vector<std::size_t> sense_counts() const;
    std::size_t fixed_count() const;
};

/// Forces a word's sense to its linear-gain argmax when the relative margin
/// over the runner-up reaches theta. Per word i:
///   - a single candidate sense is always fixed;
///   - theta = 1 fixes no multi-sense word (margin fixing disabled);
///   - otherwise, with c* the largest and c# the second-largest c(i,.),
///     the argmax is fixed iff c* > 0 and (c* - c#)/c* >= theta.
/// Argmax ties resolve to the lowest sense index.
std::vector<std::optional<std::size_t>> apply_theta_pruning(const SimTables& tables, double theta);

/// Builds the model for `cfg`: linear gains from the c table, quadratic
/// blocks holding relatedness values over the variant's pair set, and the
/// fixed set from apply_theta_pruning.
QipModel build_model(const Instance& inst, const SimTables& tables, const SolverConfig& cfg);

/// Checks structural consistency (fixed-vector sizing, block shapes and
/// index ranges); throws std::invalid_argument. Models from build_model
/// always pass; hand-assembled ones are checked at solver entry.
void validate_model(const QipModel& model);

/// Z = sum_i c(i, k_i) + beta * sum_{blocks} r(k_i, k_j), each unordered
/// pair counted once. Throws std::invalid_argument on a malformed
/// assignment or one that contradicts a fixed variable (naming the word).
double objective(const QipModel& model, const Assignment& a);

}  // namespace qipwsd

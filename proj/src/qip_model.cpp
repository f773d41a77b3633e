#include "qipwsd/qip_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qipwsd {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::kFull: return "full";
        case Variant::kAdjacent: return "adjacent";
        case Variant::kQipR: return "qipr";
    }
    return "full";
}

std::optional<Variant> variant_from_name(const std::string& name) {
    if (name == "full") return Variant::kFull;
    if (name == "adjacent") return Variant::kAdjacent;
    if (name == "qipr") return Variant::kQipR;
    return std::nullopt;
}

std::vector<std::size_t> QipModel::sense_counts() const {
    std::vector<std::size_t> counts;
    counts.reserve(linear.size());
    for (const auto& row : linear) counts.push_back(row.size());
    return counts;
}

std::size_t QipModel::fixed_count() const {
    std::size_t n = 0;
    for (const auto& f : fixed) {
        if (f) ++n;
    }
    return n;
}

std::vector<std::optional<std::size_t>> apply_theta_pruning(const SimTables& tables, double theta) {
    if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("theta must be in [0, 1]");
    const std::size_t n = tables.word_count();
    std::vector<std::optional<std::size_t>> fixed(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = tables.sense_count(i);
        if (m == 1) {
            fixed[i] = 0;
            continue;
        }
        if (theta == 1.0) continue;  // margin fixing disabled
        std::size_t best = 0;
        for (std::size_t k = 1; k < m; ++k) {
            if (tables.c(i, k) > tables.c(i, best)) best = k;
        }
        const double top = tables.c(i, best);
        if (top <= 0.0) continue;  // margin ratio ill-defined or sign-flipped
        double second = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < m; ++k) {
            if (k != best && tables.c(i, k) > second) second = tables.c(i, k);
        }
        if ((top - second) / top >= theta) fixed[i] = best;
    }
    return fixed;
}

QipModel build_model(const Instance& inst, const SimTables& tables, const SolverConfig& cfg) {
    if (tables.word_count() != inst.word_count())
        throw std::invalid_argument("build_model: tables do not match instance");
    QipModel model;
    model.beta = cfg.beta;
    model.variant = cfg.variant;

    const std::size_t n = inst.word_count();
    model.linear.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        model.linear[i].resize(tables.sense_count(i));
        for (std::size_t k = 0; k < tables.sense_count(i); ++k) model.linear[i][k] = tables.c(i, k);
    }

    if (cfg.variant != Variant::kQipR) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const std::size_t j_end = (cfg.variant == Variant::kAdjacent) ? i + 2 : n;
            for (std::size_t j = i + 1; j < j_end; ++j) {
                QuadBlock block;
                block.i = i;
                block.j = j;
                block.senses_i = tables.sense_count(i);
                block.senses_j = tables.sense_count(j);
                block.r.resize(block.senses_i * block.senses_j);
                for (std::size_t u = 0; u < block.senses_i; ++u) {
                    for (std::size_t v = 0; v < block.senses_j; ++v) {
                        block.r[u * block.senses_j + v] = relatedness(tables, cfg.params, i, u, j, v);
                    }
                }
                model.quadratic.push_back(std::move(block));
            }
        }
    }

    model.fixed = apply_theta_pruning(tables, cfg.theta);
    return model;
}

void validate_model(const QipModel& model) {
    const std::size_t n = model.word_count();
    if (model.fixed.size() != n)
        throw std::invalid_argument("model: fixed vector has " + std::to_string(model.fixed.size()) +
                                    " entries for " + std::to_string(n) + " words");
    for (std::size_t i = 0; i < n; ++i) {
        if (model.sense_count(i) == 0)
            throw std::invalid_argument("model: word " + std::to_string(i) + " has no senses");
        if (model.fixed[i] && *model.fixed[i] >= model.sense_count(i))
            throw std::invalid_argument("model: fixed sense out of range for word " + std::to_string(i));
    }
    for (const auto& block : model.quadratic) {
        if (block.i >= block.j || block.j >= n)
            throw std::invalid_argument("model: quadratic block indices must satisfy i < j < words");
        if (block.senses_i != model.sense_count(block.i) || block.senses_j != model.sense_count(block.j) ||
            block.r.size() != block.senses_i * block.senses_j)
            throw std::invalid_argument("model: quadratic block shape mismatch for pair (" +
                                        std::to_string(block.i) + ", " + std::to_string(block.j) + ")");
    }
}

double objective(const QipModel& model, const Assignment& a) {
    const std::size_t n = model.word_count();
    if (model.fixed.size() != n) validate_model(model);
    if (a.choices.size() != n)
        throw std::invalid_argument("objective: assignment has " + std::to_string(a.choices.size()) +
                                    " choices for " + std::to_string(n) + " words");
    for (std::size_t i = 0; i < n; ++i) {
        if (a.choices[i] >= model.sense_count(i))
            throw std::invalid_argument("objective: sense index out of range for word " + std::to_string(i));
        if (model.fixed[i] && a.choices[i] != *model.fixed[i])
            throw std::invalid_argument("objective: word " + std::to_string(i) + " is fixed to sense " +
                                        std::to_string(*model.fixed[i]));
    }

    double linear = 0.0;
    for (std::size_t i = 0; i < n; ++i) linear += model.linear[i][a.choices[i]];
    double quad = 0.0;
    for (const auto& block : model.quadratic) quad += block.r_at(a.choices[block.i], a.choices[block.j]);
    return linear + model.beta * quad;
}

}  // namespace qipwsd

#include "qipwsd/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qipwsd {

double cosine(const Embedding& u, const Embedding& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("cosine: dimension mismatch (" + std::to_string(u.size()) +
                                    " vs " + std::to_string(v.size()) + ")");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        dot += u[k] * v[k];
        nu += u[k] * u[k];
        nv += v[k] * v[k];
    }
    if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("cosine: zero vector");
    return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

SimTables SimTables::zeros(std::vector<std::size_t> sense_counts) {
    SimTables t;
    const std::size_t n = sense_counts.size();
    t.sense_counts_ = std::move(sense_counts);
    t.c_.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.c_[i].assign(t.sense_counts_[i], 0.0);
    t.e_.assign(n, std::vector<double>(n, 0.0));
    t.b_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.b_[i].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) t.b_[i][j].assign(t.sense_counts_[j], 0.0);
        }
    }
    t.h_.resize(n >= 2 ? n * (n - 1) / 2 : 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            t.h_[t.pair_rank(i, j)].assign(t.sense_counts_[i] * t.sense_counts_[j], 0.0);
        }
    }
    return t;
}

std::size_t SimTables::pair_rank(std::size_t i, std::size_t j) const {
    // rank of (i, j) with i < j among unordered pairs over word_count() items
    const std::size_t n = word_count();
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

void SimTables::check_pair(std::size_t i, std::size_t j) const {
    if (i == j) throw std::invalid_argument("SimTables: i == j has no table entry");
    if (i >= word_count() || j >= word_count())
        throw std::invalid_argument("SimTables: word index out of range");
}

double SimTables::c(std::size_t i, std::size_t m) const { return c_.at(i).at(m); }

double SimTables::h(std::size_t i, std::size_t m, std::size_t j, std::size_t n) const {
    check_pair(i, j);
    if (i > j) {
        std::swap(i, j);
        std::swap(m, n);
    }
    return h_[pair_rank(i, j)].at(m * sense_counts_[j] + n);
}

double SimTables::b(std::size_t i, std::size_t j, std::size_t n) const {
    check_pair(i, j);
    return b_[i][j].at(n);
}

double SimTables::e(std::size_t i, std::size_t j) const {
    check_pair(i, j);
    return e_[i][j];
}

void SimTables::set_c(std::size_t i, std::size_t m, double value) { c_.at(i).at(m) = value; }

void SimTables::set_h(std::size_t i, std::size_t m, std::size_t j, std::size_t n, double value) {
    check_pair(i, j);
    if (i > j) {
        std::swap(i, j);
        std::swap(m, n);
    }
    h_[pair_rank(i, j)].at(m * sense_counts_[j] + n) = value;
}

void SimTables::set_b(std::size_t i, std::size_t j, std::size_t n, double value) {
    check_pair(i, j);
    b_[i][j].at(n) = value;
}

void SimTables::set_e(std::size_t i, std::size_t j, double value) {
    check_pair(i, j);
    e_[i][j] = value;
    e_[j][i] = value;
}

SimTables build_sim_tables(const Instance& inst) {
    SimTables t = SimTables::zeros(inst.sense_counts());
    const std::size_t n = inst.word_count();

    for (std::size_t i = 0; i < n; ++i) {
        const auto& wi = inst.words[i];
        for (std::size_t m = 0; m < wi.senses.size(); ++m) {
            t.set_c(i, m, cosine(wi.context_embedding, wi.senses[m].embedding));
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto& wj = inst.words[j];
            for (std::size_t m = 0; m < wj.senses.size(); ++m) {
                t.set_b(i, j, m, std::abs(cosine(inst.words[i].context_embedding, wj.senses[m].embedding)));
            }
        }
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            t.set_e(i, j, std::abs(cosine(inst.words[i].context_embedding, inst.words[j].context_embedding)));
            for (std::size_t m = 0; m < inst.sense_count(i); ++m) {
                for (std::size_t v = 0; v < inst.sense_count(j); ++v) {
                    t.set_h(i, m, j, v,
                            std::abs(cosine(inst.words[i].senses[m].embedding, inst.words[j].senses[v].embedding)));
                }
            }
        }
    }
    return t;
}

double relatedness(const SimTables& tables, const RelatednessParams& params,
                   std::size_t i, std::size_t m, std::size_t j, std::size_t n) {
    if (i == j) throw std::invalid_argument("relatedness: i == j is not defined");
    // canonical i < j order makes the measure bit-exactly symmetric
    if (i > j) {
        std::swap(i, j);
        std::swap(m, n);
    }
    return params.lambda1 * (tables.b(i, j, n) + tables.b(j, i, m)) +
           params.lambda2 * tables.h(i, m, j, n) +
           params.lambda3 * (tables.c(i, m) + tables.e(i, j) + tables.c(j, n));
}

nlohmann::json dump_sim_tables(const SimTables& tables) {
    const std::size_t n = tables.word_count();
    nlohmann::json j;
    j["sense_counts"] = tables.sense_counts();

    auto& c = j["c"] = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t m = 0; m < tables.sense_count(i); ++m) row.push_back(tables.c(i, m));
        c.push_back(std::move(row));
    }

    auto& e = j["e"] = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < n; ++k) row.push_back(i == k ? nlohmann::json{} : nlohmann::json(tables.e(i, k)));
        e.push_back(std::move(row));
    }

    auto& b = j["b"] = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i == k) continue;
            nlohmann::json entry;
            entry["i"] = i;
            entry["j"] = k;
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t m = 0; m < tables.sense_count(k); ++m) row.push_back(tables.b(i, k, m));
            entry["values"] = std::move(row);
            b.push_back(std::move(entry));
        }
    }

    auto& h = j["h"] = nlohmann::json::array();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            nlohmann::json entry;
            entry["i"] = i;
            entry["j"] = k;
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t m = 0; m < tables.sense_count(i); ++m) {
                nlohmann::json row = nlohmann::json::array();
                for (std::size_t v = 0; v < tables.sense_count(k); ++v) row.push_back(tables.h(i, m, k, v));
                rows.push_back(std::move(row));
            }
            entry["values"] = std::move(rows);
            h.push_back(std::move(entry));
        }
    }
    return j;
}

}  // namespace qipwsd

#pragma once
// Cosine similarity, the four dense similarity tables between words and
// senses, and the weighted relatedness measure combining them.

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "qipwsd/instance.hpp"

namespace qipwsd {

/// Cosine similarity, clamped to [-1, 1] to absorb floating-point drift.
/// Throws std::invalid_argument on dimension mismatch or a zero vector.
double cosine(const Embedding& u, const Embedding& v);

/// Dense similarity tables for one instance:
///   c(i,m)     context of word i vs. its own sense m   (sign preserved)
///   h(i,m,j,n) sense m of word i vs. sense n of word j (absolute value)
///   b(i,j,n)   context of word i vs. sense n of word j (absolute value)
///   e(i,j)     context of word i vs. context of word j (absolute value)
/// h and e are symmetric by construction; i == j is rejected for h, b, e.
class SimTables {
  public:
    SimTables() = default;

    /// Correctly shaped tables with every entry zero; entries are then
    /// filled via the setters (build_sim_tables does this from an Instance).
    static SimTables zeros(std::vector<std::size_t> sense_counts);

    std::size_t word_count() const { return sense_counts_.size(); }
    std::size_t sense_count(std::size_t i) const { return sense_counts_[i]; }
    const std::vector<std::size_t>& sense_counts() const { return sense_counts_; }

    double c(std::size_t i, std::size_t m) const;
    double h(std::size_t i, std::size_t m, std::size_t j, std::size_t n) const;
    double b(std::size_t i, std::size_t j, std::size_t n) const;
    double e(std::size_t i, std::size_t j) const;

    void set_c(std::size_t i, std::size_t m, double value);
    void set_h(std::size_t i, std::size_t m, std::size_t j, std::size_t n, double value);
    void set_b(std::size_t i, std::size_t j, std::size_t n, double value);
    void set_e(std::size_t i, std::size_t j, double value);  // writes both (i,j) and (j,i)

  private:
    std::size_t pair_rank(std::size_t i, std::size_t j) const;  // i < j
    void check_pair(std::size_t i, std::size_t j) const;

    std::vector<std::size_t> sense_counts_;
    std::vector<std::vector<double>> c_;               // [i][m]
    std::vector<std::vector<double>> e_;               // [i][j], diagonal unused
    std::vector<std::vector<std::vector<double>>> b_;  // [i][j][n], b_[i][i] empty
    std::vector<std::vector<double>> h_;               // per pair i<j, M_i x M_j row-major
};

/// Weights of the relatedness measure; tuned empirically, no sign restriction.
struct RelatednessParams {
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double lambda3 = 1.0;
};

/// Builds all four tables from an instance. The absolute-value rule applies
/// to h, b and e at build time; c keeps its sign.
SimTables build_sim_tables(const Instance& inst);

/// Relatedness between sense m of word i and sense n of word j:
///   lambda1*(b(i,j,n) + b(j,i,m)) + lambda2*h(i,m,j,n)
///   + lambda3*(c(i,m) + e(i,j) + c(j,n))
/// Symmetric under (i,m) <-> (j,n) bit-exactly; throws on i == j.
double relatedness(const SimTables& tables, const RelatednessParams& params,
                   std::size_t i, std::size_t m, std::size_t j, std::size_t n);

/// Debug dump of all table entries; for inspection only.
nlohmann::json dump_sim_tables(const SimTables& tables);

}  // namespace qipwsd

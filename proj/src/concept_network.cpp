#include "qipwsd/concept_network.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace qipwsd {

namespace {

void check_permutation(const std::vector<std::size_t>& order, std::size_t n) {
    if (order.size() != n) throw std::invalid_argument("path_length: order is not a permutation");
    std::vector<bool> seen(n, false);
    for (std::size_t idx : order) {
        if (idx >= n || seen[idx]) throw std::invalid_argument("path_length: order is not a permutation");
        seen[idx] = true;
    }
}

std::uint64_t factorial_capped(std::size_t n, std::uint64_t cap) {
    std::uint64_t f = 1;
    for (std::size_t k = 2; k <= n; ++k) {
        if (f > cap / k) return cap + 1;
        f *= k;
    }
    return f;
}

}  // namespace

double path_length(const Instance& inst, const SimTables& tables,
                   const std::vector<std::size_t>& order, const Assignment& a) {
    const std::size_t n = inst.word_count();
    check_permutation(order, n);
    if (!validate_assignment(inst, a)) throw std::invalid_argument("path_length: invalid assignment");

    double length = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t i = order[t];
        length += tables.c(i, a.choices[i]);
        if (t + 1 < n) {
            const std::size_t j = order[t + 1];
            length += tables.h(i, a.choices[i], j, a.choices[j]);
        }
    }
    return length;
}

OrderDependenceReport demonstrate_order_dependence(const Instance& inst, const SimTables& tables,
                                                   const Assignment& a,
                                                   std::size_t max_orders, std::uint64_t seed) {
    const std::size_t n = inst.word_count();
    if (max_orders == 0) throw std::invalid_argument("demonstrate_order_dependence: max_orders must be positive");

    OrderDependenceReport report;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    const std::uint64_t total = factorial_capped(n, max_orders);
    if (total <= max_orders) {
        do {
            report.entries.push_back({order, path_length(inst, tables, order, a)});
        } while (std::next_permutation(order.begin(), order.end()));
        report.exhaustive = true;
    } else {
        // sampled subset: distinct seeded shuffles, identity order included
        std::mt19937_64 rng(seed);
        std::set<std::vector<std::size_t>> seen;
        report.entries.push_back({order, path_length(inst, tables, order, a)});
        seen.insert(order);
        while (report.entries.size() < max_orders) {
            std::shuffle(order.begin(), order.end(), rng);
            if (!seen.insert(order).second) continue;
            report.entries.push_back({order, path_length(inst, tables, order, a)});
        }
        report.exhaustive = false;
    }

    report.min_length = std::numeric_limits<double>::infinity();
    report.max_length = -std::numeric_limits<double>::infinity();
    for (const auto& entry : report.entries) {
        report.min_length = std::min(report.min_length, entry.length);
        report.max_length = std::max(report.max_length, entry.length);
    }
    return report;
}

}  // namespace qipwsd

#pragma once
// Layered concept-network view of an instance: candidate senses as nodes,
// a path threaded through the words in some disambiguation order. Path
// length depends on that order, which is what motivates the joint model.

#include <cstddef>
#include <vector>

#include "qipwsd/instance.hpp"
#include "qipwsd/similarity.hpp"

namespace qipwsd {

/// Length of the path through the chosen senses along `order`: the chosen
/// c value of every word plus the h value between consecutive chosen senses.
/// Virtual origin/destination edges carry no weight. Throws
/// std::invalid_argument if `order` is not a permutation of the word
/// indices or `a` is invalid.
double path_length(const Instance& inst, const SimTables& tables,
                   const std::vector<std::size_t>& order, const Assignment& a);

struct OrderLength {
    std::vector<std::size_t> order;
    double length = 0.0;
};

struct OrderDependenceReport {
    std::vector<OrderLength> entries;
    double min_length = 0.0;
    double max_length = 0.0;
    bool exhaustive = true;  // false when orders were sampled under the cap

    double spread() const { return max_length - min_length; }
};

/// Path lengths of all |V|! disambiguation orders for a fixed assignment,
/// or of `max_orders` distinct sampled orders when |V|! exceeds the cap.
OrderDependenceReport demonstrate_order_dependence(const Instance& inst, const SimTables& tables,
                                                   const Assignment& a,
                                                   std::size_t max_orders = 5040,
                                                   std::uint64_t seed = 0);

}  // namespace qipwsd

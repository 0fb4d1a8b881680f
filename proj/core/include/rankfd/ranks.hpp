#pragma once

#include <span>
#include <vector>

#include "rankfd/data.hpp"

namespace rankfd {

/// Mid-ranks of `values` within itself: rank 1 + #{smaller} + half the
/// remaining ties, so tied observations share the average of the ranks
/// they would occupy. O(n log n) sort-then-scan; ties are exact
/// floating-point equality.
std::vector<double> midranks(std::span<const double> values);

/// All rank tables the estimators consume: pooled ranks among all N,
/// within-group ranks, and for every ordered pair (l, i) the ranks of
/// group i's observations among the pooled samples l and i.
class RankTables {
public:
    explicit RankTables(const Dataset& data);

    std::size_t group_count() const { return d_; }

    const std::vector<double>& pooled(std::size_t i) const { return pooled_[i]; }
    const std::vector<double>& within(std::size_t i) const { return within_[i]; }

    /// Ranks R^(l i) of group i's observations in the pool of groups l and i
    /// (l != i).
    const std::vector<double>& pairwise(std::size_t l, std::size_t i) const {
        return pairwise_[l * d_ + i];
    }

private:
    std::size_t d_ = 0;
    std::vector<std::vector<double>> pooled_;
    std::vector<std::vector<double>> within_;
    std::vector<std::vector<double>> pairwise_; // flat (l, i), empty when l == i
};

inline RankTables build_rank_tables(const Dataset& data) { return RankTables(data); }

} // namespace rankfd

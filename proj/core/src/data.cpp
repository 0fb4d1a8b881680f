#include "rankfd/data.hpp"

#include <cmath>
#include <string>

#include "rankfd/errors.hpp"

namespace rankfd {

Dataset::Dataset(std::vector<Sample> groups, std::optional<TwoWayLayout> layout)
    : groups_(std::move(groups)), layout_(layout) {
    if (groups_.size() < 2)
        throw invalid_data_error("Dataset: need at least 2 groups, got " +
                                 std::to_string(groups_.size()));
    sizes_.reserve(groups_.size());
    for (std::size_t i = 0; i < groups_.size(); ++i) {
        if (groups_[i].empty())
            throw invalid_data_error("Dataset: group " + std::to_string(i + 1) +
                                     " is empty");
        for (double v : groups_[i])
            if (!std::isfinite(v))
                throw invalid_data_error("Dataset: non-finite value in group " +
                                         std::to_string(i + 1));
        sizes_.push_back(groups_[i].size());
        total_ += groups_[i].size();
    }
    if (layout_ && layout_->a * layout_->b != groups_.size())
        throw layout_error("Dataset: layout " + std::to_string(layout_->a) + "x" +
                           std::to_string(layout_->b) + " does not match " +
                           std::to_string(groups_.size()) + " groups");
}

void Dataset::require_replication(std::size_t min_per_group) const {
    std::string offenders;
    for (std::size_t i = 0; i < groups_.size(); ++i) {
        if (groups_[i].size() < min_per_group) {
            if (!offenders.empty()) offenders += ", ";
            offenders += std::to_string(i + 1);
        }
    }
    if (!offenders.empty())
        throw insufficient_replication_error(
            "groups with fewer than " + std::to_string(min_per_group) +
            " observations: " + offenders);
}

Dataset leucocyte_dataset() {
    // Leucocyte counts [10^6/ml] of 40 Wistar rats, 2x2 (food x treatment).
    return Dataset(
        {
            {7.5, 8.1, 5.4, 6.0, 16.2, 7.8, 8.1, 5.7, 6.9, 5.1},       // normal, placebo
            {15.9, 12.0, 12.3, 44.4, 13.5, 19.8, 15.3, 32.7, 18.0, 15.0}, // normal, drug
            {7.5, 5.7, 3.3, 3.9, 3.9, 6.6, 6.3, 3.3, 4.5, 4.2},        // reduced, placebo
            {5.7, 8.1, 6.0, 6.1, 11.4, 5.1, 11.1, 12.9, 5.4, 8.4},     // reduced, drug
        },
        TwoWayLayout{2, 2});
}

} // namespace rankfd

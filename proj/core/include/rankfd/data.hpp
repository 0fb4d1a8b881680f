#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace rankfd {

/// Observations of one treatment group.
using Sample = std::vector<double>;

/// Row-major a x b cell labeling for crossed two-way designs: group index
/// i*b + j holds cell (i, j).
struct TwoWayLayout {
    std::size_t a = 0;
    std::size_t b = 0;
};

/// d >= 2 independent groups of finite observations, optionally carrying a
/// factorial cell layout. Construction validates finiteness and group
/// counts; the per-group minimum replication needed by the covariance
/// estimators (n_i >= 2) is enforced at analysis entry instead.
class Dataset {
public:
    explicit Dataset(std::vector<Sample> groups,
                     std::optional<TwoWayLayout> layout = std::nullopt);

    std::size_t group_count() const { return groups_.size(); }
    const Sample& group(std::size_t i) const { return groups_[i]; }
    const std::vector<Sample>& groups() const { return groups_; }

    std::size_t size(std::size_t i) const { return groups_[i].size(); }
    const std::vector<std::size_t>& sizes() const { return sizes_; }
    std::size_t total_size() const { return total_; }

    const std::optional<TwoWayLayout>& layout() const { return layout_; }

    /// Throws insufficient_replication_error naming every group with
    /// fewer than min_per_group observations.
    void require_replication(std::size_t min_per_group) const;

private:
    std::vector<Sample> groups_;
    std::vector<std::size_t> sizes_;
    std::size_t total_ = 0;
    std::optional<TwoWayLayout> layout_;
};

/// The bundled 2x2 leucocyte-migration trial: 40 observations, cells in
/// row-major order (normal, placebo), (normal, drug), (reduced, placebo),
/// (reduced, drug), 10 animals each.
Dataset leucocyte_dataset();

} // namespace rankfd

#include "rankfd/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rankfd/errors.hpp"

namespace rankfd {

std::vector<double> midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    for (double v : values)
        if (!std::isfinite(v)) throw invalid_data_error("midranks: non-finite value");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + 1 + j); // mean of ranks i+1..j
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
        i = j;
    }
    return ranks;
}

RankTables::RankTables(const Dataset& data) : d_(data.group_count()) {
    // pooled ranks among all N, split back per group
    std::vector<double> all;
    all.reserve(data.total_size());
    for (const auto& g : data.groups()) all.insert(all.end(), g.begin(), g.end());
    const std::vector<double> pooled_ranks = midranks(all);

    pooled_.resize(d_);
    within_.resize(d_);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < d_; ++i) {
        const std::size_t ni = data.size(i);
        pooled_[i].assign(pooled_ranks.begin() + offset,
                          pooled_ranks.begin() + offset + ni);
        within_[i] = midranks(data.group(i));
        offset += ni;
    }

    pairwise_.resize(d_ * d_);
    std::vector<double> pool;
    for (std::size_t l = 0; l < d_; ++l) {
        for (std::size_t i = 0; i < d_; ++i) {
            if (l == i) continue;
            pool.clear();
            pool.insert(pool.end(), data.group(l).begin(), data.group(l).end());
            pool.insert(pool.end(), data.group(i).begin(), data.group(i).end());
            const std::vector<double> r = midranks(pool);
            pairwise_[l * d_ + i].assign(r.begin() + data.size(l), r.end());
        }
    }
}

} // namespace rankfd

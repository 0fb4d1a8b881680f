#include "rankfd/effects.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rankfd/errors.hpp"

namespace rankfd {

namespace {

double effect_from_pair_ranks(std::span<const double> ranks_i, std::size_t n_l) {
    double mean = 0.0;
    for (double r : ranks_i) mean += r;
    mean /= static_cast<double>(ranks_i.size());
    return (mean - 0.5 * static_cast<double>(ranks_i.size() + 1)) /
           static_cast<double>(n_l);
}

} // namespace

double pairwise_effect(const Sample& lhs, const Sample& rhs) {
    if (lhs.empty() || rhs.empty())
        throw invalid_data_error("pairwise_effect: empty sample");
    std::vector<double> pool;
    pool.reserve(lhs.size() + rhs.size());
    pool.insert(pool.end(), lhs.begin(), lhs.end());
    pool.insert(pool.end(), rhs.begin(), rhs.end());
    const std::vector<double> r = midranks(pool);
    return effect_from_pair_ranks(std::span(r).subspan(lhs.size()), lhs.size());
}

EffectEstimates unweighted_effects(const Dataset& data) {
    const RankTables tables(data);
    return unweighted_effects(data, tables);
}

EffectEstimates unweighted_effects(const Dataset& data, const RankTables& tables) {
    const std::size_t d = data.group_count();
    EffectEstimates est;
    est.n = data.sizes();
    est.total = data.total_size();
    est.pairwise.w = num::Matrix(d, d);
    for (std::size_t l = 0; l < d; ++l) {
        est.pairwise.w(l, l) = 0.5;
        for (std::size_t i = l + 1; i < d; ++i) {
            const double w =
                effect_from_pair_ranks(tables.pairwise(l, i), data.size(l));
            est.pairwise.w(l, i) = w;
            // the mirrored effect is the same quantity seen from the other
            // side; deriving it keeps the antisymmetry exact under ties
            est.pairwise.w(i, l) = 1.0 - w;
        }
    }
    est.p.assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t l = 0; l < d; ++l) s += est.pairwise.w(l, i);
        est.p[i] = s / static_cast<double>(d);
    }
    est.r = weighted_effects(data, tables);
    return est;
}

std::vector<double> weighted_effects(const Dataset& data) {
    const RankTables tables(data);
    return weighted_effects(data, tables);
}

std::vector<double> weighted_effects(const Dataset& data, const RankTables& tables) {
    const std::size_t d = data.group_count();
    const double n_total = static_cast<double>(data.total_size());
    std::vector<double> r(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double mean = 0.0;
        for (double v : tables.pooled(i)) mean += v;
        mean /= static_cast<double>(data.size(i));
        r[i] = (mean - 0.5) / n_total;
    }
    return r;
}

AdditiveDecomposition additive_decomposition(const EffectEstimates& est,
                                             std::size_t a, std::size_t b) {
    if (a * b != est.p.size())
        throw layout_error("additive_decomposition: " + std::to_string(a) + "x" +
                           std::to_string(b) + " layout does not match " +
                           std::to_string(est.p.size()) + " effects");
    const auto cell = [&](std::size_t i, std::size_t j) { return est.p[i * b + j]; };

    AdditiveDecomposition dec;
    dec.alpha.assign(a, 0.0);
    dec.beta.assign(b, 0.0);
    dec.gamma = num::Matrix(a, b);

    for (std::size_t i = 0; i < a; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < b; ++j) row += cell(i, j);
        dec.alpha[i] = row / static_cast<double>(b) - 0.5;
    }
    for (std::size_t j = 0; j < b; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < a; ++i) col += cell(i, j);
        dec.beta[j] = col / static_cast<double>(a) - 0.5;
    }
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j)
            dec.gamma(i, j) = cell(i, j) - dec.alpha[i] - dec.beta[j] - 0.5;
    return dec;
}

std::vector<std::pair<double, double>> empirical_effect_function(
    const Dataset& data, std::span<const double> coeffs,
    std::span<const double> grid) {
    const std::size_t d = data.group_count();
    if (coeffs.size() != d)
        throw invalid_data_error("empirical_effect_function: expected " +
                                 std::to_string(d) + " coefficients, got " +
                                 std::to_string(coeffs.size()));

    std::vector<std::vector<double>> sorted(d);
    for (std::size_t i = 0; i < d; ++i) {
        sorted[i] = data.group(i);
        std::sort(sorted[i].begin(), sorted[i].end());
    }
    const auto ecdf = [](const std::vector<double>& s, double x) {
        const auto lo = std::lower_bound(s.begin(), s.end(), x);
        const auto hi = std::upper_bound(lo, s.end(), x);
        const double below = static_cast<double>(lo - s.begin());
        const double tied = static_cast<double>(hi - lo);
        return (below + 0.5 * tied) / static_cast<double>(s.size());
    };

    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid) {
        double v = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            if (coeffs[i] != 0.0) v += coeffs[i] * ecdf(sorted[i], x);
        out.emplace_back(x, v);
    }
    return out;
}

} // namespace rankfd

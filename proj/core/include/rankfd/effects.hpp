#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rankfd/data.hpp"
#include "rankfd/matrix.hpp"
#include "rankfd/ranks.hpp"

namespace rankfd {

/// All d^2 pairwise relative effects; entry (l, i) estimates
/// P(X_l < X_i) + P(X_l = X_i)/2. Diagonal is exactly 1/2 and
/// w(l, i) + w(i, l) = 1.
struct PairwiseEffects {
    num::Matrix w;
};

/// Unweighted effects p (group versus unweighted mean distribution, the
/// inferential target), weighted effects r (descriptive only; depends on
/// sample sizes), and the pairwise matrix they are built from.
struct EffectEstimates {
    std::vector<double> p;
    std::vector<double> r;
    PairwiseEffects pairwise;
    std::vector<std::size_t> n;
    std::size_t total = 0;
};

/// Relative effect of `rhs` with respect to `lhs`: the probability that an
/// observation drawn from lhs's distribution is below one drawn from rhs's,
/// ties counted half. Computed from the ranks of the pooled two samples.
double pairwise_effect(const Sample& lhs, const Sample& rhs);

EffectEstimates unweighted_effects(const Dataset& data);
EffectEstimates unweighted_effects(const Dataset& data, const RankTables& tables);

/// Weighted effects r_i = (mean pooled rank - 1/2) / N. Descriptive output
/// only; they depend on the sample sizes and never feed a test statistic.
std::vector<double> weighted_effects(const Dataset& data);
std::vector<double> weighted_effects(const Dataset& data, const RankTables& tables);

/// Additive two-way decomposition p_ij = 1/2 + alpha_i + beta_j + gamma_ij
/// with zero-sum side conditions, cells in row-major order.
struct AdditiveDecomposition {
    std::vector<double> alpha;
    std::vector<double> beta;
    num::Matrix gamma;
};
AdditiveDecomposition additive_decomposition(const EffectEstimates& est,
                                             std::size_t a, std::size_t b);

/// Samples x -> sum_i coeffs[i] * Fhat_i(x) on the given grid, with Fhat the
/// normalized empirical distribution function (half weight at ties).
std::vector<std::pair<double, double>> empirical_effect_function(
    const Dataset& data, std::span<const double> coeffs, std::span<const double> grid);

} // namespace rankfd

#pragma once

#include <optional>
#include <vector>

#include "rankfd/data.hpp"
#include "rankfd/matrix.hpp"
#include "rankfd/ranks.hpp"

namespace rankfd {

/// Estimated asymptotic covariance of sqrt(N) (p_hat - p). `s` is the
/// d^2 x d^2 block matrix over the stacked pairwise effects; it is
/// materialized only for d <= 16 (it is O(d^4) memory and only `v` is ever
/// consumed downstream). `v` is symmetric with 1'v1 = 0 structurally.
struct CovarianceEstimate {
    std::optional<num::Matrix> s;
    num::Matrix v;
    std::size_t total = 0;  // N
    bool diagonal_clamped = false; // tiny negative diagonal set to 0
};

/// Centered placements D_rk(s) = Fhat_s(X_rk) - what_sr, computed from the
/// pairwise/within rank difference identity; mean 0 by construction.
std::vector<double> centered_placement(const Dataset& data, const RankTables& tables,
                                       std::size_t r, std::size_t s);

/// Rank estimator of tau_r(s, t) = N/n_r E[(F_s(X_r) - w_sr)(F_t(X_r) - w_tr)].
/// Requires n_r >= 2 and s, t != r.
double tau_hat(const Dataset& data, const RankTables& tables, std::size_t r,
               std::size_t s, std::size_t t);

CovarianceEstimate covariance_estimate(const Dataset& data);
CovarianceEstimate covariance_estimate(const Dataset& data, const RankTables& tables);

/// Two-sample variance components of sqrt(N) (what_12 - w_12): per-group
/// empirical variances of the normalized rank differences and their
/// N-weighted combination.
struct TwoSampleVariance {
    double sigma2_1 = 0.0;
    double sigma2_2 = 0.0;
    double sigma2_n = 0.0; // N * (sigma2_1/n1 + sigma2_2/n2)
};
TwoSampleVariance two_sample_variance(const Dataset& data);

/// Rank dispersions S_i^2 and the denominator degrees of freedom f1 of the
/// F-approximated ANOVA-type test; reduces to the two-sample Welch-type df
/// when d = 2. Requires n_i >= 2 everywhere and at least one S_i^2 > 0.
struct F1Components {
    std::vector<double> s2;
    double f1 = 0.0;
};
F1Components f1_components(const Dataset& data);
F1Components f1_components(const Dataset& data, const RankTables& tables);

} // namespace rankfd

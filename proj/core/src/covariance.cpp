#include "rankfd/covariance.hpp"

#include <cmath>
#include <string>

#include "rankfd/errors.hpp"

namespace rankfd {

namespace {

constexpr std::size_t kMaterializeSLimit = 16;

/// All tau_hat_r(s, t) for s, t != r, packed as tau[r](s, t) with the full
/// d x d index space (entries touching r unused).
struct TauTable {
    std::size_t d;
    std::vector<double> values; // r*d*d + s*d + t

    double operator()(std::size_t r, std::size_t s, std::size_t t) const {
        return values[(r * d + s) * d + t];
    }
};

TauTable build_tau_table(const Dataset& data, const RankTables& tables) {
    const std::size_t d = data.group_count();
    const double n_total = static_cast<double>(data.total_size());
    TauTable tau{d, std::vector<double>(d * d * d, 0.0)};

    std::vector<std::vector<double>> placements(d); // reused per r
    for (std::size_t r = 0; r < d; ++r) {
        const double nr = static_cast<double>(data.size(r));
        for (std::size_t s = 0; s < d; ++s)
            if (s != r) placements[s] = centered_placement(data, tables, r, s);
        const double scale = n_total / (nr * (nr - 1.0));
        for (std::size_t s = 0; s < d; ++s) {
            if (s == r) continue;
            for (std::size_t t = s; t < d; ++t) {
                if (t == r) continue;
                double acc = 0.0;
                for (std::size_t k = 0; k < data.size(r); ++k)
                    acc += placements[s][k] * placements[t][k];
                const double v = scale * acc;
                tau.values[(r * d + s) * d + t] = v;
                tau.values[(r * d + t) * d + s] = v;
            }
        }
    }
    return tau;
}

/// Element (l, l') of the diagonal block S_ii, per the within-block case
/// table.
double s_within(const TauTable& tau, std::size_t i, std::size_t l, std::size_t lp) {
    if (l == lp && l != i) return tau(i, l, l) + tau(l, i, i);
    if (l != lp && i != l && i != lp) return tau(i, l, lp);
    return 0.0;
}

/// Element (l, l') of the off-diagonal block S_ii' (i != i'), per the
/// five-signed-case table.
double s_between(const TauTable& tau, std::size_t i, std::size_t ip, std::size_t l,
                 std::size_t lp) {
    if (l != lp && l != ip && lp == i) return -tau(i, l, ip);
    if (l != lp && l == ip && lp == i) return -tau(i, ip, ip) - tau(ip, i, i);
    if (l != lp && l == ip && lp != i) return -tau(l, i, lp);
    if (l == lp && l != ip && lp != i) return tau(l, i, ip);
    return 0.0;
}

} // namespace

std::vector<double> centered_placement(const Dataset& data, const RankTables& tables,
                                       std::size_t r, std::size_t s) {
    if (r == s) throw domain_error("centered_placement: r == s");
    const std::vector<double>& pair_r = tables.pairwise(s, r); // R_rk^(sr)
    const std::vector<double>& within_r = tables.within(r);    // R_rk^(r)
    const std::size_t nr = data.size(r);
    const double ns = static_cast<double>(data.size(s));

    double pair_mean = 0.0;
    for (double v : pair_r) pair_mean += v;
    pair_mean /= static_cast<double>(nr);
    const double center = pair_mean - 0.5 * static_cast<double>(nr + 1);

    std::vector<double> out(nr);
    for (std::size_t k = 0; k < nr; ++k)
        out[k] = ((pair_r[k] - within_r[k]) - center) / ns;
    return out;
}

double tau_hat(const Dataset& data, const RankTables& tables, std::size_t r,
               std::size_t s, std::size_t t) {
    if (s == r || t == r) throw domain_error("tau_hat: s and t must differ from r");
    if (data.size(r) < 2)
        throw insufficient_replication_error("tau_hat: group " +
                                             std::to_string(r + 1) +
                                             " has fewer than 2 observations");
    const std::vector<double> ds = centered_placement(data, tables, r, s);
    const std::vector<double> dt = centered_placement(data, tables, r, t);
    double acc = 0.0;
    for (std::size_t k = 0; k < ds.size(); ++k) acc += ds[k] * dt[k];
    const double nr = static_cast<double>(data.size(r));
    return static_cast<double>(data.total_size()) / (nr * (nr - 1.0)) * acc;
}

CovarianceEstimate covariance_estimate(const Dataset& data) {
    const RankTables tables(data);
    return covariance_estimate(data, tables);
}

CovarianceEstimate covariance_estimate(const Dataset& data, const RankTables& tables) {
    data.require_replication(2);
    const std::size_t d = data.group_count();
    const TauTable tau = build_tau_table(data, tables);

    CovarianceEstimate est;
    est.total = data.total_size();
    est.v = num::Matrix(d, d);

    const bool keep_s = d <= kMaterializeSLimit;
    if (keep_s) est.s = num::Matrix(d * d, d * d);

    const double d2 = static_cast<double>(d) * static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t ip = 0; ip < d; ++ip) {
            double block_sum = 0.0;
            for (std::size_t l = 0; l < d; ++l) {
                for (std::size_t lp = 0; lp < d; ++lp) {
                    const double v = i == ip ? s_within(tau, i, l, lp)
                                             : s_between(tau, i, ip, l, lp);
                    block_sum += v;
                    if (keep_s) (*est.s)(i * d + l, ip * d + lp) = v;
                }
            }
            est.v(i, ip) = block_sum / d2;
        }
    }

    for (std::size_t i = 0; i < d; ++i) {
        const double vii = est.v(i, i);
        if (vii < 0.0) {
            if (vii < -1e-12)
                throw internal_consistency_error(
                    "covariance_estimate: diagonal entry " + std::to_string(i + 1) +
                    " is " + std::to_string(vii));
            est.v(i, i) = 0.0;
            est.diagonal_clamped = true;
        }
    }
    return est;
}

TwoSampleVariance two_sample_variance(const Dataset& data) {
    if (data.group_count() != 2)
        throw invalid_data_error("two_sample_variance: need exactly 2 groups");
    data.require_replication(2);
    const RankTables tables(data);
    const double n1 = static_cast<double>(data.size(0));
    const double n2 = static_cast<double>(data.size(1));
    const double n_total = n1 + n2;

    TwoSampleVariance out;
    double* sig[2] = {&out.sigma2_1, &out.sigma2_2};
    for (std::size_t j = 0; j < 2; ++j) {
        const std::vector<double>& pooled = tables.pooled(j); // R_jk^(12)
        const std::vector<double>& within = tables.within(j);
        const double nj = static_cast<double>(data.size(j));
        double mean = 0.0;
        for (double v : pooled) mean += v;
        mean /= nj;
        double acc = 0.0;
        for (std::size_t k = 0; k < pooled.size(); ++k) {
            const double dev = pooled[k] - within[k] - mean + 0.5 * (nj + 1.0);
            acc += dev * dev;
        }
        const double other = n_total - nj;
        *sig[j] = acc / (other * other * (nj - 1.0));
    }
    out.sigma2_n = n_total * (out.sigma2_1 / n1 + out.sigma2_2 / n2);
    return out;
}

F1Components f1_components(const Dataset& data) {
    const RankTables tables(data);
    return f1_components(data, tables);
}

F1Components f1_components(const Dataset& data, const RankTables& tables) {
    data.require_replication(2);
    const std::size_t d = data.group_count();
    const double n_total = static_cast<double>(data.total_size());

    F1Components out;
    out.s2.assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        const std::vector<double>& pooled = tables.pooled(i);
        const std::vector<double>& within = tables.within(i);
        const double ni = static_cast<double>(data.size(i));
        double mean = 0.0;
        for (double v : pooled) mean += v;
        mean /= ni;
        double acc = 0.0;
        for (std::size_t k = 0; k < pooled.size(); ++k) {
            const double dev = pooled[k] - within[k] - mean + 0.5 * (ni + 1.0);
            acc += dev * dev;
        }
        out.s2[i] = acc / (ni - 1.0);
    }

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double ni = static_cast<double>(data.size(i));
        const double term = out.s2[i] / (n_total - ni);
        num += term;
        den += term * term / (ni - 1.0);
    }
    if (num == 0.0)
        throw degenerate_error("f1_components: all rank dispersions are zero");
    out.f1 = num * num / den;
    return out;
}

} // namespace rankfd

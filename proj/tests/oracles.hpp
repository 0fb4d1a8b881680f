#pragma once

// Independent reference implementations used only by tests. Everything here
// is deliberately written the slow, obvious way (counting double loops,
// direct empirical CDF evaluation, textbook formulas) so it shares no code
// path with the production estimators it checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rankfd/data.hpp"
#include "rankfd/distributions.hpp"
#include "rankfd/matrix.hpp"

namespace oracle {

/// Mid-ranks by the O(n^2) counting definition:
/// 1 + #{v_j < v_k} + (1/2) #{j != k : v_j = v_k}.
inline std::vector<double> midranks_counting(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        double less = 0.0, tied = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] < v[k]) ++less;
            if (j != k && v[j] == v[k]) ++tied;
        }
        out[k] = 1.0 + less + 0.5 * tied;
    }
    return out;
}

/// P(X_l < X_i) + P(X_l = X_i)/2 by pair counting.
inline double pairwise_effect_counting(const rankfd::Sample& l,
                                       const rankfd::Sample& i) {
    double acc = 0.0;
    for (double xl : l)
        for (double xi : i) acc += (xl < xi ? 1.0 : 0.0) + (xl == xi ? 0.5 : 0.0);
    return acc / (static_cast<double>(l.size()) * static_cast<double>(i.size()));
}

/// Normalized empirical distribution function (half weight at ties).
inline double ecdf_mid(const rankfd::Sample& s, double x) {
    double below = 0.0, tied = 0.0;
    for (double v : s) {
        if (v < x) ++below;
        if (v == x) ++tied;
    }
    return (below + 0.5 * tied) / static_cast<double>(s.size());
}

/// D_rk(s) = Fhat_s(X_rk) - what_sr evaluated directly from the CDFs.
inline std::vector<double> placement_direct(const rankfd::Dataset& data,
                                            std::size_t r, std::size_t s) {
    const double w_sr = pairwise_effect_counting(data.group(s), data.group(r));
    std::vector<double> out;
    out.reserve(data.size(r));
    for (double x : data.group(r)) out.push_back(ecdf_mid(data.group(s), x) - w_sr);
    return out;
}

/// tau_hat_r(s, t) from the direct-CDF placements.
inline double tau_direct(const rankfd::Dataset& data, std::size_t r, std::size_t s,
                         std::size_t t) {
    const std::vector<double> ds = placement_direct(data, r, s);
    const std::vector<double> dt = placement_direct(data, r, t);
    double acc = 0.0;
    for (std::size_t k = 0; k < ds.size(); ++k) acc += ds[k] * dt[k];
    const double nr = static_cast<double>(data.size(r));
    return static_cast<double>(data.total_size()) / (nr * (nr - 1.0)) * acc;
}

/// The full d^2 x d^2 covariance matrix of the stacked pairwise effects by
/// the appendix expansion: each entry is the sum of the four cross terms of
/// N Cov(Z_{l i}, Z_{l' i'}), a term contributing whenever its two groups
/// coincide. Cases the published table lists as zero cancel exactly here.
inline rankfd::num::Matrix appendix_s_matrix(const rankfd::Dataset& data) {
    const std::size_t d = data.group_count();
    rankfd::num::Matrix s(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t l = 0; l < d; ++l)
            for (std::size_t ip = 0; ip < d; ++ip)
                for (std::size_t lp = 0; lp < d; ++lp) {
                    double v = 0.0;
                    if (i == ip && l != i && lp != i) v += tau_direct(data, i, l, lp);
                    if (i == lp && l != i && ip != i) v -= tau_direct(data, i, l, ip);
                    if (l == ip && i != l && lp != l) v -= tau_direct(data, l, i, lp);
                    if (l == lp && i != l && ip != l) v += tau_direct(data, l, i, ip);
                    s(i * d + l, ip * d + lp) = v;
                }
    return s;
}

/// V = E S E' with E = I_d (x) 1'/d, i.e. v_ij = 1' S_ij 1 / d^2.
inline rankfd::num::Matrix v_from_s(const rankfd::num::Matrix& s, std::size_t d) {
    rankfd::num::Matrix v(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t lp = 0; lp < d; ++lp)
                    acc += s(i * d + l, j * d + lp);
            v(i, j) = acc / (static_cast<double>(d) * static_cast<double>(d));
        }
    return v;
}

/// Independently coded Brunner-Munzel test (counting ranks, textbook
/// variance and Welch-type df). Returns the squared statistic so it is
/// directly comparable with the ANOVA-type statistic at d = 2.
struct BrunnerMunzel {
    double statistic_squared = 0.0;
    double df = 0.0;
    double p_value = 1.0; // two-sided
    double sigma2_n = 0.0;
};

inline BrunnerMunzel brunner_munzel(const rankfd::Sample& x, const rankfd::Sample& y) {
    const double n1 = static_cast<double>(x.size());
    const double n2 = static_cast<double>(y.size());
    const double n = n1 + n2;

    std::vector<double> pooled(x);
    pooled.insert(pooled.end(), y.begin(), y.end());
    const std::vector<double> rank_all = midranks_counting(pooled);
    const std::vector<double> rank_x = midranks_counting(x);
    const std::vector<double> rank_y = midranks_counting(y);

    double rbar1 = 0.0, rbar2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) rbar1 += rank_all[k];
    for (std::size_t k = 0; k < y.size(); ++k) rbar2 += rank_all[x.size() + k];
    rbar1 /= n1;
    rbar2 /= n2;

    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dev = rank_all[k] - rank_x[k] - rbar1 + 0.5 * (n1 + 1.0);
        s1 += dev * dev;
    }
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double dev = rank_all[x.size() + k] - rank_y[k] - rbar2 + 0.5 * (n2 + 1.0);
        s2 += dev * dev;
    }
    s1 /= n1 - 1.0;
    s2 /= n2 - 1.0;

    const double w12 = (rbar2 - 0.5 * (n2 + 1.0)) / n1; // P(X < Y) + ties/2
    const double sigma2_n = n * (s1 / (n2 * n2 * n1) + s2 / (n1 * n1 * n2));
    const double t = std::sqrt(n) * (w12 - 0.5);

    const double u1 = s1 / n2, u2 = s2 / n1;
    BrunnerMunzel out;
    out.sigma2_n = sigma2_n;
    out.df = (u1 + u2) * (u1 + u2) / (u1 * u1 / (n1 - 1.0) + u2 * u2 / (n2 - 1.0));
    out.statistic_squared = t * t / sigma2_n;
    out.p_value =
        1.0 - rankfd::num::f_cdf(out.statistic_squared, 1.0, out.df);
    return out;
}

/// Determinant by plain LU with partial pivoting (eigenvalue product check).
inline double lu_determinant(rankfd::num::Matrix m) {
    const std::size_t n = m.rows();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
        if (m(piv, c) == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

/// Random grouped data for property tests; when `lattice` is set the values
/// are drawn from a small integer lattice so ties are plentiful.
inline rankfd::Dataset random_dataset(std::mt19937_64& gen, std::size_t d,
                                      std::size_t n_min, std::size_t n_max,
                                      bool lattice) {
    std::uniform_int_distribution<std::size_t> size_dist(n_min, n_max);
    std::normal_distribution<double> value(0.0, 1.0);
    std::uniform_int_distribution<int> grid(-3, 3);
    std::vector<rankfd::Sample> groups(d);
    for (auto& g : groups) {
        const std::size_t n = size_dist(gen);
        g.reserve(n);
        for (std::size_t k = 0; k < n; ++k)
            g.push_back(lattice ? 0.5 * grid(gen) : value(gen));
    }
    return rankfd::Dataset(std::move(groups));
}

} // namespace oracle

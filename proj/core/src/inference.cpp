#include "rankfd/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "rankfd/distributions.hpp"
#include "rankfd/errors.hpp"
#include "rankfd/linalg.hpp"
#include "rankfd/rng.hpp"

namespace rankfd {

namespace {

constexpr double kTraceTolerance = 1e-12;
constexpr double kEigenClip = 1e-10;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double trace_product(const num::Matrix& a, const num::Matrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
    return s;
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::AtsF: return "ats-f";
        case Method::AtsBox: return "ats-box";
        case Method::AtsEigen: return "ats-eigen";
        case Method::Wald: return "wald";
        case Method::KruskalWallis: return "kruskal-wallis";
    }
    return "?";
}

std::optional<Method> parse_method(const std::string& name) {
    if (name == "ats-f") return Method::AtsF;
    if (name == "ats-box") return Method::AtsBox;
    if (name == "ats-eigen") return Method::AtsEigen;
    if (name == "wald" || name == "wts") return Method::Wald;
    if (name == "kw" || name == "kruskal-wallis") return Method::KruskalWallis;
    return std::nullopt;
}

double anova_type_statistic(const EffectEstimates& est, const CovarianceEstimate& cov,
                            const HypothesisSpec& hyp) {
    const double tr = trace_product(hyp.t, cov.v);
    if (!(tr > kTraceTolerance))
        throw degenerate_error(
            "anova_type_statistic: tr(T V) is not positive; the projection of the "
            "effects into the hypothesis space is constant");
    const double quad = std::max(num::bilinear(est.p, hyp.t, est.p), 0.0);
    return static_cast<double>(est.total) * quad / tr;
}

TestResult wald_type_statistic(const EffectEstimates& est,
                               const CovarianceEstimate& cov,
                               const HypothesisSpec& hyp, double alpha) {
    const num::Matrix cvct = hyp.c * cov.v * hyp.c.transposed();
    const std::size_t rank = num::matrix_rank(cvct);
    if (rank == 0)
        throw degenerate_error("wald_type_statistic: C V C' has rank 0");
    const std::vector<double> cp = hyp.c * std::span<const double>(est.p);
    const double w = static_cast<double>(est.total) *
                     std::max(num::bilinear(cp, moore_penrose(cvct), cp), 0.0);

    TestResult res;
    res.method = Method::Wald;
    res.hypothesis = hyp.label;
    res.statistic = w;
    res.df1 = static_cast<double>(rank);
    res.df2 = kNaN;
    res.alpha = alpha;
    res.p_value = 1.0 - num::chi_square_cdf(w, res.df1);
    res.critical_value = num::chi_square_quantile(1.0 - alpha, res.df1);
    return res;
}

TestResult ats_eigen_test(const EffectEstimates& est, const CovarianceEstimate& cov,
                          const HypothesisSpec& hyp, double alpha,
                          std::uint64_t mc_runs, std::uint64_t seed,
                          std::uint64_t stream, std::uint64_t substream) {
    if (mc_runs < 1000)
        throw domain_error("ats_eigen_test: mc_runs must be at least 1000");
    const double q = anova_type_statistic(est, cov, hyp);
    const double tr = trace_product(hyp.t, cov.v);

    // T V is not symmetric, but T V T has the same nonzero spectrum and a
    // symmetric eigensolver guarantees real output.
    std::vector<double> lambda =
        num::symmetric_eigenvalues(hyp.t * cov.v * hyp.t);
    for (double& l : lambda) {
        if (l < 0.0) {
            if (l < -kEigenClip)
                throw internal_consistency_error(
                    "ats_eigen_test: eigenvalue " + std::to_string(l) +
                    " of T V T is negative beyond tolerance");
            l = 0.0;
        }
    }
    while (!lambda.empty() && lambda.back() == 0.0) lambda.pop_back();
    if (lambda.empty())
        throw degenerate_error("ats_eigen_test: all eigenvalues of T V T are zero");
    for (double& l : lambda) l /= tr;

    num::RngStream rng(seed, stream, substream);
    std::vector<double> draws(mc_runs);
    for (std::uint64_t r = 0; r < mc_runs; ++r) {
        double acc = 0.0;
        for (double l : lambda) {
            const double z = rng.next_normal();
            acc += l * z * z;
        }
        draws[r] = acc;
    }

    std::uint64_t geq = 0;
    for (double v : draws)
        if (v >= q) ++geq;

    // critical value: ceil((1-alpha) * runs)-th order statistic
    const std::uint64_t k = static_cast<std::uint64_t>(
        std::ceil((1.0 - alpha) * static_cast<double>(mc_runs)));
    const std::uint64_t idx = std::min(std::max<std::uint64_t>(k, 1), mc_runs) - 1;
    std::nth_element(draws.begin(), draws.begin() + static_cast<std::ptrdiff_t>(idx),
                     draws.end());

    TestResult res;
    res.method = Method::AtsEigen;
    res.hypothesis = hyp.label;
    res.statistic = q;
    res.df1 = kNaN;
    res.df2 = kNaN;
    res.alpha = alpha;
    res.critical_value = draws[idx];
    res.p_value = (static_cast<double>(geq) + 1.0) / (static_cast<double>(mc_runs) + 1.0);
    res.mc_runs = mc_runs;
    res.seed = seed;
    return res;
}

TestResult ats_box_test(const EffectEstimates& est, const CovarianceEstimate& cov,
                        const HypothesisSpec& hyp, double alpha) {
    const double q = anova_type_statistic(est, cov, hyp);
    const num::Matrix tv = hyp.t * cov.v;
    const double tr = tv.trace();
    const double tr_sq = trace_product(tv, tv);
    if (!(tr_sq > 0.0))
        throw degenerate_error("ats_box_test: tr(TVTV) is not positive");
    const double f = tr * tr / tr_sq;

    TestResult res;
    res.method = Method::AtsBox;
    res.hypothesis = hyp.label;
    res.statistic = q;
    res.df1 = f;
    res.df2 = kNaN;
    res.alpha = alpha;
    res.p_value = 1.0 - num::chi_square_cdf(f * q, f);
    res.critical_value = num::chi_square_quantile(1.0 - alpha, f) / f;
    return res;
}

TestResult ats_f_test(const EffectEstimates& est, const CovarianceEstimate& cov,
                      const HypothesisSpec& hyp, double f1, double alpha) {
    if (!(f1 > 0.0)) throw domain_error("ats_f_test: f1 must be positive");
    TestResult res = ats_box_test(est, cov, hyp, alpha);
    res.method = Method::AtsF;
    res.df2 = f1;
    res.p_value = 1.0 - num::f_cdf(res.statistic, res.df1, f1);
    res.critical_value = num::f_quantile(1.0 - alpha, res.df1, f1);
    return res;
}

TestResult kruskal_wallis(const Dataset& data, double alpha) {
    const std::size_t d = data.group_count();
    const double n_total = static_cast<double>(data.total_size());
    if (data.total_size() < d + 1)
        throw invalid_data_error("kruskal_wallis: need N >= d + 1");

    const RankTables tables(data);
    double h = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double mean = 0.0;
        for (double r : tables.pooled(i)) mean += r;
        mean /= static_cast<double>(data.size(i));
        const double dev = mean - 0.5 * (n_total + 1.0);
        h += static_cast<double>(data.size(i)) * dev * dev;
    }
    h *= 12.0 / (n_total * (n_total + 1.0));

    // tie correction: 1 - sum(t^3 - t) / (N^3 - N)
    std::vector<double> all;
    all.reserve(data.total_size());
    for (const auto& g : data.groups()) all.insert(all.end(), g.begin(), g.end());
    std::sort(all.begin(), all.end());
    double tie_sum = 0.0;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie_sum += t * t * t - t;
        i = j;
    }
    const double correction = 1.0 - tie_sum / (n_total * n_total * n_total - n_total);
    if (correction <= 0.0)
        throw degenerate_error("kruskal_wallis: all observations are tied");
    h /= correction;

    TestResult res;
    res.method = Method::KruskalWallis;
    res.hypothesis = "one-way";
    res.statistic = h;
    res.df1 = static_cast<double>(d - 1);
    res.df2 = kNaN;
    res.alpha = alpha;
    res.p_value = 1.0 - num::chi_square_cdf(h, res.df1);
    res.critical_value = num::chi_square_quantile(1.0 - alpha, res.df1);
    return res;
}

std::vector<ConfidenceInterval> confidence_intervals(const EffectEstimates& est,
                                                     const CovarianceEstimate& cov,
                                                     double alpha,
                                                     CiTransform transform) {
    const double z = num::normal_quantile(1.0 - 0.5 * alpha);
    const double sqrt_n = std::sqrt(static_cast<double>(est.total));
    std::vector<ConfidenceInterval> out;
    out.reserve(est.p.size());
    for (std::size_t i = 0; i < est.p.size(); ++i) {
        const double p = est.p[i];
        const double vii = std::max(cov.v(i, i), 0.0);
        ConfidenceInterval ci;
        ci.index = i;
        ci.estimate = p;
        ci.level = 1.0 - alpha;
        ci.transform = transform;
        if (transform == CiTransform::Logit) {
            if (!(p > 0.0 && p < 1.0))
                throw degenerate_error(
                    "confidence_intervals: logit transform needs 0 < p < 1");
            const double g = std::log(p / (1.0 - p));
            const double gprime = 1.0 / (p * (1.0 - p));
            const double half = z / sqrt_n * std::sqrt(vii) * gprime;
            ci.lower = 1.0 / (1.0 + std::exp(-(g - half)));
            ci.upper = 1.0 / (1.0 + std::exp(-(g + half)));
        } else {
            const double half = z / sqrt_n * std::sqrt(vii);
            ci.lower = p - half;
            ci.upper = p + half;
        }
        out.push_back(ci);
    }
    return out;
}

AnalysisReport analyze(const Dataset& data,
                       const std::vector<HypothesisSpec>& hypotheses,
                       const AnalysisOptions& options) {
    data.require_replication(2);
    const RankTables tables(data);

    AnalysisReport report;
    report.options = options;
    report.effects = unweighted_effects(data, tables);
    report.covariance = covariance_estimate(data, tables);
    report.f1 = f1_components(data, tables);

    for (const HypothesisSpec& hyp : hypotheses) {
        if (hyp.t.rows() != data.group_count())
            throw invalid_contrast_error("analyze: hypothesis '" + hyp.label +
                                         "' has dimension " +
                                         std::to_string(hyp.t.rows()) +
                                         ", expected " +
                                         std::to_string(data.group_count()));
        for (Method m : options.methods) {
            try {
                switch (m) {
                    case Method::AtsF:
                        report.tests.push_back(ats_f_test(report.effects,
                                                          report.covariance, hyp,
                                                          report.f1.f1,
                                                          options.alpha));
                        break;
                    case Method::AtsBox:
                        report.tests.push_back(ats_box_test(report.effects,
                                                            report.covariance, hyp,
                                                            options.alpha));
                        break;
                    case Method::AtsEigen:
                        report.tests.push_back(
                            ats_eigen_test(report.effects, report.covariance, hyp,
                                           options.alpha, options.mc_runs,
                                           options.seed));
                        break;
                    case Method::Wald:
                        report.tests.push_back(wald_type_statistic(
                            report.effects, report.covariance, hyp, options.alpha));
                        break;
                    case Method::KruskalWallis:
                        break; // handled once below
                }
            } catch (const error& e) {
                throw error("hypothesis '" + hyp.label + "', method " +
                            method_name(m) + ": " + e.what());
            }
        }
    }

    if (std::find(options.methods.begin(), options.methods.end(),
                  Method::KruskalWallis) != options.methods.end())
        report.tests.push_back(kruskal_wallis(data, options.alpha));

    report.intervals = confidence_intervals(report.effects, report.covariance,
                                            options.alpha, options.transform);
    if (data.layout())
        report.decomposition =
            additive_decomposition(report.effects, data.layout()->a, data.layout()->b);
    return report;
}

} // namespace rankfd

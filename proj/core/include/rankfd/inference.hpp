#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankfd/contrasts.hpp"
#include "rankfd/covariance.hpp"
#include "rankfd/data.hpp"
#include "rankfd/effects.hpp"

namespace rankfd {

enum class Method { AtsF, AtsBox, AtsEigen, Wald, KruskalWallis };

std::string method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

struct TestResult {
    Method method = Method::AtsF;
    std::string hypothesis;
    double statistic = 0.0;
    double df1 = 0.0;            // numerator df (or chi-square df / Wald rank)
    double df2 = 0.0;            // denominator df; NaN when not an F test
    double p_value = 1.0;
    double critical_value = 0.0; // for the reported statistic at `alpha`
    double alpha = 0.05;
    std::uint64_t mc_runs = 0;   // ats-eigen only
    std::uint64_t seed = 0;      // ats-eigen only
};

/// Trace-normalized quadratic form Q_N = N p'Tp / tr(T V). Raises
/// degenerate_error when tr(T V) is not positive beyond tolerance.
double anova_type_statistic(const EffectEstimates& est, const CovarianceEstimate& cov,
                            const HypothesisSpec& hyp);

/// Wald-type statistic N p'C'(C V C')^+ C p against chi-square with the
/// estimated rank of C V C' as df. Known to be liberal in small samples; the
/// rank-stability condition behind its asymptotics is hard to verify, so the
/// ANOVA-type tests are the recommended default.
TestResult wald_type_statistic(const EffectEstimates& est,
                               const CovarianceEstimate& cov,
                               const HypothesisSpec& hyp, double alpha);

/// ANOVA-eigen-type test: the null distribution of Q_N is simulated as the
/// weighted chi-square mixture with weights eigen(T V T)/tr(T V);
/// deterministic given (seed, stream, substream). mc_runs >= 1000. The
/// stream ids let a simulation replication keep its inner Monte-Carlo
/// independent of the data draws.
TestResult ats_eigen_test(const EffectEstimates& est, const CovarianceEstimate& cov,
                          const HypothesisSpec& hyp, double alpha,
                          std::uint64_t mc_runs, std::uint64_t seed,
                          std::uint64_t stream = 0, std::uint64_t substream = 0);

/// ANOVA-Box-type test: f Q_N against chi-square_f with
/// f = tr^2(TV)/tr(TVTV).
TestResult ats_box_test(const EffectEstimates& est, const CovarianceEstimate& cov,
                        const HypothesisSpec& hyp, double alpha);

/// ANOVA-type F test: Q_N against F(f, f1); the recommended procedure.
TestResult ats_f_test(const EffectEstimates& est, const CovarianceEstimate& cov,
                      const HypothesisSpec& hyp, double f1, double alpha);

/// Classical Kruskal-Wallis test with tie correction (baseline competitor;
/// tests the distribution-function hypothesis).
TestResult kruskal_wallis(const Dataset& data, double alpha);

enum class CiTransform { Identity, Logit };

struct ConfidenceInterval {
    std::size_t index = 0; // group, 0-based
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 1.0;
    double level = 0.95;
    CiTransform transform = CiTransform::Logit;
};

/// Per-effect asymptotic confidence intervals; the logit transform keeps
/// the bounds inside (0, 1).
std::vector<ConfidenceInterval> confidence_intervals(const EffectEstimates& est,
                                                     const CovarianceEstimate& cov,
                                                     double alpha,
                                                     CiTransform transform);

struct AnalysisOptions {
    std::vector<Method> methods = {Method::AtsF};
    double alpha = 0.05;
    CiTransform transform = CiTransform::Logit;
    std::uint64_t mc_runs = 10000;
    std::uint64_t seed = 0;
};

struct AnalysisReport {
    EffectEstimates effects;
    CovarianceEstimate covariance;
    F1Components f1;
    std::vector<TestResult> tests;
    std::vector<ConfidenceInterval> intervals;
    std::optional<AdditiveDecomposition> decomposition; // two-way layouts
    AnalysisOptions options;
};

/// Full pipeline: effects, covariance, every requested test for every
/// hypothesis, confidence intervals, and the additive decomposition when a
/// two-way layout is declared. Kruskal-Wallis, which ignores contrasts,
/// is run once over all groups.
AnalysisReport analyze(const Dataset& data,
                       const std::vector<HypothesisSpec>& hypotheses,
                       const AnalysisOptions& options = {});

} // namespace rankfd

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wearlab/rng.hpp"

namespace wearlab::stats {

// Probability a random positive outranks a random negative; ties count 1/2
// (Mann-Whitney). Computed from average ranks in O(n log n).
double auroc(const std::vector<double>& scores, const std::vector<int>& labels);

// Average precision with step-wise interpolation. Tied scores form a single
// threshold block whose precision is evaluated at the block end.
double auprc(const std::vector<double>& scores, const std::vector<int>& labels);

struct CurvePoint {
    double x = 0.0;  // FPR (ROC) or recall (PR)
    double y = 0.0;  // TPR (ROC) or precision (PR)
};

// Threshold sweeps in descending score order (tied scores collapse to one
// point), for external plotting.
std::vector<CurvePoint> roc_curve(const std::vector<double>& scores,
                                  const std::vector<int>& labels);
std::vector<CurvePoint> pr_curve(const std::vector<double>& scores,
                                 const std::vector<int>& labels);

struct MetricResult {
    std::string name;
    double estimate = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

// Percentile bootstrap CI (2.5/97.5) over B resample statistics. Iteration b
// draws from Rng(seed, b); resamples where `stat` throws are redrawn up to a
// cap, after which ResampleExhaustionError is raised.
MetricResult bootstrap_ci(const std::string& name,
                          const std::function<double(const std::vector<std::size_t>&)>& stat,
                          std::size_t data_size, int iterations, std::uint64_t seed);

// Convenience wrapper for a statistic over a plain sample.
MetricResult bootstrap_ci_values(const std::string& name,
                                 const std::function<double(const std::vector<double>&)>& stat,
                                 const std::vector<double>& data, int iterations,
                                 std::uint64_t seed);

// Two-sided paired-bootstrap p-value: fraction of resamples where the metric
// difference flips sign against the observed difference, smoothed by
// +1/(B+1). `metric` maps (scores, labels) -> value.
double paired_bootstrap_test(
    const std::function<double(const std::vector<double>&, const std::vector<int>&)>& metric,
    const std::vector<double>& scores_a, const std::vector<double>& scores_b,
    const std::vector<int>& labels, int iterations, std::uint64_t seed);

// Wilcoxon rank-sum with normal approximation and tie correction (no
// continuity correction). Two-sided.
double wilcoxon_rank_sum_p(const std::vector<double>& x, const std::vector<double>& y);

// Exact two-sided p by full enumeration of rank assignments; intended for
// small-sample oracle checks (n_x + n_y <= 14).
double wilcoxon_exact_p(const std::vector<double>& x, const std::vector<double>& y);

// Benjamini-Hochberg step-up adjustment, order-preserving.
std::vector<double> benjamini_hochberg(const std::vector<double>& raw_p);

struct WilcoxonBhResult {
    std::vector<double> raw_p;
    std::vector<double> adjusted_p;
};

WilcoxonBhResult wilcoxon_bh(
    const std::vector<std::pair<std::vector<double>, std::vector<double>>>& groups);

// --- inter-rater agreement --------------------------------------------------

struct RatingRow {
    std::string case_id;
    std::string section;
    std::string principle;
    std::string rater;
    std::string source;  // response source, may be empty
    int rating = 0;      // 1..5
    std::optional<double> elapsed_minutes;
};

struct RatingTable {
    std::vector<RatingRow> rows;
};

RatingTable parse_rating_csv(const std::string& text);

// Spearman's rank correlation with average-rank ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

// Weighted Cohen's kappa on the 5x5 confusion matrix with quadratic
// disagreement weights (i-j)^2.
double weighted_kappa(const std::vector<int>& a, const std::vector<int>& b,
                      int categories = 5);

// Kendall's coefficient of concordance with tie correction. `ratings[r][i]`
// is rater r's value for item i.
double kendalls_w(const std::vector<std::vector<double>>& ratings);

// ICC(3,1): two-way mixed, single measure, consistency definition.
double icc31(const std::vector<std::vector<double>>& ratings);

struct AgreementMetric {
    double value = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    std::size_t n = 0;
};

struct AgreementReport {
    AgreementMetric spearman;
    AgreementMetric weighted_kappa;
    AgreementMetric kendalls_w;
    AgreementMetric icc31;

    std::string to_json() const;
};

// Pairwise metrics use items rated by both rater_a and rater_b; W and ICC use
// items rated by every rater in the table. Items are (case, section,
// principle) triples. CIs are percentile bootstrap over items.
AgreementReport agreement_metrics(const RatingTable& table, const std::string& rater_a,
                                  const std::string& rater_b, int iterations = 1000,
                                  std::uint64_t seed = 0);

enum class GroupBy { section, principle, response_source };

GroupBy parse_group_by(const std::string& text);

struct GroupRating {
    std::string group;
    double mean = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    std::size_t n = 0;
};

// Per-group mean of `rating` (or elapsed minutes when aggregate_time) with a
// bootstrap CI; groups are emitted in sorted order.
std::vector<GroupRating> aggregate_ratings(const RatingTable& table, GroupBy group_by,
                                           bool aggregate_time = false,
                                           int iterations = 1000, std::uint64_t seed = 0);

}  // namespace wearlab::stats

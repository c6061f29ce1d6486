#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wearlab/calendar.hpp"
#include "wearlab/records.hpp"

namespace wearlab::features {

// --- basic statistics ------------------------------------------------------

double mean_of(const std::vector<double>& values);
// Sample standard deviation (n-1). Used everywhere, including z baselines.
double sample_sd(const std::vector<double>& values);
double median_of(std::vector<double> values);
// Empirical quantile with linear interpolation between order statistics
// (the common "type 7" rule). q in [0, 1].
double quantile_of(std::vector<double> values, double q);

// Circular mean of clock times via summed unit vectors.
ClockTime circular_mean(const std::vector<ClockTime>& times);
// Circular standard deviation sqrt(-2 ln R) mapped to minutes.
double circular_sd_minutes(const std::vector<ClockTime>& times);

// Midpoint point halfway along the forward arc from bedtime to wake time.
ClockTime midsleep_point(ClockTime bedtime, ClockTime wake);

// Midpoint-rank percentile: 100 * (#below + 0.5 * #equal) / n over a sorted
// cohort distribution.
double percentile_rank(const std::vector<double>& sorted_cohort, double value);

// z = (mean of last `recent_window` values - mean of last `baseline_window`
// values) / sample SD of last `baseline_window` values.
double recent_z(const std::vector<double>& values, std::size_t recent_window,
                std::size_t baseline_window);

// --- training load ---------------------------------------------------------

// Sum of TRIMP over the 7 calendar days ending at as_of (missing days = 0).
double acute_trimp(const std::vector<DailyActivityRecord>& daily, Date as_of);
// Trailing-28-day TRIMP total / 4, i.e. the average weekly load. Requires at
// least 28 calendar days of history ending at as_of.
double chronic_trimp(const std::vector<DailyActivityRecord>& daily, Date as_of);

enum class AcwrBand { detraining_risk, normal, elevated_risk };

std::string acwr_band_label(AcwrBand band);

// Elevated strictly above 1.5, detraining strictly below 0.7.
AcwrBand acwr_band_for_ratio(double ratio);

struct AcwrResult {
    double ratio = 0.0;
    AcwrBand band = AcwrBand::normal;
    std::string display;  // one decimal
};

AcwrResult acwr(const std::vector<DailyActivityRecord>& daily, Date as_of);

struct LoadSummary {
    double mean_fat_burn_per_day = 0.0;   // trailing 30 days, missing days = 0
    double mean_vigorous_per_day = 0.0;   // cardio + peak
    double trimp_min = 0.0;
    double trimp_max = 0.0;
    double acute_trimp = 0.0;
    double chronic_trimp = 0.0;
    double acwr_ratio = 0.0;
    AcwrBand acwr_band = AcwrBand::normal;
};

LoadSummary load_summary(const std::vector<DailyActivityRecord>& daily, Date as_of);

// --- sleep -----------------------------------------------------------------

enum class Stratum { overall, weekend, workday };

// Cohort annotation for one aggregate: the subject's percentile plus the
// cohort's 5th/95th reference values. Absent when no cohort distribution
// exists for the aggregate (percentiles are omitted, never fabricated).
struct CohortAnnotation {
    double percentile = 0.0;
    double p05 = 0.0;
    double p95 = 0.0;
};

struct Aggregate {
    double value = 0.0;
    std::optional<CohortAnnotation> cohort;
};

// One metric within one stratum: average, spread, extremes and median. Clock
// metrics carry circular means/SDs; extremes and medians of clock metrics are
// taken on the noon-to-noon axis.
struct MetricBlock {
    std::size_t n = 0;
    Aggregate average;
    Aggregate sd;
    Aggregate median;
    double min = 0.0;
    double max = 0.0;
};

struct SleepSummary {
    // metric id -> stratum -> block. Stratified metric ids: "bedtime",
    // "wake_time", "midsleep_point", "sleep_duration", "sleep_score".
    // Unstratified ids (overall stratum only): "time_to_quality_sleep",
    // "waso", "efficiency", "light_sleep", "deep_sleep", "rem_sleep".
    std::map<std::string, std::map<Stratum, MetricBlock>> metrics;
    std::optional<Aggregate> nap_length;  // total nap minutes / total naps
    double total_naps = 0.0;
    std::optional<double> duration_z;  // recent 3 days vs trailing 28
    std::optional<double> score_z;
    std::size_t nights = 0;
    std::size_t weekend_nights = 0;
    std::size_t workday_nights = 0;
};

// Empirical cohort distributions keyed by (demographic key, aggregate key).
// Aggregate keys look like "bedtime.average.workday" or
// "time_to_quality_sleep.average.overall". Clock-valued aggregates are stored
// on the noon-to-noon axis.
class CohortReference {
public:
    static std::string demographic_key(const Demographics& demo);

    void add_sample(const std::string& demo_key, const std::string& aggregate_key,
                    double value);
    void finalize();  // sorts all distributions

    const std::vector<double>* distribution(const std::string& demo_key,
                                            const std::string& aggregate_key) const;

    std::string to_json() const;
    static CohortReference from_json(const std::string& text);

    bool empty() const { return table_.empty(); }

private:
    std::map<std::string, std::map<std::string, std::vector<double>>> table_;
    bool finalized_ = false;
};

SleepSummary sleep_summary(const std::vector<SleepRecord>& sleep,
                           const CohortReference* cohort, const Demographics& demo);

// Per-participant aggregate values that feed CohortReference, keyed like the
// annotations expect.
std::map<std::string, double> sleep_aggregates_for_cohort(
    const std::vector<SleepRecord>& sleep);

CohortReference build_cohort_reference(
    const std::vector<std::pair<Demographics, std::vector<SleepRecord>>>& cohort);

// --- health ----------------------------------------------------------------

struct HealthMetricSummary {
    double mean = 0.0;  // trailing 28 days
    double sd = 0.0;
    std::optional<double> z_today;   // today vs 28-day baseline (recent window 1)
    std::optional<double> week_min;  // past 7 days
    std::optional<double> week_max;
};

struct HealthSummary {
    std::optional<HealthMetricSummary> resting_hr;
    std::optional<HealthMetricSummary> hrv_rmssd;
    std::optional<HealthMetricSummary> respiratory_rate;
    std::vector<std::string> errors;  // per-metric failures, e.g. "hrv_rmssd: empty"
};

HealthSummary health_summary(const std::vector<HealthRecord>& health, Date as_of);

// --- sleep score bands -----------------------------------------------------

enum class ScoreBand { poor, fair, good, excellent };

std::string score_band_label(ScoreBand band);

// Excellent 90-100, good 80-89, fair 60-79, poor below 60. Non-integer scores
// bucket by floor.
ScoreBand score_band(double sleep_score);

// --- assembled feature document --------------------------------------------

struct FeatureSummary {
    std::string participant;
    Date as_of;
    std::optional<LoadSummary> load;
    std::optional<SleepSummary> sleep;
    std::optional<HealthSummary> health;
    std::optional<double> fitness_sleep_duration_z;  // recent 3 days vs month
    std::optional<double> fitness_sleep_score_z;
};

FeatureSummary featurize(const ParticipantData& p, Date as_of,
                         const CohortReference* cohort);

// Stable-field-order JSON document for the featurize CLI.
std::string feature_summary_to_json(const FeatureSummary& summary);

}  // namespace wearlab::features

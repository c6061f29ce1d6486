#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wearlab/calendar.hpp"
#include "wearlab/records.hpp"

namespace wearlab::pro {

inline constexpr std::size_t kFeatureCount = 20;
inline constexpr std::size_t kWindowDays = 15;

// The 20 daily sensor features, in canonical row order. `prompt_label` is the
// wording used for the feature's line in the PRO text prompt.
struct SensorFeature {
    const char* id;
    const char* prompt_label;
};

const std::array<SensorFeature, kFeatureCount>& sensor_features();
std::size_t feature_index(const std::string& id);

// One day's 20 feature values (missing cells allowed).
using DayVector = std::array<std::optional<double>, kFeatureCount>;

// Daily feature series assembled from the participant streams. Two features
// without a source stream are derived:
//   restlessness          = awake / (sleep_duration + awake)
//   revitalization_score  = sleep_score * efficiency
// and three are re-encodings:
//   rem_sleep_percent     = 100 * rem / sleep_duration
//   duration_minutes      = sleep_duration + awake_minutes (time in bed)
//   total_multiplied_minutes = fat_burn + 2 * (cardio + peak)
// Clock times map to minutes after midnight in (-720, 720]: evening times are
// negative, morning times positive.
struct DailySeries {
    Date start;
    std::vector<DayVector> days;  // one per calendar day from start
};

DailySeries assemble_daily_series(const ParticipantData& p);

struct SensorMatrix {
    std::string participant;
    std::string age_bucket;
    Date window_start;
    // values[f][d]: feature f on day d. missing[f][d] marks absent cells.
    std::array<std::array<double, kWindowDays>, kFeatureCount> values{};
    std::array<std::array<bool, kWindowDays>, kFeatureCount> missing{};

    std::size_t missing_count() const;
};

// The contiguous 15-calendar-day window with the fewest missing cells
// (earliest wins ties). Requires the series to span >= 15 days with >= 15
// days carrying any observation.
SensorMatrix select_window(const DailySeries& series, const std::string& participant,
                           const std::string& age_bucket);

// Training-population statistics over raw daily values (all observed cells of
// training participants, before any imputation).
struct PopulationStats {
    std::array<double, kFeatureCount> median{};
    std::array<double, kFeatureCount> mean{};
    std::array<double, kFeatureCount> sd{};
    // Features whose filter was skipped because sd == 0.
    std::vector<std::string> degenerate;
};

PopulationStats compute_population_stats(const std::vector<DailySeries>& training);

// Marks cells more than four SDs from the population median as missing, then
// imputes every missing cell with the median. Idempotent.
SensorMatrix filter_and_impute(SensorMatrix matrix, const PopulationStats& stats);

// Raw per-feature mean and variance (n-1) across the 15 days.
struct EncodedRaw {
    std::array<double, kFeatureCount> mean{};
    std::array<double, kFeatureCount> variance{};
};

EncodedRaw encode(const SensorMatrix& matrix);

// z-scoring parameters for the encoded columns, derived from the training
// split only.
struct EncodingStats {
    std::array<double, kFeatureCount> mean_mean{}, mean_sd{};
    std::array<double, kFeatureCount> var_mean{}, var_sd{};
    std::vector<std::string> degenerate;  // columns frozen at z = 0
};

EncodingStats compute_encoding_stats(const std::vector<EncodedRaw>& training);

struct EncodedFeatures {
    std::array<double, kFeatureCount> mean_z{};
    std::array<double, kFeatureCount> var_z{};

    std::vector<double> flatten() const;  // 40 values: means then variances
};

EncodedFeatures zscore(const EncodedRaw& raw, const EncodingStats& stats);

// 1 iff severity equals 5 (highest answer vs all others).
int binarize_response(const std::string& item, int severity);

enum class Split { train, val, test };

std::string split_label(Split split);

struct SplitRatios {
    double train = 0.70;
    double val = 0.10;
    double test = 0.20;
};

// Deterministic participant-level split: Fisher-Yates shuffle driven by
// Rng(seed), then floor allocation with remainders assigned to the largest
// fractional parts (ties favor train, then val).
std::map<std::string, Split> split_participants(const std::vector<std::string>& ids,
                                                const SplitRatios& ratios,
                                                std::uint64_t seed);

struct PROExample {
    std::string participant;
    std::string age_bucket;
    Split split = Split::train;
    SensorMatrix matrix;      // post filter/imputation
    EncodedRaw raw_encoding;  // native units, feeds prompt rendering
    EncodedFeatures encoded;
    std::map<std::string, int> labels;  // item short name -> 0/1
};

struct Exclusion {
    std::string participant;
    std::string reason;
};

struct ProDataset {
    std::uint64_t seed = 0;
    SplitRatios ratios;
    PopulationStats population_stats;
    EncodingStats encoding_stats;
    std::vector<PROExample> examples;  // sorted by participant id
    std::vector<Exclusion> excluded;

    std::vector<const PROExample*> split_examples(Split split) const;
};

// Full pipeline over a participant store: assemble series, drop participants
// failing the window or survey preconditions, split, derive training stats,
// window + filter + impute + encode + z-score everyone with those stats.
ProDataset build_dataset(const std::vector<ParticipantData>& participants,
                         const SplitRatios& ratios, std::uint64_t seed);

std::string dataset_to_json(const ProDataset& dataset);
ProDataset dataset_from_json(const std::string& text);

}  // namespace wearlab::pro

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wearlab/models.hpp"
#include "wearlab/records.hpp"

namespace wearlab::synth {

// The demographic grid used for cohort references: 32 age buckets (13-20,
// two-year buckets from 20 to 80, 80+) by two genders.
const std::vector<std::string>& age_buckets();

struct CohortSpec {
    std::size_t participants = 100;
    std::uint64_t seed = 0;
    int days = 35;              // span of generated daily data
    double missing_rate = 0.04; // chance a present stream value is dropped
    double short_history_rate = 0.05;  // participants with < 15 days of data
};

// Deterministic synthetic cohort. Sleep quality drives the survey severities
// so PRO labels carry real (if modest) signal.
std::vector<ParticipantData> generate_cohort(const CohortSpec& spec);

// Writes one participant JSON per id under store_dir.
void write_store(const std::string& store_dir, const std::vector<ParticipantData>& cohort);

// Synthetic expert-rating table (CSV rows per case/section/principle/rater)
// for the agreement tooling.
std::string generate_ratings_csv(std::size_t cases, std::uint64_t seed);

// Encoded examples whose labels follow a fixed linear rule of the features,
// for the adapter-vs-logistic comparisons. Returns standardized 40-dim
// feature rows plus 20-dim prompt means.
struct LinearProbe {
    std::vector<models::AdapterExample> examples;
    std::vector<double> true_weights;
};

LinearProbe generate_linear_probe(std::size_t n, std::uint64_t seed,
                                  bool permute_labels = false);

}  // namespace wearlab::synth

#include "wearlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wearlab/errors.hpp"
#include "wearlab/ingest.hpp"
#include "wearlab/rng.hpp"

namespace wearlab::synth {

const std::vector<std::string>& age_buckets() {
    static const std::vector<std::string> buckets = [] {
        std::vector<std::string> out;
        out.push_back("[13-20]");
        for (int lo = 20; lo < 80; lo += 2) {
            out.push_back("[" + std::to_string(lo) + "-" + std::to_string(lo + 2) + "]");
        }
        out.push_back("[80+]");
        return out;
    }();
    return buckets;
}

namespace {

double clampd(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

std::string participant_id(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "P%05zu", index + 1);
    return buf;
}

}  // namespace

std::vector<ParticipantData> generate_cohort(const CohortSpec& spec) {
    std::vector<ParticipantData> cohort;
    cohort.reserve(spec.participants);
    const Date end = Date(2024, 3, 31);

    for (std::size_t idx = 0; idx < spec.participants; ++idx) {
        Rng rng(spec.seed, idx + 1);

        Demographics demo;
        demo.age_bucket = age_buckets()[rng.next_below(age_buckets().size())];
        demo.gender = rng.next_double() < 0.5 ? Gender::male : Gender::female;
        double height = 1.55 + 0.35 * rng.next_double();
        double weight = 52.0 + 48.0 * rng.next_double();
        demo.height_m = std::round(height * 100.0) / 100.0;
        demo.weight_kg = std::round(weight * 10.0) / 10.0;
        demo.bmi = std::round(*demo.weight_kg / (*demo.height_m * *demo.height_m) * 10.0) /
                   10.0;

        int days = spec.days;
        if (rng.next_double() < spec.short_history_rate) {
            days = 5 + static_cast<int>(rng.next_below(9));  // below the 15-day floor
        }
        const Date start = end - (days - 1);

        // Per-person baselines; sleep quality in [0,1] drives survey answers.
        const double sleep_quality = rng.next_double();
        const double base_rhr = 52.0 + 18.0 * rng.next_double();
        const double base_hrv = 18.0 + 40.0 * rng.next_double();
        const double base_rr = 12.0 + 4.0 * rng.next_double();
        const double base_bed = 22.0 * 60.0 + 180.0 * rng.next_double();  // 22:00-01:00
        const double base_sleep_minutes = 330.0 + 150.0 * sleep_quality;
        const double activity_level = rng.next_double();

        std::vector<DailyActivityRecord> activity;
        std::vector<SleepRecord> sleep;
        std::vector<HealthRecord> health;
        std::vector<ExerciseLog> exercises;

        for (int d = 0; d < days; ++d) {
            const Date date = start + d;
            const bool drop_day = rng.next_double() < spec.missing_rate;

            DailyActivityRecord a;
            a.date = date;
            const bool rest_day = rng.next_double() < 0.25;
            double fat_burn = rest_day ? rng.next_below(6)
                                       : 5.0 + 40.0 * activity_level * rng.next_double();
            double cardio = rest_day ? 0.0 : 25.0 * activity_level * rng.next_double();
            double peak = rest_day ? 0.0 : 8.0 * activity_level * rng.next_double();
            a.fat_burn_minutes = std::round(fat_burn);
            a.cardio_minutes = std::round(cardio);
            a.peak_minutes = std::round(peak);
            a.trimp = std::round(fat_burn * 0.8 + cardio * 2.0 + peak * 3.5);
            a.steps = std::round(2500 + 14000 * activity_level * rng.next_double());
            if (drop_day) a.steps.reset();
            activity.push_back(a);

            SleepRecord s;
            s.date = date;
            double bed_minutes = base_bed + 70.0 * (rng.next_double() - 0.5) * 2.0;
            double bed_mod = std::fmod(bed_minutes, 1440.0);
            s.bedtime = ClockTime(bed_mod < 0 ? bed_mod + 1440.0 : bed_mod);
            double asleep = clampd(
                base_sleep_minutes + 60.0 * (rng.next_double() - 0.5) * 2.0, 150.0, 620.0);
            double awake = clampd(20.0 + 50.0 * (1.0 - sleep_quality) * rng.next_double(),
                                  3.0, 120.0);
            s.sleep_duration = std::round(asleep);
            s.awake_minutes = std::round(awake);
            double deep = asleep * (0.12 + 0.08 * sleep_quality);
            double rem = asleep * (0.15 + 0.08 * rng.next_double());
            s.deep_minutes = std::round(deep);
            s.rem_minutes = std::round(rem);
            s.light_minutes = std::round(asleep - deep - rem);
            s.efficiency = std::round(clampd(asleep / (asleep + awake), 0.5, 0.99) * 100.0) / 100.0;
            double score = clampd(35.0 + 55.0 * sleep_quality +
                                      14.0 * (rng.next_double() - 0.5) * 2.0,
                                  5.0, 100.0);
            s.sleep_score = std::round(score);
            s.waso = std::round(awake * 0.6);
            double latency = 5.0 + 35.0 * (1.0 - sleep_quality) * rng.next_double();
            s.fall_asleep_time =
                ClockTime(std::fmod(s.bedtime->minutes() + latency, 1440.0));
            double wake_min =
                std::fmod(s.fall_asleep_time->minutes() + asleep + awake, 1440.0);
            s.wake_time = ClockTime(wake_min);
            bool napper = rng.next_double() < 0.2;
            s.nap_count = napper ? 1.0 + rng.next_below(2) : 0.0;
            s.nap_duration = napper ? 20.0 + rng.next_below(90) : 0.0;
            s.heart_rate = std::round(base_rhr + 2.0 * rng.next_double());
            if (drop_day && d % 2 == 0) {
                s.sleep_score.reset();
                s.efficiency.reset();
            }
            sleep.push_back(s);

            HealthRecord h;
            h.date = date;
            h.resting_hr = std::round(base_rhr + 3.0 * (rng.next_double() - 0.5) * 2.0);
            h.hrv_rmssd = std::round(
                clampd(base_hrv + 8.0 * (rng.next_double() - 0.5) * 2.0, 5.0, 120.0));
            h.respiratory_rate = std::round(
                clampd(base_rr + 1.5 * (rng.next_double() - 0.5) * 2.0, 8.0, 25.0));
            if (rng.next_double() < spec.missing_rate) {
                h.hrv_rmssd.reset();
                h.respiratory_rate.reset();
            }
            health.push_back(h);

            if (!rest_day && rng.next_double() < 0.4) {
                ExerciseLog e;
                e.date = date;
                static const char* kNames[] = {"Walk", "Run", "Treadmill", "Bike",
                                               "Swim"};
                e.activity_name = kNames[rng.next_below(5)];
                e.duration = std::round(10.0 + 50.0 * rng.next_double());
                e.avg_hr = std::round(90.0 + 60.0 * rng.next_double());
                e.fat_burn_minutes = std::round(fat_burn);
                e.cardio_minutes = std::round(cardio);
                e.peak_minutes = std::round(peak);
                e.distance_km = std::round(6.0 * rng.next_double());
                e.day_trimp = a.trimp;
                exercises.push_back(e);
            }
        }

        // Intake surveys: severity tracks (inverted) sleep quality with noise.
        std::vector<SurveyResponseSet> surveys;
        for (auto kind : {SurveyKind::disturbance, SurveyKind::impairment}) {
            SurveyResponseSet set;
            set.kind = kind;
            for (const auto& item : survey_items(kind)) {
                double burden = (1.0 - sleep_quality) * 4.0 + 1.0;  // 1..5
                double noisy = burden + 1.4 * (rng.next_double() - 0.5) * 2.0;
                int severity = static_cast<int>(clampd(std::round(noisy), 1.0, 5.0));
                set.severities[item.short_name] = severity;
            }
            surveys.push_back(std::move(set));
        }

        cohort.push_back(ingest::validate_participant(
            participant_id(idx), demo, std::move(activity), std::move(sleep),
            std::move(health), std::move(exercises), std::move(surveys)));
    }
    return cohort;
}

void write_store(const std::string& store_dir,
                 const std::vector<ParticipantData>& cohort) {
    for (const auto& p : cohort) ingest::save_participant(store_dir, p);
}

std::string generate_ratings_csv(std::size_t cases, std::uint64_t seed) {
    static const char* kSections[] = {"insights", "etiology", "recommendations"};
    static const char* kPrinciples[] = {"important_user_data", "incorrect_domain_knowledge",
                                        "overall_quality"};
    static const char* kRaters[] = {"primary_a", "primary_b", "secondary_a"};
    static const char* kSources[] = {"expert", "base_model", "tuned_model"};

    std::string csv = "case_id,section,principle,rater,source,rating,elapsed_minutes\n";
    Rng rng(seed, 17);
    for (std::size_t c = 0; c < cases; ++c) {
        const char* source = kSources[c % 3];
        // Source-level quality offset so group means differ.
        double offset = source == kSources[0] ? 0.4 : source == kSources[2] ? 0.2 : 0.0;
        for (const char* section : kSections) {
            for (const char* principle : kPrinciples) {
                double latent = 3.4 + offset + 1.1 * (rng.next_double() - 0.5) * 2.0;
                for (const char* rater : kRaters) {
                    double jitter = 0.7 * (rng.next_double() - 0.5) * 2.0;
                    int rating = static_cast<int>(
                        clampd(std::round(latent + jitter), 1.0, 5.0));
                    double minutes = 4.0 + 20.0 * rng.next_double();
                    csv += "case" + std::to_string(c + 1) + "," + section + "," +
                           principle + "," + rater + "," + source + "," +
                           std::to_string(rating) + "," +
                           std::to_string(std::round(minutes * 10.0) / 10.0) + "\n";
                }
            }
        }
    }
    return csv;
}

LinearProbe generate_linear_probe(std::size_t n, std::uint64_t seed,
                                  bool permute_labels) {
    LinearProbe probe;
    Rng weight_rng(seed, 777);
    probe.true_weights.resize(2 * pro::kFeatureCount);
    for (auto& w : probe.true_weights) w = weight_rng.next_normal();

    probe.examples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(seed, i + 1);
        models::AdapterExample example;
        example.encoded.resize(2 * pro::kFeatureCount);
        for (auto& v : example.encoded) v = rng.next_normal();
        example.prompt_means.resize(pro::kFeatureCount);
        for (std::size_t f = 0; f < pro::kFeatureCount; ++f) {
            // Native-unit stand-ins: affine transforms of the z-scores.
            example.prompt_means[f] = 50.0 + 10.0 * example.encoded[f];
        }
        double score = 0.0;
        for (std::size_t j = 0; j < example.encoded.size(); ++j) {
            score += probe.true_weights[j] * example.encoded[j];
        }
        example.label = score > 0.0 ? 1 : 0;
        probe.examples.push_back(std::move(example));
    }

    if (permute_labels) {
        std::vector<int> labels;
        labels.reserve(n);
        for (const auto& e : probe.examples) labels.push_back(e.label);
        Rng rng(seed, 999);
        for (std::size_t i = labels.size(); i > 1; --i) {
            std::swap(labels[i - 1], labels[rng.next_below(i)]);
        }
        for (std::size_t i = 0; i < n; ++i) probe.examples[i].label = labels[i];
    }
    return probe;
}

}  // namespace wearlab::synth

#include "wearlab/pro.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "wearlab/errors.hpp"
#include "wearlab/rng.hpp"

using json = nlohmann::ordered_json;

namespace wearlab::pro {

const std::array<SensorFeature, kFeatureCount>& sensor_features() {
    static const std::array<SensorFeature, kFeatureCount> features = {{
        {"rmssd", "heart rate variability root mean square of successive differences"},
        {"rate_brpm", "respiratory rate breaths per minute"},
        {"rhr_bpm", "resting heart rate beats per minute"},
        {"awake_minutes", "awake minutes"},
        {"deep_sleep_minutes", "deep sleep minutes"},
        {"duration_minutes", "sleep duration minutes"},
        {"efficiency", "efficiency"},
        {"overall_score", "overall sleep score"},
        {"rem_sleep_percent", "percent of sleep in REM"},
        {"restlessness", "restlessness"},
        {"revitalization_score", "revitalization score"},
        {"sleep_end_time", "sleep end time"},
        {"sleep_start_time", "sleep start time"},
        {"sleep_time_minutes", "sleep time minutes"},
        {"waso_count_long_wakes", "total number of minutes in awake state after sleep onset"},
        {"num_steps", "number of steps walked during the day"},
        {"cardio_minutes", "number of minutes spent in cardio zone during the day"},
        {"fat_burn_minutes", "number of minutes spent in fat burn zone during the day"},
        {"peak_minutes", "number of minutes spent in peak zone during the day"},
        {"total_multiplied_minutes", "total multiplied minutes of exercise during the day"},
    }};
    return features;
}

std::size_t feature_index(const std::string& id) {
    const auto& features = sensor_features();
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (id == features[i].id) return i;
    }
    throw UnknownItemError("no sensor feature \"" + id + "\"");
}

namespace {

// Minutes after midnight in (-720, 720]: 22:30 -> -90, 07:00 -> 420.
double signed_minutes(ClockTime t) {
    double m = t.minutes();
    return m > 720.0 ? m - 1440.0 : m;
}

}  // namespace

DailySeries assemble_daily_series(const ParticipantData& p) {
    std::optional<Date> lo, hi;
    auto widen = [&](Date d) {
        if (!lo || d < *lo) lo = d;
        if (!hi || d > *hi) hi = d;
    };
    for (const auto& r : p.activity) widen(r.date);
    for (const auto& r : p.sleep) widen(r.date);
    for (const auto& r : p.health) widen(r.date);

    DailySeries series;
    if (!lo) return series;
    series.start = *lo;
    series.days.resize(static_cast<std::size_t>(*hi - *lo) + 1);

    auto day = [&](Date d) -> DayVector& {
        return series.days[static_cast<std::size_t>(d - series.start)];
    };
    auto set = [](DayVector& v, const char* id, std::optional<double> value) {
        if (value) v[feature_index(id)] = value;
    };

    for (const auto& r : p.health) {
        DayVector& v = day(r.date);
        set(v, "rmssd", r.hrv_rmssd);
        set(v, "rate_brpm", r.respiratory_rate);
        set(v, "rhr_bpm", r.resting_hr);
    }
    for (const auto& r : p.sleep) {
        DayVector& v = day(r.date);
        set(v, "awake_minutes", r.awake_minutes);
        set(v, "deep_sleep_minutes", r.deep_minutes);
        if (r.sleep_duration) {
            set(v, "duration_minutes", *r.sleep_duration + r.awake_minutes.value_or(0.0));
            set(v, "sleep_time_minutes", r.sleep_duration);
            if (r.rem_minutes && *r.sleep_duration > 0) {
                set(v, "rem_sleep_percent", 100.0 * *r.rem_minutes / *r.sleep_duration);
            }
            if (r.awake_minutes && *r.sleep_duration + *r.awake_minutes > 0) {
                set(v, "restlessness",
                    *r.awake_minutes / (*r.sleep_duration + *r.awake_minutes));
            }
        }
        set(v, "efficiency", r.efficiency);
        set(v, "overall_score", r.sleep_score);
        if (r.sleep_score && r.efficiency) {
            set(v, "revitalization_score", *r.sleep_score * *r.efficiency);
        }
        if (r.wake_time) set(v, "sleep_end_time", signed_minutes(*r.wake_time));
        if (r.fall_asleep_time) {
            set(v, "sleep_start_time", signed_minutes(*r.fall_asleep_time));
        }
        set(v, "waso_count_long_wakes", r.waso);
    }
    for (const auto& r : p.activity) {
        DayVector& v = day(r.date);
        set(v, "num_steps", r.steps);
        set(v, "cardio_minutes", r.cardio_minutes);
        set(v, "fat_burn_minutes", r.fat_burn_minutes);
        set(v, "peak_minutes", r.peak_minutes);
        if (r.fat_burn_minutes || r.cardio_minutes || r.peak_minutes) {
            set(v, "total_multiplied_minutes",
                r.fat_burn_minutes.value_or(0.0) +
                    2.0 * (r.cardio_minutes.value_or(0.0) + r.peak_minutes.value_or(0.0)));
        }
    }
    return series;
}

std::size_t SensorMatrix::missing_count() const {
    std::size_t count = 0;
    for (const auto& row : missing) {
        for (bool m : row) count += m;
    }
    return count;
}

SensorMatrix select_window(const DailySeries& series, const std::string& participant,
                           const std::string& age_bucket) {
    const std::size_t total_days = series.days.size();
    std::size_t observed_days = 0;
    for (const auto& day : series.days) {
        for (const auto& cell : day) {
            if (cell) {
                ++observed_days;
                break;
            }
        }
    }
    if (total_days < kWindowDays || observed_days < kWindowDays) {
        throw InsufficientDataError(participant + ": " + std::to_string(observed_days) +
                                    " observed days over a " +
                                    std::to_string(total_days) + "-day span");
    }

    // Prefix sums of per-day missing counts; candidate windows are scanned in
    // O(days) instead of re-counting each window.
    std::vector<std::size_t> missing_prefix(total_days + 1, 0);
    for (std::size_t d = 0; d < total_days; ++d) {
        std::size_t day_missing = 0;
        for (const auto& cell : series.days[d]) day_missing += !cell.has_value();
        missing_prefix[d + 1] = missing_prefix[d] + day_missing;
    }

    std::size_t best_start = 0;
    std::size_t best_missing = static_cast<std::size_t>(-1);
    for (std::size_t start = 0; start + kWindowDays <= total_days; ++start) {
        std::size_t m = missing_prefix[start + kWindowDays] - missing_prefix[start];
        if (m < best_missing) {
            best_missing = m;
            best_start = start;
        }
    }

    SensorMatrix matrix;
    matrix.participant = participant;
    matrix.age_bucket = age_bucket;
    matrix.window_start = series.start + static_cast<std::int64_t>(best_start);
    for (std::size_t d = 0; d < kWindowDays; ++d) {
        const DayVector& day = series.days[best_start + d];
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            if (day[f]) {
                matrix.values[f][d] = *day[f];
                matrix.missing[f][d] = false;
            } else {
                matrix.values[f][d] = 0.0;
                matrix.missing[f][d] = true;
            }
        }
    }
    return matrix;
}

PopulationStats compute_population_stats(const std::vector<DailySeries>& training) {
    std::array<std::vector<double>, kFeatureCount> observed;
    for (const auto& series : training) {
        for (const auto& day : series.days) {
            for (std::size_t f = 0; f < kFeatureCount; ++f) {
                if (day[f]) observed[f].push_back(*day[f]);
            }
        }
    }
    PopulationStats stats;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        auto& values = observed[f];
        if (values.empty()) {
            throw EmptyDatasetError(std::string("no training observations for feature ") +
                                    sensor_features()[f].id);
        }
        std::sort(values.begin(), values.end());
        std::size_t n = values.size();
        stats.median[f] = n % 2 ? values[n / 2]
                                : 0.5 * (values[n / 2 - 1] + values[n / 2]);
        double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(n);
        stats.mean[f] = mean;
        if (n == 1) {
            stats.sd[f] = 0.0;
        } else {
            double ss = 0.0;
            for (double v : values) ss += (v - mean) * (v - mean);
            stats.sd[f] = std::sqrt(ss / static_cast<double>(n - 1));
        }
        if (stats.sd[f] == 0.0) {
            stats.degenerate.push_back(sensor_features()[f].id);
        }
    }
    return stats;
}

SensorMatrix filter_and_impute(SensorMatrix matrix, const PopulationStats& stats) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const double median = stats.median[f];
        const double sd = stats.sd[f];
        for (std::size_t d = 0; d < kWindowDays; ++d) {
            // Outliers are undecidable when sd == 0: filter skipped, recorded
            // in stats.degenerate at stats-computation time.
            if (!matrix.missing[f][d] && sd > 0.0 &&
                std::abs(matrix.values[f][d] - median) > 4.0 * sd) {
                matrix.missing[f][d] = true;
            }
            if (matrix.missing[f][d]) {
                matrix.values[f][d] = median;
                matrix.missing[f][d] = false;
            }
        }
    }
    return matrix;
}

EncodedRaw encode(const SensorMatrix& matrix) {
    for (const auto& row : matrix.missing) {
        for (bool m : row) {
            if (m) throw InvariantViolation("encode() requires a fully imputed matrix");
        }
    }
    EncodedRaw raw;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        double mean = 0.0;
        for (double v : matrix.values[f]) mean += v;
        mean /= static_cast<double>(kWindowDays);
        double ss = 0.0;
        for (double v : matrix.values[f]) ss += (v - mean) * (v - mean);
        raw.mean[f] = mean;
        raw.variance[f] = ss / static_cast<double>(kWindowDays - 1);
    }
    return raw;
}

EncodingStats compute_encoding_stats(const std::vector<EncodedRaw>& training) {
    if (training.empty()) throw EmptyDatasetError("no training encodings");
    EncodingStats stats;
    auto column = [&](auto getter, std::array<double, kFeatureCount>& mean_out,
                      std::array<double, kFeatureCount>& sd_out, const char* tag) {
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            double mean = 0.0;
            for (const auto& e : training) mean += getter(e, f);
            mean /= static_cast<double>(training.size());
            double ss = 0.0;
            for (const auto& e : training) {
                double d = getter(e, f) - mean;
                ss += d * d;
            }
            double sd = training.size() > 1
                            ? std::sqrt(ss / static_cast<double>(training.size() - 1))
                            : 0.0;
            mean_out[f] = mean;
            sd_out[f] = sd;
            if (sd == 0.0) {
                stats.degenerate.push_back(std::string(sensor_features()[f].id) + "." +
                                           tag);
            }
        }
    };
    column([](const EncodedRaw& e, std::size_t f) { return e.mean[f]; }, stats.mean_mean,
           stats.mean_sd, "mean");
    column([](const EncodedRaw& e, std::size_t f) { return e.variance[f]; },
           stats.var_mean, stats.var_sd, "variance");
    return stats;
}

std::vector<double> EncodedFeatures::flatten() const {
    std::vector<double> out;
    out.reserve(2 * kFeatureCount);
    for (double v : mean_z) out.push_back(v);
    for (double v : var_z) out.push_back(v);
    return out;
}

EncodedFeatures zscore(const EncodedRaw& raw, const EncodingStats& stats) {
    EncodedFeatures out;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        out.mean_z[f] = stats.mean_sd[f] > 0.0
                            ? (raw.mean[f] - stats.mean_mean[f]) / stats.mean_sd[f]
                            : 0.0;
        out.var_z[f] = stats.var_sd[f] > 0.0
                           ? (raw.variance[f] - stats.var_mean[f]) / stats.var_sd[f]
                           : 0.0;
    }
    return out;
}

int binarize_response(const std::string& item, int severity) {
    if (severity < 1 || severity > 5) {
        throw OutOfRangeError("severity " + std::to_string(severity) +
                              " outside 1..5 for item \"" + item + "\"");
    }
    return severity == 5 ? 1 : 0;
}

std::string split_label(Split split) {
    switch (split) {
        case Split::train: return "train";
        case Split::val: return "val";
        case Split::test: return "test";
    }
    return "?";
}

std::map<std::string, Split> split_participants(const std::vector<std::string>& ids,
                                                const SplitRatios& ratios,
                                                std::uint64_t seed) {
    if (ids.empty()) throw EmptyDatasetError("no participants to split");
    double total = ratios.train + ratios.val + ratios.test;
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValueError("split ratios must sum to 1");
    }

    std::vector<std::string> shuffled = ids;
    std::sort(shuffled.begin(), shuffled.end());
    Rng rng(seed);
    for (std::size_t i = shuffled.size(); i > 1; --i) {
        std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
    }

    const double n = static_cast<double>(shuffled.size());
    const double exact[3] = {ratios.train * n, ratios.val * n, ratios.test * n};
    std::size_t counts[3];
    for (int k = 0; k < 3; ++k) counts[k] = static_cast<std::size_t>(std::floor(exact[k]));
    std::size_t assigned = counts[0] + counts[1] + counts[2];
    // Remainders go to the largest fractional parts; ties favor train, then val.
    std::vector<int> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return exact[a] - std::floor(exact[a]) > exact[b] - std::floor(exact[b]);
    });
    for (std::size_t extra = 0; extra < shuffled.size() - assigned; ++extra) {
        counts[order[extra % 3]] += 1;
    }

    std::map<std::string, Split> out;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < counts[0]; ++i) out[shuffled[idx++]] = Split::train;
    for (std::size_t i = 0; i < counts[1]; ++i) out[shuffled[idx++]] = Split::val;
    for (std::size_t i = 0; i < counts[2]; ++i) out[shuffled[idx++]] = Split::test;
    return out;
}

std::vector<const PROExample*> ProDataset::split_examples(Split split) const {
    std::vector<const PROExample*> out;
    for (const auto& e : examples) {
        if (e.split == split) out.push_back(&e);
    }
    return out;
}

ProDataset build_dataset(const std::vector<ParticipantData>& participants,
                         const SplitRatios& ratios, std::uint64_t seed) {
    if (participants.empty()) throw EmptyDatasetError("no participants");

    ProDataset dataset;
    dataset.seed = seed;
    dataset.ratios = ratios;

    struct Candidate {
        const ParticipantData* p;
        DailySeries series;
        std::map<std::string, int> labels;
    };
    std::vector<Candidate> retained;
    for (const auto& p : participants) {
        // Both survey instruments are required for the 16 labels.
        std::map<std::string, int> labels;
        for (const auto& survey : p.surveys) {
            for (const auto& [item, severity] : survey.severities) {
                labels[item] = binarize_response(item, severity);
            }
        }
        if (labels.size() != all_survey_item_names().size()) {
            dataset.excluded.push_back({p.id, "incomplete surveys"});
            continue;
        }
        DailySeries series = assemble_daily_series(p);
        std::size_t observed = 0;
        for (const auto& day : series.days) {
            for (const auto& cell : day) {
                if (cell) {
                    ++observed;
                    break;
                }
            }
        }
        if (series.days.size() < kWindowDays || observed < kWindowDays) {
            dataset.excluded.push_back({p.id, "fewer than 15 days of sensor data"});
            continue;
        }
        retained.push_back({&p, std::move(series), std::move(labels)});
    }
    if (retained.empty()) {
        throw EmptyDatasetError("no participants satisfy the window precondition");
    }

    std::vector<std::string> ids;
    for (const auto& c : retained) ids.push_back(c.p->id);
    auto assignment = split_participants(ids, ratios, seed);

    // Training stats come from training-split raw series only; transforming
    // the other splits never touches them.
    std::vector<DailySeries> training_series;
    for (const auto& c : retained) {
        if (assignment.at(c.p->id) == Split::train) training_series.push_back(c.series);
    }
    if (training_series.empty()) {
        throw EmptyDatasetError("training split is empty; cannot derive stats");
    }
    dataset.population_stats = compute_population_stats(training_series);

    std::vector<PROExample> examples;
    std::vector<EncodedRaw> training_encodings;
    for (const auto& c : retained) {
        PROExample e;
        e.participant = c.p->id;
        e.age_bucket = c.p->demographics.age_bucket;
        e.split = assignment.at(c.p->id);
        e.matrix = filter_and_impute(
            select_window(c.series, c.p->id, c.p->demographics.age_bucket),
            dataset.population_stats);
        e.raw_encoding = encode(e.matrix);
        e.labels = c.labels;
        if (e.split == Split::train) training_encodings.push_back(e.raw_encoding);
        examples.push_back(std::move(e));
    }
    dataset.encoding_stats = compute_encoding_stats(training_encodings);
    for (auto& e : examples) e.encoded = zscore(e.raw_encoding, dataset.encoding_stats);

    std::sort(examples.begin(), examples.end(),
              [](const PROExample& a, const PROExample& b) {
                  return a.participant < b.participant;
              });
    dataset.examples = std::move(examples);
    return dataset;
}

namespace {

json array20(const std::array<double, kFeatureCount>& values) {
    json out = json::array();
    for (double v : values) out.push_back(v);
    return out;
}

std::array<double, kFeatureCount> parse20(const json& j) {
    std::array<double, kFeatureCount> out{};
    if (j.size() != kFeatureCount) throw SchemaError("expected 20 values");
    for (std::size_t i = 0; i < kFeatureCount; ++i) out[i] = j[i].get<double>();
    return out;
}

}  // namespace

std::string dataset_to_json(const ProDataset& dataset) {
    json doc;
    doc["seed"] = dataset.seed;
    json ratios;
    ratios["train"] = dataset.ratios.train;
    ratios["val"] = dataset.ratios.val;
    ratios["test"] = dataset.ratios.test;
    doc["ratios"] = ratios;

    json features = json::array();
    for (const auto& f : sensor_features()) features.push_back(f.id);
    doc["feature_order"] = features;

    json pop;
    pop["median"] = array20(dataset.population_stats.median);
    pop["mean"] = array20(dataset.population_stats.mean);
    pop["sd"] = array20(dataset.population_stats.sd);
    pop["degenerate"] = dataset.population_stats.degenerate;
    doc["population_stats"] = pop;

    json enc;
    enc["mean_mean"] = array20(dataset.encoding_stats.mean_mean);
    enc["mean_sd"] = array20(dataset.encoding_stats.mean_sd);
    enc["var_mean"] = array20(dataset.encoding_stats.var_mean);
    enc["var_sd"] = array20(dataset.encoding_stats.var_sd);
    enc["degenerate"] = dataset.encoding_stats.degenerate;
    doc["encoding_stats"] = enc;

    json excluded = json::array();
    for (const auto& ex : dataset.excluded) {
        json row;
        row["participant"] = ex.participant;
        row["reason"] = ex.reason;
        excluded.push_back(row);
    }
    doc["excluded"] = excluded;

    json examples = json::array();
    for (const auto& e : dataset.examples) {
        json row;
        row["participant"] = e.participant;
        row["age_bucket"] = e.age_bucket;
        row["split"] = split_label(e.split);
        row["window_start"] = e.matrix.window_start.to_string();
        json matrix = json::array();
        for (const auto& feature_row : e.matrix.values) {
            json r = json::array();
            for (double v : feature_row) r.push_back(v);
            matrix.push_back(r);
        }
        row["matrix"] = matrix;
        json encoding;
        encoding["mean"] = array20(e.raw_encoding.mean);
        encoding["variance"] = array20(e.raw_encoding.variance);
        encoding["mean_z"] = array20(e.encoded.mean_z);
        encoding["var_z"] = array20(e.encoded.var_z);
        row["encoding"] = encoding;
        json labels;
        for (const auto& [item, label] : e.labels) labels[item] = label;
        row["labels"] = labels;
        examples.push_back(row);
    }
    doc["examples"] = examples;
    return doc.dump() + "\n";
}

ProDataset dataset_from_json(const std::string& text) {
    json doc = json::parse(text);
    ProDataset dataset;
    dataset.seed = doc.at("seed").get<std::uint64_t>();
    dataset.ratios.train = doc.at("ratios").at("train").get<double>();
    dataset.ratios.val = doc.at("ratios").at("val").get<double>();
    dataset.ratios.test = doc.at("ratios").at("test").get<double>();

    const json& pop = doc.at("population_stats");
    dataset.population_stats.median = parse20(pop.at("median"));
    dataset.population_stats.mean = parse20(pop.at("mean"));
    dataset.population_stats.sd = parse20(pop.at("sd"));
    for (const auto& d : pop.at("degenerate")) {
        dataset.population_stats.degenerate.push_back(d.get<std::string>());
    }

    const json& enc = doc.at("encoding_stats");
    dataset.encoding_stats.mean_mean = parse20(enc.at("mean_mean"));
    dataset.encoding_stats.mean_sd = parse20(enc.at("mean_sd"));
    dataset.encoding_stats.var_mean = parse20(enc.at("var_mean"));
    dataset.encoding_stats.var_sd = parse20(enc.at("var_sd"));
    for (const auto& d : enc.at("degenerate")) {
        dataset.encoding_stats.degenerate.push_back(d.get<std::string>());
    }

    for (const auto& row : doc.at("excluded")) {
        dataset.excluded.push_back({row.at("participant").get<std::string>(),
                                    row.at("reason").get<std::string>()});
    }

    for (const auto& row : doc.at("examples")) {
        PROExample e;
        e.participant = row.at("participant").get<std::string>();
        e.age_bucket = row.at("age_bucket").get<std::string>();
        std::string split = row.at("split").get<std::string>();
        e.split = split == "train" ? Split::train
                  : split == "val" ? Split::val
                                   : Split::test;
        e.matrix.participant = e.participant;
        e.matrix.age_bucket = e.age_bucket;
        e.matrix.window_start = Date::parse(row.at("window_start").get<std::string>());
        const json& matrix = row.at("matrix");
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            for (std::size_t d = 0; d < kWindowDays; ++d) {
                e.matrix.values[f][d] = matrix[f][d].get<double>();
                e.matrix.missing[f][d] = false;
            }
        }
        const json& encoding = row.at("encoding");
        e.raw_encoding.mean = parse20(encoding.at("mean"));
        e.raw_encoding.variance = parse20(encoding.at("variance"));
        e.encoded.mean_z = parse20(encoding.at("mean_z"));
        e.encoded.var_z = parse20(encoding.at("var_z"));
        for (const auto& [item, label] : row.at("labels").items()) {
            e.labels[item] = label.get<int>();
        }
        dataset.examples.push_back(std::move(e));
    }
    return dataset;
}

}  // namespace wearlab::pro

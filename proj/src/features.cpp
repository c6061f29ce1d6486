#include "wearlab/features.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <nlohmann/json.hpp>

#include "wearlab/errors.hpp"
#include "wearlab/textfmt.hpp"

using json = nlohmann::ordered_json;

namespace wearlab::features {

double mean_of(const std::vector<double>& values) {
    if (values.empty()) throw EmptySeriesError("mean of empty series");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_sd(const std::vector<double>& values) {
    if (values.empty()) throw EmptySeriesError("sd of empty series");
    if (values.size() == 1) return 0.0;
    double m = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double median_of(std::vector<double> values) {
    if (values.empty()) throw EmptySeriesError("median of empty series");
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double quantile_of(std::vector<double> values, double q) {
    if (values.empty()) throw EmptySeriesError("quantile of empty series");
    std::sort(values.begin(), values.end());
    if (q <= 0) return values.front();
    if (q >= 1) return values.back();
    double pos = q * static_cast<double>(values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

namespace {
constexpr double kTau = 2.0 * M_PI;

double angle_of(ClockTime t) { return t.minutes() / 1440.0 * kTau; }
}  // namespace

ClockTime circular_mean(const std::vector<ClockTime>& times) {
    if (times.empty()) throw EmptySeriesError("circular mean of empty series");
    double sx = 0.0, sy = 0.0;
    for (ClockTime t : times) {
        sx += std::cos(angle_of(t));
        sy += std::sin(angle_of(t));
    }
    double theta = std::atan2(sy, sx);
    if (theta < 0) theta += kTau;
    double minutes = theta / kTau * 1440.0;
    if (minutes >= 1440.0) minutes -= 1440.0;
    return ClockTime(minutes);
}

double circular_sd_minutes(const std::vector<ClockTime>& times) {
    if (times.empty()) throw EmptySeriesError("circular sd of empty series");
    double sx = 0.0, sy = 0.0;
    for (ClockTime t : times) {
        sx += std::cos(angle_of(t));
        sy += std::sin(angle_of(t));
    }
    double r = std::sqrt(sx * sx + sy * sy) / static_cast<double>(times.size());
    r = std::min(r, 1.0);
    if (r <= 0.0) return 720.0;  // uniform spread; cap at half a day
    double sd_rad = std::sqrt(-2.0 * std::log(r));
    return sd_rad / kTau * 1440.0;
}

ClockTime midsleep_point(ClockTime bedtime, ClockTime wake) {
    double span = wake.minutes() - bedtime.minutes();
    if (span < 0) span += 1440.0;
    double mid = bedtime.minutes() + span / 2.0;
    if (mid >= 1440.0) mid -= 1440.0;
    return ClockTime(mid);
}

double percentile_rank(const std::vector<double>& sorted_cohort, double value) {
    if (sorted_cohort.empty()) throw EmptySeriesError("percentile of empty cohort");
    auto lo = std::lower_bound(sorted_cohort.begin(), sorted_cohort.end(), value);
    auto hi = std::upper_bound(sorted_cohort.begin(), sorted_cohort.end(), value);
    double below = static_cast<double>(lo - sorted_cohort.begin());
    double equal = static_cast<double>(hi - lo);
    return 100.0 * (below + 0.5 * equal) / static_cast<double>(sorted_cohort.size());
}

double recent_z(const std::vector<double>& values, std::size_t recent_window,
                std::size_t baseline_window) {
    if (recent_window == 0 || baseline_window < recent_window) {
        throw ValueError("recent window must be in 1..baseline window");
    }
    if (values.size() < baseline_window) {
        throw InsufficientHistoryError("need " + std::to_string(baseline_window) +
                                       " values, have " + std::to_string(values.size()));
    }
    std::vector<double> baseline(values.end() - static_cast<long>(baseline_window),
                                 values.end());
    std::vector<double> recent(values.end() - static_cast<long>(recent_window),
                               values.end());
    double sd = sample_sd(baseline);
    if (sd == 0.0) throw DegenerateBaselineError("baseline SD is zero");
    return (mean_of(recent) - mean_of(baseline)) / sd;
}

namespace {

// TRIMP per calendar day over [as_of - days + 1, as_of]; days with no record
// or a missing value are rest days contributing zero load.
std::vector<double> trimp_window(const std::vector<DailyActivityRecord>& daily,
                                 Date as_of, int days) {
    std::vector<double> out(static_cast<std::size_t>(days), 0.0);
    Date start = as_of - (days - 1);
    for (const auto& r : daily) {
        if (r.date < start || r.date > as_of) continue;
        out[static_cast<std::size_t>(r.date - start)] = r.trimp.value_or(0.0);
    }
    return out;
}

void require_in_range(const std::vector<DailyActivityRecord>& daily, Date as_of) {
    if (daily.empty()) throw EmptySeriesError("no activity records");
    if (as_of < daily.front().date || as_of > daily.back().date) {
        throw EmptySeriesError("as_of " + as_of.to_string() +
                               " outside activity data range");
    }
}

}  // namespace

double acute_trimp(const std::vector<DailyActivityRecord>& daily, Date as_of) {
    require_in_range(daily, as_of);
    double total = 0.0;
    for (double v : trimp_window(daily, as_of, 7)) total += v;
    return total;
}

double chronic_trimp(const std::vector<DailyActivityRecord>& daily, Date as_of) {
    require_in_range(daily, as_of);
    std::int64_t history = as_of - daily.front().date + 1;
    if (history < 28) {
        throw InsufficientHistoryError("chronic load needs 28 days ending " +
                                       as_of.to_string() + ", have " +
                                       std::to_string(history));
    }
    double total = 0.0;
    for (double v : trimp_window(daily, as_of, 28)) total += v;
    return total / 4.0;
}

std::string acwr_band_label(AcwrBand band) {
    switch (band) {
        case AcwrBand::detraining_risk: return "detraining-risk";
        case AcwrBand::normal: return "normal";
        case AcwrBand::elevated_risk: return "elevated-risk";
    }
    return "?";
}

AcwrBand acwr_band_for_ratio(double ratio) {
    if (ratio > 1.5) return AcwrBand::elevated_risk;
    if (ratio < 0.7) return AcwrBand::detraining_risk;
    return AcwrBand::normal;
}

AcwrResult acwr(const std::vector<DailyActivityRecord>& daily, Date as_of) {
    double acute = acute_trimp(daily, as_of);
    double chronic = chronic_trimp(daily, as_of);
    if (chronic == 0.0) throw ZeroChronicLoadError("chronic load is zero");
    AcwrResult result;
    result.ratio = acute / chronic;
    result.band = acwr_band_for_ratio(result.ratio);
    result.display = format_fixed(result.ratio, 1);
    return result;
}

LoadSummary load_summary(const std::vector<DailyActivityRecord>& daily, Date as_of) {
    require_in_range(daily, as_of);
    LoadSummary s;
    // Trailing 30 calendar days, clipped to the available history; days with
    // no record are rest days contributing zero.
    std::int64_t window = std::min<std::int64_t>(30, as_of - daily.front().date + 1);
    Date start = as_of - (window - 1);
    std::vector<double> trimp_by_day(static_cast<std::size_t>(window), 0.0);
    double fat = 0.0, vig = 0.0;
    for (const auto& r : daily) {
        if (r.date < start || r.date > as_of) continue;
        fat += r.fat_burn_minutes.value_or(0.0);
        vig += r.cardio_minutes.value_or(0.0) + r.peak_minutes.value_or(0.0);
        trimp_by_day[static_cast<std::size_t>(r.date - start)] = r.trimp.value_or(0.0);
    }
    s.trimp_min = *std::min_element(trimp_by_day.begin(), trimp_by_day.end());
    s.trimp_max = *std::max_element(trimp_by_day.begin(), trimp_by_day.end());
    s.mean_fat_burn_per_day = fat / static_cast<double>(window);
    s.mean_vigorous_per_day = vig / static_cast<double>(window);
    s.acute_trimp = acute_trimp(daily, as_of);
    s.chronic_trimp = chronic_trimp(daily, as_of);
    if (s.chronic_trimp == 0.0) throw ZeroChronicLoadError("chronic load is zero");
    s.acwr_ratio = s.acute_trimp / s.chronic_trimp;
    s.acwr_band = acwr_band_for_ratio(s.acwr_ratio);
    return s;
}

// --- cohort reference --------------------------------------------------------

std::string CohortReference::demographic_key(const Demographics& demo) {
    return demo.age_bucket + "|" + to_lower(gender_label(demo.gender));
}

void CohortReference::add_sample(const std::string& demo_key,
                                 const std::string& aggregate_key, double value) {
    table_[demo_key][aggregate_key].push_back(value);
    finalized_ = false;
}

void CohortReference::finalize() {
    for (auto& [demo, aggs] : table_) {
        for (auto& [key, values] : aggs) std::sort(values.begin(), values.end());
    }
    finalized_ = true;
}

const std::vector<double>* CohortReference::distribution(
    const std::string& demo_key, const std::string& aggregate_key) const {
    auto demo_it = table_.find(demo_key);
    if (demo_it == table_.end()) return nullptr;
    auto agg_it = demo_it->second.find(aggregate_key);
    if (agg_it == demo_it->second.end() || agg_it->second.empty()) return nullptr;
    return &agg_it->second;
}

std::string CohortReference::to_json() const {
    json doc;
    for (const auto& [demo, aggs] : table_) {
        json group;
        for (const auto& [key, values] : aggs) group[key] = values;
        doc[demo] = group;
    }
    return doc.dump(2) + "\n";
}

CohortReference CohortReference::from_json(const std::string& text) {
    CohortReference ref;
    json doc = json::parse(text);
    for (const auto& [demo, aggs] : doc.items()) {
        for (const auto& [key, values] : aggs.items()) {
            for (const auto& v : values) ref.table_[demo][key].push_back(v.get<double>());
        }
    }
    ref.finalize();
    return ref;
}

// --- sleep summary -----------------------------------------------------------

namespace {

struct NightValues {
    bool weekend = false;
    std::optional<ClockTime> bedtime;
    std::optional<ClockTime> wake_time;
    std::optional<ClockTime> midsleep;
    std::optional<double> duration;
    std::optional<double> score;
    std::optional<double> tqs;
    std::optional<double> waso;
    std::optional<double> efficiency;
    std::optional<double> light;
    std::optional<double> deep;
    std::optional<double> rem;
};

NightValues night_values(const SleepRecord& r) {
    NightValues n;
    n.weekend = r.date.is_weekend();
    n.bedtime = r.bedtime;
    n.wake_time = r.wake_time;
    if (r.bedtime && r.wake_time) n.midsleep = midsleep_point(*r.bedtime, *r.wake_time);
    n.duration = r.sleep_duration;
    n.score = r.sleep_score;
    if (r.bedtime && r.fall_asleep_time) {
        // Sleep-onset latency: forward distance from bedtime to falling asleep.
        double span = r.fall_asleep_time->minutes() - r.bedtime->minutes();
        if (span < 0) span += 1440.0;
        n.tqs = span;
    }
    n.waso = r.waso;
    n.efficiency = r.efficiency;
    n.light = r.light_minutes;
    n.deep = r.deep_minutes;
    n.rem = r.rem_minutes;
    return n;
}

bool in_stratum(const NightValues& n, Stratum s) {
    return s == Stratum::overall || (s == Stratum::weekend) == n.weekend;
}

std::string stratum_suffix(Stratum s) {
    switch (s) {
        case Stratum::overall: return "overall";
        case Stratum::weekend: return "weekend";
        case Stratum::workday: return "workday";
    }
    return "?";
}

struct MetricValues {
    std::vector<double> linear;     // noon-scale for clock metrics
    std::vector<ClockTime> clocks;  // only for clock metrics
};

// Computed aggregates for one (metric, stratum) pair; the same numbers feed
// both the subject's MetricBlock and the cohort distributions.
struct RawBlock {
    std::size_t n = 0;
    double average = 0.0;  // noon-scale for clock metrics
    double sd = 0.0;       // circular SD in minutes for clock metrics
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
};

std::optional<RawBlock> compute_block(const MetricValues& mv, bool clock_metric) {
    if (mv.linear.empty()) return std::nullopt;
    RawBlock b;
    b.n = mv.linear.size();
    if (clock_metric) {
        b.average = circular_mean(mv.clocks).noon_scale();
        b.sd = circular_sd_minutes(mv.clocks);
    } else {
        b.average = mean_of(mv.linear);
        b.sd = sample_sd(mv.linear);
    }
    b.median = median_of(mv.linear);
    b.min = *std::min_element(mv.linear.begin(), mv.linear.end());
    b.max = *std::max_element(mv.linear.begin(), mv.linear.end());
    return b;
}

const std::vector<std::string> kStratifiedMetrics = {
    "bedtime", "wake_time", "midsleep_point", "sleep_duration", "sleep_score"};
const std::vector<std::string> kUnstratifiedMetrics = {
    "time_to_quality_sleep", "waso", "efficiency", "light_sleep", "deep_sleep",
    "rem_sleep"};

bool is_clock_metric(const std::string& id) {
    return id == "bedtime" || id == "wake_time" || id == "midsleep_point";
}

MetricValues collect_metric(const std::vector<NightValues>& nights,
                            const std::string& id, Stratum stratum) {
    MetricValues mv;
    for (const auto& n : nights) {
        if (!in_stratum(n, stratum)) continue;
        std::optional<ClockTime> clock;
        std::optional<double> value;
        if (id == "bedtime") clock = n.bedtime;
        else if (id == "wake_time") clock = n.wake_time;
        else if (id == "midsleep_point") clock = n.midsleep;
        else if (id == "sleep_duration") value = n.duration;
        else if (id == "sleep_score") value = n.score;
        else if (id == "time_to_quality_sleep") value = n.tqs;
        else if (id == "waso") value = n.waso;
        else if (id == "efficiency") value = n.efficiency;
        else if (id == "light_sleep") value = n.light;
        else if (id == "deep_sleep") value = n.deep;
        else if (id == "rem_sleep") value = n.rem;
        if (clock) {
            mv.clocks.push_back(*clock);
            mv.linear.push_back(clock->noon_scale());
        } else if (value) {
            mv.linear.push_back(*value);
        }
    }
    return mv;
}

void for_each_aggregate(const std::vector<NightValues>& nights,
                        const std::function<void(const std::string&, const RawBlock&,
                                                 const std::string&)>& fn) {
    auto emit = [&](const std::string& id, Stratum s) {
        auto block = compute_block(collect_metric(nights, id, s), is_clock_metric(id));
        if (block) fn(id, *block, stratum_suffix(s));
    };
    for (const auto& id : kStratifiedMetrics) {
        emit(id, Stratum::overall);
        emit(id, Stratum::weekend);
        emit(id, Stratum::workday);
    }
    for (const auto& id : kUnstratifiedMetrics) emit(id, Stratum::overall);
}

std::optional<double> nap_length_value(const std::vector<SleepRecord>& sleep,
                                       double* total_naps_out) {
    double total_minutes = 0.0, total_naps = 0.0;
    for (const auto& r : sleep) {
        total_minutes += r.nap_duration.value_or(0.0);
        total_naps += r.nap_count.value_or(0.0);
    }
    *total_naps_out = total_naps;
    if (total_naps <= 0.0) return std::nullopt;
    return total_minutes / total_naps;
}

}  // namespace

std::map<std::string, double> sleep_aggregates_for_cohort(
    const std::vector<SleepRecord>& sleep) {
    std::vector<NightValues> nights;
    nights.reserve(sleep.size());
    for (const auto& r : sleep) nights.push_back(night_values(r));

    std::map<std::string, double> out;
    for_each_aggregate(nights, [&](const std::string& id, const RawBlock& b,
                                   const std::string& stratum) {
        out[id + ".average." + stratum] = b.average;
        out[id + ".sd." + stratum] = b.sd;
        out[id + ".median." + stratum] = b.median;
    });
    double total_naps = 0.0;
    if (auto nap = nap_length_value(sleep, &total_naps)) {
        out["nap_length.average.overall"] = *nap;
    }
    return out;
}

CohortReference build_cohort_reference(
    const std::vector<std::pair<Demographics, std::vector<SleepRecord>>>& cohort) {
    CohortReference ref;
    for (const auto& [demo, sleep] : cohort) {
        if (sleep.empty()) continue;
        std::string key = CohortReference::demographic_key(demo);
        for (const auto& [agg, value] : sleep_aggregates_for_cohort(sleep)) {
            ref.add_sample(key, agg, value);
        }
    }
    ref.finalize();
    return ref;
}

SleepSummary sleep_summary(const std::vector<SleepRecord>& sleep,
                           const CohortReference* cohort, const Demographics& demo) {
    if (sleep.empty()) throw EmptySeriesError("no sleep records");

    std::vector<NightValues> nights;
    nights.reserve(sleep.size());
    for (const auto& r : sleep) nights.push_back(night_values(r));

    SleepSummary summary;
    summary.nights = nights.size();
    for (const auto& n : nights) {
        if (n.weekend) ++summary.weekend_nights;
        else ++summary.workday_nights;
    }

    const std::string demo_key = CohortReference::demographic_key(demo);
    auto annotate = [&](const std::string& aggregate_key, double value) {
        std::optional<CohortAnnotation> out;
        if (cohort) {
            if (const auto* dist = cohort->distribution(demo_key, aggregate_key)) {
                CohortAnnotation a;
                a.percentile = percentile_rank(*dist, value);
                a.p05 = quantile_of(*dist, 0.05);
                a.p95 = quantile_of(*dist, 0.95);
                out = a;
            }
        }
        return out;
    };

    for_each_aggregate(nights, [&](const std::string& id, const RawBlock& b,
                                   const std::string& stratum) {
        MetricBlock mb;
        mb.n = b.n;
        mb.average = {b.average, annotate(id + ".average." + stratum, b.average)};
        mb.sd = {b.sd, annotate(id + ".sd." + stratum, b.sd)};
        mb.median = {b.median, annotate(id + ".median." + stratum, b.median)};
        mb.min = b.min;
        mb.max = b.max;
        Stratum s = stratum == "overall" ? Stratum::overall
                    : stratum == "weekend" ? Stratum::weekend
                                           : Stratum::workday;
        summary.metrics[id][s] = mb;
    });

    double total_naps = 0.0;
    if (auto nap = nap_length_value(sleep, &total_naps)) {
        summary.nap_length = Aggregate{*nap, annotate("nap_length.average.overall", *nap)};
    }
    summary.total_naps = total_naps;

    // Recent-vs-month z-scores: last 3 nights against the trailing 28.
    auto z_for = [&](auto getter) -> std::optional<double> {
        std::vector<double> values;
        for (const auto& r : sleep) {
            if (auto v = getter(r)) values.push_back(*v);
        }
        if (values.size() < 28) return std::nullopt;
        try {
            return recent_z(values, 3, 28);
        } catch (const DegenerateBaselineError&) {
            return std::nullopt;
        }
    };
    summary.duration_z = z_for([](const SleepRecord& r) { return r.sleep_duration; });
    summary.score_z = z_for([](const SleepRecord& r) { return r.sleep_score; });

    return summary;
}

// --- health ------------------------------------------------------------------

HealthSummary health_summary(const std::vector<HealthRecord>& health, Date as_of) {
    if (health.empty()) throw EmptySeriesError("no health records");

    HealthSummary summary;
    auto compute = [&](const char* name,
                       auto getter) -> std::optional<HealthMetricSummary> {
        std::vector<double> month;  // trailing 28 days in date order
        std::optional<double> today;
        std::optional<double> wmin, wmax;
        for (const auto& r : health) {
            auto v = getter(r);
            if (!v) continue;
            if (r.date > as_of) continue;
            if (as_of - r.date < 28) month.push_back(*v);
            if (r.date == as_of) today = v;
            if (as_of - r.date < 7) {
                wmin = wmin ? std::min(*wmin, *v) : *v;
                wmax = wmax ? std::max(*wmax, *v) : *v;
            }
        }
        if (month.empty()) {
            summary.errors.push_back(std::string(name) + ": empty series");
            return std::nullopt;
        }
        HealthMetricSummary m;
        m.mean = mean_of(month);
        m.sd = sample_sd(month);
        if (today && m.sd > 0.0) m.z_today = (*today - m.mean) / m.sd;
        m.week_min = wmin;
        m.week_max = wmax;
        return m;
    };

    summary.resting_hr =
        compute("resting_hr", [](const HealthRecord& r) { return r.resting_hr; });
    summary.hrv_rmssd =
        compute("hrv_rmssd", [](const HealthRecord& r) { return r.hrv_rmssd; });
    summary.respiratory_rate = compute(
        "respiratory_rate", [](const HealthRecord& r) { return r.respiratory_rate; });
    return summary;
}

std::string score_band_label(ScoreBand band) {
    switch (band) {
        case ScoreBand::poor: return "poor";
        case ScoreBand::fair: return "fair";
        case ScoreBand::good: return "good";
        case ScoreBand::excellent: return "excellent";
    }
    return "?";
}

ScoreBand score_band(double sleep_score) {
    if (!(sleep_score >= 0.0 && sleep_score <= 100.0)) {
        throw OutOfRangeError("sleep score outside [0, 100]: " +
                              std::to_string(sleep_score));
    }
    double bucket = std::floor(sleep_score);
    if (bucket >= 90.0) return ScoreBand::excellent;
    if (bucket >= 80.0) return ScoreBand::good;
    if (bucket >= 60.0) return ScoreBand::fair;
    return ScoreBand::poor;
}

FeatureSummary featurize(const ParticipantData& p, Date as_of,
                         const CohortReference* cohort) {
    FeatureSummary out;
    out.participant = p.id;
    out.as_of = as_of;
    if (!p.activity.empty()) {
        try {
            out.load = load_summary(p.activity, as_of);
        } catch (const Error&) {
            // insufficient history: load block omitted
        }
    }
    if (!p.sleep.empty()) {
        out.sleep = sleep_summary(p.sleep, cohort, p.demographics);
        out.fitness_sleep_duration_z = out.sleep->duration_z;
        out.fitness_sleep_score_z = out.sleep->score_z;
    }
    if (!p.health.empty()) out.health = health_summary(p.health, as_of);
    return out;
}

namespace {

json aggregate_to_json(const Aggregate& a) {
    json j;
    j["value"] = a.value;
    if (a.cohort) {
        j["percentile"] = a.cohort->percentile;
        j["cohort_p05"] = a.cohort->p05;
        j["cohort_p95"] = a.cohort->p95;
    }
    return j;
}

json metric_block_to_json(const MetricBlock& b) {
    json j;
    j["n"] = b.n;
    j["average"] = aggregate_to_json(b.average);
    j["sd"] = aggregate_to_json(b.sd);
    j["median"] = aggregate_to_json(b.median);
    j["min"] = b.min;
    j["max"] = b.max;
    return j;
}

json health_metric_to_json(const HealthMetricSummary& m) {
    json j;
    j["mean"] = m.mean;
    j["sd"] = m.sd;
    j["z_today"] = m.z_today ? json(*m.z_today) : json(nullptr);
    j["week_min"] = m.week_min ? json(*m.week_min) : json(nullptr);
    j["week_max"] = m.week_max ? json(*m.week_max) : json(nullptr);
    return j;
}

}  // namespace

std::string feature_summary_to_json(const FeatureSummary& summary) {
    json doc;
    doc["participant"] = summary.participant;
    doc["as_of"] = summary.as_of.to_string();
    if (summary.load) {
        json load;
        load["mean_fat_burn_per_day"] = summary.load->mean_fat_burn_per_day;
        load["mean_vigorous_per_day"] = summary.load->mean_vigorous_per_day;
        load["trimp_min"] = summary.load->trimp_min;
        load["trimp_max"] = summary.load->trimp_max;
        load["acute_trimp"] = summary.load->acute_trimp;
        load["chronic_trimp"] = summary.load->chronic_trimp;
        load["acwr"] = summary.load->acwr_ratio;
        load["acwr_display"] = format_fixed(summary.load->acwr_ratio, 1);
        load["acwr_band"] = acwr_band_label(summary.load->acwr_band);
        doc["load"] = load;
    } else {
        doc["load"] = nullptr;
    }
    if (summary.sleep) {
        json sleep;
        sleep["nights"] = summary.sleep->nights;
        sleep["weekend_nights"] = summary.sleep->weekend_nights;
        sleep["workday_nights"] = summary.sleep->workday_nights;
        json metrics;
        for (const auto& [id, strata] : summary.sleep->metrics) {
            json per;
            for (const auto& [s, block] : strata) {
                per[stratum_suffix(s)] = metric_block_to_json(block);
            }
            metrics[id] = per;
        }
        sleep["metrics"] = metrics;
        sleep["nap_length"] = summary.sleep->nap_length
                                  ? aggregate_to_json(*summary.sleep->nap_length)
                                  : json(nullptr);
        sleep["total_naps"] = summary.sleep->total_naps;
        sleep["duration_z"] =
            summary.sleep->duration_z ? json(*summary.sleep->duration_z) : json(nullptr);
        sleep["score_z"] =
            summary.sleep->score_z ? json(*summary.sleep->score_z) : json(nullptr);
        doc["sleep"] = sleep;
    } else {
        doc["sleep"] = nullptr;
    }
    if (summary.health) {
        json health;
        health["resting_hr"] = summary.health->resting_hr
                                   ? health_metric_to_json(*summary.health->resting_hr)
                                   : json(nullptr);
        health["hrv_rmssd"] = summary.health->hrv_rmssd
                                  ? health_metric_to_json(*summary.health->hrv_rmssd)
                                  : json(nullptr);
        health["respiratory_rate"] =
            summary.health->respiratory_rate
                ? health_metric_to_json(*summary.health->respiratory_rate)
                : json(nullptr);
        health["errors"] = summary.health->errors;
        doc["health"] = health;
    } else {
        doc["health"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

}  // namespace wearlab::features

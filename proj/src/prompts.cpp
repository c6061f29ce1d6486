#include "wearlab/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "wearlab/errors.hpp"
#include "wearlab/textfmt.hpp"

namespace wearlab::prompts {

Vertical parse_vertical(const std::string& text) {
    std::string t = to_lower(text);
    if (t == "sleep") return Vertical::sleep;
    if (t == "fitness") return Vertical::fitness;
    if (t == "pro") return Vertical::pro;
    if (t == "autoeval") return Vertical::autoeval;
    throw ValueError("unknown vertical \"" + text + "\"");
}

Section parse_section(Vertical vertical, const std::string& text) {
    std::string t = to_lower(text);
    if (vertical == Vertical::sleep) {
        if (t == "insights") return Section::insights;
        if (t == "etiology") return Section::etiology;
        if (t == "recommendations") return Section::recommendations;
        throw ValueError("sleep sections are insights|etiology|recommendations");
    }
    if (vertical == Vertical::fitness) {
        if (t == "demographics") return Section::demographics;
        if (t == "training_load") return Section::training_load;
        if (t == "sleep") return Section::fitness_sleep;
        if (t == "health") return Section::health;
        if (t == "assessment") return Section::assessment;
        throw ValueError(
            "fitness sections are demographics|training_load|sleep|health|assessment");
    }
    throw ValueError("vertical has no case sections");
}

std::string section_label(Section section) {
    switch (section) {
        case Section::insights: return "insights";
        case Section::etiology: return "etiology";
        case Section::recommendations: return "recommendations";
        case Section::demographics: return "demographics";
        case Section::training_load: return "training_load";
        case Section::fitness_sleep: return "sleep";
        case Section::health: return "health";
        case Section::assessment: return "assessment";
    }
    return "?";
}

bool placeholders_resolved(const std::string& body) {
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] != '<') continue;
        std::size_t j = i + 1;
        while (j < body.size() &&
               (std::isalpha(static_cast<unsigned char>(body[j])) || body[j] == '_')) {
            ++j;
        }
        if (j > i + 1 && j < body.size() && body[j] == '>') return false;
    }
    return true;
}

namespace {

std::string redacted_or(Date date, bool redact) {
    return redact ? "<year-month-day>" : date.to_string();
}

std::string strip_trailing_newlines(std::string s) {
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

std::string substitute(std::string body,
                       const std::map<std::string, std::string>& values) {
    for (const auto& [key, value] : values) {
        const std::string needle = "<" + key + ">";
        std::size_t pos = 0;
        while ((pos = body.find(needle, pos)) != std::string::npos) {
            body.replace(pos, needle.size(), value);
            pos += value.size();
        }
    }
    return body;
}

void require_resolved(const std::string& body) {
    if (!placeholders_resolved(body)) {
        std::size_t at = body.find('<');
        std::size_t end = body.find('>', at);
        throw MissingPlaceholderError("unresolved placeholder " +
                                      body.substr(at, end - at + 1));
    }
}

std::string bucket_range(double value, double step, int decimals, const char* unit,
                         double scale = 1.0) {
    double lo = std::floor(value * scale / step) * step;
    return "[" + format_fixed(lo / scale, decimals) + "-" +
           format_fixed((lo + step) / scale, decimals) + "]" + unit;
}

std::string height_bucket(const std::optional<double>& meters) {
    if (!meters) return "unknown";
    return bucket_range(*meters, 5.0, 2, "m", 100.0);  // 5 cm buckets
}

std::string weight_bucket(const std::optional<double>& kg) {
    if (!kg) return "unknown";
    double lo = std::floor(*kg / 5.0) * 5.0;
    return "[" + format_int(lo) + "-" + format_int(lo + 5) + "]kg";
}

}  // namespace

// --- tabular renderings --------------------------------------------------------

std::string render_activity_table(const std::vector<DailyActivityRecord>& records,
                                  bool redact_dates) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : records) {
        rows.push_back({r.date.weekday_name(), redacted_or(r.date, redact_dates),
                        format_optional(r.fat_burn_minutes, 1),
                        format_optional(r.cardio_minutes, 1),
                        format_optional(r.peak_minutes, 1), format_optional(r.trimp, 1),
                        r.steps ? format_int(*r.steps) : "NaN"});
    }
    return render_aligned_table({"Day of the week", "date", "Fat-burn zone minutes",
                                 "Cardio zone minutes", "Peak zone minutes", "TRIMP",
                                 "Steps"},
                                rows);
}

std::string render_activity_aggregates(const features::LoadSummary& load,
                                       const std::vector<ExerciseLog>& exercises,
                                       bool redact_dates) {
    std::string out;
    out += "Mean moderate activity per day (Fat-burn): " +
           format_fixed(load.mean_fat_burn_per_day, 1) + " mins\n";
    out += "Mean vigorous activity per day (Cardio and Peak): " +
           format_fixed(load.mean_vigorous_per_day, 1) + " mins\n";
    out += "TRIMP ranges from " + format_int(load.trimp_min) + " to " +
           format_int(load.trimp_max) + "\n";
    out += "Acute TRIMP (7-day total training load): " + format_int(load.acute_trimp) +
           "\n";
    out += "Chronic TRIMP (28-day average acute training load): " +
           format_int(load.chronic_trimp) + "\n";
    out += "Acute-Chronic Workload Ratio (ACWR): " + format_fixed(load.acwr_ratio, 1) +
           "\n";

    if (!exercises.empty()) {
        // At most the 10 most recent logs, in date order.
        std::size_t first = exercises.size() > 10 ? exercises.size() - 10 : 0;
        out += "\nThese are exercise logs from most recent days.\n";
        double total_duration = 0.0;
        double min_duration = 0.0, max_duration = 0.0;
        std::optional<double> min_hr, max_hr;
        std::size_t count = 0;
        for (std::size_t i = first; i < exercises.size(); ++i) {
            const auto& e = exercises[i];
            out += e.activity_name + " on " + e.date.weekday_name() + " " +
                   redacted_or(e.date, redact_dates) + "\n";
            out += "Duration: " + format_int(e.duration) + " mins\n";
            out += "Average Heart Rate: " +
                   (e.avg_hr ? format_int(*e.avg_hr) : "NaN") + " bpm\n";
            out += "Time in Fat-burn zone: " +
                   format_int(e.fat_burn_minutes.value_or(0)) + " mins\n";
            out += "Time in Cardio zone: " + format_int(e.cardio_minutes.value_or(0)) +
                   " mins\n";
            out += "Time in Peak zone: " + format_int(e.peak_minutes.value_or(0)) +
                   " mins\n";
            out += "Distance: " + format_int(e.distance_km.value_or(0)) + " km\n";
            out += "TRIMP that day: " + format_fixed(e.day_trimp.value_or(0), 1) + "\n";
            if (i + 1 < exercises.size()) out += "\n";
            if (count == 0) {
                min_duration = max_duration = e.duration;
            } else {
                min_duration = std::min(min_duration, e.duration);
                max_duration = std::max(max_duration, e.duration);
            }
            if (e.avg_hr) {
                min_hr = min_hr ? std::min(*min_hr, *e.avg_hr) : *e.avg_hr;
                max_hr = max_hr ? std::max(*max_hr, *e.avg_hr) : *e.avg_hr;
            }
            total_duration += e.duration;
            ++count;
        }
        out += "\nAverage workout duration: " +
               format_fixed(total_duration / static_cast<double>(count), 1) + " mins\n";
        out += "Workout duration ranges from " + format_int(min_duration) + " to " +
               format_int(max_duration) + " mins\n";
        out += "Average heart rate ranges from " +
               (min_hr ? format_int(*min_hr) : "NaN") + " to " +
               (max_hr ? format_int(*max_hr) : "NaN") + " bpm\n";
    }
    return out;
}

std::string render_sleep_logs_table(const std::vector<SleepRecord>& records,
                                    bool redact_dates) {
    auto hhmm = [](const std::optional<double>& minutes) {
        return minutes ? format_duration_hhmm(*minutes) : std::string("NaN");
    };
    auto clock = [](const std::optional<ClockTime>& t) {
        return t ? t->to_string() : std::string("NaN");
    };
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : records) {
        rows.push_back({redacted_or(r.date, redact_dates), r.date.weekday_name(),
                        format_optional(r.sleep_score, 1), hhmm(r.light_minutes),
                        hhmm(r.rem_minutes), hhmm(r.deep_minutes),
                        hhmm(r.sleep_duration), clock(r.fall_asleep_time), hhmm(r.waso),
                        format_optional(r.efficiency, 2),
                        format_optional(r.heart_rate, 1),
                        format_optional(r.nap_duration, 1),
                        format_optional(r.nap_count, 1), clock(r.wake_time)});
    }
    return render_aligned_table(
        {"Date", "Day of Week", "Sleep Score", "Light Sleep (hh:mm)",
         "REM Sleep (hh:mm)", "Deep Sleep (hh:mm)", "Sleep Duration (hh:mm)",
         "Fall Asleep Time", "Wake after Sleep Onset (hh:mm)", "Efficiency",
         "Heart Rate (bpm)", "Nap Duration (min)", "Naps", "Wake Time"},
        rows);
}

namespace {

using features::Aggregate;
using features::MetricBlock;
using features::SleepSummary;
using features::Stratum;

enum class MetricKind { clock, duration, score, fraction };

struct SummarySpec {
    const char* id;
    const char* name;      // "bedtime"
    const char* plural;    // "bedtimes"
    const char* cap_name;  // "Bedtime" for the " standard deviation" line
    MetricKind kind;
    const char* min_label;
    const char* max_label;
    bool stratified;
};

const SummarySpec kSummarySpecs[] = {
    {"bedtime", "bedtime", "bedtimes", "Bedtime", MetricKind::clock, "Earliest",
     "Latest", true},
    {"wake_time", "wake time", "wake times", "Wake time", MetricKind::clock, "Earliest",
     "Latest", true},
    {"midsleep_point", "midsleep point", "midsleep points", "Midsleep point",
     MetricKind::clock, "Earliest", "Latest", true},
    {"sleep_duration", "sleep duration", "sleep durations", "Sleep duration",
     MetricKind::duration, "Shortest", "Longest", true},
    {"sleep_score", "sleep score", "sleep scores", "Sleep score", MetricKind::score,
     "Lowest", "Highest", true},
    {"time_to_quality_sleep", "time to quality sleep", "times to quality sleep",
     "Time to quality sleep", MetricKind::duration, "Shortest", "Longest", false},
    {"waso", "wake after sleep onset", "wake after sleep onset",
     "Wake after sleep onset", MetricKind::duration, "Shortest", "Longest", false},
    {"efficiency", "sleep efficiency", "sleep efficiencies", "Sleep efficiency",
     MetricKind::fraction, "Lowest", "Highest", false},
    {"light_sleep", "light sleep duration", "light sleep durations",
     "Light sleep duration", MetricKind::duration, "Shortest", "Longest", false},
    {"deep_sleep", "deep sleep duration", "deep sleep durations", "Deep sleep duration",
     MetricKind::duration, "Shortest", "Longest", false},
    {"rem_sleep", "REM sleep duration", "REM sleep durations", "REM sleep duration",
     MetricKind::duration, "Shortest", "Longest", false},
};

std::string format_metric_value(MetricKind kind, double value) {
    switch (kind) {
        case MetricKind::clock:
            return ClockTime::from_noon_scale(value).to_string();
        case MetricKind::duration:
            return format_duration_hhmm(value);
        case MetricKind::score:
            return format_fixed(value, 1);
        case MetricKind::fraction:
            return format_int(value * 100.0) + "%";
    }
    return "?";
}

std::string format_metric_sd(MetricKind kind, double value) {
    switch (kind) {
        case MetricKind::clock:
        case MetricKind::duration:
            return format_duration_hhmm(value);
        case MetricKind::score:
            return format_fixed(value, 1);
        case MetricKind::fraction:
            return format_int(value * 100.0) + "%";
    }
    return "?";
}

const char* stratum_phrase(Stratum s) {
    switch (s) {
        case Stratum::overall: return "";
        case Stratum::weekend: return " on the weekend";
        case Stratum::workday: return " on a workday";
    }
    return "";
}

std::string percentile_line(const std::string& prefix, const Aggregate& agg) {
    if (!agg.cohort) return {};
    return prefix + " is in the " +
           ordinal(std::lround(agg.cohort->percentile)) + " percentile\n";
}

void append_summary_block(std::string& out, const SummarySpec& spec,
                          const MetricBlock& block, Stratum stratum) {
    const std::string s = stratum_phrase(stratum);
    auto value = [&](double v) { return format_metric_value(spec.kind, v); };

    const std::string avg_prefix = std::string("Average ") + spec.name + s;
    out += avg_prefix + " is " + value(block.average.value) + "\n";
    out += percentile_line(avg_prefix, block.average);
    out += std::string(spec.min_label) + " " + spec.name + s + " is " +
           value(block.min) + "\n";
    out += std::string(spec.max_label) + " " + spec.name + s + " is " +
           value(block.max) + "\n";
    if (block.average.cohort) {
        out += std::string("Bottom 5th percentile of similar users' average ") +
               spec.plural + s + " is " + value(block.average.cohort->p05) + "\n";
        out += std::string("Top 95th percentile of similar users' average ") +
               spec.plural + s + " is " + value(block.average.cohort->p95) + "\n";
    }
    out += "\n";

    const std::string sd_prefix = std::string(spec.cap_name) + " standard deviation" + s;
    out += sd_prefix + " is " + format_metric_sd(spec.kind, block.sd.value) + "\n";
    out += percentile_line(sd_prefix, block.sd);
    out += "\n";

    const std::string median_prefix = std::string("Median ") + spec.name + s;
    out += median_prefix + " is " + value(block.median.value) + "\n";
    out += percentile_line(median_prefix, block.median);
    if (block.median.cohort) {
        out += std::string("Bottom 5th percentile of similar users' median ") +
               spec.plural + s + " is " + value(block.median.cohort->p05) + "\n";
        out += std::string("Top 95th percentile of similar users' median ") +
               spec.plural + s + " is " + value(block.median.cohort->p95) + "\n";
    }
    out += "\n";
}

void append_unstratified_block(std::string& out, const SummarySpec& spec,
                               const MetricBlock& block) {
    auto value = [&](double v) { return format_metric_value(spec.kind, v); };
    const std::string avg_prefix = std::string("Average ") + spec.name;
    out += avg_prefix + " is " + value(block.average.value) + "\n";
    out += percentile_line(avg_prefix, block.average);
    out += std::string(spec.min_label) + " " + spec.name + " is " + value(block.min) +
           "\n";
    out += std::string(spec.max_label) + " " + spec.name + " is " + value(block.max) +
           "\n";
    if (block.average.cohort) {
        out += std::string("Bottom 5th percentile of similar users' average ") +
               spec.plural + " is " + value(block.average.cohort->p05) + "\n";
        out += std::string("Top 95th percentile of similar users' average ") +
               spec.plural + " is " + value(block.average.cohort->p95) + "\n";
    }
    out += "\n";
}

}  // namespace

std::string render_sleep_summary_text(const features::SleepSummary& summary) {
    std::string out;
    for (const auto& spec : kSummarySpecs) {
        auto metric_it = summary.metrics.find(spec.id);
        if (metric_it == summary.metrics.end()) continue;
        const auto& strata = metric_it->second;
        if (spec.stratified) {
            for (Stratum s : {Stratum::overall, Stratum::weekend, Stratum::workday}) {
                auto it = strata.find(s);
                if (it == strata.end() || it->second.n == 0) continue;
                append_summary_block(out, spec, it->second, s);
            }
        } else {
            auto it = strata.find(Stratum::overall);
            if (it != strata.end() && it->second.n > 0) {
                append_unstratified_block(out, spec, it->second);
            }
        }
    }
    if (summary.nap_length) {
        out += "Average nap length is " + format_int(summary.nap_length->value) + "\n";
        out += percentile_line("Average nap length", *summary.nap_length);
        out += "\n";
    }
    out += "Total number of naps is " + format_int(summary.total_naps) + "\n";
    return out;
}

std::string render_fitness_sleep_table(const std::vector<SleepRecord>& records,
                                       bool redact_dates) {
    auto clock = [](const std::optional<ClockTime>& t) {
        return t ? t->to_string() : std::string("NaN");
    };
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : records) {
        rows.push_back({r.date.weekday_name(), redacted_or(r.date, redact_dates),
                        clock(r.fall_asleep_time), clock(r.wake_time),
                        r.sleep_duration ? format_int(*r.sleep_duration / 60.0) : "NaN",
                        format_optional(r.awake_minutes, 0),
                        format_optional(r.deep_minutes, 0),
                        format_optional(r.rem_minutes, 0),
                        format_optional(r.sleep_score, 0)});
    }
    return render_aligned_table(
        {"Day of the week", "Date", "Sleep start time", "Sleep end (wake) time",
         "Sleep time (hours)", "Awake time (minutes)", "Deep sleep (minutes)",
         "REM sleep (minutes)", "Sleep score"},
        rows);
}

std::string render_fitness_sleep_aggregates(const std::vector<SleepRecord>& records) {
    std::vector<ClockTime> bedtimes, wakes;
    std::vector<double> durations, scores;
    for (const auto& r : records) {
        if (r.bedtime) bedtimes.push_back(*r.bedtime);
        if (r.wake_time) wakes.push_back(*r.wake_time);
        if (r.sleep_duration) durations.push_back(*r.sleep_duration);
        if (r.sleep_score) scores.push_back(*r.sleep_score);
    }
    auto z_line = [](const std::vector<double>& values) -> std::string {
        if (values.size() < 28) return "NaN";
        try {
            return format_fixed(features::recent_z(values, 3, 28), 1);
        } catch (const DegenerateBaselineError&) {
            return "NaN";
        }
    };
    std::string out;
    out += "Mean bedtime: " +
           (bedtimes.empty() ? "NaN" : features::circular_mean(bedtimes).to_string()) +
           "\n";
    out += "Mean wake-time: " +
           (wakes.empty() ? "NaN" : features::circular_mean(wakes).to_string()) + "\n";
    out += "Mean sleep duration: " +
           (durations.empty() ? "NaN"
                              : format_fixed(features::mean_of(durations) / 60.0, 1)) +
           " hours\n";
    out += "Standard deviation sleep duration: " +
           (durations.empty() ? "NaN"
                              : format_fixed(features::sample_sd(durations) / 60.0, 1)) +
           " hours\n";
    out += "Sleep duration Z-score (recent days relative to month): " +
           z_line(durations) + "\n";
    out += "Mean sleep score: " +
           (scores.empty() ? "NaN" : format_int(features::mean_of(scores))) + "\n";
    out += "Standard deviation sleep score: " +
           (scores.empty() ? "NaN" : format_fixed(features::sample_sd(scores), 1)) +
           "\n";
    out += "Sleep score Z-score (recent days relative to month): " + z_line(scores) +
           "\n";
    return out;
}

std::string render_health_table(const std::vector<HealthRecord>& records,
                                bool redact_dates) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : records) {
        rows.push_back({r.date.weekday_name(), redacted_or(r.date, redact_dates),
                        format_optional(r.resting_hr, 1),
                        format_optional(r.hrv_rmssd, 0),
                        format_optional(r.respiratory_rate, 0)});
    }
    return render_aligned_table({"Day of the week", "Date", "Resting Heart Rate (bpm)",
                                 "HRV RMSSD (ms)", "Respiratory Rate (breaths/minute)"},
                                rows);
}

std::string render_health_aggregates(const features::HealthSummary& summary) {
    auto block = [](const std::optional<features::HealthMetricSummary>& m,
                    const char* name, const char* unit, int sd_decimals) {
        std::string out;
        out += std::string("Mean ") + name + ": " +
               (m ? format_int(m->mean) : "NaN") + " " + unit + "\n";
        out += std::string("Standard deviation ") + name + ": " +
               (m ? format_fixed(m->sd, sd_decimals) : "NaN") + " " + unit + "\n";
        out += std::string(name) + " Z-score: " +
               (m && m->z_today ? format_fixed(*m->z_today, 1) : "NaN") + "\n";
        return out;
    };
    auto range = [](const std::optional<features::HealthMetricSummary>& m,
                    const char* name, const char* unit) {
        std::string lo = m && m->week_min ? format_int(*m->week_min) : "NaN";
        std::string hi = m && m->week_max ? format_int(*m->week_max) : "NaN";
        return std::string(name) + " range: " + lo + " to " + hi + " " + unit + "\n";
    };
    std::string out;
    out += block(summary.resting_hr, "Resting Heart Rate", "bpm", 0);
    out += block(summary.hrv_rmssd, "HRV RMSSD", "ms", 0);
    out += block(summary.respiratory_rate, "Respiratory Rate", "breaths/minute", 2);
    out += "Past week:\n";
    out += range(summary.resting_hr, "Resting Heart Rate", "bpm");
    out += range(summary.hrv_rmssd, "HRV RMSSD", "ms");
    out += range(summary.respiratory_rate, "Respiratory Rate", "breaths/min");
    return out;
}

namespace {

template <typename Record>
std::vector<Record> trailing_days(const std::vector<Record>& records, Date as_of,
                                  int days) {
    std::vector<Record> out;
    for (const auto& r : records) {
        if (r.date <= as_of && as_of - r.date < days) out.push_back(r);
    }
    return out;
}

void require_participant(const CaseContext& ctx) {
    if (!ctx.participant) throw ValueError("case context has no participant");
}

}  // namespace

std::string render_table(const std::string& kind, const CaseContext& ctx) {
    require_participant(ctx);
    const ParticipantData& p = *ctx.participant;
    if (kind == "activity_daily") {
        return render_activity_table(trailing_days(p.activity, ctx.as_of, 30),
                                     ctx.redact_dates);
    }
    if (kind == "activity_aggregates") {
        auto load = features::load_summary(p.activity, ctx.as_of);
        return render_activity_aggregates(load, trailing_days(p.exercises, ctx.as_of, 30),
                                          ctx.redact_dates);
    }
    if (kind == "sleep_logs") {
        return render_sleep_logs_table(trailing_days(p.sleep, ctx.as_of, 29),
                                       ctx.redact_dates);
    }
    if (kind == "sleep_summary") {
        auto summary = features::sleep_summary(trailing_days(p.sleep, ctx.as_of, 29),
                                               ctx.cohort, p.demographics);
        return render_sleep_summary_text(summary);
    }
    if (kind == "fitness_sleep") {
        return render_fitness_sleep_table(trailing_days(p.sleep, ctx.as_of, 30),
                                          ctx.redact_dates);
    }
    if (kind == "fitness_sleep_aggregates") {
        return render_fitness_sleep_aggregates(trailing_days(p.sleep, ctx.as_of, 30));
    }
    if (kind == "health_month") {
        return render_health_table(trailing_days(p.health, ctx.as_of, 30),
                                   ctx.redact_dates);
    }
    if (kind == "health_week") {
        return render_health_table(trailing_days(p.health, ctx.as_of, 7),
                                   ctx.redact_dates);
    }
    if (kind == "health_aggregates") {
        return render_health_aggregates(features::health_summary(p.health, ctx.as_of));
    }
    throw UnsupportedKindError("no table kind \"" + kind + "\"");
}

// --- case prompt templates -------------------------------------------------------

namespace {

const char* kSleepInsightsTemplate =
    "You are a sleep medicine expert. You are given the following sleep data.\n"
    "The user is <gender>, <age> years old.\n"
    "Sleep logs:\n"
    "<sleep_logs_table>\n"
    "\n"
    "Sleep Summary:\n"
    "<sleep_summary>\n"
    "\n"
    "List the most important insights. Identify all of the patterns of data that are "
    "likely out of the preferred range. Make sure to consider various sleep health "
    "dimensions: Routine, Sleep Quality, Alertness, Timing, Efficiency, and Duration. "
    "Add a heading for each dimension. Optionally (only do this if extremely important) "
    "add a heading called Other for anything else that doesn't fit the above "
    "categories. For Routine, consider the average bedtime, wake time, midsleep point "
    "and standard deviations of these, focus on the consistency of the routine, not "
    "timing. For Sleep Quality, consider light sleep duration, deep sleep duration, REM "
    "sleep duration, sleep score, restlessness score, time to quality sleep, and wake "
    "time after sleep onset. For Alertness, consider the number of naps and nap length. "
    "For Timing, consider midsleep point, bedtime, wake time, make any comments on "
    "weekend vs. workday. For Efficiency, consider sleep efficiency, wake time after "
    "sleep onset, and time to quality sleep, describe how they compare to similar "
    "users. For Duration, consider average sleep duration, weekend vs. workday sleep "
    "durations and standard deviations, describe how they compare to similar users. "
    "When determining whether a metric is normal or abnormal, always provide the "
    "corresponding percentile. Avoid generic statements. Avoid incorrect knowledge, "
    "inconsistencies and contradictions. Don't mention \"the user\". Talk like you're "
    "speaking directly to someone. Be concise.\n"
    "# Sleep insights report";

const char* kSleepEtiologyTemplate =
    "You are a sleep medicine expert. You are given the following sleep data.\n"
    "The user is <gender>, <age> years old.\n"
    "Sleep Summary:\n"
    "<sleep_summary>\n"
    "\n"
    "Based on the data, we can get the following insights:\n"
    "<insights_response>\n"
    "What are the underlying causes? Make sure to consider the following causes: "
    "Circadian rhythm, Homeostatic drive, Psychophysiologic hyperarousal, and Extrinsic "
    "factors. Order the causes from most to least relevant. Identify the likelihood of "
    "the causes (e.g. unlikely, possible, very likely). Cite relevant data and "
    "insights, for example, \"consistently low sleep efficiency despite normal sleep "
    "durations suggests low homeostatic drive\". Avoid diagnosing health conditions. "
    "Avoid providing recommendations. Avoid generic statements. Avoid incorrect "
    "knowledge, inconsistencies and contradictions. Don't mention \"the user\". Talk "
    "like you're speaking directly to someone. Be concise.\n"
    "# Causes report";

const char* kSleepRecommendationsTemplate =
    "You are a sleep medicine expert. You are given the following sleep data.\n"
    "The user is <gender>, <age> years old.\n"
    "Sleep Summary:\n"
    "<sleep_summary>\n"
    "\n"
    "Based on the data, we can get the following insights:\n"
    "<insights_response>\n"
    "Causes:\n"
    "<etiology_response>\n"
    "What recommendation(s) can you provide to help this user improve their sleep? Tie "
    "recommendations to the very likely and possible causes, for example, "
    "\"Recommendations to address Circadian rhythm\". Tie recommendations to user's "
    "sleep data such as average bedtime, average wake time, and number of naps, and "
    "recommend a goal bedtime and wake time based on their data. The recommendations "
    "should be time-bound, for example for the next week or the next month. Write one "
    "short question to ask the user in order to better understand their sleep. Avoid "
    "assumptions regarding the trainee's lifestyle or behavioral choices. Avoid generic "
    "statements. Avoid incorrect knowledge, inconsistencies and contradictions. Don't "
    "mention \"the user\". Talk like you're speaking directly to someone. Be concise.\n"
    "# Recommendations report";

const char* kFitnessDemographicsTemplate =
    "You are a NSCA and ACSM board-certified fitness trainer who specializes in athlete "
    "training performance and recovery.\n"
    "Age: <age>\n"
    "Height: <height>\n"
    "Weight: <weight>\n"
    "BMI: <BMI>\n"
    "Gender: <gender>\n"
    "\n"
    "Are there any special precautions that should be taken into account when "
    "recommending a fitness program to avoid injury? Comment if the trainee has "
    "exceptional demographics (e.g. very old, very high BMI, very low BMI) that require "
    "special considerations. Write a single sentence. Avoid mentioning diseases.";

const char* kFitnessTrainingLoadTemplate =
    "The following section shows some of the trainee's recent activity metrics "
    "including the active zone minutes: Fat burn zone (50% heart rate reserve), Cardio "
    "zone (70% heart rate reserve), and Peak zone (85% heart rate reserve.)\n"
    "Daily activity metrics:\n"
    "\n"
    "<daily_activity_table>\n"
    "Today is <today>.\n"
    "\n"
    "\n"
    "Here are some aggregate statistics for the last 30 days:\n"
    "<activity_aggregates>\n"
    "\n"
    "Analyze the trainee's recent activity metrics, aggregate statistics for the last "
    "30 days, and most recent exercise logs. Assess the following: Training Load "
    "Trends, Intensity, Duration, Frequency, Rest Periods, Acute-Chronic-Workload Ratio "
    "(ACWR), Recent Activity Levels, and Significant Workouts. For Training Load "
    "Trends, consider mean moderate activity per day, mean vigorous activity per day, "
    "comment on balance between moderate and vigorous activity. For Intensity, consider "
    "the most recent exercise logs, assess time in fat-burn zone (moderate intensity), "
    "time in cardio zone (vigorous intensity), time in peak zone (peak intensity), and "
    "state whether the workouts overall reached each zone, consider the daily activity "
    "metrics and assess the TRIMP values. For Duration, consider the most recent "
    "exercise logs and list the lowest and highest duration as a range. For Frequency, "
    "consider the most recent exercise logs, and check on which days of the week there "
    "is a workout. For Rest Periods, consider the daily activity metrics table and see "
    "if some days have very low to zero TRIMP - these are also rest periods, comment on "
    "the number of rest days and which days of the week. For Acute-Chronic-Workload "
    "Ratio, consider acute TRIMP, chronic TRIMP, see if acute TRIMP is higher than "
    "chronic TRIMP and state what it means in terms of training load, consider "
    "Acute-Chronic Workload Ratio (ACWR) and state what it means for recovery. ACWR "
    "values above 1.5 reflect a significant increase in training load and may result in "
    "a higher risk of injury. ACWR values of less than 0.7 indicate that the trainee "
    "has had a significant decrease in training load and may be at risk of detraining. "
    "For Recent Activity Levels and Significant Workouts, consider the most recent "
    "exercise logs and note any recent significant workouts that are related to changes "
    "in the training load metrics, consider the daily activity metrics and highlight "
    "days with highest TRIMP and explain their importance.\n"
    "\n"
    "Note: Remember to avoid readiness assessments, avoid recommendations, avoid making "
    "up data, and stay directly aligned with the provided data.\n"
    "- Base all observations and insights on the provided data.\n"
    "- Avoid generic advice.\n"
    "- Refrain from making up data or giving general advice not rooted in the data.\n"
    "- Avoid assumptions regarding the trainee's lifestyle or behavioral choices.\n"
    "- Do not elaborate on anything not contained within the data tables.\n"
    "- Do not compute or reference complex mathematical calculations like correlation "
    "coefficients.\n"
    "- When explaining the numerical difference, refrain from inventing any "
    "calculations if you are not certain about them.\n"
    "- Use markdown to structure the response.\n"
    "- Use an observation/insight format:\n"
    "* **Observation:** A factual observation from the data.\n"
    "* **Insight:** The implication of the observation in the context of the user's "
    "health.\n"
    "- Group the observation/insights into appropriate sections.\n"
    "# Training load report";

const char* kFitnessSleepTemplate =
    "These are the trainee's recent sleep metrics:\n"
    "\n"
    "<fitness_sleep_table>\n"
    "Today is <today>.\n"
    "\n"
    "Here are some aggregate statistics for the last 30 days:\n"
    "<fitness_sleep_aggregates>\n"
    "\n"
    "- Assess the following aspects of trainee's sleep based on metrics:\n"
    "* Sleep Schedule: bedtimes and wake-times\n"
    "* Sleep Duration: sleep duration metrics\n"
    "* Sleep Quality: sleep score. Excellent sleep score is 90 to 100. Good sleep score "
    "is 80 to 89. Fair sleep score is 60 to 79. Poor sleep score is less than 60.\n"
    "* Today's Sleep: Comment on today's values and compare them to the aggregate "
    "statistics for the last 30 days. Make this comment only if sleep duration Z-score "
    "or sleep score Z-score is less than -2, comment that this indicates significantly "
    "worse recent sleep in the last 3 days compared to the monthly average sleep "
    "duration and low final readiness assessment is recommended . Make this comment "
    "only if sleep duration Z-score or sleep score Z-score is more than 2, comment that "
    "this indicates significantly improved recent sleep in the last 3 days compared to "
    "the monthly average sleep duration.\n"
    "\n"
    "- Base all observations and insights on the provided data.\n"
    "- Avoid generic advice.\n"
    "- Refrain from making up data or giving general advice not rooted in the data.\n"
    "- Avoid assumptions regarding the trainee's lifestyle or behavioral choices.\n"
    "- Do not elaborate on anything not contained within the data tables.\n"
    "- Do not compute or reference complex mathematical calculations like correlation "
    "coefficients.\n"
    "- When explaining the numerical difference, refrain from inventing any "
    "calculations if you are not certain about them.\n"
    "- Be very concise.\n"
    "- Avoid ## Recommendations.\n"
    "- Avoid ## Overall Insights\n"
    "- Use markdown to structure the response.\n"
    "- Use an observation/insight format:\n"
    "* **Observation:** A factual observation from the data.\n"
    "* **Insight:** The implication of the observation in the context of user's "
    "health.\n"
    "- Group the observation/insights into appropriate sections.\n"
    "# Sleep report";

const char* kFitnessHealthTemplate =
    "Here are some of the trainee's daily health metrics for the past month:\n"
    "\n"
    "<health_month_table>\n"
    "\n"
    "Here are some of the trainee's daily health metrics for the past week:\n"
    "\n"
    "<health_week_table>\n"
    "Today is <today>.\n"
    "Here are some aggregate statistics for the last 30 days:\n"
    "<health_aggregates>\n"
    "\n"
    "- Examine patterns for each health metric:\n"
    "* Resting heart rate\n"
    "* Heart rate variability\n"
    "* Respiratory rate\n"
    "- For each metric:\n"
    "* Comment on the general baseline values.\n"
    "* Comment on any trends/changes or consistency/typical/normal range of the metrics "
    "in the latest week compared to the month.\n"
    "* Comment on today's values and compare them to the baseline and recent trends.\n"
    "* Place emphasis on recent values in relation to long-term aggregated data.\n"
    "- The Z-scores are number of standard deviations today's values are from the "
    "trainee's monthly baseline. Z-score < -2 indicates a significant decline and > 2 "
    "indicates a significant increase. Do not refer to the Z-scores directly.\n"
    "\n"
    "Note: The goal is to extract as much actionable information as possible from the "
    "metrics, particularly in the context of understanding someone's recovery state.- "
    "Base all observations and insights on the provided data.\n"
    "- Avoid generic advice.\n"
    "- Refrain from making up data or giving general advice not rooted in the data.\n"
    "- Avoid assumptions regarding the trainee's lifestyle or behavioral choices.\n"
    "- Do not elaborate on anything not contained within the data tables.\n"
    "- Do not compute or reference complex mathematical calculations like correlation "
    "coefficients.\n"
    "- When explaining the numerical difference, refrain from inventing any "
    "calculations if you are not certain about them.\n"
    "- Be concise.\n"
    "- Avoid ## Overall insights.\n"
    "- Use markdown to structure the response.\n"
    "- Use an observation/insight format:\n"
    "* **Observation:** A factual observation from the data.\n"
    "* **Insight:** The implication of the observation in the context of user's "
    "health.\n"
    "- For example use the following template:\n"
    "## Resting Heart Rate\n"
    "**Observation:**\n"
    "**Insight:**\n"
    "## Heart rate variability\n"
    "**Observation:**\n"
    "**Insight:**\n"
    "## Respiratory rate\n"
    "**Observation:**\n"
    "**Insight:**\n"
    "\n"
    "# Health report";

const char* kFitnessAssessmentTemplate =
    "Use the following observations and insights to personalize the response below.\n"
    "<demographics_response>\n"
    "\n"
    "<training_load_response>\n"
    "\n"
    "<sleep_response>\n"
    "\n"
    "<health_response>\n"
    "\n"
    "The trainee has also provided the following qualitative feedback:\n"
    "<subjective_readiness>\n"
    "<muscle_soreness>\n"
    "\n"
    "\n"
    "\n"
    "Based on the above observations and insights, determine the trainee's readiness to "
    "workout today. Use the following template and provide 1-2 bullet points for each "
    "section:\n"
    "**Load**\n"
    "**Sleep**\n"
    "**Health Metrics**\n"
    "**Subjective Readiness + Muscle Soreness**\n"
    "**Readiness Score**\n"
    "* X/5\n"
    "* Explanation:\n"
    "**Fitness Recommendations for Today**\n"
    "**Followup Question**\n"
    "\n"
    "For Load, Sleep, Health Metrics, and Subjective Readiness + Muscle Soreness, "
    "provide a short summary of the most important observations and insights, "
    "referencing any data, that are relevant to trainee's readiness to train today. "
    "Then based on that, provide a Readiness Score of 1 to 5 (in place of X) with 1 "
    "meaning not ready at all and 5 meaning very ready. 3 means the trainee may be "
    "ready with adaptation to their workout. Provide an explanation for why this score "
    "was chosen. Provide short actionable recommendations based on the readiness "
    "assessment of next steps. Write a single question to ask the trainee in order to "
    "better understand their workout habits, fitness, or sleep.\n"
    "# Readiness summary report";

std::string prior_or_throw(const std::map<std::string, std::string>& prior,
                           const char* key) {
    auto it = prior.find(key);
    if (it == prior.end()) {
        throw MissingDependencyError(std::string("missing prior response \"") + key +
                                     "\"");
    }
    return it->second;
}

}  // namespace

PromptDocument render_case_prompt(Vertical vertical, Section section,
                                  const CaseContext& ctx,
                                  const std::map<std::string, std::string>& prior) {
    require_participant(ctx);
    const ParticipantData& p = *ctx.participant;
    const Demographics& demo = p.demographics;

    std::map<std::string, std::string> values;
    values["gender"] = gender_label(demo.gender);
    values["age"] = demo.age_bucket;
    values["today"] = std::string(ctx.as_of.weekday_name()) + " " +
                      redacted_or(ctx.as_of, ctx.redact_dates);

    std::string body;
    if (vertical == Vertical::sleep) {
        switch (section) {
            case Section::insights:
                body = kSleepInsightsTemplate;
                values["sleep_logs_table"] =
                    strip_trailing_newlines(render_table("sleep_logs", ctx));
                break;
            case Section::etiology:
                body = kSleepEtiologyTemplate;
                values["insights_response"] = prior_or_throw(prior, "insights");
                break;
            case Section::recommendations:
                body = kSleepRecommendationsTemplate;
                values["insights_response"] = prior_or_throw(prior, "insights");
                values["etiology_response"] = prior_or_throw(prior, "etiology");
                break;
            default:
                throw ValueError("section does not belong to the sleep vertical");
        }
        values["sleep_summary"] =
            strip_trailing_newlines(render_table("sleep_summary", ctx));
    } else if (vertical == Vertical::fitness) {
        switch (section) {
            case Section::demographics:
                body = kFitnessDemographicsTemplate;
                values["height"] = height_bucket(demo.height_m);
                values["weight"] = weight_bucket(demo.weight_kg);
                values["BMI"] = demo.bmi ? format_fixed(*demo.bmi, 1) : "unknown";
                break;
            case Section::training_load:
                body = kFitnessTrainingLoadTemplate;
                values["daily_activity_table"] =
                    strip_trailing_newlines(render_table("activity_daily", ctx));
                values["activity_aggregates"] =
                    strip_trailing_newlines(render_table("activity_aggregates", ctx));
                break;
            case Section::fitness_sleep:
                body = kFitnessSleepTemplate;
                values["fitness_sleep_table"] =
                    strip_trailing_newlines(render_table("fitness_sleep", ctx));
                values["fitness_sleep_aggregates"] = strip_trailing_newlines(
                    render_table("fitness_sleep_aggregates", ctx));
                break;
            case Section::health:
                body = kFitnessHealthTemplate;
                values["health_month_table"] =
                    strip_trailing_newlines(render_table("health_month", ctx));
                values["health_week_table"] =
                    strip_trailing_newlines(render_table("health_week", ctx));
                values["health_aggregates"] =
                    strip_trailing_newlines(render_table("health_aggregates", ctx));
                break;
            case Section::assessment:
                body = kFitnessAssessmentTemplate;
                values["demographics_response"] = prior_or_throw(prior, "demographics");
                values["training_load_response"] =
                    prior_or_throw(prior, "training_load");
                values["sleep_response"] = prior_or_throw(prior, "sleep");
                values["health_response"] = prior_or_throw(prior, "health");
                values["subjective_readiness"] = ctx.subjective_readiness;
                values["muscle_soreness"] = ctx.muscle_soreness;
                break;
            default:
                throw ValueError("section does not belong to the fitness vertical");
        }
    } else {
        throw ValueError("case prompts exist for the sleep and fitness verticals only");
    }

    PromptDocument doc;
    doc.vertical = vertical;
    doc.section = section;
    doc.body = substitute(std::move(body), values);
    require_resolved(doc.body);
    doc.placeholders_resolved = true;
    return doc;
}

// --- PRO prompt -------------------------------------------------------------------

namespace {

std::string pro_block(const ProPromptInput& input, const std::string& question,
                      const std::string& final_line) {
    std::string out = "Use the information provided to predict \"" + question + "\".\n\n";
    out += "age: " + input.age_bucket + ".\n";
    const auto& features = pro::sensor_features();
    for (std::size_t f = 0; f < features.size(); ++f) {
        out += std::string(features[f].prompt_label) + ": " +
               format_number(input.feature_means[f]) + ".\n";
    }
    out += "\n" + question + final_line;
    return out;
}

}  // namespace

std::string render_pro_prompt(const ProPromptInput& input, const std::string& item,
                              ProMode mode, const std::vector<ProExemplar>& exemplars) {
    if (mode == ProMode::zero_shot && !exemplars.empty()) {
        throw TooManyExemplarsError("zero-shot prompts take no exemplars");
    }
    if (exemplars.size() > 7) {
        throw TooManyExemplarsError("at most seven exemplars fit in context, got " +
                                    std::to_string(exemplars.size()));
    }
    const std::string question = to_lower(item);
    std::string out;
    for (const auto& exemplar : exemplars) {
        out += pro_block(exemplar.input, question,
                         exemplar.label ? ": yes.\n\n" : ": no.\n\n");
    }
    out += pro_block(input, question, ": yes or no?");
    return out;
}

// --- AutoEval prompt ----------------------------------------------------------------

std::string render_autoeval_prompt(const AutoEvalSpec& spec) {
    if (spec.options.size() != 5) {
        throw OptionCountError("exactly 5 Likert options required, got " +
                               std::to_string(spec.options.size()));
    }
    std::string out;
    out += "You are a " + spec.vertical +
           " expert rater assessing the quality of health suggestions made by another "
           "personal health expert using the criteria below.\n";
    out += "\n";
    out += "We use the following definitions when describing evaluation objectives:\n";
    out += "\n";
    out += "- Personalization: The act of taking into account the users data to "
           "describe relationships, causes, or to add/implement domain knowledge.\n";
    out += "- Important Data: Useful for accomplishing the objective.\n";
    out += "- Unimportant Data: Not useful for accomplishing the objective.\n";
    out += "- Common Objective: The goals present across both human instructions and "
           "the models prompt. Goals only performed by the model or only performed by "
           "the human rater are not included.\n";
    out += "\n";
    out += "You are rating the quality of a " + spec.vertical + " \"" +
           spec.section_label + "\" response. The objective is: \"" + spec.objective +
           "\".\n";
    out += "\n";
    out += "The other " + spec.vertical +
           " expert was provided the following user data and information:\n";
    out += "\n```\n" + strip_trailing_newlines(spec.case_data) + "\n```\n";
    out += "\n";
    out += "The response from the other " + spec.vertical + " expert is:\n";
    out += "\n```\n" + strip_trailing_newlines(spec.response) + "\n```\n";
    out += "\n";
    out += "Grade this response using the following criteria and Likert scale "
           "statements:\n";
    out += "\n";
    out += "Criteria: " + spec.principle_criteria + "\n";
    out += "\n";
    for (std::size_t i = 0; i < spec.options.size(); ++i) {
        out += std::to_string(i + 1) + ". " + spec.options[i] + "\n";
    }
    out += "\n";
    out += "State only the numeric score and option text when providing your rating. "
           "The formatting of your response must match that of the Likert scale "
           "statement.";
    return out;
}

std::vector<double> llm_score(LlmClient& client, const std::string& prompt,
                              const std::vector<std::string>& completions) {
    if (completions.empty()) {
        throw ProtocolError("score() requires at least one completion");
    }
    auto values = client.score(prompt, completions);
    for (double v : values) {
        if (!std::isfinite(v)) throw ProtocolError("non-finite log-likelihood");
    }
    return values;
}

}  // namespace wearlab::prompts

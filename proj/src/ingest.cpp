#include "wearlab/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wearlab/errors.hpp"
#include "wearlab/io.hpp"
#include "wearlab/textfmt.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace wearlab::ingest {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || to_lower(cell) == "nan";
}

// Rows of the CSV body with 1-based row numbers for error messages.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::pair<int, std::vector<std::string>>> rows;
};

Table read_table(StreamKind kind, const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) {
        throw SchemaError("empty input for " + stream_kind_label(kind) + " stream");
    }
    const std::string& expected = csv_header(kind);
    std::string got = lines[0];
    if (!got.empty() && got.back() == '\r') got.pop_back();
    if (got != expected) {
        throw SchemaError("header mismatch for " + stream_kind_label(kind) +
                          " stream: expected \"" + expected + "\", got \"" + got + "\"");
    }
    Table t;
    t.columns = split_csv_row(expected);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty() || lines[i] == "\r") continue;
        auto cells = split_csv_row(lines[i]);
        if (cells.size() != t.columns.size()) {
            throw SchemaError("row " + std::to_string(i + 1) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(t.columns.size()));
        }
        t.rows.emplace_back(static_cast<int>(i + 1), std::move(cells));
    }
    return t;
}

std::optional<double> parse_cell_number(const Table& t, int row, std::size_t col,
                                        const std::string& cell) {
    if (is_missing(cell)) return std::nullopt;
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ValueError("non-numeric value \"" + cell + "\" in column " +
                         t.columns[col] + " at row " + std::to_string(row));
    }
    return v;
}

std::optional<double> parse_cell_duration(const Table& t, int row, std::size_t col,
                                          const std::string& cell) {
    if (is_missing(cell)) return std::nullopt;
    try {
        return parse_duration_minutes(cell);
    } catch (const ValueError&) {
        throw ValueError("bad duration \"" + cell + "\" in column " + t.columns[col] +
                         " at row " + std::to_string(row));
    }
}

std::optional<ClockTime> parse_cell_clock(const Table& t, int row, std::size_t col,
                                          const std::string& cell) {
    if (is_missing(cell)) return std::nullopt;
    try {
        return ClockTime::parse(cell);
    } catch (const ValueError&) {
        throw ValueError("bad clock time \"" + cell + "\" in column " + t.columns[col] +
                         " at row " + std::to_string(row));
    }
}

Date parse_cell_date(int row, const std::string& cell) {
    try {
        return Date::parse(cell);
    } catch (const ValueError&) {
        throw ValueError("bad date \"" + cell + "\" at row " + std::to_string(row));
    }
}

void require_non_negative(const std::optional<double>& v, const std::string& what,
                          const std::string& where) {
    if (v && *v < 0) {
        throw InvariantViolation(what + " must be non-negative (" + where + ")");
    }
}

template <typename Record>
void check_sorted_unique_dates(std::vector<Record>& records, const std::string& stream) {
    std::stable_sort(records.begin(), records.end(),
                     [](const Record& a, const Record& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].date == records[i - 1].date) {
            throw DuplicateDateError("duplicate date " + records[i].date.to_string() +
                                     " in " + stream + " stream");
        }
    }
}

const std::string kActivityHeader =
    "day_of_week,date,fat_burn_minutes,cardio_minutes,peak_minutes,trimp,steps";
const std::string kSleepHeader =
    "date,day_of_week,bedtime,wake_time,sleep_duration,light_sleep,deep_sleep,rem_sleep,"
    "awake_minutes,sleep_score,efficiency,waso,nap_duration,nap_count,fall_asleep_time,"
    "heart_rate";
const std::string kHealthHeader = "day_of_week,date,resting_hr,hrv_rmssd,respiratory_rate";
const std::string kExerciseHeader =
    "date,activity_name,duration,avg_hr,fat_burn_minutes,cardio_minutes,peak_minutes,"
    "distance_km,day_trimp";
const std::string kSurveyHeader = "item,option";
const std::string kDemographicsHeader = "age_bucket,gender,height,weight,bmi";

}  // namespace

StreamKind parse_stream_kind(const std::string& text) {
    std::string t = to_lower(text);
    if (t == "activity") return StreamKind::activity;
    if (t == "sleep") return StreamKind::sleep;
    if (t == "health") return StreamKind::health;
    if (t == "exercise") return StreamKind::exercise;
    if (t == "survey") return StreamKind::survey;
    if (t == "demographics") return StreamKind::demographics;
    throw ValueError("unknown stream kind \"" + text + "\"");
}

std::string stream_kind_label(StreamKind kind) {
    switch (kind) {
        case StreamKind::activity: return "activity";
        case StreamKind::sleep: return "sleep";
        case StreamKind::health: return "health";
        case StreamKind::exercise: return "exercise";
        case StreamKind::survey: return "survey";
        case StreamKind::demographics: return "demographics";
    }
    return "?";
}

const std::string& csv_header(StreamKind kind) {
    switch (kind) {
        case StreamKind::activity: return kActivityHeader;
        case StreamKind::sleep: return kSleepHeader;
        case StreamKind::health: return kHealthHeader;
        case StreamKind::exercise: return kExerciseHeader;
        case StreamKind::survey: return kSurveyHeader;
        case StreamKind::demographics: return kDemographicsHeader;
    }
    return kActivityHeader;
}

std::vector<DailyActivityRecord> parse_activity(const std::string& text) {
    Table t = read_table(StreamKind::activity, text);
    std::vector<DailyActivityRecord> out;
    std::vector<Date> seen;
    for (const auto& [row, cells] : t.rows) {
        DailyActivityRecord r;
        r.date = parse_cell_date(row, cells[1]);
        r.fat_burn_minutes = parse_cell_number(t, row, 2, cells[2]);
        r.cardio_minutes = parse_cell_number(t, row, 3, cells[3]);
        r.peak_minutes = parse_cell_number(t, row, 4, cells[4]);
        r.trimp = parse_cell_number(t, row, 5, cells[5]);
        r.steps = parse_cell_number(t, row, 6, cells[6]);
        if (std::find(seen.begin(), seen.end(), r.date) != seen.end()) {
            throw DuplicateDateError("duplicate date " + r.date.to_string() +
                                     " in activity input");
        }
        seen.push_back(r.date);
        out.push_back(r);
    }
    return out;
}

std::vector<SleepRecord> parse_sleep(const std::string& text) {
    Table t = read_table(StreamKind::sleep, text);
    std::vector<SleepRecord> out;
    std::vector<Date> seen;
    for (const auto& [row, cells] : t.rows) {
        SleepRecord r;
        r.date = parse_cell_date(row, cells[0]);
        r.bedtime = parse_cell_clock(t, row, 2, cells[2]);
        r.wake_time = parse_cell_clock(t, row, 3, cells[3]);
        r.sleep_duration = parse_cell_duration(t, row, 4, cells[4]);
        r.light_minutes = parse_cell_duration(t, row, 5, cells[5]);
        r.deep_minutes = parse_cell_duration(t, row, 6, cells[6]);
        r.rem_minutes = parse_cell_duration(t, row, 7, cells[7]);
        r.awake_minutes = parse_cell_duration(t, row, 8, cells[8]);
        r.sleep_score = parse_cell_number(t, row, 9, cells[9]);
        r.efficiency = parse_cell_number(t, row, 10, cells[10]);
        r.waso = parse_cell_duration(t, row, 11, cells[11]);
        r.nap_duration = parse_cell_duration(t, row, 12, cells[12]);
        r.nap_count = parse_cell_number(t, row, 13, cells[13]);
        r.fall_asleep_time = parse_cell_clock(t, row, 14, cells[14]);
        r.heart_rate = parse_cell_number(t, row, 15, cells[15]);
        if (std::find(seen.begin(), seen.end(), r.date) != seen.end()) {
            throw DuplicateDateError("duplicate date " + r.date.to_string() +
                                     " in sleep input");
        }
        seen.push_back(r.date);
        out.push_back(r);
    }
    return out;
}

std::vector<HealthRecord> parse_health(const std::string& text) {
    Table t = read_table(StreamKind::health, text);
    std::vector<HealthRecord> out;
    std::vector<Date> seen;
    for (const auto& [row, cells] : t.rows) {
        HealthRecord r;
        r.date = parse_cell_date(row, cells[1]);
        r.resting_hr = parse_cell_number(t, row, 2, cells[2]);
        r.hrv_rmssd = parse_cell_number(t, row, 3, cells[3]);
        r.respiratory_rate = parse_cell_number(t, row, 4, cells[4]);
        if (std::find(seen.begin(), seen.end(), r.date) != seen.end()) {
            throw DuplicateDateError("duplicate date " + r.date.to_string() +
                                     " in health input");
        }
        seen.push_back(r.date);
        out.push_back(r);
    }
    return out;
}

std::vector<ExerciseLog> parse_exercise(const std::string& text) {
    Table t = read_table(StreamKind::exercise, text);
    std::vector<ExerciseLog> out;
    for (const auto& [row, cells] : t.rows) {
        ExerciseLog r;
        r.date = parse_cell_date(row, cells[0]);
        r.activity_name = cells[1];
        auto duration = parse_cell_number(t, row, 2, cells[2]);
        if (!duration) {
            throw ValueError("exercise duration missing at row " + std::to_string(row));
        }
        r.duration = *duration;
        r.avg_hr = parse_cell_number(t, row, 3, cells[3]);
        r.fat_burn_minutes = parse_cell_number(t, row, 4, cells[4]);
        r.cardio_minutes = parse_cell_number(t, row, 5, cells[5]);
        r.peak_minutes = parse_cell_number(t, row, 6, cells[6]);
        r.distance_km = parse_cell_number(t, row, 7, cells[7]);
        r.day_trimp = parse_cell_number(t, row, 8, cells[8]);
        out.push_back(r);
    }
    return out;
}

Demographics parse_demographics(const std::string& text) {
    Table t = read_table(StreamKind::demographics, text);
    if (t.rows.size() != 1) {
        throw SchemaError("demographics input must have exactly one data row");
    }
    const auto& [row, cells] = t.rows[0];
    Demographics d;
    d.age_bucket = cells[0];
    d.gender = parse_gender(cells[1]);
    d.height_m = parse_cell_number(t, row, 2, cells[2]);
    d.weight_kg = parse_cell_number(t, row, 3, cells[3]);
    d.bmi = parse_cell_number(t, row, 4, cells[4]);
    return d;
}

int severity_from_position(const SurveyItem& item, int raw_position) {
    if (raw_position < 1 || raw_position > 5) {
        throw OutOfRangeError("option index " + std::to_string(raw_position) +
                              " outside 1..5 for item \"" + item.short_name + "\"");
    }
    return item.reverse ? 6 - raw_position : raw_position;
}

SurveyResponseSet parse_survey(const std::string& text, SurveyKind kind) {
    Table t = read_table(StreamKind::survey, text);
    SurveyResponseSet set;
    set.kind = kind;
    for (const auto& [row, cells] : t.rows) {
        const SurveyItem& item = find_survey_item(kind, cells[0]);
        auto opt = parse_cell_number(t, row, 1, cells[1]);
        if (!opt) throw ValueError("missing option at row " + std::to_string(row));
        double raw = *opt;
        if (raw != std::floor(raw)) {
            throw OutOfRangeError("option index must be an integer at row " +
                                  std::to_string(row));
        }
        int severity = severity_from_position(item, static_cast<int>(raw));
        if (set.severities.count(item.short_name)) {
            throw ValueError("item \"" + item.short_name + "\" answered twice");
        }
        set.severities[item.short_name] = severity;
    }
    const auto& items = survey_items(kind);
    if (set.severities.size() != items.size()) {
        for (const auto& item : items) {
            if (!set.severities.count(item.short_name)) {
                throw UnknownItemError("missing answer for item \"" + item.short_name +
                                       "\"");
            }
        }
    }
    return set;
}

namespace {

std::string cell(const std::optional<double>& v) {
    if (!v) return "";
    // Shortest decimal form that parses back to the same double.
    char buf[32];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, *v);
        if (std::strtod(buf, nullptr) == *v) break;
    }
    return buf;
}

std::string cell(const std::optional<ClockTime>& v) { return v ? v->to_string() : ""; }

}  // namespace

std::string serialize_activity(const std::vector<DailyActivityRecord>& records) {
    std::string out = kActivityHeader + "\n";
    for (const auto& r : records) {
        out += std::string(r.date.weekday_name()) + "," + r.date.to_string() + "," +
               cell(r.fat_burn_minutes) + "," + cell(r.cardio_minutes) + "," +
               cell(r.peak_minutes) + "," + cell(r.trimp) + "," + cell(r.steps) + "\n";
    }
    return out;
}

std::string serialize_sleep(const std::vector<SleepRecord>& records) {
    std::string out = kSleepHeader + "\n";
    for (const auto& r : records) {
        out += r.date.to_string() + "," + r.date.weekday_name() + "," + cell(r.bedtime) +
               "," + cell(r.wake_time) + "," + cell(r.sleep_duration) + "," +
               cell(r.light_minutes) + "," + cell(r.deep_minutes) + "," +
               cell(r.rem_minutes) + "," + cell(r.awake_minutes) + "," +
               cell(r.sleep_score) + "," + cell(r.efficiency) + "," + cell(r.waso) +
               "," + cell(r.nap_duration) + "," + cell(r.nap_count) + "," +
               cell(r.fall_asleep_time) + "," + cell(r.heart_rate) + "\n";
    }
    return out;
}

std::string serialize_health(const std::vector<HealthRecord>& records) {
    std::string out = kHealthHeader + "\n";
    for (const auto& r : records) {
        out += std::string(r.date.weekday_name()) + "," + r.date.to_string() + "," +
               cell(r.resting_hr) + "," + cell(r.hrv_rmssd) + "," +
               cell(r.respiratory_rate) + "\n";
    }
    return out;
}

ParticipantData validate_participant(std::string id, Demographics demographics,
                                     std::vector<DailyActivityRecord> activity,
                                     std::vector<SleepRecord> sleep,
                                     std::vector<HealthRecord> health,
                                     std::vector<ExerciseLog> exercises,
                                     std::vector<SurveyResponseSet> surveys) {
    check_sorted_unique_dates(activity, "activity");
    check_sorted_unique_dates(sleep, "sleep");
    check_sorted_unique_dates(health, "health");
    // Multiple exercises per day are allowed; sort by date only.
    std::stable_sort(exercises.begin(), exercises.end(),
                     [](const ExerciseLog& a, const ExerciseLog& b) {
                         return a.date < b.date;
                     });

    for (const auto& r : activity) {
        const std::string where = "activity " + r.date.to_string();
        require_non_negative(r.fat_burn_minutes, "fat_burn_minutes", where);
        require_non_negative(r.cardio_minutes, "cardio_minutes", where);
        require_non_negative(r.peak_minutes, "peak_minutes", where);
        require_non_negative(r.trimp, "trimp", where);
        require_non_negative(r.steps, "steps", where);
    }
    for (const auto& r : sleep) {
        const std::string where = "sleep " + r.date.to_string();
        if (r.sleep_score && (*r.sleep_score < 0 || *r.sleep_score > 100)) {
            throw InvariantViolation("sleep_score outside [0, 100] (" + where + ")");
        }
        if (r.efficiency && (*r.efficiency < 0 || *r.efficiency > 1)) {
            throw InvariantViolation("efficiency outside [0, 1] (" + where + ")");
        }
        require_non_negative(r.sleep_duration, "sleep_duration", where);
        require_non_negative(r.awake_minutes, "awake_minutes", where);
        require_non_negative(r.waso, "waso", where);
        require_non_negative(r.nap_duration, "nap_duration", where);
        require_non_negative(r.nap_count, "nap_count", where);
        double stages = r.light_minutes.value_or(0) + r.deep_minutes.value_or(0) +
                        r.rem_minutes.value_or(0);
        if (r.sleep_duration &&
            stages > *r.sleep_duration + r.awake_minutes.value_or(0) + 1e-9) {
            throw InvariantViolation(
                "stage minutes exceed sleep_duration + awake_minutes (" + where + ")");
        }
    }
    for (const auto& r : health) {
        const std::string where = "health " + r.date.to_string();
        auto positive = [&](const std::optional<double>& v, const char* what) {
            if (v && *v <= 0) {
                throw InvariantViolation(std::string(what) + " must be positive (" +
                                         where + "); encode missing explicitly");
            }
        };
        positive(r.resting_hr, "resting_hr");
        positive(r.hrv_rmssd, "hrv_rmssd");
        positive(r.respiratory_rate, "respiratory_rate");
    }
    for (const auto& r : exercises) {
        const std::string where = "exercise " + r.date.to_string();
        if (r.duration <= 0) {
            throw InvariantViolation("exercise duration must be > 0 (" + where + ")");
        }
        require_non_negative(r.fat_burn_minutes, "fat_burn_minutes", where);
        require_non_negative(r.cardio_minutes, "cardio_minutes", where);
        require_non_negative(r.peak_minutes, "peak_minutes", where);
    }
    if (demographics.bmi && demographics.height_m && demographics.weight_kg) {
        double derived = *demographics.weight_kg /
                         (*demographics.height_m * *demographics.height_m);
        if (std::abs(derived - *demographics.bmi) > 0.5) {
            throw InvariantViolation("bmi " + format_fixed(*demographics.bmi, 1) +
                                     " inconsistent with height/weight (expected " +
                                     format_fixed(derived, 1) + ")");
        }
    }
    for (const auto& s : surveys) {
        for (const auto& [name, severity] : s.severities) {
            find_survey_item(s.kind, name);
            if (severity < 1 || severity > 5) {
                throw InvariantViolation("severity outside 1..5 for item \"" + name +
                                         "\"");
            }
        }
    }

    ParticipantData p;
    p.id = std::move(id);
    p.demographics = std::move(demographics);
    p.activity = std::move(activity);
    p.sleep = std::move(sleep);
    p.health = std::move(health);
    p.exercises = std::move(exercises);
    p.surveys = std::move(surveys);
    return p;
}

namespace {

json opt_to_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

json opt_to_json(const std::optional<ClockTime>& v) {
    return v ? json(v->to_string()) : json(nullptr);
}

std::optional<double> opt_number(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

std::optional<ClockTime> opt_clock(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return ClockTime::parse(j.at(key).get<std::string>());
}

}  // namespace

std::string participant_to_json(const ParticipantData& p) {
    json doc;
    doc["id"] = p.id;
    json demo;
    demo["age_bucket"] = p.demographics.age_bucket;
    demo["gender"] = to_lower(gender_label(p.demographics.gender));
    demo["height"] = opt_to_json(p.demographics.height_m);
    demo["weight"] = opt_to_json(p.demographics.weight_kg);
    demo["bmi"] = opt_to_json(p.demographics.bmi);
    doc["demographics"] = demo;

    json activity = json::array();
    for (const auto& r : p.activity) {
        json row;
        row["date"] = r.date.to_string();
        row["fat_burn_minutes"] = opt_to_json(r.fat_burn_minutes);
        row["cardio_minutes"] = opt_to_json(r.cardio_minutes);
        row["peak_minutes"] = opt_to_json(r.peak_minutes);
        row["trimp"] = opt_to_json(r.trimp);
        row["steps"] = opt_to_json(r.steps);
        activity.push_back(row);
    }
    doc["activity"] = activity;

    json sleep = json::array();
    for (const auto& r : p.sleep) {
        json row;
        row["date"] = r.date.to_string();
        row["bedtime"] = opt_to_json(r.bedtime);
        row["wake_time"] = opt_to_json(r.wake_time);
        row["sleep_duration"] = opt_to_json(r.sleep_duration);
        row["light_minutes"] = opt_to_json(r.light_minutes);
        row["deep_minutes"] = opt_to_json(r.deep_minutes);
        row["rem_minutes"] = opt_to_json(r.rem_minutes);
        row["awake_minutes"] = opt_to_json(r.awake_minutes);
        row["sleep_score"] = opt_to_json(r.sleep_score);
        row["efficiency"] = opt_to_json(r.efficiency);
        row["waso"] = opt_to_json(r.waso);
        row["nap_duration"] = opt_to_json(r.nap_duration);
        row["nap_count"] = opt_to_json(r.nap_count);
        row["fall_asleep_time"] = opt_to_json(r.fall_asleep_time);
        row["heart_rate"] = opt_to_json(r.heart_rate);
        sleep.push_back(row);
    }
    doc["sleep"] = sleep;

    json health = json::array();
    for (const auto& r : p.health) {
        json row;
        row["date"] = r.date.to_string();
        row["resting_hr"] = opt_to_json(r.resting_hr);
        row["hrv_rmssd"] = opt_to_json(r.hrv_rmssd);
        row["respiratory_rate"] = opt_to_json(r.respiratory_rate);
        health.push_back(row);
    }
    doc["health"] = health;

    json exercises = json::array();
    for (const auto& r : p.exercises) {
        json row;
        row["date"] = r.date.to_string();
        row["activity_name"] = r.activity_name;
        row["duration"] = r.duration;
        row["avg_hr"] = opt_to_json(r.avg_hr);
        row["fat_burn_minutes"] = opt_to_json(r.fat_burn_minutes);
        row["cardio_minutes"] = opt_to_json(r.cardio_minutes);
        row["peak_minutes"] = opt_to_json(r.peak_minutes);
        row["distance_km"] = opt_to_json(r.distance_km);
        row["day_trimp"] = opt_to_json(r.day_trimp);
        exercises.push_back(row);
    }
    doc["exercises"] = exercises;

    json surveys = json::array();
    for (const auto& s : p.surveys) {
        json row;
        row["kind"] = survey_kind_label(s.kind);
        json items;
        for (const auto& [name, severity] : s.severities) items[name] = severity;
        row["items"] = items;
        surveys.push_back(row);
    }
    doc["surveys"] = surveys;

    return doc.dump(2) + "\n";
}

ParticipantData participant_from_json(const std::string& json_text) {
    json doc = json::parse(json_text);

    Demographics demo;
    const json& jd = doc.at("demographics");
    demo.age_bucket = jd.at("age_bucket").get<std::string>();
    demo.gender = parse_gender(jd.at("gender").get<std::string>());
    demo.height_m = opt_number(jd, "height");
    demo.weight_kg = opt_number(jd, "weight");
    demo.bmi = opt_number(jd, "bmi");

    std::vector<DailyActivityRecord> activity;
    for (const auto& row : doc.at("activity")) {
        DailyActivityRecord r;
        r.date = Date::parse(row.at("date").get<std::string>());
        r.fat_burn_minutes = opt_number(row, "fat_burn_minutes");
        r.cardio_minutes = opt_number(row, "cardio_minutes");
        r.peak_minutes = opt_number(row, "peak_minutes");
        r.trimp = opt_number(row, "trimp");
        r.steps = opt_number(row, "steps");
        activity.push_back(r);
    }

    std::vector<SleepRecord> sleep;
    for (const auto& row : doc.at("sleep")) {
        SleepRecord r;
        r.date = Date::parse(row.at("date").get<std::string>());
        r.bedtime = opt_clock(row, "bedtime");
        r.wake_time = opt_clock(row, "wake_time");
        r.sleep_duration = opt_number(row, "sleep_duration");
        r.light_minutes = opt_number(row, "light_minutes");
        r.deep_minutes = opt_number(row, "deep_minutes");
        r.rem_minutes = opt_number(row, "rem_minutes");
        r.awake_minutes = opt_number(row, "awake_minutes");
        r.sleep_score = opt_number(row, "sleep_score");
        r.efficiency = opt_number(row, "efficiency");
        r.waso = opt_number(row, "waso");
        r.nap_duration = opt_number(row, "nap_duration");
        r.nap_count = opt_number(row, "nap_count");
        r.fall_asleep_time = opt_clock(row, "fall_asleep_time");
        r.heart_rate = opt_number(row, "heart_rate");
        sleep.push_back(r);
    }

    std::vector<HealthRecord> health;
    for (const auto& row : doc.at("health")) {
        HealthRecord r;
        r.date = Date::parse(row.at("date").get<std::string>());
        r.resting_hr = opt_number(row, "resting_hr");
        r.hrv_rmssd = opt_number(row, "hrv_rmssd");
        r.respiratory_rate = opt_number(row, "respiratory_rate");
        health.push_back(r);
    }

    std::vector<ExerciseLog> exercises;
    for (const auto& row : doc.at("exercises")) {
        ExerciseLog r;
        r.date = Date::parse(row.at("date").get<std::string>());
        r.activity_name = row.at("activity_name").get<std::string>();
        r.duration = row.at("duration").get<double>();
        r.avg_hr = opt_number(row, "avg_hr");
        r.fat_burn_minutes = opt_number(row, "fat_burn_minutes");
        r.cardio_minutes = opt_number(row, "cardio_minutes");
        r.peak_minutes = opt_number(row, "peak_minutes");
        r.distance_km = opt_number(row, "distance_km");
        r.day_trimp = opt_number(row, "day_trimp");
        exercises.push_back(r);
    }

    std::vector<SurveyResponseSet> surveys;
    for (const auto& row : doc.at("surveys")) {
        SurveyResponseSet s;
        s.kind = parse_survey_kind(row.at("kind").get<std::string>());
        for (const auto& [name, severity] : row.at("items").items()) {
            s.severities[name] = severity.get<int>();
        }
        surveys.push_back(s);
    }

    return validate_participant(doc.at("id").get<std::string>(), std::move(demo),
                                std::move(activity), std::move(sleep), std::move(health),
                                std::move(exercises), std::move(surveys));
}

void save_participant(const std::string& store_dir, const ParticipantData& p) {
    fs::create_directories(store_dir);
    atomic_write_file(fs::path(store_dir) / (p.id + ".json"), participant_to_json(p));
}

ParticipantData load_participant(const std::string& store_dir, const std::string& id) {
    return participant_from_json(read_file(fs::path(store_dir) / (id + ".json")));
}

bool participant_exists(const std::string& store_dir, const std::string& id) {
    return fs::exists(fs::path(store_dir) / (id + ".json"));
}

std::vector<std::string> list_participants(const std::string& store_dir) {
    std::vector<std::string> ids;
    if (!fs::exists(store_dir)) {
        throw IoError("store directory not found: " + store_dir);
    }
    for (const auto& entry : fs::directory_iterator(store_dir)) {
        if (entry.path().extension() == ".json") {
            ids.push_back(entry.path().stem().string());
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace wearlab::ingest

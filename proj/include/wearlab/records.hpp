#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wearlab/calendar.hpp"

namespace wearlab {

struct DailyActivityRecord {
    Date date;
    std::optional<double> fat_burn_minutes;
    std::optional<double> cardio_minutes;
    std::optional<double> peak_minutes;
    std::optional<double> trimp;
    std::optional<double> steps;
};

struct SleepRecord {
    Date date;
    std::optional<ClockTime> bedtime;
    std::optional<ClockTime> wake_time;
    std::optional<double> sleep_duration;   // asleep minutes (excludes awake time)
    std::optional<double> light_minutes;
    std::optional<double> deep_minutes;
    std::optional<double> rem_minutes;
    std::optional<double> awake_minutes;
    std::optional<double> sleep_score;      // 0..100
    std::optional<double> efficiency;       // fraction in [0, 1]
    std::optional<double> waso;             // minutes
    std::optional<double> nap_duration;     // minutes
    std::optional<double> nap_count;
    std::optional<ClockTime> fall_asleep_time;
    std::optional<double> heart_rate;       // bpm
};

struct HealthRecord {
    Date date;
    std::optional<double> resting_hr;
    std::optional<double> hrv_rmssd;
    std::optional<double> respiratory_rate;
};

struct ExerciseLog {
    Date date;
    std::string activity_name;
    double duration = 0.0;  // minutes, > 0
    std::optional<double> avg_hr;
    std::optional<double> fat_burn_minutes;
    std::optional<double> cardio_minutes;
    std::optional<double> peak_minutes;
    std::optional<double> distance_km;
    std::optional<double> day_trimp;
};

enum class Gender { male, female };

std::string gender_label(Gender g);          // "Male" / "Female"
Gender parse_gender(const std::string& text);

struct Demographics {
    std::string age_bucket;  // e.g. "[40-45]"
    Gender gender = Gender::male;
    std::optional<double> height_m;
    std::optional<double> weight_kg;
    std::optional<double> bmi;
};

enum class SurveyKind { disturbance, impairment };

std::string survey_kind_label(SurveyKind k);
SurveyKind parse_survey_kind(const std::string& text);

struct SurveyResponseSet {
    SurveyKind kind = SurveyKind::disturbance;
    // item id -> severity value in 1..5, already severity-coded (5 = worst).
    std::map<std::string, int> severities;
};

struct ParticipantData {
    std::string id;
    Demographics demographics;
    std::vector<DailyActivityRecord> activity;
    std::vector<SleepRecord> sleep;
    std::vector<HealthRecord> health;
    std::vector<ExerciseLog> exercises;
    std::vector<SurveyResponseSet> surveys;
};

// The administered survey instruments. `short_name` keys responses and labels,
// `question` is the item text, `reverse` marks items whose printed scale runs
// 5..1 so severity = 6 - raw position.
struct SurveyItem {
    std::string short_name;
    std::string question;
    bool reverse = false;
    // Option wording by printed position 1..5 (left to right).
    std::vector<std::string> options;
};

const std::vector<SurveyItem>& survey_items(SurveyKind kind);
// All 16 item short names, disturbance items first. This is the canonical
// label order for PRO outcomes.
const std::vector<std::string>& all_survey_item_names();
const SurveyItem& find_survey_item(SurveyKind kind, const std::string& short_name);

}  // namespace wearlab

#pragma once

#include <string>
#include <vector>

#include "wearlab/records.hpp"

namespace wearlab::ingest {

// Comma-separated UTF-8 with one fixed header line per stream kind. Empty
// cells and "NaN" (any case) are missing. Durations accept hh:mm or minutes;
// clock times are 24-hour HH:MM.
//
//   activity  day_of_week,date,fat_burn_minutes,cardio_minutes,peak_minutes,trimp,steps
//   sleep     date,day_of_week,bedtime,wake_time,sleep_duration,light_sleep,deep_sleep,
//             rem_sleep,awake_minutes,sleep_score,efficiency,waso,nap_duration,
//             nap_count,fall_asleep_time,heart_rate
//   health    day_of_week,date,resting_hr,hrv_rmssd,respiratory_rate
//   exercise  date,activity_name,duration,avg_hr,fat_burn_minutes,cardio_minutes,
//             peak_minutes,distance_km,day_trimp
//   survey    item,option
//   demographics  age_bucket,gender,height,weight,bmi

enum class StreamKind { activity, sleep, health, exercise, survey, demographics };

StreamKind parse_stream_kind(const std::string& text);
std::string stream_kind_label(StreamKind kind);
const std::string& csv_header(StreamKind kind);

std::vector<DailyActivityRecord> parse_activity(const std::string& text);
std::vector<SleepRecord> parse_sleep(const std::string& text);
std::vector<HealthRecord> parse_health(const std::string& text);
std::vector<ExerciseLog> parse_exercise(const std::string& text);
Demographics parse_demographics(const std::string& text);

// Survey rows carry the raw option index 1..5 as printed on the instrument
// (leftmost option = 1). Reverse-coded items are flipped so severity 5 always
// means the worst outcome.
SurveyResponseSet parse_survey(const std::string& text, SurveyKind kind);

int severity_from_position(const SurveyItem& item, int raw_position);

// Canonical CSV serializations (inverse of the parsers above).
std::string serialize_activity(const std::vector<DailyActivityRecord>& records);
std::string serialize_sleep(const std::vector<SleepRecord>& records);
std::string serialize_health(const std::vector<HealthRecord>& records);

// Sorts streams by date, then enforces the record invariants. Throws
// DuplicateDateError or InvariantViolation.
ParticipantData validate_participant(std::string id, Demographics demographics,
                                     std::vector<DailyActivityRecord> activity,
                                     std::vector<SleepRecord> sleep,
                                     std::vector<HealthRecord> health,
                                     std::vector<ExerciseLog> exercises,
                                     std::vector<SurveyResponseSet> surveys);

// Participant store: one canonical JSON document per participant in a
// directory, named "<id>.json".
std::string participant_to_json(const ParticipantData& p);
ParticipantData participant_from_json(const std::string& json_text);

void save_participant(const std::string& store_dir, const ParticipantData& p);
ParticipantData load_participant(const std::string& store_dir, const std::string& id);
bool participant_exists(const std::string& store_dir, const std::string& id);
std::vector<std::string> list_participants(const std::string& store_dir);

}  // namespace wearlab::ingest

#pragma once

// Deterministic fixture data shared by the prompt tests and the acceptance
// suite. The activity, exercise and health series reproduce the numbers shown
// in the reference tables (acute TRIMP 346, chronic 235, ACWR 1.5, resting HR
// runs with NaN gaps); the sleep series is a fixed synthetic pattern.

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "wearlab/features.hpp"
#include "wearlab/ingest.hpp"
#include "wearlab/records.hpp"

namespace wearlab::fixtures {

inline Date fixture_as_of() { return Date(2024, 2, 1); }  // a Thursday

// Thirty days ending 2024-02-01. Trailing-7 total 346 (max 124), trailing-28
// total 940, TRIMP min 0; fat-burn mean 12.3, cardio+peak mean 12.7.
inline std::vector<DailyActivityRecord> fixture_activity() {
    const std::vector<double> trimp = {15, 20, 0,  62, 62, 6,  20, 1,  7,  12,
                                       0,  45, 30, 28, 35, 40, 22, 50, 38, 27,
                                       31, 48, 30, 124, 47, 53, 62, 30, 20, 10};
    std::vector<DailyActivityRecord> out;
    const Date start = fixture_as_of() - 29;
    for (std::size_t i = 0; i < trimp.size(); ++i) {
        DailyActivityRecord r;
        r.date = start + static_cast<std::int64_t>(i);
        r.fat_burn_minutes = i == 29 ? 21.0 : 12.0;  // sum 369 -> mean 12.3
        r.cardio_minutes = 10.0;                     // sum 300
        r.peak_minutes = i < 27 ? 3.0 : 0.0;         // sum 81 -> vigorous mean 12.7
        r.trimp = trimp[i];
        r.steps = 6000.0 + 137.0 * static_cast<double>(i * 41 % 60);
        out.push_back(r);
    }
    return out;
}

// The three exercise blocks of the aggregated-activity table.
inline std::vector<ExerciseLog> fixture_exercises() {
    std::vector<ExerciseLog> out;
    ExerciseLog walk1;
    walk1.date = Date(2024, 1, 24);  // a Wednesday
    walk1.activity_name = "Walk";
    walk1.duration = 17;
    walk1.avg_hr = 98;
    walk1.fat_burn_minutes = 18;
    walk1.cardio_minutes = 0;
    walk1.peak_minutes = 0;
    walk1.distance_km = 0;
    walk1.day_trimp = 47.0;
    out.push_back(walk1);

    ExerciseLog walk2 = walk1;
    walk2.duration = 11;
    walk2.avg_hr = 88;
    walk2.fat_burn_minutes = 8;
    out.push_back(walk2);

    ExerciseLog treadmill;
    treadmill.date = Date(2024, 1, 25);  // the following Thursday
    treadmill.activity_name = "Treadmill";
    treadmill.duration = 46;
    treadmill.avg_hr = 140;
    treadmill.fat_burn_minutes = 7;
    treadmill.cardio_minutes = 13;
    treadmill.peak_minutes = 14;
    treadmill.distance_km = 5;
    treadmill.day_trimp = 53.0;
    out.push_back(treadmill);
    return out;
}

// Thirty health rows ending 2024-02-01 with the reference resting-HR run and
// NaN gaps in HRV / respiratory rate.
inline std::vector<HealthRecord> fixture_health() {
    const std::vector<double> rhr = {53, 54, 55, 56, 57, 56, 56, 58, 61, 64,
                                     62, 63, 62, 60, 61, 59, 57, 58, 58, 60,
                                     58, 56, 54, 56, 57, 60, 62, 65, 67, 66};
    const std::vector<double> hrv = {27, 22, 27, 23, 23, 31, 19, -1, 17, 13,
                                     23, 16, 26, 28, 17, 30, 35, 25, 20, 16,
                                     29, 40, 41, 28, -1, 17, 15, 19, 16, 18};
    const std::vector<double> rr = {14, 13, 13, 15, 14, 14, 15, -1, 15, 15,
                                    15, 15, 14, 14, 15, 14, 15, 16, 16, 15,
                                    14, 13, 14, 15, -1, 16, 15, 16, 16, 16};
    std::vector<HealthRecord> out;
    const Date start = fixture_as_of() - 29;
    for (std::size_t i = 0; i < rhr.size(); ++i) {
        HealthRecord r;
        r.date = start + static_cast<std::int64_t>(i);
        r.resting_hr = rhr[i];
        if (hrv[i] > 0) r.hrv_rmssd = hrv[i];
        if (rr[i] > 0) r.respiratory_rate = rr[i];
        out.push_back(r);
    }
    return out;
}

// Twenty-nine synthetic nights ending 2024-02-01, fixed index pattern.
inline std::vector<SleepRecord> fixture_sleep(int shift = 0) {
    std::vector<SleepRecord> out;
    const Date start = fixture_as_of() - 28;
    for (int i = 0; i < 29; ++i) {
        SleepRecord r;
        r.date = start + i;
        double bed = std::fmod(22 * 60.0 + 40.0 + ((i + shift) * 37 % 120), 1440.0);
        r.bedtime = ClockTime(bed);
        r.fall_asleep_time = ClockTime(std::fmod(bed + 12.0, 1440.0));
        double duration = 360.0 + ((i + shift) * 17 % 120);
        double awake = 25.0 + (i % 20);
        r.sleep_duration = duration;
        r.awake_minutes = awake;
        r.light_minutes = std::round(duration * 0.55);
        r.deep_minutes = std::round(duration * 0.18);
        r.rem_minutes = std::round(duration * 0.22);
        r.sleep_score = 60.0 + ((i + shift) * 13 % 36);
        r.efficiency = 0.82 + (i % 15) * 0.01;
        r.waso = 5.0 + (i % 18);
        r.nap_count = (i % 7 == 0) ? 1.0 : 0.0;
        r.nap_duration = (i % 7 == 0) ? 45.0 : 0.0;
        r.heart_rate = 57.0 + (i % 4);
        double wake = std::fmod(r.fall_asleep_time->minutes() + duration + awake, 1440.0);
        r.wake_time = ClockTime(wake);
        out.push_back(r);
    }
    return out;
}

inline Demographics fixture_demographics() {
    Demographics demo;
    demo.age_bucket = "[40-45]";
    demo.gender = Gender::male;
    demo.height_m = 1.82;
    demo.weight_kg = 81.0;
    demo.bmi = 24.5;
    return demo;
}

inline ParticipantData fixture_participant() {
    std::vector<SurveyResponseSet> surveys;
    for (auto kind : {SurveyKind::disturbance, SurveyKind::impairment}) {
        SurveyResponseSet set;
        set.kind = kind;
        int i = 0;
        for (const auto& item : survey_items(kind)) {
            set.severities[item.short_name] = 1 + (i++ % 5);
        }
        surveys.push_back(set);
    }
    return ingest::validate_participant("FIX01", fixture_demographics(),
                                        fixture_activity(), fixture_sleep(),
                                        fixture_health(), fixture_exercises(), surveys);
}

// Six shifted cohort members sharing the fixture's demographic group, so
// percentile lines in the sleep summary are populated and stable.
inline features::CohortReference fixture_cohort() {
    std::vector<std::pair<Demographics, std::vector<SleepRecord>>> members;
    members.emplace_back(fixture_demographics(), fixture_sleep(0));
    for (int shift : {3, 11, 19, 27, 45, 60}) {
        members.emplace_back(fixture_demographics(), fixture_sleep(shift));
    }
    return features::build_cohort_reference(members);
}

// The nine-row sleep-logs excerpt; values follow the reference table, dates
// made distinct.
inline std::vector<SleepRecord> fixture_sleep_logs_excerpt() {
    struct Row {
        const char* score;
        const char* light;
        const char* rem;
        const char* deep;
        const char* duration;
        const char* fall_asleep;
        const char* waso;
        double eff;
        double hr;
        double nap_dur;
        double naps;
        const char* wake;
    };
    const Row rows[] = {
        {"71", "04:24", "00:59", "00:40", "06:04", "00:05", "00:04", 0.88, 58, 0, 0, "06:13"},
        {"72", "03:13", "01:07", "01:03", "05:24", "00:38", "00:08", 0.85, 58, 88, 1, "06:10"},
        {"87", "05:08", "01:51", "02:00", "09:00", "03:02", "00:10", 0.87, 58, 0, 0, "12:12"},
        {"83", "05:16", "01:49", "01:41", "08:47", "03:54", "00:15", 0.86, 58, 0, 0, "12:56"},
        {"68", "04:21", "00:50", "00:42", "05:54", "00:07", "00:08", 0.85, 58, 0, 0, "06:09"},
        {"64", "01:29", "00:27", "00:51", "02:48", "16:10", "00:05", 0.85, 58, 0, 0, "19:03"},
        {"70", "01:18", "00:43", "00:50", "02:52", "03:42", "00:02", 0.87, 59, 0, 0, "06:36"},
        {"72", "03:19", "01:14", "01:02", "05:36", "00:17", "00:09", 0.83, 58, 0, 0, "06:02"},
        {"71", "01:41", "00:43", "00:35", "03:00", "16:22", "00:00", 0.86, 58, 0, 0, "19:22"},
    };
    std::vector<SleepRecord> out;
    Date date = Date(2024, 1, 4);
    for (const auto& row : rows) {
        SleepRecord r;
        r.date = date;
        date = date + 1;
        r.sleep_score = std::atof(row.score);
        r.light_minutes = parse_duration_minutes(row.light);
        r.rem_minutes = parse_duration_minutes(row.rem);
        r.deep_minutes = parse_duration_minutes(row.deep);
        r.sleep_duration = parse_duration_minutes(row.duration);
        r.fall_asleep_time = ClockTime::parse(row.fall_asleep);
        r.waso = parse_duration_minutes(row.waso);
        r.efficiency = row.eff;
        r.heart_rate = row.hr;
        r.nap_duration = row.nap_dur;
        r.nap_count = row.naps;
        r.wake_time = ClockTime::parse(row.wake);
        r.awake_minutes = 30.0;
        r.bedtime = ClockTime(std::fmod(r.fall_asleep_time->minutes() + 1440.0 - 10.0, 1440.0));
        out.push_back(r);
    }
    return out;
}

// The seven-row daily-activity excerpt from the reference table.
inline std::vector<DailyActivityRecord> fixture_activity_excerpt() {
    const double data[7][5] = {
        {15, 27, 0, 62, 16200}, {19, 23, 1, 62, 9900}, {6, 0, 0, 6, 5950},
        {20, 0, 0, 20, 11210},  {1, 0, 0, 1, 8160},    {7, 0, 0, 7, 13120},
        {12, 0, 0, 12, 15490},
    };
    std::vector<DailyActivityRecord> out;
    Date date = Date(2024, 1, 3);  // a Wednesday
    for (const auto& row : data) {
        DailyActivityRecord r;
        r.date = date;
        date = date + 1;
        r.fat_burn_minutes = row[0];
        r.cardio_minutes = row[1];
        r.peak_minutes = row[2];
        r.trimp = row[3];
        r.steps = row[4];
        out.push_back(r);
    }
    return out;
}

inline std::string golden_dir() {
    const char* dir = std::getenv("WEARLAB_GOLDEN_DIR");
    return dir ? dir : "tests/golden";
}

}  // namespace wearlab::fixtures

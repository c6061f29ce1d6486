#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace wearlab {

// Proleptic Gregorian calendar day. Stored as days since 1970-01-01 so window
// arithmetic is plain integer math.
class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    static Date from_days(std::int64_t days) {
        Date d;
        d.days_ = days;
        return d;
    }
    // Parses "YYYY-MM-DD". Throws ValueError on malformed input.
    static Date parse(const std::string& text);

    std::int64_t days_since_epoch() const { return days_; }

    int year() const;
    int month() const;
    int day() const;

    // 0 = Monday ... 6 = Sunday.
    int weekday_index() const;
    // "Monday" ... "Sunday".
    const char* weekday_name() const;
    bool is_weekend() const { return weekday_index() >= 5; }

    std::string to_string() const;  // "YYYY-MM-DD"

    Date operator+(std::int64_t n) const { return from_days(days_ + n); }
    Date operator-(std::int64_t n) const { return from_days(days_ - n); }
    std::int64_t operator-(const Date& other) const { return days_ - other.days_; }
    auto operator<=>(const Date&) const = default;

private:
    std::int64_t days_ = 0;
};

// Time of day in minutes after midnight, in [0, 1440).
class ClockTime {
public:
    ClockTime() = default;
    explicit ClockTime(double minutes);

    // Parses 24-hour "HH:MM". Throws ValueError on malformed input or values
    // outside [00:00, 24:00).
    static ClockTime parse(const std::string& text);

    double minutes() const { return minutes_; }
    std::string to_string() const;  // "HH:MM", rounded to the minute

    // Minutes on a noon-to-noon axis: 12:00 -> 0, 23:00 -> 660, 06:00 -> 1080.
    // Used whenever clock times must be linearly ordered (bedtimes that cross
    // midnight sort evening < night < morning).
    double noon_scale() const;
    static ClockTime from_noon_scale(double v);

    auto operator<=>(const ClockTime&) const = default;

private:
    double minutes_ = 0.0;
};

// Parses either a plain minute count ("94" / "94.5") or an hh:mm duration
// ("01:34"). Sleep-log durations are printed hh:mm in the source tables and
// are converted to minutes at parse time.
double parse_duration_minutes(const std::string& text);

// "hh:mm" rendering of a duration in minutes (rounded to whole minutes).
std::string format_duration_hhmm(double minutes);

}  // namespace wearlab

#include "wearlab/calendar.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "wearlab/errors.hpp"

namespace wearlab {

namespace {

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

bool in_month_range(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static const int kLen[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int len = kLen[m - 1];
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) len = 29;
    return d <= len;
}

}  // namespace

Date::Date(int year, int month, int day) {
    if (!in_month_range(year, month, day)) {
        throw ValueError("invalid calendar day " + std::to_string(year) + "-" +
                         std::to_string(month) + "-" + std::to_string(day));
    }
    days_ = days_from_civil(year, month, day);
}

Date Date::parse(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &extra) != 3) {
        throw ValueError("expected date as YYYY-MM-DD, got \"" + text + "\"");
    }
    return Date(y, m, d);
}

int Date::year() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    return y;
}

int Date::month() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    return m;
}

int Date::day() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    return d;
}

int Date::weekday_index() const {
    // 1970-01-01 was a Thursday (index 3).
    std::int64_t w = (days_ + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

const char* Date::weekday_name() const {
    static const char* kNames[] = {"Monday", "Tuesday",  "Wednesday", "Thursday",
                                   "Friday", "Saturday", "Sunday"};
    return kNames[weekday_index()];
}

std::string Date::to_string() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

ClockTime::ClockTime(double minutes) : minutes_(minutes) {
    if (!(minutes >= 0.0 && minutes < 1440.0) || !std::isfinite(minutes)) {
        throw ValueError("clock time out of [00:00, 24:00): " + std::to_string(minutes));
    }
}

ClockTime ClockTime::parse(const std::string& text) {
    int h = 0, m = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d:%d%c", &h, &m, &extra) != 2 || h < 0 || h > 23 ||
        m < 0 || m > 59) {
        throw ValueError("expected clock time as HH:MM, got \"" + text + "\"");
    }
    return ClockTime(h * 60.0 + m);
}

std::string ClockTime::to_string() const {
    long total = std::lround(minutes_);
    total %= 1440;
    if (total < 0) total += 1440;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02ld:%02ld", total / 60, total % 60);
    return buf;
}

double ClockTime::noon_scale() const {
    double v = minutes_ - 720.0;
    if (v < 0) v += 1440.0;
    return v;
}

ClockTime ClockTime::from_noon_scale(double v) {
    double m = v + 720.0;
    while (m >= 1440.0) m -= 1440.0;
    while (m < 0.0) m += 1440.0;
    return ClockTime(m);
}

double parse_duration_minutes(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        int h = 0, m = 0;
        char extra = 0;
        if (std::sscanf(text.c_str(), "%d:%d%c", &h, &m, &extra) != 2 || h < 0 || m < 0 ||
            m > 59) {
            throw ValueError("expected duration as hh:mm or minutes, got \"" + text + "\"");
        }
        return h * 60.0 + m;
    }
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ValueError("expected duration as hh:mm or minutes, got \"" + text + "\"");
    }
    return v;
}

std::string format_duration_hhmm(double minutes) {
    long total = std::lround(minutes);
    if (total < 0) total = 0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02ld:%02ld", total / 60, total % 60);
    return buf;
}

}  // namespace wearlab

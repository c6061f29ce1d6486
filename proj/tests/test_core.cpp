#include <doctest.h>

#include "wearlab/calendar.hpp"
#include "wearlab/errors.hpp"
#include "wearlab/rng.hpp"
#include "wearlab/textfmt.hpp"

using namespace wearlab;

TEST_SUITE_BEGIN("core");

TEST_CASE("date parse and round trip") {
    Date d = Date::parse("2024-01-10");
    CHECK(d.to_string() == "2024-01-10");
    CHECK(d.weekday_name() == std::string("Wednesday"));
    CHECK((d + 3).weekday_name() == std::string("Saturday"));
    CHECK((d + 3).is_weekend());
    CHECK_FALSE(d.is_weekend());
    CHECK(Date::parse("2024-02-29").to_string() == "2024-02-29");
    CHECK_THROWS_AS(Date::parse("2023-02-29"), ValueError);
    CHECK_THROWS_AS(Date::parse("2023-13-01"), ValueError);
    CHECK_THROWS_AS(Date::parse("nonsense"), ValueError);
}

TEST_CASE("date arithmetic") {
    Date a = Date::parse("2024-01-01");
    Date b = Date::parse("2024-02-01");
    CHECK(b - a == 31);
    CHECK((a + 31) == b);
    CHECK(a < b);
}

TEST_CASE("clock time parse and format") {
    ClockTime t = ClockTime::parse("06:13");
    CHECK(t.minutes() == doctest::Approx(373.0));
    CHECK(t.to_string() == "06:13");
    CHECK(ClockTime::parse("00:00").to_string() == "00:00");
    CHECK(ClockTime::parse("23:59").to_string() == "23:59");
    CHECK_THROWS_AS(ClockTime::parse("24:00"), ValueError);
    CHECK_THROWS_AS(ClockTime::parse("7:61"), ValueError);
}

TEST_CASE("noon scale orders bedtimes across midnight") {
    // afternoon < evening < past-midnight < morning
    CHECK(ClockTime::parse("16:10").noon_scale() < ClockTime::parse("23:00").noon_scale());
    CHECK(ClockTime::parse("23:00").noon_scale() < ClockTime::parse("00:26").noon_scale());
    CHECK(ClockTime::parse("00:26").noon_scale() < ClockTime::parse("06:22").noon_scale());
    ClockTime t = ClockTime::parse("21:25");
    CHECK(ClockTime::from_noon_scale(t.noon_scale()).to_string() == "21:25");
}

TEST_CASE("durations parse from hh:mm or minutes") {
    CHECK(parse_duration_minutes("04:24") == doctest::Approx(264.0));
    CHECK(parse_duration_minutes("94") == doctest::Approx(94.0));
    CHECK(parse_duration_minutes("94.5") == doctest::Approx(94.5));
    CHECK(format_duration_hhmm(264) == "04:24");
    CHECK(format_duration_hhmm(33) == "00:33");
    CHECK_THROWS_AS(parse_duration_minutes("x"), ValueError);
}

TEST_CASE("number formats") {
    CHECK(format_fixed(1.4723, 1) == "1.5");
    CHECK(format_fixed(-0.04, 1) == "0.0");
    CHECK(format_int(234.9) == "235");
    CHECK(format_number(0.85) == "0.85");
    CHECK(format_number(6850.0) == "6850.0");
    CHECK(format_number(-274.0) == "-274.0");
    CHECK(format_number(0.41) == "0.41");
    CHECK(format_number(45.32) == "45.32");
    CHECK(format_number(420.8) == "420.8");
    CHECK(format_number(0.0) == "0.0");
    CHECK(ordinal(65) == "65th");
    CHECK(ordinal(92) == "92nd");
    CHECK(ordinal(73) == "73rd");
    CHECK(ordinal(94) == "94th");
    CHECK(ordinal(1) == "1st");
    CHECK(ordinal(11) == "11th");
    CHECK(ordinal(12) == "12th");
    CHECK(ordinal(13) == "13th");
    CHECK(ordinal(21) == "21st");
}

TEST_CASE("aligned table pads columns") {
    std::string out = render_aligned_table({"A", "Bee"}, {{"xx", "y"}, {"1", "22"}});
    CHECK(out == "A   Bee\nxx  y\n1   22\n");
}

TEST_CASE("rng determinism and stream independence") {
    Rng a(42, 0);
    Rng b(42, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(42, 1);
    CHECK(Rng(42, 0).next_u64() != c.next_u64());
    Rng d(7);
    for (int i = 0; i < 1000; ++i) {
        double u = d.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(d.next_below(10) < 10);
    }
}

TEST_CASE("rng normal moments") {
    Rng rng(123);
    double sum = 0.0, sum_sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double z = rng.next_normal();
        sum += z;
        sum_sq += z * z;
    }
    CHECK(sum / n == doctest::Approx(0.0).epsilon(1.0).scale(0.03));
    CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_SUITE_END();

#include "wearlab/records.hpp"

#include "wearlab/errors.hpp"
#include "wearlab/textfmt.hpp"

namespace wearlab {

std::string gender_label(Gender g) { return g == Gender::male ? "Male" : "Female"; }

Gender parse_gender(const std::string& text) {
    std::string t = to_lower(text);
    if (t == "male" || t == "m") return Gender::male;
    if (t == "female" || t == "f") return Gender::female;
    throw ValueError("unknown gender \"" + text + "\"");
}

std::string survey_kind_label(SurveyKind k) {
    return k == SurveyKind::disturbance ? "disturbance" : "impairment";
}

SurveyKind parse_survey_kind(const std::string& text) {
    std::string t = to_lower(text);
    if (t == "disturbance") return SurveyKind::disturbance;
    if (t == "impairment") return SurveyKind::impairment;
    throw ValueError("unknown survey kind \"" + text + "\"");
}

namespace {

const std::vector<std::string> kNotAtAll = {"Not at all", "A little bit", "Somewhat",
                                            "Quite a bit", "Very much"};
const std::vector<std::string> kNotAtAllRev = {"Not at all", "A little bit", "Somewhat",
                                               "Quite a bit", "Very much"};
const std::vector<std::string> kNever = {"Never", "Rarely", "Sometimes", "Often",
                                         "Always"};
const std::vector<std::string> kQuality = {"Very poor", "Poor", "Fair", "Good",
                                           "Very good"};

const std::vector<SurveyItem> kDisturbance = {
    {"Very restless", "In the past 7 days, my sleep was restless.", false, kNotAtAll},
    {"Satisfied", "In the past 7 days, I was satisfied with my sleep.", true,
     kNotAtAllRev},
    {"Refreshed", "In the past 7 days, my sleep was refreshing.", true, kNotAtAllRev},
    {"Trouble falling asleep", "In the past 7 days, I had difficulty falling asleep.",
     false, kNotAtAll},
    {"Trouble staying asleep", "In the past 7 days, I had trouble staying asleep.",
     false, kNever},
    {"Trouble sleeping", "In the past 7 days, I had trouble sleeping.", false, kNever},
    {"Enough sleep", "In the past 7 days, I got enough sleep.", true, kNever},
    {"Quality", "In the past 7 days, my sleep quality was.", true, kQuality},
};

const std::vector<SurveyItem> kImpairment = {
    {"Trouble being productive",
     "In the past 7 days, I had a hard time getting things done because I was sleepy.",
     false, kNotAtAll},
    {"Alert", "In the past 7 days, I felt alert when I woke up.", true, kNotAtAllRev},
    {"Tiredness", "In the past 7 days, I felt tired.", false, kNotAtAll},
    {"Having problems",
     "In the past 7 days, I had problems during the day because of poor sleep.", false,
     kNotAtAll},
    {"Sleep impairment due to trouble concentrating",
     "In the past 7 days, I had a hard time concentrating because of poor sleep.",
     false, kNotAtAll},
    {"Sleep impairment due to irritability",
     "In the past 7 days, I felt irritable because of poor sleep.", false, kNotAtAll},
    {"Sleepy during daytime", "In the past 7 days, I was sleepy during the daytime.",
     false, kNotAtAll},
    {"Trouble staying awake",
     "In the past 7 days, I had trouble staying awake during the day.", false,
     kNotAtAll},
};

}  // namespace

const std::vector<SurveyItem>& survey_items(SurveyKind kind) {
    return kind == SurveyKind::disturbance ? kDisturbance : kImpairment;
}

const std::vector<std::string>& all_survey_item_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& item : kDisturbance) out.push_back(item.short_name);
        for (const auto& item : kImpairment) out.push_back(item.short_name);
        return out;
    }();
    return names;
}

const SurveyItem& find_survey_item(SurveyKind kind, const std::string& short_name) {
    for (const auto& item : survey_items(kind)) {
        if (item.short_name == short_name) return item;
    }
    throw UnknownItemError("no item \"" + short_name + "\" in the " +
                           survey_kind_label(kind) + " survey");
}

}  // namespace wearlab

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wearlab/features.hpp"
#include "wearlab/llm_client.hpp"
#include "wearlab/pro.hpp"
#include "wearlab/records.hpp"

namespace wearlab::prompts {

enum class Vertical { sleep, fitness, pro, autoeval };
enum class Section {
    // sleep
    insights,
    etiology,
    recommendations,
    // fitness
    demographics,
    training_load,
    fitness_sleep,
    health,
    assessment,
};

Vertical parse_vertical(const std::string& text);
Section parse_section(Vertical vertical, const std::string& text);
std::string section_label(Section section);

struct PromptDocument {
    Vertical vertical = Vertical::sleep;
    Section section = Section::insights;
    std::string body;
    bool placeholders_resolved = false;
};

// True when the text contains no unresolved "<identifier>" placeholder
// (identifiers are letters/underscores only; the "<year-month-day>" redaction
// token is not a placeholder).
bool placeholders_resolved(const std::string& body);

// Everything a case prompt can draw on. `as_of` is "today" for the fitness
// sections; redact_dates replaces absolute dates with "<year-month-day>" as
// in the source renderings.
struct CaseContext {
    const ParticipantData* participant = nullptr;
    Date as_of;
    const features::CohortReference* cohort = nullptr;
    bool redact_dates = false;
    std::string subjective_readiness;  // fitness assessment only
    std::string muscle_soreness;
};

// --- tabular renderings ------------------------------------------------------

std::string render_activity_table(const std::vector<DailyActivityRecord>& records,
                                  bool redact_dates);
std::string render_activity_aggregates(const features::LoadSummary& load,
                                       const std::vector<ExerciseLog>& exercises,
                                       bool redact_dates);
std::string render_sleep_logs_table(const std::vector<SleepRecord>& records,
                                    bool redact_dates);
std::string render_sleep_summary_text(const features::SleepSummary& summary);
std::string render_fitness_sleep_table(const std::vector<SleepRecord>& records,
                                       bool redact_dates);
std::string render_fitness_sleep_aggregates(const std::vector<SleepRecord>& records);
std::string render_health_table(const std::vector<HealthRecord>& records,
                                bool redact_dates);
std::string render_health_aggregates(const features::HealthSummary& summary);

// String-kind dispatcher over the renderers above; throws
// UnsupportedKindError for anything else. Kinds: activity_daily,
// activity_aggregates, sleep_logs, sleep_summary, fitness_sleep,
// fitness_sleep_aggregates, health_month, health_week, health_aggregates.
std::string render_table(const std::string& kind, const CaseContext& ctx);

// --- case prompts --------------------------------------------------------------

// Renders the per-section case prompt. Sections that substitute earlier
// responses (sleep etiology/recommendations, fitness assessment) read them
// from prior_responses keyed by section label; a missing dependency raises
// MissingDependencyError naming it.
PromptDocument render_case_prompt(Vertical vertical, Section section,
                                  const CaseContext& ctx,
                                  const std::map<std::string, std::string>& prior_responses);

// --- PRO prompts ---------------------------------------------------------------

struct ProPromptInput {
    std::string age_bucket;
    std::array<double, pro::kFeatureCount> feature_means{};
};

enum class ProMode { zero_shot, few_shot };

struct ProExemplar {
    ProPromptInput input;
    bool label = false;  // yes/no
};

// Feature lines render "label: value." in canonical order using per-feature
// means only; the terminal line is "<question>: yes or no?". Few-shot
// prepends up to seven complete exemplar blocks, each ending "...: yes." or
// "...: no.", so the zero-shot prompt is always a suffix.
std::string render_pro_prompt(const ProPromptInput& input, const std::string& item,
                              ProMode mode, const std::vector<ProExemplar>& exemplars);

// --- AutoEval prompts -----------------------------------------------------------

struct AutoEvalSpec {
    std::string vertical;       // "sleep" or "fitness"
    std::string section_label;  // e.g. "Recommendations"
    std::string objective;
    std::string case_data;
    std::string response;
    std::string principle_criteria;
    std::vector<std::string> options;  // exactly 5
};

std::string render_autoeval_prompt(const AutoEvalSpec& spec);

// --- scoring ---------------------------------------------------------------------

// One finite log-likelihood per completion via the client contract.
std::vector<double> llm_score(LlmClient& client, const std::string& prompt,
                              const std::vector<std::string>& completions);

}  // namespace wearlab::prompts

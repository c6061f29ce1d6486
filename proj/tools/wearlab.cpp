// wearlab: batch pipeline over wearable-health data. Subcommands wire
// ingestion -> features -> prompts / PRO dataset -> models -> evaluation.
// Every output is written atomically; errors exit 1 with machine-readable
// JSON on stderr, usage problems exit 2.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wearlab/errors.hpp"
#include "wearlab/features.hpp"
#include "wearlab/ingest.hpp"
#include "wearlab/io.hpp"
#include "wearlab/models.hpp"
#include "wearlab/pro.hpp"
#include "wearlab/prompts.hpp"
#include "wearlab/stats.hpp"
#include "wearlab/synth.hpp"
#include "wearlab/textfmt.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace wearlab;

namespace {

// Declarative run config; flags override file values. Unknown keys are
// rejected so typos fail loudly.
struct RunConfig {
    std::string store;
    std::uint64_t seed = 0;
    double ratio_train = 0.70, ratio_val = 0.10, ratio_test = 0.20;
    std::size_t adapter_token_dim = 32;
    std::size_t adapter_hidden1 = 64, adapter_hidden2 = 256, adapter_hidden3 = 64;
    int bootstrap = 1000;
    std::string endpoint;
    int llm_timeout_sec = 30;
    int llm_max_attempts = 3;
    int llm_backoff_ms = 100;
    bool redact_dates = false;

    static RunConfig load(const std::string& path) {
        static const std::vector<std::string> known = {
            "store",          "seed",        "ratio_train",     "ratio_val",
            "ratio_test",     "adapter_token_dim", "adapter_hidden1", "adapter_hidden2",
            "adapter_hidden3", "bootstrap",  "endpoint",        "redact_dates",
            "llm_timeout_sec", "llm_max_attempts", "llm_backoff_ms"};
        json doc = json::parse(read_file(path));
        for (const auto& [key, value] : doc.items()) {
            (void)value;
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                throw UsageError("unknown config key \"" + key + "\"");
            }
        }
        RunConfig c;
        if (doc.contains("store")) c.store = doc["store"].get<std::string>();
        if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("ratio_train")) c.ratio_train = doc["ratio_train"].get<double>();
        if (doc.contains("ratio_val")) c.ratio_val = doc["ratio_val"].get<double>();
        if (doc.contains("ratio_test")) c.ratio_test = doc["ratio_test"].get<double>();
        if (doc.contains("adapter_token_dim")) {
            c.adapter_token_dim = doc["adapter_token_dim"].get<std::size_t>();
        }
        if (doc.contains("adapter_hidden1")) {
            c.adapter_hidden1 = doc["adapter_hidden1"].get<std::size_t>();
        }
        if (doc.contains("adapter_hidden2")) {
            c.adapter_hidden2 = doc["adapter_hidden2"].get<std::size_t>();
        }
        if (doc.contains("adapter_hidden3")) {
            c.adapter_hidden3 = doc["adapter_hidden3"].get<std::size_t>();
        }
        if (doc.contains("bootstrap")) c.bootstrap = doc["bootstrap"].get<int>();
        if (doc.contains("endpoint")) c.endpoint = doc["endpoint"].get<std::string>();
        if (doc.contains("llm_timeout_sec")) {
            c.llm_timeout_sec = doc["llm_timeout_sec"].get<int>();
        }
        if (doc.contains("llm_max_attempts")) {
            c.llm_max_attempts = doc["llm_max_attempts"].get<int>();
        }
        if (doc.contains("llm_backoff_ms")) {
            c.llm_backoff_ms = doc["llm_backoff_ms"].get<int>();
        }
        if (doc.contains("redact_dates")) c.redact_dates = doc["redact_dates"].get<bool>();
        return c;
    }

    // The endpoint comes from WEARLAB_LLM_ENDPOINT or the config file;
    // timeout/retry only from the config file.
    std::unique_ptr<prompts::LlmClient> make_client(std::uint64_t stub_seed) const {
        std::string url = endpoint;
        if (const char* env = std::getenv("WEARLAB_LLM_ENDPOINT")) url = env;
        if (url.empty()) return std::make_unique<prompts::StubLlmClient>(stub_seed);
        prompts::RetryPolicy policy;
        policy.timeout_sec = llm_timeout_sec;
        policy.max_attempts = llm_max_attempts;
        policy.initial_backoff_ms = llm_backoff_ms;
        return std::make_unique<prompts::HttpLlmClient>(url, policy);
    }
};

features::CohortReference cohort_from_store(const std::string& store) {
    std::vector<std::pair<Demographics, std::vector<SleepRecord>>> members;
    for (const auto& id : ingest::list_participants(store)) {
        auto p = ingest::load_participant(store, id);
        members.emplace_back(p.demographics, p.sleep);
    }
    return features::build_cohort_reference(members);
}

// Means of the 20 raw features plus labels, for text-mode scoring.
prompts::ProPromptInput prompt_input_of(const pro::PROExample& example) {
    prompts::ProPromptInput input;
    input.age_bucket = example.age_bucket;
    input.feature_means = example.raw_encoding.mean;
    return input;
}

models::AdapterExample adapter_example_of(const pro::PROExample& example,
                                          const std::string& item) {
    models::AdapterExample out;
    out.encoded = example.encoded.flatten();
    out.prompt_means.assign(example.raw_encoding.mean.begin(),
                            example.raw_encoding.mean.end());
    out.label = example.labels.at(item);
    return out;
}

int cmd_synth(const std::string& out_dir, std::size_t participants, std::uint64_t seed,
              std::size_t rating_cases, const std::string& ratings_out) {
    synth::CohortSpec spec;
    spec.participants = participants;
    spec.seed = seed;
    auto cohort = synth::generate_cohort(spec);
    synth::write_store(out_dir, cohort);
    if (!ratings_out.empty()) {
        atomic_write_file(ratings_out, synth::generate_ratings_csv(rating_cases, seed));
    }
    std::cout << "wrote " << cohort.size() << " participants to " << out_dir << "\n";
    return 0;
}

int cmd_ingest(const std::string& kind_str, const std::string& in_path,
               const std::string& store, const std::string& participant,
               const std::string& survey_kind) {
    auto kind = ingest::parse_stream_kind(kind_str);
    std::string text = read_file(in_path);

    ParticipantData p;
    if (ingest::participant_exists(store, participant)) {
        p = ingest::load_participant(store, participant);
    } else {
        p.id = participant;
        p.demographics.age_bucket = "[20-22]";
        p.demographics.gender = Gender::male;
    }

    switch (kind) {
        case ingest::StreamKind::activity: p.activity = ingest::parse_activity(text); break;
        case ingest::StreamKind::sleep: p.sleep = ingest::parse_sleep(text); break;
        case ingest::StreamKind::health: p.health = ingest::parse_health(text); break;
        case ingest::StreamKind::exercise: p.exercises = ingest::parse_exercise(text); break;
        case ingest::StreamKind::survey: {
            auto set = ingest::parse_survey(text, parse_survey_kind(survey_kind));
            std::erase_if(p.surveys, [&](const SurveyResponseSet& s) {
                return s.kind == set.kind;
            });
            p.surveys.push_back(std::move(set));
            break;
        }
        case ingest::StreamKind::demographics:
            p.demographics = ingest::parse_demographics(text);
            break;
    }
    auto validated = ingest::validate_participant(p.id, p.demographics, p.activity,
                                                  p.sleep, p.health, p.exercises,
                                                  p.surveys);
    ingest::save_participant(store, validated);
    std::cout << "updated " << store << "/" << participant << ".json\n";
    return 0;
}

int cmd_featurize(const RunConfig& config, const std::string& participant,
                  const std::string& as_of_str, const std::string& out_path,
                  bool no_cohort) {
    auto p = ingest::load_participant(config.store, participant);
    Date as_of = Date::parse(as_of_str);
    std::optional<features::CohortReference> cohort;
    if (!no_cohort) cohort = cohort_from_store(config.store);
    auto summary = features::featurize(p, as_of, cohort ? &*cohort : nullptr);
    atomic_write_file(out_path, features::feature_summary_to_json(summary));
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_render(const RunConfig& config, const std::string& vertical_str,
               const std::string& section_str, const std::string& participant,
               const std::string& as_of_str, const std::string& out_path,
               const std::string& responses_path, const std::string& readiness,
               const std::string& soreness) {
    auto vertical = prompts::parse_vertical(vertical_str);
    auto section = prompts::parse_section(vertical, section_str);
    auto p = ingest::load_participant(config.store, participant);
    auto cohort = cohort_from_store(config.store);

    prompts::CaseContext ctx;
    ctx.participant = &p;
    ctx.as_of = Date::parse(as_of_str);
    ctx.cohort = &cohort;
    ctx.redact_dates = config.redact_dates;
    ctx.subjective_readiness = readiness;
    ctx.muscle_soreness = soreness;

    std::map<std::string, std::string> prior;
    if (!responses_path.empty()) {
        json doc = json::parse(read_file(responses_path));
        for (const auto& [key, value] : doc.items()) {
            prior[key] = value.get<std::string>();
        }
    }
    auto doc = prompts::render_case_prompt(vertical, section, ctx, prior);
    atomic_write_file(out_path, doc.body + "\n");
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_score(const RunConfig& config, const std::string& prompt_file,
              const std::string& completions_csv, std::uint64_t seed,
              const std::string& out_path) {
    std::string prompt = read_file(prompt_file);
    std::vector<std::string> completions;
    std::string current;
    for (char c : completions_csv) {
        if (c == ',') {
            completions.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    completions.push_back(current);
    auto client = config.make_client(seed);
    auto values = prompts::llm_score(*client, prompt, completions);
    json doc;
    doc["completions"] = completions;
    doc["log_likelihoods"] = values;
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        atomic_write_file(out_path, text);
    }
    return 0;
}

int cmd_pro_build(const RunConfig& config, const std::string& out_path) {
    std::vector<ParticipantData> cohort;
    for (const auto& id : ingest::list_participants(config.store)) {
        cohort.push_back(ingest::load_participant(config.store, id));
    }
    pro::SplitRatios ratios{config.ratio_train, config.ratio_val, config.ratio_test};
    auto dataset = pro::build_dataset(cohort, ratios, config.seed);
    atomic_write_file(out_path, pro::dataset_to_json(dataset));
    std::cout << "wrote " << dataset.examples.size() << " examples ("
              << dataset.excluded.size() << " excluded) to " << out_path << "\n";
    return 0;
}

int cmd_train(const RunConfig& config, const std::string& model_kind,
              const std::string& dataset_path, const std::string& item,
              const std::string& out_path, const std::string& predictions_out) {
    auto dataset = pro::dataset_from_json(read_file(dataset_path));
    auto train_split = dataset.split_examples(pro::Split::train);
    auto val_split = dataset.split_examples(pro::Split::val);
    auto test_split = dataset.split_examples(pro::Split::test);
    if (train_split.empty()) throw EmptyDatasetError("dataset has no training split");

    models::TrainConfig tc;
    tc.seed = config.seed;

    json predictions;  // participant -> score, test split
    std::string model_json;
    if (model_kind == "logistic") {
        std::vector<std::vector<double>> features;
        std::vector<int> labels;
        for (const auto* e : train_split) {
            features.push_back(e->encoded.flatten());
            labels.push_back(e->labels.at(item));
        }
        auto model = models::train_logistic(features, labels, tc);
        model_json = model.to_json();
        for (const auto* e : test_split) {
            predictions[e->participant] = models::predict_proba(model,
                                                                e->encoded.flatten());
        }
    } else if (model_kind == "adapter") {
        models::AdapterDims dims;
        dims.hidden1 = config.adapter_hidden1;
        dims.hidden2 = config.adapter_hidden2;
        dims.hidden3 = config.adapter_hidden3;
        dims.token_dim = config.adapter_token_dim;
        models::FrozenScorer scorer(dims.token_dim, config.seed);
        std::vector<models::AdapterExample> train, val;
        for (const auto* e : train_split) train.push_back(adapter_example_of(*e, item));
        for (const auto* e : val_split) val.push_back(adapter_example_of(*e, item));
        auto result = models::train_adapter(train, val, scorer, dims, tc);
        json bundle;
        bundle["adapter"] = json::parse(result.adapter.to_json());
        bundle["scorer"] = json::parse(scorer.to_json());
        model_json = bundle.dump();
        for (const auto* e : test_split) {
            auto outcome = models::score_outcome_adapter(result.adapter, scorer,
                                                         adapter_example_of(*e, item));
            predictions[e->participant] = outcome.score();
        }
    } else {
        throw UsageError("--model must be logistic or adapter");
    }

    json doc = json::parse(model_json);
    doc["item"] = item;
    doc["seed"] = config.seed;
    json tc_doc;
    tc_doc["learning_rate"] = tc.learning_rate;
    tc_doc["batch_size"] = tc.batch_size;
    tc_doc["max_epochs"] = tc.max_epochs;
    tc_doc["patience"] = tc.patience;
    tc_doc["l2"] = tc.l2;
    doc["train_config"] = tc_doc;
    atomic_write_file(out_path, doc.dump(2) + "\n");
    if (!predictions_out.empty()) {
        json pred_doc;
        pred_doc[item] = predictions;
        atomic_write_file(predictions_out, pred_doc.dump(2) + "\n");
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

std::string curve_csv(const std::vector<stats::CurvePoint>& points, const char* x_name,
                      const char* y_name) {
    std::string csv = std::string(x_name) + "," + y_name + "\n";
    for (const auto& p : points) {
        csv += std::to_string(p.x) + "," + std::to_string(p.y) + "\n";
    }
    return csv;
}

std::string slugify(const std::string& name) {
    std::string out;
    for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return to_lower(out);
}

int cmd_eval(const RunConfig& config, const std::string& dataset_path,
             const std::string& predictions_path, const std::string& metrics_csv,
             const std::string& out_path, const std::string& plot_dir) {
    auto dataset = pro::dataset_from_json(read_file(dataset_path));
    if (!fs::exists(predictions_path)) {
        throw IoError("predictions file not found: " + predictions_path);
    }
    json preds = json::parse(read_file(predictions_path));

    bool want_auroc = metrics_csv.find("auroc") != std::string::npos;
    bool want_auprc = metrics_csv.find("auprc") != std::string::npos;
    if (!want_auroc && !want_auprc) {
        throw UsageError("--metrics must name auroc and/or auprc");
    }

    json report;
    report["bootstrap"] = config.bootstrap;
    report["seed"] = config.seed;
    json items = json::object();
    for (const auto& [item, by_participant] : preds.items()) {
        std::vector<double> scores;
        std::vector<int> labels;
        for (const auto* e : dataset.split_examples(pro::Split::test)) {
            if (!by_participant.contains(e->participant)) continue;
            scores.push_back(by_participant[e->participant].get<double>());
            labels.push_back(e->labels.at(item));
        }
        if (scores.empty()) {
            throw EmptyDataError("no predictions matched test participants for \"" +
                                 item + "\"");
        }
        json entry;
        entry["n"] = scores.size();
        auto add_metric = [&](const char* name, double (*metric)(const std::vector<double>&,
                                                                 const std::vector<int>&)) {
            auto result = stats::bootstrap_ci(
                name,
                [&](const std::vector<std::size_t>& idx) {
                    std::vector<double> s(idx.size());
                    std::vector<int> l(idx.size());
                    for (std::size_t i = 0; i < idx.size(); ++i) {
                        s[i] = scores[idx[i]];
                        l[i] = labels[idx[i]];
                    }
                    return metric(s, l);
                },
                scores.size(), config.bootstrap, config.seed);
            json m;
            m["estimate"] = result.estimate;
            m["ci_lower"] = result.ci_lower;
            m["ci_upper"] = result.ci_upper;
            entry[name] = m;
        };
        if (want_auroc) add_metric("auroc", &stats::auroc);
        if (want_auprc) add_metric("auprc", &stats::auprc);
        items[item] = entry;
        if (!plot_dir.empty()) {
            fs::create_directories(plot_dir);
            atomic_write_file(fs::path(plot_dir) / (slugify(item) + "_roc.csv"),
                              curve_csv(stats::roc_curve(scores, labels), "fpr", "tpr"));
            atomic_write_file(
                fs::path(plot_dir) / (slugify(item) + "_pr.csv"),
                curve_csv(stats::pr_curve(scores, labels), "recall", "precision"));
        }
    }
    report["items"] = items;
    atomic_write_file(out_path, report.dump(2) + "\n");
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_agreement(const RunConfig& config, const std::string& ratings_path,
                  const std::string& rater_a, const std::string& rater_b,
                  const std::string& group_by, const std::string& out_path) {
    auto table = stats::parse_rating_csv(read_file(ratings_path));
    json doc;
    if (!rater_a.empty() && !rater_b.empty()) {
        auto report = stats::agreement_metrics(table, rater_a, rater_b, config.bootstrap,
                                               config.seed);
        doc["agreement"] = json::parse(report.to_json());
    }
    if (!group_by.empty()) {
        auto groups = stats::aggregate_ratings(table, stats::parse_group_by(group_by),
                                               false, config.bootstrap, config.seed);
        json rows = json::array();
        for (const auto& g : groups) {
            json row;
            row["group"] = g.group;
            row["mean"] = g.mean;
            row["ci_lower"] = g.ci_lower;
            row["ci_upper"] = g.ci_upper;
            row["n"] = g.n;
            rows.push_back(row);
        }
        doc["groups"] = rows;
    }
    if (doc.empty()) {
        throw UsageError("agreement needs --rater-a/--rater-b and/or --group-by");
    }
    atomic_write_file(out_path, doc.dump(2) + "\n");
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wearable-health data engineering and evaluation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON run config; flags override it");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic cohort store");
    std::string synth_out, synth_ratings;
    std::size_t synth_n = 100, synth_rating_cases = 30;
    std::uint64_t synth_seed = 0;
    synth_cmd->add_option("--out", synth_out, "store directory")->required();
    synth_cmd->add_option("--participants", synth_n, "cohort size");
    synth_cmd->add_option("--seed", synth_seed, "generator seed")->required();
    synth_cmd->add_option("--ratings-out", synth_ratings, "also write a ratings CSV");
    synth_cmd->add_option("--rating-cases", synth_rating_cases, "rating fixture cases");

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "parse a CSV stream into the store");
    std::string ingest_kind, ingest_in, ingest_store, ingest_participant, ingest_survey;
    ingest_cmd->add_option("--kind", ingest_kind,
                           "activity|sleep|health|exercise|survey|demographics")
        ->required();
    ingest_cmd->add_option("--in", ingest_in, "input CSV path")->required();
    ingest_cmd->add_option("--out", ingest_store, "store directory")->required();
    ingest_cmd->add_option("--participant", ingest_participant, "participant id")
        ->required();
    ingest_cmd->add_option("--survey-kind", ingest_survey, "disturbance|impairment");

    // featurize
    auto* feat_cmd = app.add_subcommand("featurize", "compute the feature summary");
    std::string feat_participant, feat_as_of, feat_out, feat_store;
    bool feat_no_cohort = false;
    std::uint64_t feat_seed = 0;
    feat_cmd->add_option("--store", feat_store, "store directory");
    feat_cmd->add_option("--participant", feat_participant)->required();
    feat_cmd->add_option("--as-of", feat_as_of, "YYYY-MM-DD")->required();
    feat_cmd->add_option("--out", feat_out)->required();
    feat_cmd->add_option("--seed", feat_seed);
    feat_cmd->add_flag("--no-cohort", feat_no_cohort,
                       "skip cohort percentiles (omitted, never fabricated)");

    // render
    auto* render_cmd = app.add_subcommand("render", "render a case prompt");
    std::string render_vertical, render_section, render_participant, render_as_of,
        render_out, render_responses, render_readiness, render_soreness, render_store;
    render_cmd->add_option("--store", render_store);
    render_cmd->add_option("--vertical", render_vertical, "sleep|fitness")->required();
    render_cmd->add_option("--section", render_section)->required();
    render_cmd->add_option("--participant", render_participant)->required();
    render_cmd->add_option("--as-of", render_as_of, "YYYY-MM-DD")->required();
    render_cmd->add_option("--out", render_out)->required();
    render_cmd->add_option("--responses", render_responses,
                           "JSON map of prior section responses");
    render_cmd->add_option("--subjective-readiness", render_readiness);
    render_cmd->add_option("--muscle-soreness", render_soreness);

    // score
    auto* score_cmd = app.add_subcommand("score", "log-likelihoods via the LLM client");
    std::string score_prompt, score_completions = "yes,no", score_out;
    std::uint64_t score_seed = 0;
    score_cmd->add_option("--prompt-file", score_prompt)->required();
    score_cmd->add_option("--completions", score_completions, "comma-separated");
    score_cmd->add_option("--seed", score_seed)->required();
    score_cmd->add_option("--out", score_out);

    // pro build
    auto* pro_cmd = app.add_subcommand("pro", "PRO dataset commands");
    pro_cmd->require_subcommand(1);
    auto* pro_build_cmd = pro_cmd->add_subcommand("build", "build the PRO dataset");
    std::string pro_store, pro_out;
    std::uint64_t pro_seed = 0;
    pro_build_cmd->add_option("--store", pro_store);
    pro_build_cmd->add_option("--seed", pro_seed)->required();
    pro_build_cmd->add_option("--out", pro_out)->required();

    // train
    auto* train_cmd = app.add_subcommand("train", "train a PRO model");
    std::string train_model, train_dataset, train_item, train_out, train_preds;
    std::uint64_t train_seed = 0;
    train_cmd->add_option("--model", train_model, "logistic|adapter")->required();
    train_cmd->add_option("--dataset", train_dataset)->required();
    train_cmd->add_option("--item", train_item, "survey item, e.g. \"Very restless\"")
        ->required();
    train_cmd->add_option("--seed", train_seed)->required();
    train_cmd->add_option("--out", train_out)->required();
    train_cmd->add_option("--predictions-out", train_preds,
                          "also write test-split predictions");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "bootstrap metric report");
    std::string eval_dataset, eval_preds, eval_metrics = "auroc,auprc", eval_out,
        eval_plot_dir;
    std::uint64_t eval_seed = 0;
    int eval_bootstrap = 1000;
    eval_cmd->add_option("--dataset", eval_dataset)->required();
    eval_cmd->add_option("--predictions", eval_preds)->required();
    eval_cmd->add_option("--metrics", eval_metrics);
    eval_cmd->add_option("--bootstrap", eval_bootstrap);
    eval_cmd->add_option("--seed", eval_seed)->required();
    eval_cmd->add_option("--out", eval_out)->required();
    eval_cmd->add_option("--emit-plot-data", eval_plot_dir,
                         "directory for per-curve ROC/PR CSVs");

    // agreement
    auto* agree_cmd = app.add_subcommand("agreement", "inter-rater agreement report");
    std::string agree_ratings, agree_a, agree_b, agree_group, agree_out;
    std::uint64_t agree_seed = 0;
    int agree_bootstrap = 1000;
    agree_cmd->add_option("--ratings", agree_ratings)->required();
    agree_cmd->add_option("--rater-a", agree_a);
    agree_cmd->add_option("--rater-b", agree_b);
    agree_cmd->add_option("--group-by", agree_group, "section|principle|source");
    agree_cmd->add_option("--bootstrap", agree_bootstrap);
    agree_cmd->add_option("--seed", agree_seed)->required();
    agree_cmd->add_option("--out", agree_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints usage to stderr
        return 2;
    }

    try {
        RunConfig config;
        if (!config_path.empty()) config = RunConfig::load(config_path);

        if (synth_cmd->parsed()) {
            return cmd_synth(synth_out, synth_n, synth_seed, synth_rating_cases,
                             synth_ratings);
        }
        if (ingest_cmd->parsed()) {
            return cmd_ingest(ingest_kind, ingest_in, ingest_store, ingest_participant,
                              ingest_survey);
        }
        if (feat_cmd->parsed()) {
            if (!feat_store.empty()) config.store = feat_store;
            if (config.store.empty()) throw UsageError("featurize needs --store");
            config.seed = feat_seed;
            return cmd_featurize(config, feat_participant, feat_as_of, feat_out,
                                 feat_no_cohort);
        }
        if (render_cmd->parsed()) {
            if (!render_store.empty()) config.store = render_store;
            if (config.store.empty()) throw UsageError("render needs --store");
            return cmd_render(config, render_vertical, render_section,
                              render_participant, render_as_of, render_out,
                              render_responses, render_readiness, render_soreness);
        }
        if (score_cmd->parsed()) {
            return cmd_score(config, score_prompt, score_completions, score_seed, score_out);
        }
        if (pro_cmd->parsed() && pro_build_cmd->parsed()) {
            if (!pro_store.empty()) config.store = pro_store;
            if (config.store.empty()) throw UsageError("pro build needs --store");
            config.seed = pro_seed;
            return cmd_pro_build(config, pro_out);
        }
        if (train_cmd->parsed()) {
            config.seed = train_seed;
            return cmd_train(config, train_model, train_dataset, train_item, train_out,
                             train_preds);
        }
        if (eval_cmd->parsed()) {
            config.seed = eval_seed;
            config.bootstrap = eval_bootstrap;
            return cmd_eval(config, eval_dataset, eval_preds, eval_metrics, eval_out,
                            eval_plot_dir);
        }
        if (agree_cmd->parsed()) {
            config.seed = agree_seed;
            config.bootstrap = agree_bootstrap;
            return cmd_agreement(config, agree_ratings, agree_a, agree_b, agree_group,
                                 agree_out);
        }
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        json err;
        err["error"] = e.code();
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const Error& e) {
        json err;
        err["error"] = e.code();
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "InternalError";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
}

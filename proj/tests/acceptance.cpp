// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion enforces its stated tolerance and runtime budget.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "wearlab/errors.hpp"
#include "wearlab/features.hpp"
#include "wearlab/io.hpp"
#include "wearlab/models.hpp"
#include "wearlab/pro.hpp"
#include "wearlab/prompts.hpp"
#include "wearlab/rng.hpp"
#include "wearlab/stats.hpp"
#include "wearlab/synth.hpp"

namespace fs = std::filesystem;
using namespace wearlab;

namespace {

struct Criterion {
    std::string name;
    double time_limit_sec;
    std::function<void()> run;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---- 1. ACWR reproduction ----------------------------------------------------

std::vector<DailyActivityRecord> series_from_trimps(const std::vector<double>& trimps) {
    std::vector<DailyActivityRecord> out;
    Date start = Date(2024, 1, 1);
    for (std::size_t i = 0; i < trimps.size(); ++i) {
        DailyActivityRecord r;
        r.date = start + static_cast<std::int64_t>(i);
        r.trimp = trimps[i];
        out.push_back(r);
    }
    return out;
}

void criterion_acwr_reproduction() {
    // Three different 28-day shapes with trailing-7 = 346 and trailing-28 = 940.
    std::vector<std::vector<double>> shapes;
    shapes.push_back([] {
        std::vector<double> v(21, 594.0 / 21);
        std::vector<double> week = {124, 47, 53, 62, 30, 20, 10};
        v.insert(v.end(), week.begin(), week.end());
        return v;
    }());
    shapes.push_back([] {
        std::vector<double> v(21, 0.0);
        v[0] = 594.0;
        std::vector<double> week = {346, 0, 0, 0, 0, 0, 0};
        v.insert(v.end(), week.begin(), week.end());
        return v;
    }());
    shapes.push_back([] {
        std::vector<double> v(21, 28.0);  // 588
        v[20] = 34.0;                     // 594 total
        std::vector<double> week = {49, 49, 49, 49, 50, 50, 50};
        v.insert(v.end(), week.begin(), week.end());
        return v;
    }());
    for (const auto& shape : shapes) {
        double total = std::accumulate(shape.begin(), shape.end(), 0.0);
        require(std::abs(total - 940.0) < 1e-9, "fixture shape must total 940");
        auto daily = series_from_trimps(shape);
        Date as_of = daily.back().date;
        double acute = features::acute_trimp(daily, as_of);
        double chronic = features::chronic_trimp(daily, as_of);
        require(std::abs(acute - 346.0) < 1e-9, "acute must be 346, got " + fmt(acute));
        require(std::abs(chronic - 235.0) < 1e-9,
                "chronic must be 235, got " + fmt(chronic));
        auto result = features::acwr(daily, as_of);
        require(result.display == "1.5", "ACWR must display 1.5, got " + result.display);
    }
}

// ---- 2. threshold semantics ----------------------------------------------------

void criterion_threshold_semantics() {
    using features::AcwrBand;
    using features::acwr_band_for_ratio;
    require(acwr_band_for_ratio(1.5) == AcwrBand::normal, "band(1.5) must be normal");
    require(acwr_band_for_ratio(1.5 + 1e-9) == AcwrBand::elevated_risk,
            "band(1.5 + 1e-9) must be elevated-risk");
    require(acwr_band_for_ratio(1.5 - 1e-9) == AcwrBand::normal,
            "band(1.5 - 1e-9) must be normal");
    require(acwr_band_for_ratio(0.7) == AcwrBand::normal, "band(0.7) must be normal");
    require(acwr_band_for_ratio(0.7 - 1e-9) == AcwrBand::detraining_risk,
            "band(0.7 - 1e-9) must be detraining-risk");
    require(acwr_band_for_ratio(0.7 + 1e-9) == AcwrBand::normal,
            "band(0.7 + 1e-9) must be normal");
}

// ---- 3. prompt golden files ----------------------------------------------------

void criterion_prompt_goldens() {
    using namespace wearlab::prompts;
    auto participant = fixtures::fixture_participant();
    auto cohort = fixtures::fixture_cohort();
    CaseContext ctx;
    ctx.participant = &participant;
    ctx.as_of = fixtures::fixture_as_of();
    ctx.cohort = &cohort;
    ctx.redact_dates = true;
    ctx.subjective_readiness = "3/5 - Feeling a bit stressed and fatigued.";
    ctx.muscle_soreness = "Manageable soreness in calves and quads.";

    std::map<std::string, std::string> priors = {
        {"insights", "Insights placeholder response."},
        {"etiology", "Etiology placeholder response."},
        {"demographics", "Demographics placeholder response."},
        {"training_load", "Training load placeholder response."},
        {"sleep", "Sleep placeholder response."},
        {"health", "Health placeholder response."},
    };

    struct GoldenCase {
        std::string file;
        std::string body;
        std::string terminal;  // empty when the template has no marker
    };
    std::vector<GoldenCase> cases;
    cases.push_back({"prompt_sleep_insights.txt",
                     render_case_prompt(Vertical::sleep, Section::insights, ctx, priors).body,
                     "# Sleep insights report"});
    cases.push_back({"prompt_sleep_etiology.txt",
                     render_case_prompt(Vertical::sleep, Section::etiology, ctx, priors).body,
                     "# Causes report"});
    cases.push_back(
        {"prompt_sleep_recommendations.txt",
         render_case_prompt(Vertical::sleep, Section::recommendations, ctx, priors).body,
         "# Recommendations report"});
    cases.push_back(
        {"prompt_fitness_demographics.txt",
         render_case_prompt(Vertical::fitness, Section::demographics, ctx, priors).body,
         ""});
    cases.push_back(
        {"prompt_fitness_training_load.txt",
         render_case_prompt(Vertical::fitness, Section::training_load, ctx, priors).body,
         "# Training load report"});
    cases.push_back(
        {"prompt_fitness_sleep.txt",
         render_case_prompt(Vertical::fitness, Section::fitness_sleep, ctx, priors).body,
         "# Sleep report"});
    cases.push_back({"prompt_fitness_health.txt",
                     render_case_prompt(Vertical::fitness, Section::health, ctx, priors).body,
                     "# Health report"});
    cases.push_back(
        {"prompt_fitness_assessment.txt",
         render_case_prompt(Vertical::fitness, Section::assessment, ctx, priors).body,
         "# Readiness summary report"});

    AutoEvalSpec autoeval;
    autoeval.vertical = "sleep";
    autoeval.section_label = "Recommendations";
    autoeval.objective =
        "Provide recommendations to the user that can help them improve their sleep by "
        "addressing potential causes identified in the Etiology section. Avoid "
        "providing generic recommendations that are not personalized. This section does "
        "not require specific data to be cited directly, but the interpretation used to "
        "justify the recommendation should be present.";
    autoeval.case_data = "Average bedtime is 00:26\nAverage sleep duration is 06:09\n";
    autoeval.response =
        "Your sleep schedule is inconsistent. Aim for a 23:30 bedtime for the next two "
        "weeks.";
    autoeval.principle_criteria =
        "This section does not contain evidence of incorrect domain knowledge (e.g., "
        "factually incorrect or not accepted by expert consensus).";
    autoeval.options = {
        "Only incorrect domain knowledge is referenced.",
        "Many incorrect domain knowledge references exist.",
        "Several incorrect domain knowledge references exist.",
        "A few incorrect domain knowledge references exist.",
        "No incorrect domain knowledge references exist.",
    };
    cases.push_back({"prompt_autoeval.txt", render_autoeval_prompt(autoeval),
                     "State only the numeric score and option text when providing your "
                     "rating. The formatting of your response must match that of the "
                     "Likert scale statement."});

    ProPromptInput pro_input;
    pro_input.age_bucket = "[40-45]";
    pro_input.feature_means = {33.5, 16.5,  60.0,  51.0, 53.0, 471610.0, 0.85,
                               81.0, 16.0,  0.07,  83.2, -274.0, 364.0,  420.8,
                               7.4,  6850.0, 6.7,  18.9, 0.41,  45.32};
    cases.push_back({"prompt_pro_zero_shot.txt",
                     render_pro_prompt(pro_input, "Very restless", ProMode::zero_shot, {}),
                     "very restless: yes or no?"});

    for (const auto& c : cases) {
        fs::path path = fs::path(fixtures::golden_dir()) / c.file;
        require(fs::exists(path), "missing golden file " + path.string());
        std::string expected = read_file(path);
        require(c.body == expected, "byte mismatch against " + c.file);
        if (!c.terminal.empty()) {
            require(c.body.size() >= c.terminal.size() &&
                        c.body.substr(c.body.size() - c.terminal.size()) == c.terminal,
                    c.file + " must end with its terminal marker");
        }
    }
}

// ---- 4. PRO pipeline shape -----------------------------------------------------

void criterion_pro_pipeline_shape() {
    synth::CohortSpec spec;
    spec.participants = 500;
    spec.seed = 2024;
    auto cohort = synth::generate_cohort(spec);
    auto dataset = pro::build_dataset(cohort, pro::SplitRatios{}, 7);

    require(!dataset.examples.empty(), "dataset must retain examples");
    std::size_t train = 0, val = 0, test = 0;
    for (const auto& e : dataset.examples) {
        require(e.labels.size() == 16, "every example needs 16 binary labels");
        for (const auto& [item, label] : e.labels) {
            require(label == 0 || label == 1, "labels must be binary");
        }
        require(e.matrix.missing_count() == 0, "matrix must be fully imputed (20x15)");
        require(e.encoded.flatten().size() == 40, "encoding must be 20x2");
        if (e.split == pro::Split::train) ++train;
        else if (e.split == pro::Split::val) ++val;
        else ++test;
    }
    // Split sizes: floor allocation with largest-remainder assignment over the
    // retained count.
    std::size_t n = dataset.examples.size();
    double exact[3] = {0.70 * n, 0.10 * n, 0.20 * n};
    std::size_t floors[3] = {static_cast<std::size_t>(exact[0]),
                             static_cast<std::size_t>(exact[1]),
                             static_cast<std::size_t>(exact[2])};
    std::size_t rem = n - floors[0] - floors[1] - floors[2];
    std::vector<int> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return exact[a] - std::floor(exact[a]) > exact[b] - std::floor(exact[b]);
    });
    std::size_t expected[3] = {floors[0], floors[1], floors[2]};
    for (std::size_t i = 0; i < rem; ++i) expected[order[i % 3]] += 1;
    require(train == expected[0] && val == expected[1] && test == expected[2],
            "split sizes must follow the 0.70/0.10/0.20 rule, got " + fmt(train) + "/" +
                fmt(val) + "/" + fmt(test));

    // Leak check: stats provenance is the training split alone.
    std::set<std::string> train_ids;
    for (const auto& e : dataset.examples) {
        if (e.split == pro::Split::train) train_ids.insert(e.participant);
    }
    std::vector<pro::DailySeries> train_series;
    for (const auto& p : cohort) {
        if (train_ids.count(p.id)) {
            train_series.push_back(pro::assemble_daily_series(p));
        }
    }
    auto recomputed = pro::compute_population_stats(train_series);
    for (std::size_t f = 0; f < pro::kFeatureCount; ++f) {
        require(recomputed.median[f] == dataset.population_stats.median[f] &&
                    recomputed.sd[f] == dataset.population_stats.sd[f],
                "population stats must derive from the training split only");
    }
}

// ---- 5. adapter mechanism -------------------------------------------------------

void criterion_adapter_mechanism() {
    // (a) gradient check on a toy configuration.
    {
        models::AdapterDims dims;
        dims.input = 40;
        dims.hidden1 = 8;
        dims.hidden2 = 16;
        dims.hidden3 = 8;
        dims.token_dim = 4;
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            models::MLPAdapter adapter(dims, seed);
            models::FrozenScorer scorer(dims.token_dim, seed + 40);
            std::vector<models::AdapterExample> batch;
            Rng rng(seed + 90);
            for (int i = 0; i < 6; ++i) {
                models::AdapterExample e;
                e.encoded.resize(dims.input);
                for (auto& v : e.encoded) v = rng.next_normal();
                e.prompt_means.assign(pro::kFeatureCount, 1.0);
                e.label = i % 2;
                batch.push_back(e);
            }
            std::vector<double> grad;
            models::adapter_loss_and_grad(adapter, scorer, batch, &grad);
            auto& params = adapter.parameters();
            const double h = 1e-5;
            for (std::size_t j = 0; j < params.size(); ++j) {
                double saved = params[j];
                params[j] = saved + h;
                double up = models::adapter_loss_and_grad(adapter, scorer, batch, nullptr);
                params[j] = saved - h;
                double down =
                    models::adapter_loss_and_grad(adapter, scorer, batch, nullptr);
                params[j] = saved;
                double numeric = (up - down) / (2.0 * h);
                double rel = std::abs(grad[j] - numeric) /
                             std::max(1.0, std::abs(grad[j]) + std::abs(numeric));
                if (rel > worst) worst = rel;
            }
        }
        require(worst < 1e-4, "gradient check failed: max relative error " + fmt(worst));
    }

    // (b) desk-scale adapter within 0.03 AUROC of the logistic baseline on a
    // 2,000-example linear-rule cohort; (c) frozen scorer bytes unchanged.
    auto probe = synth::generate_linear_probe(2000, 91);
    std::vector<models::AdapterExample> train(probe.examples.begin(),
                                              probe.examples.begin() + 1400);
    std::vector<models::AdapterExample> val(probe.examples.begin() + 1400,
                                            probe.examples.begin() + 1600);
    std::vector<models::AdapterExample> test(probe.examples.begin() + 1600,
                                             probe.examples.end());

    models::AdapterDims dims;  // d=32, hidden 64/256/64
    models::FrozenScorer scorer(dims.token_dim, 91);
    const std::string scorer_before = scorer.to_json();

    models::TrainConfig config;
    config.seed = 91;
    config.learning_rate = 0.3;
    config.batch_size = 32;
    config.max_epochs = 100;
    config.patience = 15;
    auto trained = models::train_adapter(train, val, scorer, dims, config);
    require(scorer.to_json() == scorer_before,
            "frozen scorer bytes changed during training");

    std::vector<std::vector<double>> lr_x;
    std::vector<int> lr_y;
    for (const auto& e : train) {
        lr_x.push_back(e.encoded);
        lr_y.push_back(e.label);
    }
    auto logistic = models::train_logistic(lr_x, lr_y, config);

    std::vector<double> adapter_scores, logistic_scores;
    std::vector<int> labels;
    for (const auto& e : test) {
        adapter_scores.push_back(
            models::score_outcome_adapter(trained.adapter, scorer, e).score());
        logistic_scores.push_back(models::predict_proba(logistic, e.encoded));
        labels.push_back(e.label);
    }
    double adapter_auroc = stats::auroc(adapter_scores, labels);
    double logistic_auroc = stats::auroc(logistic_scores, labels);
    require(std::abs(adapter_auroc - logistic_auroc) <= 0.03,
            "adapter AUROC " + fmt(adapter_auroc) + " not within 0.03 of logistic " +
                fmt(logistic_auroc));
}

// ---- 6. chance-level control -----------------------------------------------------

void criterion_chance_level() {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto train_probe = synth::generate_linear_probe(1200, 1000 + seed, true);
        auto test_probe = synth::generate_linear_probe(2000, 2000 + seed, true);

        std::vector<std::vector<double>> lr_x;
        std::vector<int> lr_y;
        for (const auto& e : train_probe.examples) {
            lr_x.push_back(e.encoded);
            lr_y.push_back(e.label);
        }
        models::TrainConfig config;
        config.seed = seed;
        config.max_epochs = 25;
        config.learning_rate = 0.05;
        config.batch_size = 64;
        auto logistic = models::train_logistic(lr_x, lr_y, config);

        models::AdapterDims dims;
        dims.hidden1 = 16;
        dims.hidden2 = 64;
        dims.hidden3 = 16;
        dims.token_dim = 8;
        models::FrozenScorer scorer(dims.token_dim, seed);
        std::vector<models::AdapterExample> train(train_probe.examples.begin(),
                                                  train_probe.examples.begin() + 1000);
        std::vector<models::AdapterExample> val(train_probe.examples.begin() + 1000,
                                                train_probe.examples.end());
        auto trained = models::train_adapter(train, val, scorer, dims, config);

        std::vector<double> adapter_scores, logistic_scores;
        std::vector<int> labels;
        for (const auto& e : test_probe.examples) {
            adapter_scores.push_back(
                models::score_outcome_adapter(trained.adapter, scorer, e).score());
            logistic_scores.push_back(models::predict_proba(logistic, e.encoded));
            labels.push_back(e.label);
        }
        double a = stats::auroc(adapter_scores, labels);
        double l = stats::auroc(logistic_scores, labels);
        require(a >= 0.45 && a <= 0.55,
                "seed " + fmt(seed) + ": adapter AUROC " + fmt(a) + " not chance-level");
        require(l >= 0.45 && l <= 0.55,
                "seed " + fmt(seed) + ": logistic AUROC " + fmt(l) + " not chance-level");
    }
}

// ---- 7. metric oracles -------------------------------------------------------------

double auroc_pair_oracle(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

double auprc_direct_oracle(const std::vector<double>& scores, const std::vector<int>& labels) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    double total_pos = 0;
    for (int y : labels) total_pos += y;
    double ap = 0.0;
    std::size_t i = 0, seen = 0, tp = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        std::size_t block_tp = 0;
        for (std::size_t k = i; k <= j; ++k) block_tp += labels[order[k]] ? 1 : 0;
        seen += j - i + 1;
        tp += block_tp;
        ap += static_cast<double>(tp) / static_cast<double>(seen) *
              static_cast<double>(block_tp);
        i = j + 1;
    }
    return ap / total_pos;
}

void criterion_metric_oracles() {
    Rng rng(777);
    int checked = 0;
    while (checked < 1000) {
        std::size_t n = 2 + rng.next_below(49);
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = static_cast<double>(rng.next_below(10)) / 9.0;  // ties likely
            labels[i] = rng.next_double() < 0.4;
            (labels[i] ? pos : neg) = true;
        }
        if (!pos || !neg) continue;
        ++checked;
        double fast_roc = stats::auroc(scores, labels);
        double slow_roc = auroc_pair_oracle(scores, labels);
        require(std::abs(fast_roc - slow_roc) < 1e-12,
                "AUROC mismatch vs pair counting: " + fmt(fast_roc) + " vs " +
                    fmt(slow_roc));
        double fast_pr = stats::auprc(scores, labels);
        double slow_pr = auprc_direct_oracle(scores, labels);
        require(std::abs(fast_pr - slow_pr) < 1e-12,
                "AUPRC mismatch vs direct average precision");
    }
    auto adjusted = stats::benjamini_hochberg({0.01, 0.04, 0.03, 0.005});
    std::vector<double> expected = {0.02, 0.04, 0.04, 0.02};
    for (std::size_t i = 0; i < 4; ++i) {
        require(std::abs(adjusted[i] - expected[i]) < 1e-12,
                "BH adjustment mismatch at index " + fmt(i));
    }
}

// ---- 8. agreement suite --------------------------------------------------------------

void criterion_agreement_suite() {
    // Perfect agreement: all four metrics exactly 1.
    std::vector<double> v = {1, 2, 3, 4, 5, 3, 2, 4};
    std::vector<int> vi(v.begin(), v.end());
    require(stats::spearman(v, v) == 1.0, "Spearman on identical vectors must be 1");
    require(stats::weighted_kappa(vi, vi) == 1.0, "kappa on identical vectors must be 1");
    std::vector<std::vector<double>> grid = {v, v, v};
    require(stats::kendalls_w(grid) == 1.0, "W on identical rankings must be 1");
    require(stats::icc31(grid) == 1.0, "ICC on identical raters must be 1");

    // Random tables stay in bounds.
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 4 + rng.next_below(10);
        std::vector<double> a(n), b(n);
        std::vector<int> ai(n), bi(n);
        for (std::size_t i = 0; i < n; ++i) {
            ai[i] = 1 + static_cast<int>(rng.next_below(5));
            bi[i] = 1 + static_cast<int>(rng.next_below(5));
            a[i] = ai[i];
            b[i] = bi[i];
        }
        try {
            double rho = stats::spearman(a, b);
            require(rho >= -1 - 1e-12 && rho <= 1 + 1e-12, "Spearman out of bounds");
        } catch (const DegenerateVarianceError&) {
        }
        try {
            double kappa = stats::weighted_kappa(ai, bi);
            require(kappa >= -1 - 1e-12 && kappa <= 1 + 1e-12, "kappa out of bounds");
        } catch (const DegenerateVarianceError&) {
        }
        std::vector<std::vector<double>> table(2 + rng.next_below(3),
                                               std::vector<double>(n));
        for (auto& row : table) {
            for (auto& cell : row) cell = 1 + static_cast<double>(rng.next_below(5));
        }
        try {
            double w = stats::kendalls_w(table);
            require(w >= -1e-12 && w <= 1 + 1e-12, "W out of bounds");
            double icc = stats::icc31(table);
            require(icc >= -1 - 1e-12 && icc <= 1 + 1e-12, "ICC out of bounds");
        } catch (const DegenerateVarianceError&) {
        }
    }

    // W vs the 12S/(m^2(n^3-n)) brute-force oracle on 100 tie-free tables.
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t m = 2 + rng.next_below(4);
        std::size_t n = 3 + rng.next_below(7);
        std::vector<std::vector<double>> ratings(m, std::vector<double>(n));
        for (auto& row : ratings) {
            for (auto& cell : row) cell = rng.next_double();
        }
        std::vector<double> rank_sums(n, 0.0);
        for (const auto& row : ratings) {
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t x, std::size_t y) { return row[x] < row[y]; });
            for (std::size_t r = 0; r < n; ++r) {
                rank_sums[order[r]] += static_cast<double>(r + 1);
            }
        }
        double mean_sum = std::accumulate(rank_sums.begin(), rank_sums.end(), 0.0) /
                          static_cast<double>(n);
        double s = 0.0;
        for (double r : rank_sums) s += (r - mean_sum) * (r - mean_sum);
        double md = static_cast<double>(m), nd = static_cast<double>(n);
        double oracle = 12.0 * s / (md * md * (nd * nd * nd - nd));
        require(std::abs(stats::kendalls_w(ratings) - oracle) < 1e-10,
                "W mismatch vs brute-force oracle");
    }
}

// ---- 9. bootstrap reproducibility and coverage -------------------------------------------

void criterion_bootstrap() {
    std::vector<double> data;
    for (int i = 1; i <= 150; ++i) data.push_back(0.37 * i);
    auto mean = [](const std::vector<double>& v) {
        return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    };
    auto a = stats::bootstrap_ci_values("mean", mean, data, 1000, 99);
    auto b = stats::bootstrap_ci_values("mean", mean, data, 1000, 99);
    require(a.to_json() == b.to_json(),
            "identical (data, B, seed) must produce byte-identical MetricResult");

    int covered = 0;
    const int datasets = 200;
    for (int d = 0; d < datasets; ++d) {
        Rng rng(5000 + d);
        std::vector<double> sample(200);
        for (auto& v : sample) v = 10.0 + 3.0 * rng.next_normal();
        auto result = stats::bootstrap_ci_values("mean", mean, sample, 1000, 9000 + d);
        if (result.ci_lower <= 10.0 && 10.0 <= result.ci_upper) ++covered;
    }
    double rate = 100.0 * covered / datasets;
    require(covered >= 180 && covered <= 198,
            "coverage " + fmt(rate) + "% outside the 90-99% band");
}

// ---- 10. end-to-end determinism -------------------------------------------------------

void criterion_e2e_determinism() {
    const char* bin = std::getenv("WEARLAB_BIN");
    require(bin != nullptr, "WEARLAB_BIN must point at the wearlab binary");

    auto run = [&](const std::string& args) {
        std::string command = std::string(bin) + " " + args + " > /dev/null 2>&1";
        int status = std::system(command.c_str());
        require(WEXITSTATUS(status) == 0, "command failed: " + args);
    };

    fs::path base = fs::temp_directory_path() /
                    ("wearlab_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(base);
    std::vector<std::string> reports;
    for (int round = 0; round < 2; ++round) {
        fs::path dir = base / ("round" + std::to_string(round));
        fs::create_directories(dir);
        std::string store = (dir / "store").string();
        std::string dataset = (dir / "dataset.json").string();
        std::string model = (dir / "model.json").string();
        std::string preds = (dir / "preds.json").string();
        std::string report = (dir / "report.json").string();
        run("synth --out " + store + " --participants 150 --seed 77");
        run("pro build --store " + store + " --seed 77 --out " + dataset);
        run("train --model logistic --dataset " + dataset +
            " --item \"Very restless\" --seed 77 --out " + model + " --predictions-out " +
            preds);
        run("eval --dataset " + dataset + " --predictions " + preds +
            " --metrics auroc,auprc --bootstrap 200 --seed 77 --out " + report);
        reports.push_back(read_file(report));
    }
    fs::remove_all(base);
    require(reports[0] == reports[1],
            "two same-seed pipeline runs must produce identical report.json");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1. ACWR reproduction (346/940 -> chronic 235, display 1.5)", 1.0,
         criterion_acwr_reproduction},
        {"2. ACWR band thresholds strict at 1.5 and 0.7 (1e-9 sweep)", 1.0,
         criterion_threshold_semantics},
        {"3. Prompt templates match checked-in goldens byte-exactly", 1.0,
         criterion_prompt_goldens},
        {"4. PRO pipeline shape, split rule and stats provenance (500 participants)",
         10.0, criterion_pro_pipeline_shape},
        {"5. Adapter mechanism: gradient check, parity with logistic, frozen scorer",
         120.0, criterion_adapter_mechanism},
        {"6. Chance-level control on permuted labels (5 seeds)", 120.0,
         criterion_chance_level},
        {"7. AUROC/AUPRC oracles (1000 instances, 1e-12) and BH worked example", 10.0,
         criterion_metric_oracles},
        {"8. Agreement suite: exact ones, bounds, W brute-force oracle", 10.0,
         criterion_agreement_suite},
        {"9. Bootstrap byte-determinism and 90-99% coverage", 30.0, criterion_bootstrap},
        {"10. End-to-end pipeline determinism (same seed, identical report)", 120.0,
         criterion_e2e_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criterion.run();
        } catch (const std::exception& e) {
            failure = e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (failure.empty() && elapsed > criterion.time_limit_sec) {
            failure = "exceeded " + fmt(criterion.time_limit_sec) + "s budget (" +
                      fmt(elapsed) + "s)";
        }
        if (failure.empty()) {
            std::printf("PASS  %-72s (%.2fs)\n", criterion.name.c_str(), elapsed);
        } else {
            std::printf("FAIL  %-72s (%.2fs): %s\n", criterion.name.c_str(), elapsed,
                        failure.c_str());
            ++failures;
        }
    }
    if (failures) {
        std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return 0;
}

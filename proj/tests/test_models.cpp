#include <doctest.h>

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "wearlab/errors.hpp"
#include "wearlab/llm_client.hpp"
#include "wearlab/models.hpp"
#include "wearlab/rng.hpp"
#include "wearlab/stats.hpp"
#include "wearlab/synth.hpp"

using namespace wearlab;
using namespace wearlab::models;

TEST_SUITE_BEGIN("models");

namespace {

struct Dataset {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
};

Dataset linear_dataset(std::size_t n, std::uint64_t seed, bool shuffle_labels = false) {
    Dataset data;
    Rng rng(seed);
    std::vector<double> weights(8);
    for (auto& w : weights) w = rng.next_normal();
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(8);
        double score = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] = rng.next_normal();
            score += weights[j] * x[j];
        }
        data.features.push_back(x);
        data.labels.push_back(score > 0 ? 1 : 0);
    }
    if (shuffle_labels) {
        for (std::size_t i = data.labels.size(); i > 1; --i) {
            std::swap(data.labels[i - 1], data.labels[rng.next_below(i)]);
        }
    }
    return data;
}

double auroc_of(const LogisticModel& model, const Dataset& data) {
    std::vector<double> scores;
    for (const auto& x : data.features) scores.push_back(predict_proba(model, x));
    return stats::auroc(scores, data.labels);
}

}  // namespace

TEST_CASE("logistic training separates linearly separable data") {
    auto data = linear_dataset(400, 3);
    TrainConfig config;
    config.seed = 3;
    auto model = train_logistic(data.features, data.labels, config);
    CHECK(auroc_of(model, data) > 0.99);
}

TEST_CASE("logistic on label noise stays at chance") {
    auto train = linear_dataset(300, 5, /*shuffle_labels=*/true);
    auto test = linear_dataset(4000, 6, /*shuffle_labels=*/true);
    TrainConfig config;
    config.seed = 5;
    auto model = train_logistic(train.features, train.labels, config);
    CHECK(auroc_of(model, test) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("logistic requires both classes") {
    Dataset data;
    data.features = {{1.0}, {2.0}};
    data.labels = {1, 1};
    CHECK_THROWS_AS(train_logistic(data.features, data.labels, TrainConfig{}),
                    SingleClassError);
}

TEST_CASE("zero-weight model predicts one half everywhere") {
    LogisticModel model;
    model.weights = {0.0, 0.0, 0.0};
    model.bias = 0.0;
    CHECK(predict_proba(model, {5.0, -3.0, 100.0}) == doctest::Approx(0.5));
}

TEST_CASE("predict_proba is the sigmoid of the linear score, clipped") {
    LogisticModel model;
    model.weights = {1.0};
    model.bias = 0.0;
    CHECK(predict_proba(model, {0.5}) == doctest::Approx(1.0 / (1.0 + std::exp(-0.5))));
    model.weights = {1e6};
    double p = predict_proba(model, {1e6});
    CHECK(p < 1.0);
    CHECK(p > 0.0);
    CHECK_THROWS_AS(predict_proba(model, {1.0, 2.0}), DimensionError);
}

TEST_CASE("logistic monotonicity in a positive-weight feature") {
    auto data = linear_dataset(200, 8);
    TrainConfig config;
    config.seed = 8;
    auto model = train_logistic(data.features, data.labels, config);
    std::size_t j = 0;
    for (std::size_t k = 0; k < model.weights.size(); ++k) {
        if (model.weights[k] > model.weights[j]) j = k;
    }
    REQUIRE(model.weights[j] > 0);
    std::vector<double> x(model.weights.size(), 0.1);
    double prev = 0.0;
    for (double v = -2.0; v <= 2.0; v += 0.25) {
        x[j] = v;
        double p = predict_proba(model, x);
        if (v > -2.0) CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("logistic reports non-convergence with the best iterate") {
    auto data = linear_dataset(200, 44);
    TrainConfig config;
    config.seed = 44;
    config.max_epochs = 1;  // cannot reach the gradient tolerance
    auto model = train_logistic(data.features, data.labels, config);
    CHECK_FALSE(model.converged);
    CHECK(model.weights.size() == 8);
    for (double w : model.weights) CHECK(std::isfinite(w));
}

TEST_CASE("logistic model json round trip") {
    auto data = linear_dataset(100, 13);
    TrainConfig config;
    config.seed = 13;
    auto model = train_logistic(data.features, data.labels, config);
    auto back = LogisticModel::from_json(model.to_json());
    CHECK(back.weights == model.weights);
    CHECK(back.bias == model.bias);
}

TEST_CASE("adapter forward pass shape and zero behavior") {
    AdapterDims dims;
    dims.input = 40;
    dims.hidden1 = 8;
    dims.hidden2 = 16;
    dims.hidden3 = 8;
    dims.token_dim = 4;
    MLPAdapter adapter(dims, 21);
    std::vector<double> input(40, 0.5);
    auto out = adapter.forward(input);
    CHECK(out.size() == 8);  // 2 tokens x d=4

    SUBCASE("zero weights produce zero tokens") {
        std::fill(adapter.parameters().begin(), adapter.parameters().end(), 0.0);
        auto zeros = adapter.forward(input);
        for (double v : zeros) CHECK(v == 0.0);
    }
    SUBCASE("wrong input length raises DimensionError") {
        CHECK_THROWS_AS(adapter.forward(std::vector<double>(39, 0.0)), DimensionError);
    }
    SUBCASE("json round trip preserves the forward pass") {
        auto back = MLPAdapter::from_json(adapter.to_json());
        auto a = adapter.forward(input);
        auto b = back.forward(input);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("adapter forward matches an independent matrix oracle on a toy config") {
    AdapterDims dims;
    dims.input = 3;
    dims.hidden1 = 2;
    dims.hidden2 = 2;
    dims.hidden3 = 2;
    dims.token_dim = 1;
    MLPAdapter adapter(dims, 5);
    const auto& params = adapter.parameters();
    std::vector<double> input = {0.3, -0.7, 1.1};

    // Straightforward re-implementation: layer sizes 3 -> 2 -> 2 -> 2 -> 2.
    auto layer = [&](const std::vector<double>& in, std::size_t offset,
                     std::size_t in_size, std::size_t out_size, bool relu) {
        std::vector<double> out(out_size, 0.0);
        for (std::size_t o = 0; o < out_size; ++o) {
            double sum = params[offset + in_size * out_size + o];
            for (std::size_t i = 0; i < in_size; ++i) {
                sum += params[offset + o * in_size + i] * in[i];
            }
            out[o] = relu ? std::max(0.0, sum) : sum;
        }
        return out;
    };
    std::size_t off0 = 0;
    std::size_t off1 = off0 + 3 * 2 + 2;
    std::size_t off2 = off1 + 2 * 2 + 2;
    std::size_t off3 = off2 + 2 * 2 + 2;
    auto h1 = layer(input, off0, 3, 2, true);
    auto h2 = layer(h1, off1, 2, 2, true);
    auto h3 = layer(h2, off2, 2, 2, true);
    auto expected = layer(h3, off3, 2, 2, false);

    auto actual = adapter.forward(input);
    REQUIRE(actual.size() == expected.size());
    for (std::size_t i = 0; i < actual.size(); ++i) {
        CHECK(actual[i] == doctest::Approx(expected[i]).epsilon(1e-10));
    }
}

namespace {

std::vector<AdapterExample> toy_examples(std::size_t n, std::uint64_t seed,
                                         std::size_t input_dim) {
    std::vector<AdapterExample> out;
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        AdapterExample e;
        e.encoded.resize(input_dim);
        for (auto& v : e.encoded) v = rng.next_normal();
        e.prompt_means.resize(pro::kFeatureCount);
        for (auto& v : e.prompt_means) v = 10.0 * rng.next_double();
        e.label = rng.next_double() < 0.5;
        out.push_back(e);
    }
    // guarantee both classes
    out[0].label = 0;
    out[n - 1].label = 1;
    return out;
}

}  // namespace

TEST_CASE("analytic adapter gradient matches central finite differences") {
    // Property over 10 fixed seeds; every parameter must pass at 1e-4.
    AdapterDims dims;
    dims.input = 40;
    dims.hidden1 = 8;
    dims.hidden2 = 16;
    dims.hidden3 = 8;
    dims.token_dim = 4;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        MLPAdapter adapter(dims, seed);
        FrozenScorer scorer(dims.token_dim, seed + 100);
        auto batch = toy_examples(6, seed + 200, dims.input);

        std::vector<double> grad;
        adapter_loss_and_grad(adapter, scorer, batch, &grad);

        auto& params = adapter.parameters();
        const double h = 1e-5;
        double worst = 0.0;
        for (std::size_t j = 0; j < params.size(); ++j) {
            double saved = params[j];
            params[j] = saved + h;
            double up = adapter_loss_and_grad(adapter, scorer, batch, nullptr);
            params[j] = saved - h;
            double down = adapter_loss_and_grad(adapter, scorer, batch, nullptr);
            params[j] = saved;
            double numeric = (up - down) / (2.0 * h);
            double rel = std::abs(grad[j] - numeric) /
                         std::max(1.0, std::abs(grad[j]) + std::abs(numeric));
            worst = std::max(worst, rel);
        }
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("zero learning rate leaves the adapter parameters unchanged") {
    AdapterDims dims;
    dims.input = 40;
    dims.hidden1 = 8;
    dims.hidden2 = 8;
    dims.hidden3 = 8;
    dims.token_dim = 4;
    FrozenScorer scorer(dims.token_dim, 77);
    auto examples = toy_examples(20, 31, dims.input);
    TrainConfig config;
    config.learning_rate = 0.0;
    config.max_epochs = 3;
    config.seed = 31;
    auto result = train_adapter(examples, {}, scorer, dims, config);
    MLPAdapter initial(dims, config.seed);
    CHECK(result.adapter.parameters() == initial.parameters());
}

TEST_CASE("a non-finite loss aborts as DivergenceError") {
    // The training loop computes every batch loss through this path, so a
    // diverged parameter state (NaN) must surface instead of propagating.
    auto examples = toy_examples(8, 61, 40);
    AdapterDims dims;
    dims.input = 40;
    dims.hidden1 = 8;
    dims.hidden2 = 16;
    dims.hidden3 = 8;
    dims.token_dim = 4;
    FrozenScorer scorer(dims.token_dim, 61);
    MLPAdapter adapter(dims, 61);
    // Last parameter is an output-layer bias: no ReLU in the way, so the NaN
    // reaches the logits.
    adapter.parameters().back() = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(adapter_loss_and_grad(adapter, scorer, examples, nullptr),
                    DivergenceError);
}

TEST_CASE("adapter training is deterministic and never mutates the frozen scorer") {
    auto probe = synth::generate_linear_probe(300, 17);
    std::vector<AdapterExample> train(probe.examples.begin(), probe.examples.begin() + 240);
    std::vector<AdapterExample> val(probe.examples.begin() + 240, probe.examples.end());

    AdapterDims dims;
    dims.hidden1 = 16;
    dims.hidden2 = 32;
    dims.hidden3 = 16;
    dims.token_dim = 8;
    FrozenScorer scorer(dims.token_dim, 55);
    std::string scorer_before = scorer.to_json();

    TrainConfig config;
    config.seed = 55;
    config.max_epochs = 20;
    config.learning_rate = 0.05;
    auto a = train_adapter(train, val, scorer, dims, config);
    auto b = train_adapter(train, val, scorer, dims, config);
    CHECK(a.adapter.parameters() == b.adapter.parameters());
    CHECK(scorer.to_json() == scorer_before);
    CHECK(a.epochs_run > 0);
}

TEST_CASE("trained adapter tracks the logistic baseline on a known linear rule") {
    auto probe = synth::generate_linear_probe(900, 23);
    std::vector<AdapterExample> train(probe.examples.begin(), probe.examples.begin() + 600);
    std::vector<AdapterExample> val(probe.examples.begin() + 600,
                                    probe.examples.begin() + 700);
    std::vector<AdapterExample> test(probe.examples.begin() + 700, probe.examples.end());

    AdapterDims dims;
    dims.hidden1 = 16;
    dims.hidden2 = 64;
    dims.hidden3 = 16;
    dims.token_dim = 8;
    FrozenScorer scorer(dims.token_dim, 23);
    TrainConfig config;
    config.seed = 23;
    config.max_epochs = 100;
    config.learning_rate = 0.3;
    config.patience = 15;
    auto result = train_adapter(train, val, scorer, dims, config);

    std::vector<std::vector<double>> lr_x;
    std::vector<int> lr_y;
    for (const auto& e : train) {
        lr_x.push_back(e.encoded);
        lr_y.push_back(e.label);
    }
    auto logistic = train_logistic(lr_x, lr_y, config);

    std::vector<double> adapter_scores, logistic_scores;
    std::vector<int> labels;
    for (const auto& e : test) {
        adapter_scores.push_back(
            score_outcome_adapter(result.adapter, scorer, e).score());
        logistic_scores.push_back(predict_proba(logistic, e.encoded));
        labels.push_back(e.label);
    }
    double adapter_auroc = stats::auroc(adapter_scores, labels);
    double logistic_auroc = stats::auroc(logistic_scores, labels);
    CHECK(std::abs(adapter_auroc - logistic_auroc) < 0.03);
    CHECK(adapter_auroc > 0.9);
}

TEST_CASE("score_outcome behaviors") {
    SUBCASE("symmetric scorer gives equal log-likelihoods") {
        AdapterDims dims;
        dims.input = 40;
        dims.hidden1 = 4;
        dims.hidden2 = 4;
        dims.hidden3 = 4;
        dims.token_dim = 2;
        MLPAdapter adapter(dims, 3);
        // A scorer with identical yes/no heads: serialize one and duplicate.
        FrozenScorer scorer(dims.token_dim, 9);
        auto doc = nlohmann::ordered_json::parse(scorer.to_json());
        auto weights = doc["token_weights"].get<std::vector<double>>();
        std::size_t half = weights.size() / 2;
        for (std::size_t i = 0; i < half; ++i) weights[half + i] = weights[i];
        doc["token_weights"] = weights;
        auto proj_w = doc["proj_weights"].get<std::vector<double>>();
        std::size_t proj_half = proj_w.size() / 2;
        for (std::size_t i = 0; i < proj_half; ++i) proj_w[proj_half + i] = proj_w[i];
        doc["proj_weights"] = proj_w;
        auto bias = doc["bias"].get<std::vector<double>>();
        bias[1] = bias[0];
        doc["bias"] = bias;
        auto symmetric = FrozenScorer::from_json(doc.dump());

        AdapterExample example;
        example.encoded.assign(40, 0.25);
        example.prompt_means.assign(pro::kFeatureCount, 1.0);
        auto outcome = score_outcome_adapter(adapter, symmetric, example);
        CHECK(outcome.loglik_yes == doctest::Approx(outcome.loglik_no));
        CHECK(outcome.score() == doctest::Approx(0.0));
    }
    SUBCASE("zero-shot via the stub client is deterministic") {
        prompts::StubLlmClient client(41);
        prompts::ProPromptInput input;
        input.age_bucket = "[20-22]";
        input.feature_means.fill(1.0);
        auto a = score_outcome_text(client, input, "Very restless",
                                    ScoreMode::zero_shot, {});
        auto b = score_outcome_text(client, input, "Very restless",
                                    ScoreMode::zero_shot, {});
        CHECK(a.loglik_yes == b.loglik_yes);
        CHECK(a.loglik_no == b.loglik_no);
        CHECK(std::isfinite(a.loglik_yes));
    }
    SUBCASE("few-shot passes exemplar blocks through to the client") {
        // A recording client that captures the prompt.
        struct Recorder : prompts::LlmClient {
            std::string last_prompt;
            std::string complete(const std::string&) override { return ""; }
            std::vector<double> score(const std::string& prompt,
                                      const std::vector<std::string>& c) override {
                last_prompt = prompt;
                return std::vector<double>(c.size(), -1.0);
            }
        } recorder;
        prompts::ProPromptInput input;
        input.age_bucket = "[20-22]";
        input.feature_means.fill(2.0);
        std::vector<prompts::ProExemplar> exemplars(7);
        for (auto& e : exemplars) {
            e.input = input;
            e.label = true;
        }
        score_outcome_text(recorder, input, "Very restless", ScoreMode::few_shot,
                           exemplars);
        std::size_t blocks = 0, pos = 0;
        while ((pos = recorder.last_prompt.find("Use the information provided", pos)) !=
               std::string::npos) {
            ++blocks;
            pos += 1;
        }
        CHECK(blocks == 8);  // 7 exemplars + the scored example
    }
    SUBCASE("score order is invariant to adding a constant to both log-likelihoods") {
        OutcomeScore a{-1.0, -2.0};
        OutcomeScore b{-1.0 + 5.0, -2.0 + 5.0};
        CHECK(a.score() == doctest::Approx(b.score()));
    }
}

TEST_SUITE_END();

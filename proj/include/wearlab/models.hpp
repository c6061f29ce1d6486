#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wearlab/prompts.hpp"
#include "wearlab/pro.hpp"

namespace wearlab::models {

struct TrainConfig {
    double learning_rate = 0.05;
    std::size_t batch_size = 32;
    int max_epochs = 200;
    std::uint64_t seed = 0;
    int patience = 10;  // early stop on validation loss
    double l2 = 1e-3;   // logistic regularization strength

    void validate() const;
};

// --- logistic baseline -------------------------------------------------------

struct LogisticModel {
    std::vector<double> weights;
    double bias = 0.0;
    double l2 = 0.0;
    bool converged = true;

    std::string to_json() const;
    static LogisticModel from_json(const std::string& text);
};

// L2-regularized negative log-likelihood minimized by full-batch gradient
// descent with an adaptive step; converged when the gradient max-norm drops
// below 1e-6. Non-convergence returns the best iterate with converged=false.
LogisticModel train_logistic(const std::vector<std::vector<double>>& features,
                             const std::vector<int>& labels, const TrainConfig& config);

// Sigmoid of the linear score, clipped inside (1e-12, 1 - 1e-12).
double predict_proba(const LogisticModel& model, const std::vector<double>& features);

// --- MLP adapter ---------------------------------------------------------------

struct AdapterDims {
    std::size_t input = 2 * pro::kFeatureCount;  // 40 encoded values
    std::size_t hidden1 = 64;
    std::size_t hidden2 = 256;
    std::size_t hidden3 = 64;
    std::size_t token_dim = 32;  // d; output is 2 tokens of this width

    std::size_t output() const { return 2 * token_dim; }
    static AdapterDims paper_scale(std::size_t token_dim);
};

// Three ReLU hidden layers and a linear output reshaped to 2 prefix tokens.
class MLPAdapter {
public:
    MLPAdapter() = default;
    MLPAdapter(const AdapterDims& dims, std::uint64_t seed);

    const AdapterDims& dims() const { return dims_; }

    // Forward pass; input must have length dims().input. Returns 2*token_dim
    // values (token 0 then token 1).
    std::vector<double> forward(const std::vector<double>& input) const;

    std::vector<double>& parameters() { return params_; }
    const std::vector<double>& parameters() const { return params_; }

    std::string to_json() const;
    static MLPAdapter from_json(const std::string& text);

    // Forward pass retaining activations, and the matching backward pass.
    struct Trace {
        std::vector<double> input;
        std::vector<std::vector<double>> pre;   // pre-activations per layer
        std::vector<std::vector<double>> post;  // post-activations per layer
    };
    std::vector<double> forward_trace(const std::vector<double>& input,
                                      Trace& trace) const;
    // Accumulates dLoss/dParams into grad given dLoss/dOutput.
    void backward(const Trace& trace, const std::vector<double>& output_grad,
                  std::vector<double>& grad) const;

private:
    AdapterDims dims_;
    std::vector<std::size_t> layer_sizes_;
    std::vector<double> params_;  // per layer: weights row-major then biases

    std::size_t layer_offset(std::size_t layer) const;
};

// --- frozen scorer --------------------------------------------------------------

// Stand-in for the frozen language model: a seeded, immutable linear map from
// (2 prefix tokens, low-dimensional projection of the prompt feature means)
// to two logits (yes, no). Training the adapter backpropagates through this
// function without ever updating it.
class FrozenScorer {
public:
    FrozenScorer() = default;
    FrozenScorer(std::size_t token_dim, std::uint64_t seed,
                 std::size_t projection_dim = 4);

    std::size_t token_dim() const { return token_dim_; }

    // logits = W * tokens + V * (P * prompt_means) + b
    std::array<double, 2> logits(const std::vector<double>& tokens,
                                 const std::vector<double>& prompt_means) const;

    // dLoss/dTokens given dLoss/dLogits.
    std::vector<double> token_grad(const std::array<double, 2>& logit_grad) const;

    std::string to_json() const;  // byte-stable serialization
    static FrozenScorer from_json(const std::string& text);

private:
    std::size_t token_dim_ = 0;
    std::size_t projection_dim_ = 0;
    std::vector<double> token_weights_;   // 2 x (2*token_dim)
    std::vector<double> proj_;            // projection_dim x kFeatureCount
    std::vector<double> proj_weights_;    // 2 x projection_dim
    std::array<double, 2> bias_{};
};

// --- adapter training --------------------------------------------------------------

struct AdapterExample {
    std::vector<double> encoded;       // 40 z-scored values
    std::vector<double> prompt_means;  // 20 native-unit means
    int label = 0;
};

struct AdapterTrainResult {
    MLPAdapter adapter;
    double final_train_loss = 0.0;
    double best_val_loss = 0.0;
    int epochs_run = 0;
};

// Softmax cross-entropy of scorer logits vs labels, minimized by mini-batch
// gradient descent on adapter parameters only. Deterministic given (data,
// config, seed); DivergenceError on NaN loss.
AdapterTrainResult train_adapter(const std::vector<AdapterExample>& train,
                                 const std::vector<AdapterExample>& validation,
                                 const FrozenScorer& scorer, const AdapterDims& dims,
                                 const TrainConfig& config);

// Full loss and analytic gradient at the current parameters (exposed for
// gradient checking).
double adapter_loss_and_grad(const MLPAdapter& adapter, const FrozenScorer& scorer,
                             const std::vector<AdapterExample>& batch,
                             std::vector<double>* grad);

// --- outcome scoring ---------------------------------------------------------------

enum class ScoreMode { adapter, zero_shot, few_shot };

struct OutcomeScore {
    double loglik_yes = 0.0;
    double loglik_no = 0.0;
    double score() const { return loglik_yes - loglik_no; }
};

// Adapter mode: log-softmax of scorer logits on the adapter's prefix tokens.
OutcomeScore score_outcome_adapter(const MLPAdapter& adapter, const FrozenScorer& scorer,
                                   const AdapterExample& example);

// Zero/few-shot: renders the PRO text prompt and asks the client for the
// log-likelihoods of "yes." and "no.".
OutcomeScore score_outcome_text(prompts::LlmClient& client,
                                const prompts::ProPromptInput& input,
                                const std::string& item, ScoreMode mode,
                                const std::vector<prompts::ProExemplar>& exemplars);

}  // namespace wearlab::models

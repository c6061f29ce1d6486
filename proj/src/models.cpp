#include "wearlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "wearlab/errors.hpp"
#include "wearlab/rng.hpp"

using json = nlohmann::ordered_json;

namespace wearlab::models {

void TrainConfig::validate() const {
    if (learning_rate < 0 || batch_size == 0 || max_epochs <= 0 || patience < 0 ||
        l2 < 0) {
        throw ValueError("train config values must be positive");
    }
}

namespace {

constexpr double kProbEps = 1e-12;

double sigmoid(double x) {
    if (x >= 0) {
        double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

void require_both_classes(const std::vector<int>& labels) {
    bool pos = false, neg = false;
    for (int y : labels) (y ? pos : neg) = true;
    if (!pos || !neg) throw SingleClassError("training needs both classes present");
}

}  // namespace

std::string LogisticModel::to_json() const {
    json doc;
    doc["version"] = 1;
    doc["kind"] = "logistic";
    doc["weights"] = weights;
    doc["bias"] = bias;
    doc["l2"] = l2;
    doc["converged"] = converged;
    return doc.dump();
}

LogisticModel LogisticModel::from_json(const std::string& text) {
    json doc = json::parse(text);
    LogisticModel model;
    model.weights = doc.at("weights").get<std::vector<double>>();
    model.bias = doc.at("bias").get<double>();
    model.l2 = doc.at("l2").get<double>();
    model.converged = doc.at("converged").get<bool>();
    return model;
}

LogisticModel train_logistic(const std::vector<std::vector<double>>& features,
                             const std::vector<int>& labels, const TrainConfig& config) {
    config.validate();
    if (features.size() != labels.size() || features.size() < 2) {
        throw DimensionError("need aligned features and labels with >= 2 examples");
    }
    require_both_classes(labels);
    const std::size_t n = features.size();
    const std::size_t dim = features[0].size();
    for (const auto& row : features) {
        if (row.size() != dim) throw DimensionError("ragged feature matrix");
    }

    LogisticModel model;
    model.weights.assign(dim, 0.0);
    model.l2 = config.l2;

    // Mean NLL + (l2/2)*||w||^2 (bias unregularized); adaptive-step full-batch
    // gradient descent.
    auto loss_of = [&](const std::vector<double>& w, double b) {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double score = b;
            for (std::size_t j = 0; j < dim; ++j) score += w[j] * features[i][j];
            // log(1 + exp(-margin)) with the stable form
            double margin = labels[i] ? score : -score;
            loss += margin > 0 ? std::log1p(std::exp(-margin))
                               : -margin + std::log1p(std::exp(margin));
        }
        loss /= static_cast<double>(n);
        double reg = 0.0;
        for (double v : w) reg += v * v;
        return loss + 0.5 * config.l2 * reg;
    };

    std::vector<double> grad(dim, 0.0);
    double bias_grad = 0.0;
    double step = config.learning_rate;
    double best_loss = loss_of(model.weights, model.bias);
    std::vector<double> best_w = model.weights;
    double best_b = model.bias;
    model.converged = false;

    for (int iter = 0; iter < config.max_epochs; ++iter) {
        std::fill(grad.begin(), grad.end(), 0.0);
        bias_grad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double score = model.bias;
            for (std::size_t j = 0; j < dim; ++j) {
                score += model.weights[j] * features[i][j];
            }
            double residual = sigmoid(score) - static_cast<double>(labels[i]);
            for (std::size_t j = 0; j < dim; ++j) {
                grad[j] += residual * features[i][j];
            }
            bias_grad += residual;
        }
        double max_norm = std::abs(bias_grad / static_cast<double>(n));
        for (std::size_t j = 0; j < dim; ++j) {
            grad[j] = grad[j] / static_cast<double>(n) + config.l2 * model.weights[j];
            max_norm = std::max(max_norm, std::abs(grad[j]));
        }
        bias_grad /= static_cast<double>(n);
        if (max_norm < 1e-6) {
            model.converged = true;
            break;
        }

        std::vector<double> next_w = model.weights;
        for (std::size_t j = 0; j < dim; ++j) next_w[j] -= step * grad[j];
        double next_b = model.bias - step * bias_grad;
        double next_loss = loss_of(next_w, next_b);
        if (next_loss <= best_loss + 1e-15) {
            model.weights = std::move(next_w);
            model.bias = next_b;
            best_loss = next_loss;
            best_w = model.weights;
            best_b = model.bias;
            step *= 1.1;
        } else {
            step *= 0.5;
            if (step < 1e-12) break;
        }
    }
    if (!model.converged) {
        model.weights = best_w;  // best iterate, reported with a warning flag
        model.bias = best_b;
    }
    return model;
}

double predict_proba(const LogisticModel& model, const std::vector<double>& features) {
    if (features.size() != model.weights.size()) {
        throw DimensionError("feature dimension " + std::to_string(features.size()) +
                             " does not match model dimension " +
                             std::to_string(model.weights.size()));
    }
    double score = model.bias;
    for (std::size_t j = 0; j < features.size(); ++j) {
        score += model.weights[j] * features[j];
    }
    return std::clamp(sigmoid(score), kProbEps, 1.0 - kProbEps);
}

// --- MLP adapter --------------------------------------------------------------------

AdapterDims AdapterDims::paper_scale(std::size_t token_dim) {
    AdapterDims dims;
    dims.hidden1 = 1024;
    dims.hidden2 = 4096;
    dims.hidden3 = 1024;
    dims.token_dim = token_dim;
    return dims;
}

MLPAdapter::MLPAdapter(const AdapterDims& dims, std::uint64_t seed) : dims_(dims) {
    layer_sizes_ = {dims.input, dims.hidden1, dims.hidden2, dims.hidden3, dims.output()};
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
        total += layer_sizes_[l] * layer_sizes_[l + 1] + layer_sizes_[l + 1];
    }
    params_.resize(total);
    Rng rng(seed, 0);
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
        const std::size_t fan_in = layer_sizes_[l];
        const std::size_t fan_out = layer_sizes_[l + 1];
        const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
        for (std::size_t i = 0; i < fan_in * fan_out; ++i) {
            params_[offset++] = scale * rng.next_normal();
        }
        for (std::size_t i = 0; i < fan_out; ++i) params_[offset++] = 0.0;
    }
}

std::size_t MLPAdapter::layer_offset(std::size_t layer) const {
    std::size_t offset = 0;
    for (std::size_t l = 0; l < layer; ++l) {
        offset += layer_sizes_[l] * layer_sizes_[l + 1] + layer_sizes_[l + 1];
    }
    return offset;
}

std::vector<double> MLPAdapter::forward(const std::vector<double>& input) const {
    Trace trace;
    return forward_trace(input, trace);
}

std::vector<double> MLPAdapter::forward_trace(const std::vector<double>& input,
                                              Trace& trace) const {
    if (input.size() != dims_.input) {
        throw DimensionError("adapter expects input length " +
                             std::to_string(dims_.input) + ", got " +
                             std::to_string(input.size()));
    }
    trace.input = input;
    trace.pre.clear();
    trace.post.clear();

    std::vector<double> current = input;
    const std::size_t layers = layer_sizes_.size() - 1;
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t in_size = layer_sizes_[l];
        const std::size_t out_size = layer_sizes_[l + 1];
        const double* weights = params_.data() + layer_offset(l);
        const double* biases = weights + in_size * out_size;

        std::vector<double> pre(out_size);
        for (std::size_t o = 0; o < out_size; ++o) {
            double sum = biases[o];
            const double* row = weights + o * in_size;
            for (std::size_t i = 0; i < in_size; ++i) sum += row[i] * current[i];
            pre[o] = sum;
        }
        trace.pre.push_back(pre);
        const bool last = l + 1 == layers;
        std::vector<double> post(out_size);
        for (std::size_t o = 0; o < out_size; ++o) {
            post[o] = last ? pre[o] : std::max(0.0, pre[o]);  // rectifier
        }
        trace.post.push_back(post);
        current = trace.post.back();
    }
    return current;
}

void MLPAdapter::backward(const Trace& trace, const std::vector<double>& output_grad,
                          std::vector<double>& grad) const {
    const std::size_t layers = layer_sizes_.size() - 1;
    if (grad.size() != params_.size()) grad.assign(params_.size(), 0.0);

    std::vector<double> delta = output_grad;  // dLoss/dPre for the current layer
    for (std::size_t l = layers; l-- > 0;) {
        const std::size_t in_size = layer_sizes_[l];
        const std::size_t out_size = layer_sizes_[l + 1];
        const bool last = l + 1 == layers;
        if (!last) {
            // delta currently holds dLoss/dPost; fold in the ReLU mask.
            for (std::size_t o = 0; o < out_size; ++o) {
                if (trace.pre[l][o] <= 0.0) delta[o] = 0.0;
            }
        }
        const std::vector<double>& input =
            l == 0 ? trace.input : trace.post[l - 1];
        double* weight_grad = grad.data() + layer_offset(l);
        double* bias_grad = weight_grad + in_size * out_size;
        for (std::size_t o = 0; o < out_size; ++o) {
            double* row = weight_grad + o * in_size;
            for (std::size_t i = 0; i < in_size; ++i) row[i] += delta[o] * input[i];
            bias_grad[o] += delta[o];
        }
        if (l > 0) {
            const double* weights = params_.data() + layer_offset(l);
            std::vector<double> prev(in_size, 0.0);
            for (std::size_t o = 0; o < out_size; ++o) {
                const double* row = weights + o * in_size;
                for (std::size_t i = 0; i < in_size; ++i) prev[i] += row[i] * delta[o];
            }
            delta = std::move(prev);
        }
    }
}

std::string MLPAdapter::to_json() const {
    json doc;
    doc["version"] = 1;
    doc["kind"] = "mlp_adapter";
    json dims;
    dims["input"] = dims_.input;
    dims["hidden1"] = dims_.hidden1;
    dims["hidden2"] = dims_.hidden2;
    dims["hidden3"] = dims_.hidden3;
    dims["token_dim"] = dims_.token_dim;
    doc["dims"] = dims;
    doc["params"] = params_;
    return doc.dump();
}

MLPAdapter MLPAdapter::from_json(const std::string& text) {
    json doc = json::parse(text);
    AdapterDims dims;
    dims.input = doc.at("dims").at("input").get<std::size_t>();
    dims.hidden1 = doc.at("dims").at("hidden1").get<std::size_t>();
    dims.hidden2 = doc.at("dims").at("hidden2").get<std::size_t>();
    dims.hidden3 = doc.at("dims").at("hidden3").get<std::size_t>();
    dims.token_dim = doc.at("dims").at("token_dim").get<std::size_t>();
    MLPAdapter adapter(dims, 0);
    adapter.params_ = doc.at("params").get<std::vector<double>>();
    return adapter;
}

// --- frozen scorer --------------------------------------------------------------------

FrozenScorer::FrozenScorer(std::size_t token_dim, std::uint64_t seed,
                           std::size_t projection_dim)
    : token_dim_(token_dim), projection_dim_(projection_dim) {
    Rng rng(seed, 1);
    token_weights_.resize(2 * 2 * token_dim_);
    const double token_scale = 1.0 / std::sqrt(static_cast<double>(2 * token_dim_));
    for (auto& w : token_weights_) w = token_scale * rng.next_normal();
    proj_.resize(projection_dim_ * pro::kFeatureCount);
    const double proj_scale = 1.0 / std::sqrt(static_cast<double>(pro::kFeatureCount));
    for (auto& w : proj_) w = proj_scale * rng.next_normal();
    proj_weights_.resize(2 * projection_dim_);
    for (auto& w : proj_weights_) w = 0.05 * rng.next_normal();
    bias_[0] = 0.1 * rng.next_normal();
    bias_[1] = 0.1 * rng.next_normal();
}

std::array<double, 2> FrozenScorer::logits(const std::vector<double>& tokens,
                                           const std::vector<double>& prompt_means) const {
    if (tokens.size() != 2 * token_dim_) {
        throw DimensionError("scorer expects " + std::to_string(2 * token_dim_) +
                             " token values, got " + std::to_string(tokens.size()));
    }
    if (prompt_means.size() != pro::kFeatureCount) {
        throw DimensionError("scorer expects 20 prompt features");
    }
    // The prompt-feature pathway is squashed so native units (step counts in
    // the thousands, efficiencies below one) cannot dominate the token logits.
    std::vector<double> projected(projection_dim_, 0.0);
    for (std::size_t p = 0; p < projection_dim_; ++p) {
        const double* row = proj_.data() + p * pro::kFeatureCount;
        double sum = 0.0;
        for (std::size_t f = 0; f < pro::kFeatureCount; ++f) {
            sum += row[f] * prompt_means[f];
        }
        projected[p] = std::tanh(sum / 100.0);
    }
    std::array<double, 2> out{};
    for (std::size_t k = 0; k < 2; ++k) {
        double sum = bias_[k];
        const double* row = token_weights_.data() + k * 2 * token_dim_;
        for (std::size_t i = 0; i < tokens.size(); ++i) sum += row[i] * tokens[i];
        const double* prow = proj_weights_.data() + k * projection_dim_;
        for (std::size_t p = 0; p < projection_dim_; ++p) sum += prow[p] * projected[p];
        out[k] = sum;
    }
    return out;
}

std::vector<double> FrozenScorer::token_grad(const std::array<double, 2>& logit_grad) const {
    std::vector<double> grad(2 * token_dim_, 0.0);
    for (std::size_t k = 0; k < 2; ++k) {
        const double* row = token_weights_.data() + k * 2 * token_dim_;
        for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += logit_grad[k] * row[i];
    }
    return grad;
}

std::string FrozenScorer::to_json() const {
    json doc;
    doc["version"] = 1;
    doc["kind"] = "frozen_scorer";
    doc["token_dim"] = token_dim_;
    doc["projection_dim"] = projection_dim_;
    doc["token_weights"] = token_weights_;
    doc["proj"] = proj_;
    doc["proj_weights"] = proj_weights_;
    doc["bias"] = std::vector<double>{bias_[0], bias_[1]};
    return doc.dump();
}

FrozenScorer FrozenScorer::from_json(const std::string& text) {
    json doc = json::parse(text);
    FrozenScorer scorer;
    scorer.token_dim_ = doc.at("token_dim").get<std::size_t>();
    scorer.projection_dim_ = doc.at("projection_dim").get<std::size_t>();
    scorer.token_weights_ = doc.at("token_weights").get<std::vector<double>>();
    scorer.proj_ = doc.at("proj").get<std::vector<double>>();
    scorer.proj_weights_ = doc.at("proj_weights").get<std::vector<double>>();
    auto bias = doc.at("bias").get<std::vector<double>>();
    scorer.bias_ = {bias[0], bias[1]};
    return scorer;
}

// --- adapter training --------------------------------------------------------------------

double adapter_loss_and_grad(const MLPAdapter& adapter, const FrozenScorer& scorer,
                             const std::vector<AdapterExample>& batch,
                             std::vector<double>* grad) {
    if (batch.empty()) throw EmptyDataError("empty batch");
    if (grad) grad->assign(adapter.parameters().size(), 0.0);

    double loss = 0.0;
    MLPAdapter::Trace trace;
    for (const auto& example : batch) {
        auto tokens = adapter.forward_trace(example.encoded, trace);
        auto logits = scorer.logits(tokens, example.prompt_means);
        // softmax cross-entropy over {yes, no}; index 0 = yes
        double max_logit = std::max(logits[0], logits[1]);
        double log_z = max_logit + std::log(std::exp(logits[0] - max_logit) +
                                            std::exp(logits[1] - max_logit));
        double log_p_yes = logits[0] - log_z;
        double log_p_no = logits[1] - log_z;
        loss += example.label ? -log_p_yes : -log_p_no;
        if (grad) {
            std::array<double, 2> logit_grad = {std::exp(log_p_yes), std::exp(log_p_no)};
            logit_grad[example.label ? 0 : 1] -= 1.0;
            const double inv_n = 1.0 / static_cast<double>(batch.size());
            logit_grad[0] *= inv_n;
            logit_grad[1] *= inv_n;
            auto token_grad = scorer.token_grad(logit_grad);
            adapter.backward(trace, token_grad, *grad);
        }
    }
    loss /= static_cast<double>(batch.size());
    if (!std::isfinite(loss)) throw DivergenceError("adapter loss is not finite");
    return loss;
}

namespace {

double dataset_loss(const MLPAdapter& adapter, const FrozenScorer& scorer,
                    const std::vector<AdapterExample>& data) {
    return adapter_loss_and_grad(adapter, scorer, data, nullptr);
}

}  // namespace

AdapterTrainResult train_adapter(const std::vector<AdapterExample>& train,
                                 const std::vector<AdapterExample>& validation,
                                 const FrozenScorer& scorer, const AdapterDims& dims,
                                 const TrainConfig& config) {
    config.validate();
    if (train.size() < 2) throw DimensionError("need >= 2 training examples");
    {
        std::vector<int> labels;
        for (const auto& e : train) labels.push_back(e.label);
        require_both_classes(labels);
    }
    if (scorer.token_dim() != dims.token_dim) {
        throw DimensionError("scorer token_dim does not match adapter dims");
    }

    AdapterTrainResult result;
    result.adapter = MLPAdapter(dims, config.seed);

    const std::vector<AdapterExample>& val = validation.empty() ? train : validation;
    result.best_val_loss = dataset_loss(result.adapter, scorer, val);
    std::vector<double> best_params = result.adapter.parameters();
    int since_best = 0;

    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> grad;
    std::vector<AdapterExample> batch;

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        // Deterministic batch order: stream derived from (seed, epoch).
        Rng rng(config.seed, static_cast<std::uint64_t>(epoch) + 1);
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng.next_below(i)]);
        }
        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            batch.clear();
            for (std::size_t i = start;
                 i < std::min(order.size(), start + config.batch_size); ++i) {
                batch.push_back(train[order[i]]);
            }
            double loss = adapter_loss_and_grad(result.adapter, scorer, batch, &grad);
            epoch_loss += loss;
            ++batches;
            auto& params = result.adapter.parameters();
            for (std::size_t j = 0; j < params.size(); ++j) {
                params[j] -= config.learning_rate * grad[j];
            }
        }
        result.final_train_loss = epoch_loss / static_cast<double>(batches);
        result.epochs_run = epoch + 1;

        double val_loss = dataset_loss(result.adapter, scorer, val);
        if (val_loss < result.best_val_loss - 1e-9) {
            result.best_val_loss = val_loss;
            best_params = result.adapter.parameters();
            since_best = 0;
        } else if (++since_best > config.patience) {
            break;
        }
    }
    result.adapter.parameters() = best_params;
    return result;
}

OutcomeScore score_outcome_adapter(const MLPAdapter& adapter, const FrozenScorer& scorer,
                                   const AdapterExample& example) {
    auto tokens = adapter.forward(example.encoded);
    auto logits = scorer.logits(tokens, example.prompt_means);
    double max_logit = std::max(logits[0], logits[1]);
    double log_z = max_logit + std::log(std::exp(logits[0] - max_logit) +
                                        std::exp(logits[1] - max_logit));
    return {logits[0] - log_z, logits[1] - log_z};
}

OutcomeScore score_outcome_text(prompts::LlmClient& client,
                                const prompts::ProPromptInput& input,
                                const std::string& item, ScoreMode mode,
                                const std::vector<prompts::ProExemplar>& exemplars) {
    if (mode == ScoreMode::adapter) {
        throw ValueError("adapter mode does not use the text client");
    }
    auto prompt = prompts::render_pro_prompt(
        input, item,
        mode == ScoreMode::zero_shot ? prompts::ProMode::zero_shot
                                     : prompts::ProMode::few_shot,
        exemplars);
    auto scores = prompts::llm_score(client, prompt, {"yes.", "no."});
    return {scores[0], scores[1]};
}

}  // namespace wearlab::models

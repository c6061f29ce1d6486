#include "wearlab/llm_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "wearlab/errors.hpp"
#include "wearlab/rng.hpp"

using json = nlohmann::ordered_json;

namespace wearlab::prompts {

StubLlmClient::StubLlmClient(std::uint64_t seed, std::string bias_completion, double bias)
    : seed_(seed), bias_completion_(std::move(bias_completion)), bias_(bias) {}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::string StubLlmClient::complete(const std::string& prompt) {
    std::uint64_t h = Rng::mix64(seed_ ^ fnv1a(14695981039346656037ull, prompt));
    return "stub-completion-" + std::to_string(h % 1000000);
}

std::vector<double> StubLlmClient::score(const std::string& prompt,
                                         const std::vector<std::string>& completions) {
    if (completions.empty()) {
        throw ProtocolError("score() requires at least one completion");
    }
    std::vector<double> out;
    out.reserve(completions.size());
    for (const auto& completion : completions) {
        std::uint64_t h = fnv1a(14695981039346656037ull, prompt);
        h = fnv1a(h, "\x1f");
        h = fnv1a(h, completion);
        double u = static_cast<double>(Rng::mix64(seed_ ^ h) >> 11) * 0x1.0p-53;
        double loglik = -2.0 + u;  // in [-2, -1]
        if (completion == bias_completion_) loglik += bias_;
        out.push_back(loglik);
    }
    return out;
}

HttpLlmClient::HttpLlmClient(std::string endpoint, RetryPolicy policy)
    : policy_(policy) {
    std::string rest = endpoint;
    auto scheme = rest.find("://");
    if (scheme != std::string::npos) rest = rest.substr(scheme + 3);
    auto colon = rest.find(':');
    if (colon == std::string::npos) {
        host_ = rest;
        port_ = 80;
    } else {
        host_ = rest.substr(0, colon);
        port_ = std::atoi(rest.substr(colon + 1).c_str());
    }
    if (host_.empty() || port_ <= 0) {
        throw ProtocolError("bad endpoint \"" + endpoint + "\"");
    }
}

std::string HttpLlmClient::post_json(const std::string& path, const std::string& body) {
    int backoff = policy_.initial_backoff_ms;
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt < policy_.max_attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
            backoff *= 2;
        }
        httplib::Client client(host_, port_);
        client.set_connection_timeout(policy_.timeout_sec);
        client.set_read_timeout(policy_.timeout_sec);
        auto res = client.Post(path, body, "application/json");
        if (!res) {
            last_error = "connection failed";
            continue;
        }
        if (res->status >= 500) {
            last_error = "server status " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw ProtocolError("unexpected status " + std::to_string(res->status) +
                                " from " + path);
        }
        return res->body;
    }
    throw TransportError("POST " + path + " failed after " +
                         std::to_string(policy_.max_attempts) + " attempts: " +
                         last_error);
}

std::string HttpLlmClient::complete(const std::string& prompt) {
    json req;
    req["prompt"] = prompt;
    json res = json::parse(post_json("/complete", req.dump()));
    if (!res.contains("completion")) {
        throw ProtocolError("response missing \"completion\"");
    }
    return res["completion"].get<std::string>();
}

std::vector<double> HttpLlmClient::score(const std::string& prompt,
                                         const std::vector<std::string>& completions) {
    if (completions.empty()) {
        throw ProtocolError("score() requires at least one completion");
    }
    json req;
    req["prompt"] = prompt;
    req["completions"] = completions;
    json res = json::parse(post_json("/score", req.dump()));
    if (!res.contains("log_likelihoods")) {
        throw ProtocolError("response missing \"log_likelihoods\"");
    }
    auto values = res["log_likelihoods"].get<std::vector<double>>();
    if (values.size() != completions.size()) {
        throw ProtocolError("got " + std::to_string(values.size()) +
                            " log-likelihoods for " + std::to_string(completions.size()) +
                            " completions");
    }
    return values;
}

}  // namespace wearlab::prompts

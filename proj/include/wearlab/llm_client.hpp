#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace wearlab::prompts {

// Client contract for the external completion service. complete() and score()
// are the only entry points; implementations must tolerate concurrent calls
// and keep no shared mutable state between them.
class LlmClient {
public:
    virtual ~LlmClient() = default;

    virtual std::string complete(const std::string& prompt) = 0;

    // One finite log-likelihood per completion, in order. Throws
    // ProtocolError when completions is empty.
    virtual std::vector<double> score(const std::string& prompt,
                                      const std::vector<std::string>& completions) = 0;
};

// Deterministic stand-in for tests and offline runs. Log-likelihoods are
// hashed from (seed, prompt, completion) into [-2, -1]; a completion equal to
// `bias_completion` gets +bias added, so with the default bias it outranks any
// other completion on every prompt.
class StubLlmClient : public LlmClient {
public:
    explicit StubLlmClient(std::uint64_t seed, std::string bias_completion = "",
                           double bias = 10.0);

    std::string complete(const std::string& prompt) override;
    std::vector<double> score(const std::string& prompt,
                              const std::vector<std::string>& completions) override;

private:
    std::uint64_t seed_;
    std::string bias_completion_;
    double bias_;
};

struct RetryPolicy {
    int max_attempts = 3;
    int initial_backoff_ms = 100;  // doubled per attempt
    int timeout_sec = 30;
};

// HTTP JSON client:
//   POST <endpoint>/score    {"prompt": str, "completions": [str]}
//                            -> {"log_likelihoods": [float]}
//   POST <endpoint>/complete {"prompt": str} -> {"completion": str}
// Endpoint like "http://host:port". Retries with exponential backoff;
// TransportError surfaces after the policy is exhausted.
class HttpLlmClient : public LlmClient {
public:
    explicit HttpLlmClient(std::string endpoint, RetryPolicy policy = {});

    std::string complete(const std::string& prompt) override;
    std::vector<double> score(const std::string& prompt,
                              const std::vector<std::string>& completions) override;

private:
    std::string post_json(const std::string& path, const std::string& body);

    std::string host_;
    int port_ = 80;
    RetryPolicy policy_;
};

}  // namespace wearlab::prompts

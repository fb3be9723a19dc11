#pragma once

#include "graphcorpus/instruct.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace graphcorpus {

enum class LlmMode { offline_stub, remote };

struct LlmClientConfig {
    LlmMode mode = LlmMode::offline_stub;
    /// Full URL of a chat-completions style endpoint, e.g.
    /// "https://api.example.com/v1/chat/completions".
    std::string endpoint;
    std::string model_name;
    double temperature = 0.0;
    std::size_t max_output_tokens = 512;
    /// Environment variable holding the bearer token; unset means no auth header.
    std::string api_key_env = "LLM_API_KEY";
    std::size_t max_retries = 3;
    std::chrono::milliseconds initial_backoff{500};
    std::chrono::milliseconds max_backoff{8000};
    std::chrono::seconds timeout{60};
    std::size_t max_concurrency = 4;

    void validate() const;
    static LlmClientConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Deterministic CoT text built only from the prompt's extracted fields.
std::string stub_cot(const CotPrompt& prompt);

/// Pulls the generated text out of a completion response: chat
/// choices[0].message.content, completion choices[0].text, or a top-level
/// "text". Throws TransportError when none is present.
std::string extract_completion(const nlohmann::json& response);

class LlmClient {
public:
    /// Waits between retries; replaceable so tests run without sleeping.
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    explicit LlmClient(LlmClientConfig cfg, Sleeper sleeper = {});

    /// One CoT body. Remote mode posts one request per attempt and retries
    /// transport failures, 429 and 5xx with capped exponential backoff,
    /// then throws TransportError. An empty completion is an error.
    std::string distill(const CotPrompt& prompt) const;

    /// Distills every prompt with at most max_concurrency requests in flight.
    /// Results are in input order.
    std::vector<std::string> distill_batch(std::span<const CotPrompt> prompts) const;

    const LlmClientConfig& config() const noexcept { return cfg_; }

private:
    std::string post(const std::string& prompt) const;

    LlmClientConfig cfg_;
    Sleeper sleeper_;
};

} // namespace graphcorpus

#include "graphcorpus/llm_client.hpp"

#include "graphcorpus/error.hpp"
#include "graphcorpus/parallel.hpp"
#include "graphcorpus/tokenizer.hpp"

#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace graphcorpus {

using nlohmann::json;

void LlmClientConfig::validate() const {
    if (mode == LlmMode::remote) {
        if (endpoint.empty()) throw ValidationError("llm: remote mode needs an endpoint");
        if (!endpoint.starts_with("http://") && !endpoint.starts_with("https://"))
            throw ValidationError("llm: endpoint must be an http(s) URL: " + endpoint);
        if (model_name.empty()) throw ValidationError("llm: remote mode needs a model name");
    }
    if (!(temperature >= 0.0)) throw ValidationError("llm: temperature must be >= 0");
    if (max_output_tokens == 0) throw ValidationError("llm: max_output_tokens must be positive");
    if (max_concurrency == 0) throw ValidationError("llm: max_concurrency must be positive");
    if (max_backoff < initial_backoff) throw ValidationError("llm: max_backoff < initial_backoff");
}

LlmClientConfig LlmClientConfig::from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("llm config must be an object");
    LlmClientConfig c;
    try {
        const auto mode = j.value("mode", std::string("offline-stub"));
        if (mode == "offline-stub") c.mode = LlmMode::offline_stub;
        else if (mode == "remote") c.mode = LlmMode::remote;
        else throw ValidationError("llm: unknown mode '" + mode + "'");
        c.endpoint = j.value("endpoint", c.endpoint);
        c.model_name = j.value("model", c.model_name);
        c.temperature = j.value("temperature", c.temperature);
        c.max_output_tokens = j.value("max_output_tokens", c.max_output_tokens);
        c.api_key_env = j.value("api_key_env", c.api_key_env);
        c.max_retries = j.value("max_retries", c.max_retries);
        c.initial_backoff = std::chrono::milliseconds(j.value("initial_backoff_ms", c.initial_backoff.count()));
        c.max_backoff = std::chrono::milliseconds(j.value("max_backoff_ms", c.max_backoff.count()));
        c.timeout = std::chrono::seconds(j.value("timeout_s", c.timeout.count()));
        c.max_concurrency = j.value("max_concurrency", c.max_concurrency);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("llm config: ") + e.what());
    }
    c.validate();
    return c;
}

json LlmClientConfig::to_json() const {
    return {{"mode", mode == LlmMode::remote ? "remote" : "offline-stub"},
            {"endpoint", endpoint},
            {"model", model_name},
            {"temperature", temperature},
            {"max_output_tokens", max_output_tokens},
            {"api_key_env", api_key_env},
            {"max_retries", max_retries},
            {"initial_backoff_ms", initial_backoff.count()},
            {"max_backoff_ms", max_backoff.count()},
            {"timeout_s", timeout.count()},
            {"max_concurrency", max_concurrency}};
}

// ---------------------------------------------------------------- offline stub

namespace {

std::string sentence_case(std::string_view text) {
    std::string s = to_lower(text);
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

} // namespace

std::string stub_cot(const CotPrompt& p) {
    const std::string main =
        sentence_case(p.key_entities.empty() ? p.title : p.key_entities.front());

    std::string context;
    for (std::size_t i = 1; i < p.key_entities.size() && i <= 3; ++i) {
        if (!context.empty()) context += ", ";
        context += p.key_entities[i];
    }
    if (context.empty()) context = "no further key neighbors";

    std::string link;
    switch (p.task) {
    case Task::node_classification:
        link = "the neighborhood of " + p.title + " is consistent with " + p.answer;
        break;
    case Task::link_prediction:
        link = "the two descriptions share context, so the answer is " + p.answer;
        break;
    case Task::graph_to_text:
        link = "the abstract of " + p.title + " is organized around these elements";
        break;
    }
    return "The CoT for this generation is as follows: 1. Identify main concept: " + main +
           ". 2. Relate graph context: " + context + ". 3. Connect to the answer: " + link + ".";
}

// ---------------------------------------------------------------- remote

std::string extract_completion(const json& r) {
    if (r.is_object()) {
        if (auto it = r.find("choices"); it != r.end() && it->is_array() && !it->empty()) {
            const auto& c = it->front();
            if (c.contains("message") && c["message"].contains("content") &&
                c["message"]["content"].is_string())
                return c["message"]["content"].get<std::string>();
            if (c.contains("text") && c["text"].is_string()) return c["text"].get<std::string>();
        }
        if (auto it = r.find("text"); it != r.end() && it->is_string()) return it->get<std::string>();
    }
    throw TransportError("llm: response carries no generated text");
}

LlmClient::LlmClient(LlmClientConfig cfg, Sleeper sleeper)
    : cfg_(std::move(cfg)), sleeper_(std::move(sleeper)) {
    cfg_.validate();
    if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

namespace {

struct Url {
    std::string origin;
    std::string path;
};

Url split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

std::string LlmClient::post(const std::string& prompt) const {
    const Url url = split_url(cfg_.endpoint);
    json body = {{"model", cfg_.model_name},
                 {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
                 {"temperature", cfg_.temperature},
                 {"max_tokens", cfg_.max_output_tokens}};
    const std::string payload = body.dump();

    httplib::Headers headers;
    if (!cfg_.api_key_env.empty())
        if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key && *key)
            headers.emplace("Authorization", std::string("Bearer ") + key);

    auto backoff = cfg_.initial_backoff;
    std::string last_error;
    for (std::size_t attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
        if (attempt > 0) {
            sleeper_(backoff);
            backoff = std::min(backoff * 2, cfg_.max_backoff);
        }
        httplib::Client client(url.origin);
        client.set_connection_timeout(cfg_.timeout);
        client.set_read_timeout(cfg_.timeout);
        client.set_write_timeout(cfg_.timeout);
        auto res = client.Post(url.path, headers, payload, "application/json");
        if (!res) {
            last_error = "request to " + cfg_.endpoint + " failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "endpoint returned HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw TransportError("llm: endpoint returned HTTP " + std::to_string(res->status) +
                                 ": " + res->body.substr(0, 200));
        json parsed;
        try {
            parsed = json::parse(res->body);
        } catch (const json::parse_error& e) {
            throw TransportError(std::string("llm: malformed response: ") + e.what());
        }
        return extract_completion(parsed);
    }
    throw TransportError("llm: giving up after " + std::to_string(cfg_.max_retries + 1) +
                         " attempts: " + last_error);
}

std::string LlmClient::distill(const CotPrompt& prompt) const {
    std::string text = cfg_.mode == LlmMode::offline_stub ? stub_cot(prompt) : post(prompt.text);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw TransportError("llm: empty completion");
    return text;
}

std::vector<std::string> LlmClient::distill_batch(std::span<const CotPrompt> prompts) const {
    std::vector<std::string> out(prompts.size());
    const unsigned workers =
        cfg_.mode == LlmMode::remote ? static_cast<unsigned>(cfg_.max_concurrency) : 1;
    parallel_for(prompts.size(), workers, [&](std::size_t i) { out[i] = distill(prompts[i]); });
    return out;
}

} // namespace graphcorpus

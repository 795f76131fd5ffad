#include "normbank/remote_scorer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "normbank/errors.hpp"

namespace normbank {

using nlohmann::json;

namespace {

constexpr const char* kJudgePath = "/v1/judge";

const std::vector<std::pair<ClassLabel, const char*>>& score_keys(Mode mode) {
    static const std::vector<std::pair<ClassLabel, const char*>> freeform = {
        {ClassLabel::Negative, "negative"},
        {ClassLabel::Discretionary, "discretionary"},
        {ClassLabel::Positive, "positive"}};
    static const std::vector<std::pair<ClassLabel, const char*>> yesno = {
        {ClassLabel::Disagree, "disagree"}, {ClassLabel::Agree, "agree"}};
    static const std::vector<std::pair<ClassLabel, const char*>> relative = {
        {ClassLabel::First, "first"}, {ClassLabel::Second, "second"}};
    switch (mode) {
        case Mode::FreeForm: return freeform;
        case Mode::YesNo: return yesno;
        case Mode::Relative: return relative;
    }
    return freeform;
}

std::once_flag g_renormalize_warned;

Verdict parse_verdict(const json& item, Mode mode) {
    if (!item.is_object() || !item.contains("class_scores") ||
        !item["class_scores"].is_object())
        throw ProtocolError("result item missing class_scores object");
    const json& scores = item["class_scores"];
    Verdict v;
    double sum = 0.0;
    for (const auto& [label, key] : score_keys(mode)) {
        if (!scores.contains(key) || !scores[key].is_number())
            throw ProtocolError(std::string("class_scores missing numeric '") + key + "'");
        double s = scores[key].get<double>();
        if (s < 0.0) throw ProtocolError("negative class score");
        v.class_scores[label] = s;
        sum += s;
    }
    if (sum <= 0.0) throw ProtocolError("class scores sum to zero");
    if (std::abs(sum - 1.0) > 1e-6) {
        std::call_once(g_renormalize_warned, [] {
            std::cerr << "warning: remote backend returned unnormalized scores; "
                         "renormalizing\n";
        });
        for (auto& [label, s] : v.class_scores) s /= sum;
    }
    v.chosen = argmax_class(v.class_scores);
    if (item.contains("text")) {
        if (!item["text"].is_string()) throw ProtocolError("text field must be a string");
        v.text_judgment = item["text"].get<std::string>();
    }
    return v;
}

}  // namespace

RemoteScorer::RemoteScorer(RemoteConfig cfg) : cfg_(std::move(cfg)) {
    std::string url = cfg_.endpoint;
    const std::string scheme = "http://";
    if (url.rfind(scheme, 0) == 0) url = url.substr(scheme.size());
    while (!url.empty() && url.back() == '/') url.pop_back();
    auto colon = url.find(':');
    if (colon == std::string::npos) {
        host_ = url;
        port_ = 80;
    } else {
        host_ = url.substr(0, colon);
        port_ = std::stoi(url.substr(colon + 1));
    }
    if (host_.empty()) throw UsageError("bad remote endpoint: " + cfg_.endpoint);
}

Verdict RemoteScorer::judge(const std::string& encoded_input, Mode mode) {
    return judge_batch({encoded_input}, mode).front();
}

std::vector<Verdict> RemoteScorer::judge_batch(const std::vector<std::string>& encoded_inputs,
                                               Mode mode) {
    std::vector<Verdict> results(encoded_inputs.size());
    if (encoded_inputs.empty()) return results;

    struct Chunk {
        std::size_t begin;
        std::size_t end;
    };
    std::vector<Chunk> chunks;
    for (std::size_t b = 0; b < encoded_inputs.size(); b += cfg_.batch_size)
        chunks.push_back({b, std::min(b + cfg_.batch_size, encoded_inputs.size())});

    std::atomic<std::size_t> next_chunk{0};
    std::mutex failure_mutex;
    std::vector<std::size_t> failed_indices;
    std::string failure_message;
    std::exception_ptr protocol_failure;

    auto worker = [&]() {
        httplib::Client client(host_, port_);
        client.set_connection_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);
        client.set_read_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);
        client.set_write_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);

        while (true) {
            std::size_t c = next_chunk.fetch_add(1);
            if (c >= chunks.size()) return;
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (protocol_failure) return;
            }
            const Chunk chunk = chunks[c];

            json request;
            request["version"] = 1;
            request["mode"] = std::string(to_string(mode));
            request["format"] = cfg_.format;
            json inputs = json::array();
            for (std::size_t i = chunk.begin; i < chunk.end; ++i)
                inputs.push_back(encoded_inputs[i]);
            request["inputs"] = std::move(inputs);
            const std::string body = request.dump();

            bool done = false;
            std::string last_error;
            for (std::size_t attempt = 0; attempt <= cfg_.max_retries && !done; ++attempt) {
                if (attempt > 0) {
                    int delay = cfg_.backoff_base_ms;
                    for (std::size_t k = 1; k < attempt; ++k) delay *= 2;
                    delay = std::min(delay, cfg_.backoff_cap_ms);
                    std::this_thread::sleep_for(std::chrono::milliseconds(delay));
                }
                auto res = client.Post(kJudgePath, body, "application/json");
                if (!res) {
                    last_error = "connection failed: " + httplib::to_string(res.error());
                    continue;
                }
                if (res->status != 200) {
                    last_error = "HTTP status " + std::to_string(res->status);
                    continue;
                }
                try {
                    json response = json::parse(res->body, nullptr, false);
                    if (response.is_discarded())
                        throw ProtocolError("response is not valid JSON");
                    if (!response.contains("results") || !response["results"].is_array())
                        throw ProtocolError("response missing results array");
                    const json& items = response["results"];
                    if (items.size() != chunk.end - chunk.begin)
                        throw ProtocolError("response has " + std::to_string(items.size()) +
                                            " results for " +
                                            std::to_string(chunk.end - chunk.begin) +
                                            " inputs");
                    for (std::size_t i = 0; i < items.size(); ++i)
                        results[chunk.begin + i] = parse_verdict(items[i], mode);
                    done = true;
                } catch (const ProtocolError&) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!protocol_failure) protocol_failure = std::current_exception();
                    return;
                }
            }
            if (!done) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                for (std::size_t i = chunk.begin; i < chunk.end; ++i)
                    failed_indices.push_back(i);
                failure_message = last_error;
            }
        }
    };

    std::size_t n_workers = std::min(cfg_.concurrency, chunks.size());
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    if (protocol_failure) std::rethrow_exception(protocol_failure);
    if (!failed_indices.empty()) {
        std::sort(failed_indices.begin(), failed_indices.end());
        throw TransportError("remote scoring failed for " +
                                 std::to_string(failed_indices.size()) + " inputs (" +
                                 failure_message + ")",
                             std::move(failed_indices));
    }
    return results;
}

}  // namespace normbank

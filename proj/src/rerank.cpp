#include "normbank/rerank.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <csignal>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <httplib.h>
#include <json.hpp>

#include "normbank/errors.hpp"

namespace normbank {

std::vector<std::string> ScriptedGenerator::next_candidates(const std::string& context,
                                                            std::size_t k) {
    (void)context;
    if (step_ >= script_.size())
        throw ContractError("scripted generator exhausted after " + std::to_string(step_) +
                            " steps");
    std::vector<std::string> out = script_[step_++];
    if (out.size() != k)
        throw ContractError("scripted step has " + std::to_string(out.size()) +
                            " candidates, expected " + std::to_string(k));
    return out;
}

std::string run_filter_command(const std::string& command, const std::string& input) {
    int in_pipe[2];
    int out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        throw ContractError("cannot create pipes for generator command");

    pid_t pid = fork();
    if (pid < 0) throw ContractError("cannot fork generator command");
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]); close(in_pipe[1]);
        close(out_pipe[0]); close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);

    // A child may exit without draining stdin; EPIPE is fine, dying on
    // SIGPIPE is not.
    struct sigaction ignore_pipe {};
    ignore_pipe.sa_handler = SIG_IGN;
    struct sigaction saved_pipe {};
    sigaction(SIGPIPE, &ignore_pipe, &saved_pipe);

    std::size_t written = 0;
    while (written < input.size()) {
        ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
        if (n <= 0) break;
        written += static_cast<std::size_t>(n);
    }
    close(in_pipe[1]);
    sigaction(SIGPIPE, &saved_pipe, nullptr);

    std::string output;
    char buf[4096];
    ssize_t n;
    while ((n = read(out_pipe[0], buf, sizeof(buf))) > 0)
        output.append(buf, static_cast<std::size_t>(n));
    close(out_pipe[0]);

    int status = 0;
    waitpid(pid, &status, 0);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        throw ContractError("generator command failed: " + command);
    return output;
}

std::vector<std::string> SubprocessGenerator::next_candidates(const std::string& context,
                                                              std::size_t k) {
    std::string output = run_filter_command(command_, context + "\n");
    std::vector<std::string> lines;
    std::istringstream is(output);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) {
            return std::isspace(c) != 0;
        });
        if (!blank) lines.push_back(line);
    }
    if (lines.size() < k)
        throw ContractError("generator produced " + std::to_string(lines.size()) +
                            " candidates, expected " + std::to_string(k));
    lines.resize(k);
    return lines;
}

HttpGenerator::HttpGenerator(const std::string& endpoint) {
    std::string url = endpoint;
    const std::string scheme = "http://";
    if (url.rfind(scheme, 0) == 0) url = url.substr(scheme.size());
    auto colon = url.find(':');
    if (colon == std::string::npos)
        throw UsageError("http generator needs host:port, got '" + endpoint + "'");
    host_ = url.substr(0, colon);
    port_ = std::stoi(url.substr(colon + 1));
}

std::vector<std::string> HttpGenerator::next_candidates(const std::string& context,
                                                        std::size_t k) {
    httplib::Client client(host_, port_);
    nlohmann::json request = {{"version", 1}, {"context", context}, {"k", k}};
    auto res = client.Post("/v1/candidates", request.dump(), "application/json");
    if (!res || res->status != 200)
        throw TransportError("candidate generator unreachable", {});
    nlohmann::json response = nlohmann::json::parse(res->body, nullptr, false);
    if (response.is_discarded() || !response.contains("candidates") ||
        !response["candidates"].is_array())
        throw ProtocolError("generator response missing candidates array");
    std::vector<std::string> out;
    for (const auto& c : response["candidates"]) {
        if (!c.is_string()) throw ProtocolError("candidate must be a string");
        out.push_back(c.get<std::string>());
    }
    if (out.size() != k)
        throw ContractError("generator returned " + std::to_string(out.size()) +
                            " candidates, expected " + std::to_string(k));
    return out;
}

StepResult rerank_step(const std::string& context, const std::vector<std::string>& candidates,
                       ScorerBackend& backend, const RerankConfig& cfg, Rng& rng) {
    if (candidates.empty()) throw UsageError("rerank_step needs at least one candidate");
    if (!(cfg.tie_threshold > 0.0) || cfg.tie_threshold > 1.0)
        throw UsageError("tie_threshold must be in (0, 1]");
    for (const auto& c : candidates) {
        if (c.empty()) throw ContractError("generator produced an empty candidate");
    }

    std::vector<std::string> inputs;
    inputs.reserve(candidates.size());
    for (const auto& c : candidates)
        inputs.push_back("[moral_single]: " + context + " " + c);
    std::vector<Verdict> verdicts = backend.judge_batch(inputs, Mode::FreeForm);
    if (verdicts.size() != candidates.size())
        throw ContractError("backend returned wrong verdict count");

    StepResult result;
    result.scores.reserve(candidates.size());
    for (const auto& v : verdicts) result.scores.push_back(moral_score(v));

    std::vector<std::size_t> over_threshold;
    for (std::size_t i = 0; i < result.scores.size(); ++i) {
        if (result.scores[i] >= cfg.tie_threshold) over_threshold.push_back(i);
    }
    if (!over_threshold.empty()) {
        result.chosen_index = over_threshold[rng.next_below(over_threshold.size())];
    } else {
        std::size_t best = 0;
        for (std::size_t i = 1; i < result.scores.size(); ++i) {
            if (result.scores[i] > result.scores[best]) best = i;
        }
        result.chosen_index = best;
    }
    result.chosen = candidates[result.chosen_index];
    result.chosen_score = result.scores[result.chosen_index];
    return result;
}

StoryResult generate_story(const std::string& first_sentence, CandidateGenerator& generator,
                           ScorerBackend& backend, const RerankConfig& cfg) {
    if (first_sentence.empty()) throw UsageError("first sentence must be non-empty");
    if (cfg.candidates_per_step < 1) throw UsageError("candidates_per_step must be >= 1");

    StoryResult story;
    story.sentences.push_back(first_sentence);
    std::string context = first_sentence;
    Rng rng(cfg.rng_seed);
    for (std::size_t step = 0; step < cfg.steps; ++step) {
        std::vector<std::string> candidates =
            generator.next_candidates(context, cfg.candidates_per_step);
        if (candidates.size() != cfg.candidates_per_step)
            throw ContractError("generator returned wrong candidate count");
        StepResult chosen = rerank_step(context, candidates, backend, cfg, rng);
        context += " " + chosen.chosen;
        story.sentences.push_back(chosen.chosen);
        story.trace.push_back(std::move(chosen));
    }
    return story;
}

}  // namespace normbank

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "normbank/hash.hpp"
#include "normbank/scorer.hpp"

namespace normbank {

struct RerankConfig {
    std::size_t candidates_per_step = 5;
    std::size_t steps = 4;
    double tie_threshold = 0.999;
    std::uint64_t rng_seed = 0;
};

// Supplies continuation candidates for a growing context. Implementations
// must return exactly k non-empty sentences.
class CandidateGenerator {
  public:
    virtual ~CandidateGenerator() = default;
    virtual std::vector<std::string> next_candidates(const std::string& context,
                                                     std::size_t k) = 0;
};

// Fixed candidate lists per step, for tests and golden runs.
class ScriptedGenerator final : public CandidateGenerator {
  public:
    explicit ScriptedGenerator(std::vector<std::vector<std::string>> script)
        : script_(std::move(script)) {}
    std::vector<std::string> next_candidates(const std::string& context,
                                             std::size_t k) override;

  private:
    std::vector<std::vector<std::string>> script_;
    std::size_t step_ = 0;
};

// Runs a shell command per step: context on stdin, k candidate lines on
// stdout.
class SubprocessGenerator final : public CandidateGenerator {
  public:
    explicit SubprocessGenerator(std::string command) : command_(std::move(command)) {}
    std::vector<std::string> next_candidates(const std::string& context,
                                             std::size_t k) override;

  private:
    std::string command_;
};

// POSTs {version, context, k} to <endpoint>/v1/candidates and expects
// {candidates: [...]} back.
class HttpGenerator final : public CandidateGenerator {
  public:
    explicit HttpGenerator(const std::string& endpoint);
    std::vector<std::string> next_candidates(const std::string& context,
                                             std::size_t k) override;

  private:
    std::string host_;
    int port_ = 80;
};

struct StepResult {
    std::size_t chosen_index = 0;
    std::string chosen;
    double chosen_score = 0.0;
    std::vector<double> scores;
};

// Scores every candidate as moral_score(judge(context + " " + candidate)) in
// free-form mode. Candidates at or above the tie threshold are sampled
// uniformly (seeded); otherwise the argmax wins, first index on exact ties.
StepResult rerank_step(const std::string& context, const std::vector<std::string>& candidates,
                       ScorerBackend& backend, const RerankConfig& cfg, Rng& rng);

struct StoryResult {
    std::vector<std::string> sentences;  // 1 + steps entries
    std::vector<StepResult> trace;
};

// Iterative decoding: fetch candidates, rerank, append the winner to the
// context, repeat cfg.steps times.
StoryResult generate_story(const std::string& first_sentence, CandidateGenerator& generator,
                           ScorerBackend& backend, const RerankConfig& cfg);

// Bidirectional run of a shell command: input on stdin, returns stdout.
// Throws ContractError when the command cannot run or exits nonzero.
std::string run_filter_command(const std::string& command, const std::string& input);

}  // namespace normbank

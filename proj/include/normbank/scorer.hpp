#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normbank/types.hpp"

namespace normbank {

// A scorer's answer: per-class scores, the argmax choice, and an optional
// open-text judgment.
struct Verdict {
    std::map<ClassLabel, double> class_scores;
    ClassLabel chosen = ClassLabel::Discretionary;
    std::optional<std::string> text_judgment;
};

// Argmax with ties resolved by the fixed label order (Negative <
// Discretionary < Positive; Disagree < Agree; First < Second), so chosen is
// total. Throws ContractError on an empty score map.
ClassLabel argmax_class(const std::map<ClassLabel, double>& scores);

// Pluggable judgment backend. Implementations must be safe for concurrent
// judge() calls; deterministic backends return identical verdicts for
// identical inputs.
class ScorerBackend {
  public:
    virtual ~ScorerBackend() = default;
    virtual Verdict judge(const std::string& encoded_input, Mode mode) = 0;
    // Order-preserving batch form; the default loops over judge().
    virtual std::vector<Verdict> judge_batch(const std::vector<std::string>& encoded_inputs,
                                             Mode mode);
    virtual std::string name() const = 0;
};

// Deterministic keyword-polarity baseline, so the whole harness runs without
// a model. Stateless and pure.
class LexiconScorer final : public ScorerBackend {
  public:
    Verdict judge(const std::string& encoded_input, Mode mode) override;
    std::string name() const override { return "lexicon"; }

    // Signed keyword tally of a plain text, exposed for the yes/no rule.
    static int text_polarity(const std::string& text);
};

// P(positive) - P(negative), in [-1, 1]. Throws ContractError when either
// class score is missing.
double moral_score(const Verdict& v);

// Zero-shot prompt builder: label-descriptions appended to the action, one
// prompt per class. Perplexity ranking is the remote model's job.
std::vector<std::pair<ClassLabel, std::string>> zeroshot_prompts(const std::string& action,
                                                                 Mode mode,
                                                                 const std::string& action2 = "");

}  // namespace normbank

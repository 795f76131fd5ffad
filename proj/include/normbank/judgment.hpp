#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "normbank/types.hpp"

namespace normbank {

// Canonicalizes an open-text judgment for polarity lookup: lowercase, terminal
// punctuation stripped, whitespace collapsed, copula/negation contractions
// folded to one form ("it is" -> "it's"). Idempotent.
// Throws EmptyJudgmentError when the input (or the result) is empty.
std::string normalize_judgment(std::string_view raw);

// Lookup table binarizing judgments into POS/NEG, loaded from a two-column
// TSV (`judgment<TAB>POS|NEG`, '#' comments allowed).
class PolarityMap {
  public:
    static PolarityMap load(const std::string& path);
    static PolarityMap from_entries(std::map<std::string, Polarity> entries);

    // Polarity of a judgment, Unknown if unmapped. A leading "yes,"/"no,"
    // declaration is stripped before lookup: the head carries the stance, the
    // declaration refers to the prompt.
    Polarity lookup(std::string_view judgment) const;

    std::size_t size() const { return entries_.size(); }
    // Content fingerprint; evaluation reports carry it because polarity
    // accuracies are only comparable under the same map.
    std::string fingerprint() const;

  private:
    std::map<std::string, Polarity> entries_;  // keys are normalize_judgment output
};

Polarity polarity_of(std::string_view judgment, const PolarityMap& map);

// A recognized judgment head at the start of a statement, e.g.
// "It's okay to turn down trips..." -> copula "It's", adjective "okay",
// remainder " to turn down trips...".
struct JudgmentHead {
    enum class Kind { Copular, Deontic };
    Kind kind = Kind::Copular;
    std::string subject;      // deontic only: pronoun as written ("You")
    std::string copula;       // as written ("It's", "it is", "You should", ...)
    std::string article;      // optional "a"/"an" between copula and adjective
    std::string adjective;    // as written; empty for deontic should-heads
    std::string noun;         // article heads only: "gesture" in "a kind gesture"
    bool negated = false;     // "not" between copula and adjective
    std::size_t head_end = 0; // byte offset where the action clause starts
    // Canonical phrase for judgment strings: original copula + canonical
    // adjective, first letter lowercased ("It's okay" -> "it's ok").
    std::string canonical_phrase;
};

// Parses the head of a rule-of-thumb-style statement. Returns nullopt when no
// judgment head is recognizable.
std::optional<JudgmentHead> parse_judgment_head(std::string_view statement);

// Folds surface variants of a judgment adjective ("okay" -> "ok").
std::string canonical_adjective_form(const std::string& adjective);

}  // namespace normbank

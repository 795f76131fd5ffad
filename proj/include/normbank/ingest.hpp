#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "normbank/types.hpp"

namespace normbank {

// One rule-of-thumb: a judged action plus the norm statement it came from.
struct RotRecord {
    std::string id;
    std::string situation;   // may be empty
    std::string action;
    std::string rot_text;
    std::string judgment;    // e.g. "It's okay"
    ClassLabel label = ClassLabel::Discretionary;  // 3-way
};

// A short everyday scenario with a binary moral judgment.
struct EthicsRecord {
    std::string id;
    std::string scenario;
    ClassLabel label = ClassLabel::Positive;  // Positive | Negative
};

// A situated story step with a moral and an immoral continuation.
struct StoryRecord {
    std::string id;
    std::string situation;
    std::string intention;
    std::string moral_action;
    std::string immoral_action;
};

// An online post with offensiveness/lewdness flags.
struct PostRecord {
    std::string id;
    std::string post;
    bool offensive = false;
    bool lewd = false;
};

// A pair of actions where annotators picked the less ethical one.
struct ActionPairRecord {
    std::string id;
    std::string action1;
    std::string action2;
    ClassLabel less_ethical = ClassLabel::First;  // First | Second
};

using SourceRecord =
    std::variant<RotRecord, EthicsRecord, StoryRecord, PostRecord, ActionPairRecord>;

struct LoadOptions {
    bool lenient = false;  // skip records with empty/missing required fields
};

struct LoadResult {
    std::vector<SourceRecord> records;
    std::size_t skipped = 0;  // lenient-mode skips
    std::vector<std::string> skip_reasons;
};

// Parses a UTF-8 line-delimited JSON file into typed records. Blank lines and
// '#' comment lines are ignored; IDs are "<source>:<line-number>" with the
// physical 1-based line number. Malformed JSON is always an error; a record
// violating its schema is an error in strict mode and a counted skip under
// lenient.
LoadResult load_source(const std::string& path, Source source,
                       const LoadOptions& opts = {});

// Sentence count used by the ETHICS short-scenario filter: one per maximal
// run of '.', '!' or '?', plus one when the text does not end in a
// terminator.
std::size_t sentence_count(std::string_view text);

}  // namespace normbank

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "normbank/types.hpp"

namespace normbank {

// Signal words (prepositions, conjunctions, adverbs) whose presence marks a
// situation as compositional rather than base.
struct KeywordSet {
    std::set<std::string> keywords;  // lowercase

    static KeywordSet load(const std::string& path);  // one keyword per line
};

// Whole-token, case-insensitive containment; punctuation is stripped before
// splitting, so "information" never matches "for".
bool is_compositional(const std::string& text, const KeywordSet& kw);

// Disjoint exhaustive split of instances by is_compositional on the input.
struct Partition {
    std::vector<QAInstance> base;
    std::vector<QAInstance> compositional;
};
Partition partition_base(const std::vector<QAInstance>& instances, const KeywordSet& kw);

// Seeded uniform sample without replacement of round(fraction * n)
// instances, original order preserved. fraction must be in (0, 1].
std::vector<QAInstance> sample_fraction(const std::vector<QAInstance>& instances,
                                        double fraction, std::uint64_t seed);

}  // namespace normbank

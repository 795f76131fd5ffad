#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "normbank/hash.hpp"
#include "normbank/ingest.hpp"
#include "normbank/types.hpp"

namespace normbank {

// Seeded augmentation knobs: question templates per (source, form), the
// hand-crafted judgment lists for sources that ship only classification
// labels, and the noise rate.
struct AugmentConfig {
    std::uint64_t rng_seed = 20211014;
    double noise_probability = 0.0;

    // Keyed "<source>.<form>", e.g. "social_chem.q_a". Values are chosen
    // uniformly with the per-record seeded RNG.
    std::map<std::string, std::vector<std::string>> templates;

    std::vector<std::string> positive_labels;
    std::vector<std::string> discretionary_labels;
    std::vector<std::string> negative_labels;
    std::vector<std::string> offensive_labels;  // SBIC negative judgments

    static AugmentConfig defaults();
    // Key-value text file; unknown keys are errors. List keys (template.*,
    // label.*) replace the default list on first mention and append after.
    static AugmentConfig load(const std::string& path);

    // Throws UsageError when a template lacks its {A} slot, has stray slots,
    // a label list is empty, or noise_probability is out of [0,1].
    void validate() const;
};

// Free-form unification (one op per source, per the unified-forms table).
std::vector<QAInstance> unify_social_chem(const RotRecord& r, const AugmentConfig& cfg);
std::vector<QAInstance> unify_ethics(const EthicsRecord& r, const AugmentConfig& cfg);
std::vector<QAInstance> unify_moral_stories(const StoryRecord& r, const AugmentConfig& cfg);
std::vector<QAInstance> unify_sbic(const PostRecord& r, const AugmentConfig& cfg);

// Replaces the judgment head with its antonym (fixed table), or inserts /
// removes "not" after the copula when no table entry matches. The action
// clause is untouched. Throws UnnegatableError when no judgment head is
// recognizable.
std::string negate_rot(const std::string& rot);

// PosRoT (agree with the original) and NegRoT (disagree with the negated
// form); judgments are "yes, {head}" / "no, {head}" with the original head.
std::vector<QAInstance> make_yesno(const RotRecord& r, const AugmentConfig& cfg);

// Relative instance; the source label marks the LESS ethical action, the
// instance label the MORE acceptable one.
QAInstance make_relative(const ActionPairRecord& r);

// With probability cfg.noise_probability applies one perturbation: leading
// verb inflection via a rule table, terminal-period toggle, or casing
// toggle. Deterministic given the rng state.
std::string inject_noise(const std::string& text, const AugmentConfig& cfg, Rng& rng);

// Seeded split assignment grouped by record_id, so no record's augmented
// variants straddle a split. ratios are (train, val, test) and must sum to 1.
void split_dataset(std::vector<QAInstance>& instances,
                   const std::array<double, 3>& ratios, std::uint64_t seed);

// Order-insensitive content hash of an instance set, for determinism checks.
std::uint64_t hash_instances(const std::vector<QAInstance>& instances);

}  // namespace normbank

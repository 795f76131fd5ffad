#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "normbank/scorer.hpp"
#include "normbank/types.hpp"

namespace normbank {

enum class Phrasing { CurrentWorld, IdealWorld };
Phrasing phrasing_from_string(std::string_view s);
std::string_view to_string(Phrasing p);

// One rights row: declarative (current-world) and aspirational (ideal-world)
// texts, both with a "{people}" slot; negated rows describe a rights
// violation, so the expected judgment flips.
struct RightTemplate {
    int article = 0;
    bool negated = false;
    std::string text_current;
    std::string text_ideal;
};

struct Identity {
    std::string surface;
    std::string group;
};

// One rendered probe sentence with its expectation.
struct RightsProbe {
    std::string text;
    std::size_t right_index = 0;
    std::size_t identity_index = 0;
    std::string identity;
    std::string group;
    Phrasing phrasing = Phrasing::CurrentWorld;
    bool negated = false;
    Polarity expected = Polarity::Positive;
};

struct GroupStats {
    std::size_t probes = 0;
    std::size_t errors = 0;
    double error_rate() const {
        return probes == 0 ? 0.0 : static_cast<double>(errors) / probes;
    }
};

struct BiasReport {
    Phrasing phrasing = Phrasing::CurrentWorld;
    std::size_t total_probes = 0;
    std::size_t total_errors = 0;
    std::map<std::string, GroupStats> per_group;
    std::map<std::string, GroupStats> per_identity;
    // rights x identities, 1 where the verdict diverged from the expectation
    std::vector<std::vector<std::uint8_t>> divergence;
    std::vector<RightTemplate> rights;
    std::vector<Identity> identities;

    double overall_error() const {
        return total_probes == 0 ? 0.0 : static_cast<double>(total_errors) / total_probes;
    }
    // Identities sorted by descending error rate (ties by name), capped at n.
    std::vector<std::pair<std::string, GroupStats>> worst_identities(std::size_t n) const;
};

// TSV loaders: rights are `article<TAB>negated(0|1)<TAB>current<TAB>ideal`,
// identities are `surface<TAB>group`; '#' comments allowed in both.
std::vector<RightTemplate> load_rights(const std::string& path);
std::vector<Identity> load_identities(const std::string& path);

// Cross product: one probe per (right, identity) with the slot substituted.
// Expected polarity is Positive except on negated rights. Throws UsageError
// when a template lacks the slot.
std::vector<RightsProbe> expand_probes(const std::vector<RightTemplate>& rights,
                                       const std::vector<Identity>& identities,
                                       Phrasing phrasing);

struct ProbeRunOptions {
    std::size_t chunk_size = 256;
    // On transport failure, completed chunks are saved here before the error
    // propagates; empty disables checkpointing.
    std::string checkpoint_path;
};

// Judges every probe in yes/no mode and aggregates divergences. A verdict
// counts as an error when its binarized polarity (Agree/Positive/
// Discretionary -> POSITIVE) differs from the probe's expectation; on
// negated rights anything but rejection is an error.
BiasReport run_probe(ScorerBackend& backend, const std::vector<RightsProbe>& probes,
                     const std::vector<RightTemplate>& rights,
                     const std::vector<Identity>& identities,
                     const ProbeRunOptions& opts = {});

// Writes `<dir>/divergence_matrix.csv` (rights x identities, cells 0/1) and
// `<dir>/group_summary.csv` (one row per identity group).
void emit_bias_report(const BiasReport& report, const std::string& dir);

}  // namespace normbank

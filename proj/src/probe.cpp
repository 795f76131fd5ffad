#include "normbank/probe.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "normbank/errors.hpp"

namespace normbank {

Phrasing phrasing_from_string(std::string_view s) {
    if (s == "current") return Phrasing::CurrentWorld;
    if (s == "ideal") return Phrasing::IdealWorld;
    throw UsageError("phrasing must be current|ideal, got '" + std::string(s) + "'");
}

std::string_view to_string(Phrasing p) {
    return p == Phrasing::CurrentWorld ? "current" : "ideal";
}

namespace {

constexpr std::string_view kSlot = "{people}";

std::vector<std::vector<std::string>> read_tsv(const std::string& path,
                                               std::size_t columns) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (cells.size() != columns)
            throw SchemaError(path, lineno,
                              "expected " + std::to_string(columns) + " tab-separated columns");
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string substitute(const std::string& tmpl, const std::string& identity) {
    std::size_t pos = tmpl.find(kSlot);
    if (pos == std::string::npos)
        throw UsageError("rights template missing {people} slot: " + tmpl);
    if (tmpl.find(kSlot, pos + 1) != std::string::npos)
        throw UsageError("rights template has multiple {people} slots: " + tmpl);
    return tmpl.substr(0, pos) + identity + tmpl.substr(pos + kSlot.size());
}

bool verdict_positive(const Verdict& v) {
    switch (v.chosen) {
        case ClassLabel::Agree:
        case ClassLabel::Positive:
        case ClassLabel::Discretionary:
            return true;
        default:
            return false;
    }
}

}  // namespace

std::vector<RightTemplate> load_rights(const std::string& path) {
    std::vector<RightTemplate> rights;
    for (const auto& row : read_tsv(path, 4)) {
        RightTemplate r;
        r.article = std::stoi(row[0]);
        r.negated = row[1] == "1";
        r.text_current = row[2];
        r.text_ideal = row[3];
        rights.push_back(std::move(r));
    }
    return rights;
}

std::vector<Identity> load_identities(const std::string& path) {
    std::vector<Identity> identities;
    for (const auto& row : read_tsv(path, 2)) {
        if (row[0].empty()) throw UsageError("empty identity surface in " + path);
        identities.push_back({row[0], row[1]});
    }
    return identities;
}

std::vector<RightsProbe> expand_probes(const std::vector<RightTemplate>& rights,
                                       const std::vector<Identity>& identities,
                                       Phrasing phrasing) {
    std::vector<RightsProbe> probes;
    probes.reserve(rights.size() * identities.size());
    for (std::size_t r = 0; r < rights.size(); ++r) {
        const std::string& tmpl = phrasing == Phrasing::CurrentWorld
                                      ? rights[r].text_current
                                      : rights[r].text_ideal;
        for (std::size_t i = 0; i < identities.size(); ++i) {
            RightsProbe p;
            p.text = substitute(tmpl, identities[i].surface);
            p.right_index = r;
            p.identity_index = i;
            p.identity = identities[i].surface;
            p.group = identities[i].group;
            p.phrasing = phrasing;
            p.negated = rights[r].negated;
            p.expected = rights[r].negated ? Polarity::Negative : Polarity::Positive;
            probes.push_back(std::move(p));
        }
    }
    return probes;
}

BiasReport run_probe(ScorerBackend& backend, const std::vector<RightsProbe>& probes,
                     const std::vector<RightTemplate>& rights,
                     const std::vector<Identity>& identities, const ProbeRunOptions& opts) {
    BiasReport report;
    report.rights = rights;
    report.identities = identities;
    if (!probes.empty()) report.phrasing = probes.front().phrasing;
    report.divergence.assign(rights.size(),
                             std::vector<std::uint8_t>(identities.size(), 0));

    std::vector<std::pair<std::size_t, bool>> completed;  // (probe index, error)
    completed.reserve(probes.size());

    auto checkpoint = [&]() {
        if (opts.checkpoint_path.empty()) return;
        nlohmann::json j;
        j["schema_version"] = 1;
        j["phrasing"] = std::string(to_string(report.phrasing));
        j["total_probes"] = probes.size();
        nlohmann::json results = nlohmann::json::array();
        for (const auto& [idx, err] : completed)
            results.push_back({{"index", idx}, {"error", err}});
        j["completed"] = std::move(results);
        std::ofstream out(opts.checkpoint_path, std::ios::binary);
        out << j.dump(2) << '\n';
    };

    for (std::size_t start = 0; start < probes.size(); start += opts.chunk_size) {
        std::size_t end = std::min(start + opts.chunk_size, probes.size());
        std::vector<std::string> inputs;
        inputs.reserve(end - start);
        for (std::size_t i = start; i < end; ++i)
            inputs.push_back("[moral_single]: " + probes[i].text);

        std::vector<Verdict> verdicts;
        try {
            verdicts = backend.judge_batch(inputs, Mode::YesNo);
        } catch (const TransportError&) {
            checkpoint();
            throw;
        }
        if (verdicts.size() != inputs.size())
            throw ContractError("backend returned " + std::to_string(verdicts.size()) +
                                " verdicts for " + std::to_string(inputs.size()) + " inputs");

        for (std::size_t i = start; i < end; ++i) {
            bool positive = verdict_positive(verdicts[i - start]);
            bool expected_positive = probes[i].expected == Polarity::Positive;
            bool error = positive != expected_positive;
            completed.emplace_back(i, error);
            ++report.total_probes;
            auto& group = report.per_group[probes[i].group];
            auto& ident = report.per_identity[probes[i].identity];
            ++group.probes;
            ++ident.probes;
            if (error) {
                ++report.total_errors;
                ++group.errors;
                ++ident.errors;
                report.divergence[probes[i].right_index][probes[i].identity_index] = 1;
            }
        }
    }
    return report;
}

std::vector<std::pair<std::string, GroupStats>> BiasReport::worst_identities(
    std::size_t n) const {
    std::vector<std::pair<std::string, GroupStats>> all(per_identity.begin(),
                                                        per_identity.end());
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.second.error_rate() != b.second.error_rate())
            return a.second.error_rate() > b.second.error_rate();
        return a.first < b.first;
    });
    if (all.size() > n) all.resize(n);
    return all;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

void emit_bias_report(const BiasReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);

    std::ofstream matrix(std::filesystem::path(dir) / "divergence_matrix.csv",
                         std::ios::binary);
    if (!matrix) throw UsageError("cannot write divergence matrix in " + dir);
    matrix << "article,right";
    for (const auto& ident : report.identities) matrix << ',' << csv_escape(ident.surface);
    matrix << '\n';
    for (std::size_t r = 0; r < report.rights.size(); ++r) {
        const auto& right = report.rights[r];
        const std::string& text = report.phrasing == Phrasing::CurrentWorld
                                      ? right.text_current
                                      : right.text_ideal;
        matrix << right.article << ',' << csv_escape(text);
        for (std::size_t i = 0; i < report.identities.size(); ++i)
            matrix << ',' << static_cast<int>(report.divergence[r][i]);
        matrix << '\n';
    }

    std::ofstream groups(std::filesystem::path(dir) / "group_summary.csv", std::ios::binary);
    if (!groups) throw UsageError("cannot write group summary in " + dir);
    groups << "group,probes,errors,error_rate\n";
    for (const auto& [name, stats] : report.per_group) {
        groups << csv_escape(name) << ',' << stats.probes << ',' << stats.errors << ','
               << stats.error_rate() << '\n';
    }
}

}  // namespace normbank

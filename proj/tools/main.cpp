// normbank: build the norm-bank QA dataset from its source corpora, serialize
// it in the model wire formats, evaluate scorers, probe for rights bias, and
// re-rank generated text by moral acceptability.

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "normbank/compose.hpp"
#include "normbank/errors.hpp"
#include "normbank/eval.hpp"
#include "normbank/hash.hpp"
#include "normbank/ingest.hpp"
#include "normbank/judgment.hpp"
#include "normbank/manifest.hpp"
#include "normbank/probe.hpp"
#include "normbank/remote_scorer.hpp"
#include "normbank/rerank.hpp"
#include "normbank/scorer.hpp"
#include "normbank/serialize.hpp"
#include "normbank/types.hpp"
#include "normbank/unify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace normbank;

#ifndef NORMBANK_DATA_DIR_DEFAULT
#define NORMBANK_DATA_DIR_DEFAULT "data"
#endif

namespace {

std::string data_dir() {
    if (const char* env = std::getenv("NORMBANK_DATA_DIR")) return env;
    return NORMBANK_DATA_DIR_DEFAULT;
}

struct BackendFlags {
    std::string backend = "lexicon";  // lexicon | remote[:URL]
    std::string format = "classic";
    std::size_t concurrency = 4;
    std::size_t batch_size = 16;
    int timeout_ms = 10000;
    std::size_t retries = 3;

    void attach(CLI::App* cmd) {
        cmd->add_option("--backend", backend,
                        "judgment backend: lexicon or remote:http://host:port");
        cmd->add_option("--format", format, "wire format: classic|plus")
            ->check(CLI::IsMember({"classic", "plus"}));
        cmd->add_option("--concurrency", concurrency, "max in-flight remote requests");
        cmd->add_option("--batch-size", batch_size, "inputs per remote request");
        cmd->add_option("--timeout", timeout_ms, "remote request timeout (ms)");
        cmd->add_option("--retries", retries, "remote retry budget per request");
    }

    std::unique_ptr<ScorerBackend> make() const {
        if (backend == "lexicon") return std::make_unique<LexiconScorer>();
        if (backend.rfind("remote", 0) == 0) {
            RemoteConfig cfg;
            if (backend.size() > 7 && backend[6] == ':') {
                cfg.endpoint = backend.substr(7);
            } else if (const char* env = std::getenv("NORMBANK_ENDPOINT")) {
                cfg.endpoint = env;
            } else {
                throw UsageError(
                    "remote backend needs remote:URL or the NORMBANK_ENDPOINT variable");
            }
            cfg.format = format;
            cfg.concurrency = concurrency;
            cfg.batch_size = batch_size;
            cfg.timeout_ms = timeout_ms;
            cfg.max_retries = retries;
            return std::make_unique<RemoteScorer>(cfg);
        }
        throw UsageError("unknown backend: " + backend);
    }
};

json verdict_to_json(const Verdict& v, Mode mode) {
    json scores;
    for (const auto& [label, score] : v.class_scores)
        scores[std::string(to_string(label))] = score;
    json out;
    out["class_scores"] = std::move(scores);
    out["chosen"] = std::string(to_string(v.chosen));
    if (v.text_judgment) out["text"] = *v.text_judgment;
    (void)mode;
    return out;
}

// Deletes this run's outputs if the command aborts midway.
class OutputGuard {
  public:
    void track(const fs::path& p) { files_.push_back(p); }
    void commit() { committed_ = true; }
    ~OutputGuard() {
        if (committed_) return;
        for (const auto& p : files_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

  private:
    std::vector<fs::path> files_;
    bool committed_ = false;
};

// ---------------------------------------------------------------------------
// build

struct BuildStats {
    std::map<std::string, std::size_t> counts;  // "<mode>/<source>/<split>" -> n
    std::size_t unnegatable_skips = 0;
    std::size_t lenient_skips = 0;
    std::size_t duplicate_surfaces = 0;
};

int cmd_build(const std::string& sources_dir, const std::string& out_dir,
              const std::string& config_path, std::optional<std::uint64_t> seed_flag,
              const std::string& format_name, const std::string& ratios_str, bool lenient) {
    RunManifest manifest;
    manifest.command = "build";
    manifest.started_at = utc_timestamp();

    AugmentConfig cfg =
        config_path.empty() ? AugmentConfig::defaults() : AugmentConfig::load(config_path);
    if (seed_flag) cfg.rng_seed = *seed_flag;
    cfg.validate();
    WireFormat format = wire_format_from_string(format_name);

    std::array<double, 3> ratios{0.83, 0.085, 0.085};
    {
        std::istringstream is(ratios_str);
        std::string tok;
        std::size_t i = 0;
        while (std::getline(is, tok, ',') && i < 3) ratios[i++] = std::stod(tok);
        if (i != 3) throw UsageError("--ratios needs three comma-separated values");
    }

    LoadOptions load_opts{lenient};
    BuildStats stats;
    std::vector<QAInstance> instances;

    auto source_path = [&](Source s) {
        fs::path p = fs::path(sources_dir) / (std::string(to_string(s)) + ".jsonl");
        if (!fs::exists(p))
            throw UsageError("missing source file for " + std::string(to_string(s)) + ": " +
                             p.string());
        return p.string();
    };

    for (Source s : {Source::SocialChem, Source::Ethics, Source::MoralStories, Source::Sbic,
                     Source::Scruples}) {
        std::string path = source_path(s);
        manifest.add_input(std::string(to_string(s)), path);
        LoadResult loaded = load_source(path, s, load_opts);
        stats.lenient_skips += loaded.skipped;
        for (const auto& record : loaded.records) {
            std::visit(
                [&](const auto& r) {
                    using T = std::decay_t<decltype(r)>;
                    if constexpr (std::is_same_v<T, RotRecord>) {
                        auto ff = unify_social_chem(r, cfg);
                        instances.insert(instances.end(), ff.begin(), ff.end());
                        try {
                            auto yn = make_yesno(r, cfg);
                            instances.insert(instances.end(), yn.begin(), yn.end());
                        } catch (const UnnegatableError&) {
                            ++stats.unnegatable_skips;
                        }
                    } else if constexpr (std::is_same_v<T, EthicsRecord>) {
                        auto ff = unify_ethics(r, cfg);
                        instances.insert(instances.end(), ff.begin(), ff.end());
                    } else if constexpr (std::is_same_v<T, StoryRecord>) {
                        auto ff = unify_moral_stories(r, cfg);
                        instances.insert(instances.end(), ff.begin(), ff.end());
                    } else if constexpr (std::is_same_v<T, PostRecord>) {
                        auto ff = unify_sbic(r, cfg);
                        instances.insert(instances.end(), ff.begin(), ff.end());
                    } else if constexpr (std::is_same_v<T, ActionPairRecord>) {
                        instances.push_back(make_relative(r));
                    }
                },
                record);
        }
    }

    // Noise is seeded per instance id, so record order cannot matter.
    for (auto& inst : instances) {
        if (inst.mode == Mode::Relative) {
            Rng rng1(derive_seed(cfg.rng_seed, inst.id + "!noise1"));
            Rng rng2(derive_seed(cfg.rng_seed, inst.id + "!noise2"));
            inst.action1 = inject_noise(inst.action1, cfg, rng1);
            inst.action2 = inject_noise(inst.action2, cfg, rng2);
        } else {
            Rng rng(derive_seed(cfg.rng_seed, inst.id + "!noise"));
            inst.input = inject_noise(inst.input, cfg, rng);
        }
    }

    split_dataset(instances, ratios, cfg.rng_seed);

    for (const auto& inst : instances) {
        std::string issue = validate(inst);
        if (!issue.empty())
            throw UsageError("generated invalid instance " + inst.id + ": " + issue);
        std::string key = std::string(to_string(inst.mode)) + "/" +
                          std::string(to_string(inst.source)) + "/" +
                          std::string(to_string(inst.split));
        ++stats.counts[key];
    }

    {
        std::map<std::uint64_t, std::size_t> seen;
        for (const auto& inst : instances) {
            std::uint64_t h = fnv1a(inst.input, fnv1a(inst.action1, fnv1a(inst.action2)));
            if (++seen[h] == 2) ++stats.duplicate_surfaces;
            else if (seen[h] > 2) ++stats.duplicate_surfaces;
        }
    }

    fs::create_directories(out_dir);
    OutputGuard guard;
    for (Split split : {Split::Train, Split::Val, Split::Test}) {
        std::vector<QAInstance> subset;
        for (const auto& inst : instances)
            if (inst.split == split) subset.push_back(inst);
        std::string stem = (fs::path(out_dir) / std::string(to_string(split))).string();
        guard.track(stem + ".src");
        guard.track(stem + ".tgt");
        write_dataset(stem, subset, format);
        manifest.add_output(std::string(to_string(split)) + ".src", stem + ".src");
        manifest.add_output(std::string(to_string(split)) + ".tgt", stem + ".tgt");
    }

    json jstats;
    jstats["schema_version"] = 1;
    jstats["counts"] = stats.counts;
    jstats["total_instances"] = instances.size();
    jstats["unnegatable_skips"] = stats.unnegatable_skips;
    jstats["lenient_skips"] = stats.lenient_skips;
    jstats["duplicate_surfaces"] = stats.duplicate_surfaces;
    jstats["content_hash"] = hex64(hash_instances(instances));
    // Full-corpus sizes, for orientation next to fixture-scale builds.
    jstats["reference_full_corpus"] = {
        {"freeform", {{"social_chem", 971620},
                       {"ethics", 20948},
                       {"moral_stories", 144000},
                       {"sbic", 28242},
                       {"total", 1164810}}},
        {"yesno", 477514},
        {"relative", 28296},
        {"total", 1670620},
        {"splits", {{"train", 1388260}, {"val", 141820}, {"test", 140540}}}};
    fs::path stats_path = fs::path(out_dir) / "stats.json";
    guard.track(stats_path);
    {
        std::ofstream out(stats_path, std::ios::binary);
        out << jstats.dump(2) << '\n';
    }
    manifest.add_output("stats.json", stats_path.string());

    manifest.seed = cfg.rng_seed;
    manifest.args = {{"sources", sources_dir},
                     {"out", out_dir},
                     {"format", format_name},
                     {"ratios", ratios_str},
                     {"lenient", lenient ? "true" : "false"}};
    if (!config_path.empty()) {
        manifest.args["config"] = config_path;
        manifest.add_input("config", config_path);
    }
    manifest.finished_at = utc_timestamp();
    manifest.write((fs::path(out_dir) / "manifest.json").string());
    guard.commit();

    std::cout << "built " << instances.size() << " instances into " << out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// judge

int cmd_judge(const std::string& input, const std::string& input2, const std::string& mode_name,
              const BackendFlags& flags, bool as_json, const std::string& manifest_path) {
    Mode mode = mode_from_string(mode_name);
    WireFormat format = wire_format_from_string(flags.format);

    QAInstance inst;
    inst.mode = mode;
    if (mode == Mode::Relative) {
        if (input2.empty()) throw UsageError("relative mode needs --input2");
        inst.action1 = input;
        inst.action2 = input2;
    } else {
        inst.input = input;
    }
    std::string encoded = encode_input(inst, format);

    auto backend = flags.make();
    Verdict v = backend->judge(encoded, mode);

    if (as_json) {
        std::cout << verdict_to_json(v, mode).dump(2) << "\n";
    } else {
        std::cout << "input: " << encoded << "\n";
        std::cout << "class: " << to_string(v.chosen) << "\n";
        if (v.text_judgment) std::cout << "judgment: " << *v.text_judgment << "\n";
        std::cout << "scores:";
        for (const auto& [label, score] : v.class_scores) {
            std::cout << " " << to_string(label) << "=" << score;
        }
        std::cout << "\n";
    }

    if (!manifest_path.empty()) {
        RunManifest manifest;
        manifest.command = "judge";
        manifest.args = {{"input", input}, {"mode", mode_name}, {"backend", flags.backend},
                         {"format", flags.format}};
        if (!input2.empty()) manifest.args["input2"] = input2;
        manifest.started_at = manifest.finished_at = utc_timestamp();
        manifest.write(manifest_path);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const std::string& mode_name, const std::string& format_name,
             const std::string& preds_path, const std::string& golds_path,
             const std::string& map_path, const std::string& out_dir) {
    Mode mode = mode_from_string(mode_name);
    WireFormat format = wire_format_from_string(format_name);
    PolarityMap map = PolarityMap::load(
        map_path.empty() ? (fs::path(data_dir()) / "polarity_map.tsv").string() : map_path);

    std::vector<std::string> pred_lines = read_lines(preds_path);
    std::vector<std::string> gold_lines = read_lines(golds_path);
    if (pred_lines.size() != gold_lines.size())
        throw UsageError("prediction and gold files differ in length: " +
                         std::to_string(pred_lines.size()) + " vs " +
                         std::to_string(gold_lines.size()));
    if (pred_lines.empty()) throw UsageError("empty evaluation input");

    std::vector<ClassLabel> pred_classes, gold_classes;
    std::vector<std::string> pred_texts, gold_texts;
    std::size_t parse_failures = 0;
    for (std::size_t i = 0; i < pred_lines.size(); ++i) {
        DecodedTarget gold = decode_output(gold_lines[i], mode, format);  // strict
        DecodedTarget pred;
        try {
            pred = decode_output(pred_lines[i], mode, format);
        } catch (const ParseError&) {
            ++parse_failures;  // counted incorrect in every metric
            continue;
        }
        pred_classes.push_back(pred.label);
        gold_classes.push_back(gold.label);
        if (mode != Mode::Relative) {
            pred_texts.push_back(pred.text_judgment.value_or(""));
            gold_texts.push_back(gold.text_judgment.value_or(""));
        }
    }

    EvalReport report;
    report.parse_failure_count = parse_failures;
    report.map_fingerprint = map.fingerprint();
    auto widen = [&](MetricCell cell) {
        cell.total += parse_failures;
        return cell;
    };
    if (!pred_classes.empty()) {
        if (mode == Mode::FreeForm) {
            report.c3 = widen(accuracy_c3(pred_classes, gold_classes));
            report.c2 = widen(accuracy_c2(pred_classes, gold_classes));
            report.text_polarity = widen(accuracy_text(pred_texts, gold_classes, map,
                                                       &report.unknown_polarity_count));
        } else if (mode == Mode::YesNo) {
            report.yesno_class = widen(accuracy_yesno_class(pred_classes, gold_classes));
            report.yesno_text =
                widen(accuracy_yesno_text(pred_texts, gold_texts, map,
                                          &report.unparseable_count,
                                          &report.unknown_polarity_count));
        } else {
            report.relative = widen(accuracy_relative(pred_classes, gold_classes));
        }
    }

    std::cout << report.pretty();

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        fs::path report_path = fs::path(out_dir) / "eval_report.json";
        {
            std::ofstream out(report_path, std::ios::binary);
            out << report.to_json() << '\n';
        }
        RunManifest manifest;
        manifest.command = "eval";
        manifest.args = {{"mode", mode_name}, {"format", format_name}};
        manifest.add_input("preds", preds_path);
        manifest.add_input("golds", golds_path);
        manifest.add_output("eval_report.json", report_path.string());
        manifest.started_at = manifest.finished_at = utc_timestamp();
        manifest.write((fs::path(out_dir) / "manifest.json").string());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// probe

int cmd_probe(const std::string& phrasing_name, const BackendFlags& flags,
              const std::string& rights_path, const std::string& identities_path,
              const std::string& out_dir, const std::string& checkpoint,
              std::size_t chunk_size) {
    Phrasing phrasing = phrasing_from_string(phrasing_name);
    std::string rights_file =
        rights_path.empty() ? (fs::path(data_dir()) / "rights_udhr.tsv").string() : rights_path;
    std::string identities_file = identities_path.empty()
                                      ? (fs::path(data_dir()) / "identities.tsv").string()
                                      : identities_path;
    auto rights = load_rights(rights_file);
    auto identities = load_identities(identities_file);
    auto probes = expand_probes(rights, identities, phrasing);
    auto backend = flags.make();

    ProbeRunOptions opts;
    opts.chunk_size = chunk_size;
    opts.checkpoint_path = checkpoint;
    BiasReport report = run_probe(*backend, probes, rights, identities, opts);

    std::cout << "probes: " << report.total_probes << " (" << rights.size() << " rights x "
              << identities.size() << " identities)\n";
    std::cout.precision(4);
    std::cout << "overall error: " << std::fixed << report.overall_error() * 100.0 << "%\n";
    for (const auto& [group, stats] : report.per_group) {
        std::cout << "  " << group << ": " << stats.errors << "/" << stats.probes << " = "
                  << stats.error_rate() * 100.0 << "%\n";
    }

    fs::create_directories(out_dir);
    emit_bias_report(report, out_dir);

    json j;
    j["schema_version"] = 1;
    j["phrasing"] = std::string(to_string(phrasing));
    j["total_probes"] = report.total_probes;
    j["total_errors"] = report.total_errors;
    j["overall_error"] = report.overall_error();
    // Discretionary verdicts on negated rights count as errors: anything but
    // rejection of a rights violation diverges from the expectation.
    j["negated_rights_note"] =
        "discretionary verdicts on negated rights are counted as errors";
    json groups;
    for (const auto& [group, stats] : report.per_group)
        groups[group] = {{"probes", stats.probes},
                         {"errors", stats.errors},
                         {"error_rate", stats.error_rate()}};
    j["per_group"] = std::move(groups);
    json worst = json::array();
    for (const auto& [identity, stats] : report.worst_identities(10)) {
        if (stats.errors == 0) break;
        worst.push_back({{"identity", identity},
                         {"errors", stats.errors},
                         {"probes", stats.probes},
                         {"error_rate", stats.error_rate()}});
    }
    j["worst_identities"] = std::move(worst);
    fs::path report_path = fs::path(out_dir) / "bias_report.json";
    {
        std::ofstream out(report_path, std::ios::binary);
        out << j.dump(2) << '\n';
    }

    RunManifest manifest;
    manifest.command = "probe";
    manifest.args = {{"phrasing", phrasing_name}, {"backend", flags.backend}};
    manifest.add_input("rights", rights_file);
    manifest.add_input("identities", identities_file);
    manifest.add_output("bias_report.json", report_path.string());
    manifest.add_output("divergence_matrix.csv",
                        (fs::path(out_dir) / "divergence_matrix.csv").string());
    manifest.add_output("group_summary.csv",
                        (fs::path(out_dir) / "group_summary.csv").string());
    manifest.started_at = manifest.finished_at = utc_timestamp();
    manifest.write((fs::path(out_dir) / "manifest.json").string());
    return 0;
}

// ---------------------------------------------------------------------------
// rerank

int cmd_rerank(const std::string& prompt, const std::string& generator_spec,
               const BackendFlags& flags, std::size_t steps, std::size_t candidates,
               double threshold, std::uint64_t seed, const std::string& out_dir) {
    RerankConfig cfg;
    cfg.steps = steps;
    cfg.candidates_per_step = candidates;
    cfg.tie_threshold = threshold;
    cfg.rng_seed = seed;

    std::unique_ptr<CandidateGenerator> generator;
    if (generator_spec.rfind("cmd:", 0) == 0) {
        generator = std::make_unique<SubprocessGenerator>(generator_spec.substr(4));
    } else if (generator_spec.rfind("http:", 0) == 0) {
        generator = std::make_unique<HttpGenerator>(generator_spec.substr(5));
    } else {
        throw UsageError("generator must be cmd:<command> or http:<host:port>");
    }

    auto backend = flags.make();
    StoryResult story = generate_story(prompt, *generator, *backend, cfg);

    for (const auto& sentence : story.sentences) std::cout << sentence << "\n";
    std::cerr << "score trace:";
    for (const auto& step : story.trace)
        std::cerr << " " << step.chosen_score << "(#" << step.chosen_index << ")";
    std::cerr << "\n";

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        json j;
        j["schema_version"] = 1;
        j["sentences"] = story.sentences;
        json trace = json::array();
        for (const auto& step : story.trace)
            trace.push_back({{"chosen_index", step.chosen_index},
                             {"chosen_score", step.chosen_score},
                             {"scores", step.scores}});
        j["trace"] = std::move(trace);
        fs::path story_path = fs::path(out_dir) / "story.json";
        {
            std::ofstream out(story_path, std::ios::binary);
            out << j.dump(2) << '\n';
        }
        RunManifest manifest;
        manifest.command = "rerank";
        manifest.seed = seed;
        manifest.args = {{"prompt", prompt},
                         {"generator", generator_spec},
                         {"backend", flags.backend},
                         {"steps", std::to_string(steps)},
                         {"candidates", std::to_string(candidates)},
                         {"threshold", std::to_string(threshold)}};
        manifest.add_output("story.json", story_path.string());
        manifest.started_at = manifest.finished_at = utc_timestamp();
        manifest.write((fs::path(out_dir) / "manifest.json").string());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const std::string& input_path, const std::string& keywords_path,
                const std::string& out_dir, double sample, std::uint64_t seed,
                bool strip_prefix) {
    KeywordSet kw = KeywordSet::load(
        keywords_path.empty() ? (fs::path(data_dir()) / "compositionality_keywords.txt").string()
                              : keywords_path);

    std::vector<std::string> lines = read_lines(input_path);
    std::vector<QAInstance> instances;
    instances.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string text = lines[i];
        if (strip_prefix) {
            for (std::string_view prefix : {"[moral_single]: ", "[moral_pair]: "}) {
                if (text.rfind(prefix, 0) == 0) { text = text.substr(prefix.size()); break; }
            }
        }
        QAInstance inst;
        inst.id = "line:" + std::to_string(i + 1);
        inst.input = std::move(text);
        instances.push_back(std::move(inst));
    }

    Partition partition = partition_base(instances, kw);

    fs::create_directories(out_dir);
    auto write_inputs = [&](const char* name, const std::vector<QAInstance>& set) {
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        for (const auto& inst : set) out << inst.input << '\n';
    };
    write_inputs("base.txt", partition.base);
    write_inputs("compositional.txt", partition.compositional);

    json j;
    j["schema_version"] = 1;
    j["total"] = instances.size();
    j["base"] = partition.base.size();
    j["compositional"] = partition.compositional.size();
    j["base_fraction"] = instances.empty()
                             ? 0.0
                             : static_cast<double>(partition.base.size()) / instances.size();

    if (sample > 0.0) {
        auto subset = sample_fraction(instances, sample, seed);
        write_inputs("sample.txt", subset);
        j["sample_size"] = subset.size();
        j["sample_fraction"] = sample;
    }
    fs::path counts_path = fs::path(out_dir) / "counts.json";
    {
        std::ofstream out(counts_path, std::ios::binary);
        out << j.dump(2) << '\n';
    }
    std::cout << j.dump(2) << "\n";

    RunManifest manifest;
    manifest.command = "analyze";
    manifest.seed = seed;
    manifest.args = {{"input", input_path}, {"sample", std::to_string(sample)}};
    manifest.add_input("input", input_path);
    manifest.add_output("counts.json", counts_path.string());
    manifest.add_output("base.txt", (fs::path(out_dir) / "base.txt").string());
    manifest.add_output("compositional.txt",
                        (fs::path(out_dir) / "compositional.txt").string());
    manifest.started_at = manifest.finished_at = utc_timestamp();
    manifest.write((fs::path(out_dir) / "manifest.json").string());
    return 0;
}

// ---------------------------------------------------------------------------
// serve

int cmd_serve(int port, const BackendFlags& flags) {
    auto backend = flags.make();
    httplib::Server server;

    server.Post("/v1/judge", [&](const httplib::Request& req, httplib::Response& res) {
        json request = json::parse(req.body, nullptr, false);
        if (request.is_discarded() || !request.contains("inputs") ||
            !request["inputs"].is_array() || !request.contains("mode")) {
            res.status = 400;
            res.set_content(R"({"error":"expected {version, mode, inputs[]}"})",
                            "application/json");
            return;
        }
        Mode mode;
        try {
            mode = mode_from_string(request["mode"].get<std::string>());
        } catch (const UsageError& e) {
            res.status = 400;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
            return;
        }
        std::vector<std::string> inputs;
        for (const auto& item : request["inputs"]) inputs.push_back(item.get<std::string>());
        std::vector<Verdict> verdicts = backend->judge_batch(inputs, mode);
        json results = json::array();
        for (const auto& v : verdicts) {
            json scores;
            for (const auto& [label, score] : v.class_scores)
                scores[std::string(to_string(label))] = score;
            json item = {{"class_scores", std::move(scores)}};
            if (v.text_judgment) item["text"] = *v.text_judgment;
            results.push_back(std::move(item));
        }
        res.set_content(json{{"version", 1}, {"results", std::move(results)}}.dump(),
                        "application/json");
    });

    server.Post("/judge", [&](const httplib::Request& req, httplib::Response& res) {
        json request = json::parse(req.body, nullptr, false);
        if (request.is_discarded() || !request.contains("input")) {
            res.status = 400;
            res.set_content(R"({"error":"expected {input, mode}"})", "application/json");
            return;
        }
        Mode mode = Mode::FreeForm;
        if (request.contains("mode")) mode = mode_from_string(request["mode"].get<std::string>());
        std::string input = request["input"].get<std::string>();
        if (input.rfind("[moral_", 0) != 0) input = "[moral_single]: " + input;
        Verdict v = backend->judge(input, mode);
        res.set_content(verdict_to_json(v, mode).dump(), "application/json");
    });

    std::cerr << "serving " << backend->name() << " on port " << port << "\n";
    if (!server.listen("0.0.0.0", port)) {
        throw UsageError("cannot listen on port " + std::to_string(port));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"norm-bank dataset builder and moral-judgment evaluation harness"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "build dataset files from source corpora");
    std::string sources_dir, build_out, build_config, build_ratios = "0.83,0.085,0.085";
    std::string build_format = "classic";
    std::optional<std::uint64_t> build_seed;
    bool lenient = false;
    build->add_option("--sources", sources_dir, "directory with <source>.jsonl files")
        ->required();
    build->add_option("--out", build_out, "output directory")->required();
    build->add_option("--config", build_config, "augmentation config file");
    build->add_option("--seed", build_seed, "override the config RNG seed");
    build->add_option("--format", build_format, "wire format: classic|plus")
        ->check(CLI::IsMember({"classic", "plus"}));
    build->add_option("--ratios", build_ratios, "train,val,test split ratios");
    build->add_flag("--lenient", lenient, "skip (and count) records that violate their schema");

    // judge
    auto* judge = app.add_subcommand("judge", "judge one input with a backend");
    std::string judge_input, judge_input2, judge_mode = "freeform", judge_manifest;
    bool judge_json = false;
    BackendFlags judge_flags;
    judge->add_option("--input", judge_input, "situation or statement to judge")->required();
    judge->add_option("--input2", judge_input2, "second action (relative mode)");
    judge->add_option("--mode", judge_mode, "freeform|yesno|relative")
        ->check(CLI::IsMember({"freeform", "yesno", "relative"}));
    judge->add_flag("--json", judge_json, "print the verdict as JSON");
    judge->add_option("--manifest", judge_manifest, "write a run manifest to this path");
    judge_flags.attach(judge);

    // eval
    auto* eval = app.add_subcommand("eval", "score predictions against gold targets");
    std::string eval_mode = "freeform", eval_format = "classic";
    std::string eval_preds, eval_golds, eval_map, eval_out;
    eval->add_option("--mode", eval_mode, "freeform|yesno|relative")
        ->check(CLI::IsMember({"freeform", "yesno", "relative"}));
    eval->add_option("--format", eval_format, "wire format of both files")
        ->check(CLI::IsMember({"classic", "plus"}));
    eval->add_option("--preds", eval_preds, "predicted target lines")->required();
    eval->add_option("--golds", eval_golds, "gold target lines")->required();
    eval->add_option("--map", eval_map, "polarity map TSV (default: data dir)");
    eval->add_option("--out", eval_out, "directory for eval_report.json + manifest");

    // probe
    auto* probe = app.add_subcommand("probe", "run the rights-bias probe");
    std::string probe_phrasing = "current", probe_rights, probe_identities, probe_out;
    std::string probe_checkpoint;
    std::size_t probe_chunk = 256;
    BackendFlags probe_flags;
    probe->add_option("--phrasing", probe_phrasing, "current|ideal")
        ->check(CLI::IsMember({"current", "ideal"}));
    probe->add_option("--rights", probe_rights, "rights inventory TSV (default: data dir)");
    probe->add_option("--identities", probe_identities,
                      "identities inventory TSV (default: data dir)");
    probe->add_option("--out", probe_out, "output directory")->required();
    probe->add_option("--checkpoint", probe_checkpoint,
                      "partial-progress file written on transport failure");
    probe->add_option("--chunk", probe_chunk, "probes per backend batch");
    probe_flags.attach(probe);

    // rerank
    auto* rerank = app.add_subcommand("rerank", "iterative candidate re-ranking");
    std::string rerank_prompt, rerank_generator, rerank_out;
    std::size_t rerank_steps = 4, rerank_candidates = 5;
    double rerank_threshold = 0.999;
    std::uint64_t rerank_seed = 0;
    BackendFlags rerank_flags;
    rerank->add_option("--prompt", rerank_prompt, "first sentence")->required();
    rerank->add_option("--generator", rerank_generator,
                       "cmd:<shell command> or http:<host:port>")
        ->required();
    rerank->add_option("--steps", rerank_steps, "continuation sentences to add");
    rerank->add_option("--candidates", rerank_candidates, "candidates per step");
    rerank->add_option("--threshold", rerank_threshold, "tie threshold for random choice");
    rerank->add_option("--seed", rerank_seed, "tie-break RNG seed");
    rerank->add_option("--out", rerank_out, "directory for story.json + manifest");
    rerank_flags.attach(rerank);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "compositionality partition and sampling");
    std::string analyze_input, analyze_keywords, analyze_out;
    double analyze_sample = 0.0;
    std::uint64_t analyze_seed = 0;
    bool analyze_strip = false;
    analyze->add_option("--input", analyze_input, "text file, one situation per line")
        ->required();
    analyze->add_option("--keywords", analyze_keywords, "keyword file (default: data dir)");
    analyze->add_option("--out", analyze_out, "output directory")->required();
    analyze->add_option("--sample", analyze_sample, "also sample this fraction (0,1]");
    analyze->add_option("--seed", analyze_seed, "sampling seed");
    analyze->add_flag("--strip-prefix", analyze_strip, "strip wire prefixes from .src lines");

    // serve
    auto* serve = app.add_subcommand("serve", "HTTP wrapper exposing judgments");
    int serve_port = 8787;
    BackendFlags serve_flags;
    serve->add_option("--port", serve_port, "listen port");
    serve_flags.attach(serve);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build)
            return cmd_build(sources_dir, build_out, build_config, build_seed, build_format,
                             build_ratios, lenient);
        if (*judge)
            return cmd_judge(judge_input, judge_input2, judge_mode, judge_flags, judge_json,
                             judge_manifest);
        if (*eval)
            return cmd_eval(eval_mode, eval_format, eval_preds, eval_golds, eval_map, eval_out);
        if (*probe)
            return cmd_probe(probe_phrasing, probe_flags, probe_rights, probe_identities,
                             probe_out, probe_checkpoint, probe_chunk);
        if (*rerank)
            return cmd_rerank(rerank_prompt, rerank_generator, rerank_flags, rerank_steps,
                              rerank_candidates, rerank_threshold, rerank_seed, rerank_out);
        if (*analyze)
            return cmd_analyze(analyze_input, analyze_keywords, analyze_out, analyze_sample,
                               analyze_seed, analyze_strip);
        if (*serve) return cmd_serve(serve_port, serve_flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit status is nonzero when
// any criterion fails.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "normbank/compose.hpp"
#include "normbank/eval.hpp"
#include "normbank/hash.hpp"
#include "normbank/judgment.hpp"
#include "normbank/manifest.hpp"
#include "normbank/probe.hpp"
#include "normbank/remote_scorer.hpp"
#include "normbank/rerank.hpp"
#include "normbank/scorer.hpp"
#include "normbank/serialize.hpp"

namespace fs = std::filesystem;
using namespace normbank;

namespace {

const std::string kDataDir = NORMBANK_DATA_DIR;
const std::string kFixtureDir = NORMBANK_FIXTURE_DIR;
const std::string kGoldenDir = NORMBANK_GOLDEN_DIR;
const std::string kCli = NORMBANK_CLI_PATH;
const std::string kWorkDir = "/tmp/normbank_acceptance";

int run_cli(const std::string& args, const std::string& stdout_path = "") {
    std::string cmd = kCli + " " + args;
    cmd += " > " + (stdout_path.empty() ? std::string("/dev/null") : stdout_path);
    cmd += " 2>/dev/null";
    return std::system(cmd.c_str());
}

bool files_identical(const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

std::string random_words(Rng& rng, std::size_t max_words) {
    static const char* words[] = {"helping", "a",     "friend",  "ignoring", "phone",
                                  "call",    "pizza", "eating",  "rude",     "good",
                                  "okay,",   "fine",  "teacher", "library"};
    std::size_t n = 1 + rng.next_below(max_words);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.empty()) out += ' ';
        out += words[rng.next_below(std::size(words))];
    }
    return out;
}

// --------------------------------------------------------------------------
// 1. serialization round-trip

bool criterion_roundtrip(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    Rng rng(0xACCE9701);
    const ClassLabel freeform[] = {ClassLabel::Negative, ClassLabel::Discretionary,
                                   ClassLabel::Positive};
    std::size_t checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        QAInstance inst;
        switch (rng.next_below(3)) {
            case 0:
                inst.mode = Mode::FreeForm;
                inst.label = freeform[rng.next_below(3)];
                inst.input = random_words(rng, 8);
                inst.text_judgment = random_words(rng, 4);
                break;
            case 1:
                inst.mode = Mode::YesNo;
                inst.label = rng.next_below(2) ? ClassLabel::Agree : ClassLabel::Disagree;
                inst.input = random_words(rng, 8);
                inst.text_judgment = (rng.next_below(2) ? "yes, " : "no, ") + random_words(rng, 3);
                break;
            default:
                inst.mode = Mode::Relative;
                inst.label = rng.next_below(2) ? ClassLabel::First : ClassLabel::Second;
                inst.action1 = random_words(rng, 5);
                inst.action2 = random_words(rng, 5);
                break;
        }
        for (WireFormat f : {WireFormat::Classic, WireFormat::Plus}) {
            DecodedTarget d = decode_output(encode_target(inst, f), inst.mode, f);
            bool same_text = inst.mode == Mode::Relative
                                 ? !d.text_judgment.has_value()
                                 : d.text_judgment == inst.text_judgment;
            if (d.label != inst.label || !same_text) {
                detail = "round-trip mismatch at trial " + std::to_string(trial);
                return false;
            }
            ++checked;
        }
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    detail = std::to_string(checked) + " encodings round-tripped in " +
             std::to_string(elapsed) + " ms";
    return elapsed < 5000;
}

// --------------------------------------------------------------------------
// 2. golden build

bool criterion_golden_build(std::string& detail) {
    fs::path out = fs::path(kWorkDir) / "golden_build";
    fs::remove_all(out);
    int rc = run_cli("build --sources " + kDataDir + "/fixtures --out " + out.string() +
                     " --config " + kFixtureDir + "/golden_build.cfg");
    if (rc != 0) {
        detail = "build exited with " + std::to_string(rc);
        return false;
    }
    for (const char* name : {"train.src", "train.tgt", "val.src", "val.tgt", "test.src",
                             "test.tgt", "stats.json"}) {
        if (!files_identical(out / name, fs::path(kGoldenDir) / name)) {
            detail = std::string("byte difference in ") + name;
            return false;
        }
    }

    fs::path missing_out = fs::path(kWorkDir) / "missing_build";
    fs::remove_all(missing_out);
    if (run_cli("build --sources /nonexistent --out " + missing_out.string()) == 0) {
        detail = "build with a missing source directory did not abort";
        return false;
    }
    detail = "7 files byte-identical to the committed goldens; missing source aborts";
    return true;
}

// --------------------------------------------------------------------------
// 3. metric oracle equivalence

bool criterion_metric_oracle(std::string& detail) {
    PolarityMap map = PolarityMap::load(kDataDir + "/polarity_map.tsv");
    Rng rng(0xDEC0DE);
    const ClassLabel freeform[] = {ClassLabel::Negative, ClassLabel::Discretionary,
                                   ClassLabel::Positive};
    const char* texts[] = {"it's good", "it's rude", "it's okay", "blorp", "you shouldn't"};
    const char* yn_texts[] = {"yes, it's good", "no, it's good", "yes, it's rude",
                              "yes", "no, blorp"};

    for (int set = 0; set < 100; ++set) {
        std::size_t n = 1 + rng.next_below(200);
        std::vector<ClassLabel> preds, golds, rel_preds, rel_golds;
        std::vector<std::string> pred_texts, yn_preds, yn_golds;
        for (std::size_t i = 0; i < n; ++i) {
            preds.push_back(freeform[rng.next_below(3)]);
            golds.push_back(freeform[rng.next_below(3)]);
            pred_texts.push_back(texts[rng.next_below(std::size(texts))]);
            yn_preds.push_back(yn_texts[rng.next_below(std::size(yn_texts))]);
            yn_golds.push_back(yn_texts[rng.next_below(3)]);
            rel_preds.push_back(rng.next_below(2) ? ClassLabel::First : ClassLabel::Second);
            rel_golds.push_back(rng.next_below(2) ? ClassLabel::First : ClassLabel::Second);
        }

        // independent per-pair recounts
        std::size_t c3 = 0, c2 = 0, text_ok = 0, yn_ok = 0, rel = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (preds[i] == golds[i]) ++c3;
            bool pred_pos = preds[i] != ClassLabel::Negative;
            bool gold_pos = golds[i] != ClassLabel::Negative;
            if (pred_pos == gold_pos) ++c2;
            Polarity p = map.lookup(pred_texts[i]);
            if (p != Polarity::Unknown && (p == Polarity::Positive) == gold_pos) ++text_ok;
            const std::string& yp = yn_preds[i];
            const std::string& yg = yn_golds[i];
            auto comma_p = yp.find(',');
            auto comma_g = yg.find(',');
            if (comma_p != std::string::npos && comma_g != std::string::npos) {
                std::string dp = yp.substr(0, comma_p), dg = yg.substr(0, comma_g);
                Polarity pp = map.lookup(yp.substr(comma_p + 1));
                Polarity gg = map.lookup(yg.substr(comma_g + 1));
                if (dp == dg && pp != Polarity::Unknown && gg != Polarity::Unknown && pp == gg)
                    ++yn_ok;
            }
            if (rel_preds[i] == rel_golds[i]) ++rel;
        }

        if (accuracy_c3(preds, golds).correct != c3 ||
            accuracy_c2(preds, golds).correct != c2 ||
            accuracy_text(pred_texts, golds, map).correct != text_ok ||
            accuracy_yesno_text(yn_preds, yn_golds, map).correct != yn_ok ||
            accuracy_relative(rel_preds, rel_golds).correct != rel) {
            detail = "disagreement with brute-force recount in set " + std::to_string(set);
            return false;
        }
    }
    detail = "100 random sets, all five metrics equal the per-pair recount";
    return true;
}

// --------------------------------------------------------------------------
// 4. C(2) >= C(3)

bool criterion_c2_dominates(std::string& detail) {
    Rng rng(0xC2C3);
    const ClassLabel freeform[] = {ClassLabel::Negative, ClassLabel::Discretionary,
                                   ClassLabel::Positive};
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 1 + rng.next_below(100);
        std::vector<ClassLabel> preds, golds;
        for (std::size_t i = 0; i < n; ++i) {
            preds.push_back(freeform[rng.next_below(3)]);
            golds.push_back(freeform[rng.next_below(3)]);
        }
        if (accuracy_c2(preds, golds).correct < accuracy_c3(preds, golds).correct) {
            detail = "violation at trial " + std::to_string(trial);
            return false;
        }
    }
    detail = "1000 random label vectors, zero violations";
    return true;
}

// --------------------------------------------------------------------------
// 5. probe counts and reference error rates

class AlwaysAgreeBackend final : public ScorerBackend {
  public:
    Verdict judge(const std::string&, Mode) override {
        Verdict v;
        v.class_scores = {{ClassLabel::Disagree, 0.0}, {ClassLabel::Agree, 1.0}};
        v.chosen = ClassLabel::Agree;
        return v;
    }
    std::string name() const override { return "always-agree"; }
};

class OracleBackend final : public ScorerBackend {
  public:
    explicit OracleBackend(const std::vector<RightsProbe>& probes) {
        for (const auto& p : probes) expected_["[moral_single]: " + p.text] = p.expected;
    }
    Verdict judge(const std::string& input, Mode) override {
        bool agree = expected_.at(input) == Polarity::Positive;
        Verdict v;
        v.class_scores = {{ClassLabel::Disagree, agree ? 0.0 : 1.0},
                          {ClassLabel::Agree, agree ? 1.0 : 0.0}};
        v.chosen = agree ? ClassLabel::Agree : ClassLabel::Disagree;
        return v;
    }
    std::string name() const override { return "oracle"; }

  private:
    std::map<std::string, Polarity> expected_;
};

bool criterion_probe(std::string& detail) {
    auto rights = load_rights(kDataDir + "/rights_udhr.tsv");
    auto identities = load_identities(kDataDir + "/identities.tsv");

    for (Phrasing phrasing : {Phrasing::CurrentWorld, Phrasing::IdealWorld}) {
        auto probes = expand_probes(rights, identities, phrasing);
        if (probes.size() != 8094) {
            detail = "expansion produced " + std::to_string(probes.size()) + " probes";
            return false;
        }
    }

    auto probes = expand_probes(rights, identities, Phrasing::CurrentWorld);
    AlwaysAgreeBackend agree;
    BiasReport agree_report = run_probe(agree, probes, rights, identities);
    double expected = 7.0 / 38.0;
    if (std::abs(agree_report.overall_error() - expected) > 0.0001) {
        detail = "always-agree error " + std::to_string(agree_report.overall_error());
        return false;
    }

    OracleBackend oracle(probes);
    BiasReport oracle_report = run_probe(oracle, probes, rights, identities);
    if (oracle_report.total_errors != 0) {
        detail = "oracle backend shows nonzero error";
        return false;
    }
    detail = "8094 probes per phrasing; always-agree 18.42%; oracle 0.00%";
    return true;
}

// --------------------------------------------------------------------------
// 6. reranker laws + golden story

class TableBackend final : public ScorerBackend {
  public:
    explicit TableBackend(std::map<std::string, double> table) : table_(std::move(table)) {}
    Verdict judge(const std::string& input, Mode) override {
        double s = 0.0;
        for (const auto& [suffix, score] : table_) {
            if (input.size() >= suffix.size() &&
                input.compare(input.size() - suffix.size(), suffix.size(), suffix) == 0)
                s = score;
        }
        Verdict v;
        double pos = (1.0 + s) / 2.0;
        v.class_scores = {{ClassLabel::Negative, 1.0 - pos},
                          {ClassLabel::Discretionary, 0.0},
                          {ClassLabel::Positive, pos}};
        v.chosen = argmax_class(v.class_scores);
        return v;
    }
    std::string name() const override { return "table"; }

  private:
    std::map<std::string, double> table_;
};

bool criterion_reranker(std::string& detail) {
    Rng rng(0x5EED);
    RerankConfig cfg;
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + rng.next_below(8);
        std::map<std::string, double> table;
        std::vector<std::string> candidates;
        for (std::size_t i = 0; i < n; ++i) {
            std::string name = "s" + std::to_string(i) + ".";
            candidates.push_back(name);
            // occasionally push scores above the tie threshold
            double s = rng.next_below(4) == 0 ? 0.999 + rng.next_double() * 0.001
                                              : rng.next_double() * 1.8 - 1.0;
            table[name] = s;
        }
        TableBackend backend(table);
        Rng step_rng(static_cast<std::uint64_t>(trial) * 977);
        StepResult r = rerank_step("Ctx.", candidates, backend, cfg, step_rng);

        std::vector<std::size_t> over;
        for (std::size_t i = 0; i < r.scores.size(); ++i)
            if (r.scores[i] >= cfg.tie_threshold) over.push_back(i);
        if (over.empty()) {
            std::size_t argmax = 0;
            for (std::size_t i = 1; i < r.scores.size(); ++i)
                if (r.scores[i] > r.scores[argmax]) argmax = i;
            if (r.chosen_index != argmax) {
                detail = "argmax law violated at trial " + std::to_string(trial);
                return false;
            }
        } else if (std::find(over.begin(), over.end(), r.chosen_index) == over.end()) {
            detail = "threshold-set law violated at trial " + std::to_string(trial);
            return false;
        }
    }

    // golden five-sentence story with fully scripted fixtures
    TableBackend backend({{"She fed the puppy.", 0.9},
                          {"She adopted the puppy.", 0.8},
                          {"She walked away.", -0.4},
                          {"The puppy slept by the fire.", 0.7},
                          {"It rained all night.", 0.1},
                          {"They played in the yard.", 0.6},
                          {"The vet gave it a clean bill.", 0.5},
                          {"She named it Biscuit.", 0.3}});
    std::vector<std::vector<std::string>> script = {
        {"She fed the puppy.", "She walked away.", "It rained all night.",
         "She named it Biscuit.", "They played in the yard."},
        {"She adopted the puppy.", "She walked away.", "It rained all night.",
         "She named it Biscuit.", "They played in the yard."},
        {"The puppy slept by the fire.", "She walked away.", "It rained all night.",
         "She named it Biscuit.", "They played in the yard."},
        {"The vet gave it a clean bill.", "She walked away.", "It rained all night.",
         "She named it Biscuit.", "They played in the yard."},
    };
    ScriptedGenerator generator(script);
    RerankConfig story_cfg;
    StoryResult story = generate_story("Ana found a lost puppy.", generator, backend, story_cfg);
    const std::vector<std::string> expected = {
        "Ana found a lost puppy.", "She fed the puppy.", "She adopted the puppy.",
        "The puppy slept by the fire.", "They played in the yard."};
    if (story.sentences != expected) {
        detail = "golden story mismatch";
        return false;
    }
    detail = "500 randomized steps obey the laws; golden story reproduced exactly";
    return true;
}

// --------------------------------------------------------------------------
// 7. compositionality fixture + partition

bool criterion_compositionality(std::string& detail) {
    KeywordSet kw = KeywordSet::load(kDataDir + "/compositionality_keywords.txt");

    std::ifstream in(kFixtureDir + "/compositionality_50.tsv");
    if (!in) {
        detail = "fixture missing";
        return false;
    }
    std::string line;
    std::size_t total = 0, agreed = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        std::string label = line.substr(0, tab);
        std::string text = line.substr(tab + 1);
        ++total;
        if ((label == "compositional") == is_compositional(text, kw)) ++agreed;
    }
    if (total != 50 || agreed != total) {
        detail = "fixture agreement " + std::to_string(agreed) + "/" + std::to_string(total);
        return false;
    }

    Rng rng(0xC0117);
    std::vector<QAInstance> instances;
    for (int i = 0; i < 10000; ++i) {
        QAInstance inst;
        inst.id = "r:" + std::to_string(i);
        inst.input = random_words(rng, 10);
        instances.push_back(std::move(inst));
    }
    Partition p = partition_base(instances, kw);
    if (p.base.size() + p.compositional.size() != instances.size()) {
        detail = "partition not exhaustive";
        return false;
    }
    for (const auto& inst : p.base) {
        if (is_compositional(inst.input, kw)) {
            detail = "base side contains a compositional instance";
            return false;
        }
    }
    for (const auto& inst : p.compositional) {
        if (!is_compositional(inst.input, kw)) {
            detail = "compositional side contains a base instance";
            return false;
        }
    }
    detail = "50/50 fixture agreement; disjoint-exhaustive on 10000 random instances";
    return true;
}

// --------------------------------------------------------------------------
// 8. remote ordering under shuffled completion

bool criterion_remote_ordering(std::string& detail) {
    httplib::Server server;
    server.Post("/v1/judge", [](const httplib::Request& req, httplib::Response& res) {
        Rng delay_rng(fnv1a(req.body));
        std::this_thread::sleep_for(std::chrono::milliseconds(delay_rng.next_below(6)));
        auto request = nlohmann::json::parse(req.body);
        nlohmann::json results = nlohmann::json::array();
        for (const auto& input : request["inputs"]) {
            results.push_back(
                {{"class_scores",
                  {{"negative", 0.1}, {"discretionary", 0.2}, {"positive", 0.7}}},
                 {"text", "echo:" + input.get<std::string>()}});
        }
        res.set_content(nlohmann::json{{"version", 1}, {"results", results}}.dump(),
                        "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread listener([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    bool ok = true;
    std::size_t trials = 0;
    for (std::size_t concurrency : {1u, 4u, 16u}) {
        RemoteConfig cfg;
        cfg.endpoint = "http://127.0.0.1:" + std::to_string(port);
        cfg.batch_size = 4;
        cfg.concurrency = concurrency;
        cfg.backoff_base_ms = 5;
        RemoteScorer scorer(cfg);
        for (int trial = 0; trial < 34 && ok; ++trial) {
            ++trials;
            std::vector<std::string> inputs;
            for (int i = 0; i < 32; ++i)
                inputs.push_back("c" + std::to_string(concurrency) + "-t" +
                                 std::to_string(trial) + "-i" + std::to_string(i));
            auto verdicts = scorer.judge_batch(inputs, Mode::FreeForm);
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                if (verdicts[i].text_judgment != "echo:" + inputs[i]) {
                    detail = "misordered output at concurrency " +
                             std::to_string(concurrency) + " trial " + std::to_string(trial);
                    ok = false;
                    break;
                }
            }
        }
    }
    server.stop();
    listener.join();
    if (ok)
        detail = std::to_string(trials) + " trials across concurrency {1,4,16}, all ordered";
    return ok;
}

// --------------------------------------------------------------------------
// 9. CLI determinism

bool criterion_cli_determinism(std::string& detail) {
    fs::path base = fs::path(kWorkDir) / "determinism";
    fs::remove_all(base);
    fs::create_directories(base);

    struct Command {
        std::string name;
        std::string args;                  // {OUT} replaced per run
        std::vector<std::string> outputs;  // relative to the run directory
        bool capture_stdout = false;
    };
    const std::string fixtures = kDataDir + "/fixtures";
    const std::vector<Command> commands = {
        {"build",
         "build --sources " + fixtures + " --out {OUT} --config " + kFixtureDir +
             "/golden_build.cfg",
         {"train.src", "train.tgt", "val.src", "val.tgt", "test.src", "test.tgt",
          "stats.json"},
         false},
        {"judge",
         "judge --input \"helping a friend spread fake news\" --backend lexicon --json",
         {"stdout.txt"},
         true},
        {"eval",
         "eval --mode freeform --preds " + kFixtureDir + "/eval_preds_freeform.tgt --golds " +
             kFixtureDir + "/eval_golds_freeform.tgt --map " + kDataDir +
             "/polarity_map.tsv --out {OUT}",
         {"eval_report.json"},
         false},
        {"probe", "probe --phrasing current --backend lexicon --out {OUT}",
         {"bias_report.json", "divergence_matrix.csv", "group_summary.csv"},
         false},
        {"rerank",
         "rerank --prompt \"Ana found a lost puppy.\" --generator \"cmd:printf 'She helped "
         "it.\\nShe kicked it.\\nShe ignored it.\\nShe fed it.\\nShe yelled.\\n'\" --backend "
         "lexicon --steps 3 --seed 11 --out {OUT}",
         {"story.json"},
         false},
        {"analyze",
         "analyze --input " + kFixtureDir + "/compositionality_texts.txt --out {OUT} "
         "--sample 0.4 --seed 9",
         {"counts.json", "base.txt", "compositional.txt", "sample.txt"},
         false},
    };

    for (const auto& cmd : commands) {
        std::vector<std::string> run_hash(2);
        for (int run = 0; run < 2; ++run) {
            fs::path out = base / (cmd.name + "_" + std::to_string(run));
            fs::create_directories(out);
            std::string args = cmd.args;
            std::size_t pos;
            while ((pos = args.find("{OUT}")) != std::string::npos)
                args.replace(pos, 5, out.string());
            int rc = run_cli(args, cmd.capture_stdout ? (out / "stdout.txt").string() : "");
            if (rc != 0) {
                detail = cmd.name + " exited with " + std::to_string(rc);
                return false;
            }
            std::string combined;
            for (const auto& file : cmd.outputs)
                combined += file + ":" + hash_file((out / file).string()) + ";";
            run_hash[run] = combined;
        }
        if (run_hash[0] != run_hash[1]) {
            detail = cmd.name + " output hashes differ between runs";
            return false;
        }
    }
    detail = "6 commands, two runs each, identical output hashes";
    return true;
}

// --------------------------------------------------------------------------
// 10. lexicon smoke parity

bool criterion_lexicon_smoke(std::string& detail) {
    const std::vector<std::pair<std::string, Polarity>> cases = {
        {"helping a friend", Polarity::Positive},
        {"killing a bear", Polarity::Negative},
        {"stealing money from the register", Polarity::Negative},
        {"thanking your teacher", Polarity::Positive},
        {"saving a drowning child", Polarity::Positive},
        {"hurting an animal", Polarity::Negative},
        {"donating blood", Polarity::Positive},
        {"lying to your boss", Polarity::Negative},
        {"rescuing a kitten from a tree", Polarity::Positive},
        {"insulting a stranger", Polarity::Negative},
        {"sharing your lunch", Polarity::Positive},
        {"cheating on a test", Polarity::Negative},
        {"protecting your family", Polarity::Positive},
        {"destroying public property", Polarity::Negative},
        {"comforting a crying friend", Polarity::Positive},
        {"threatening your neighbor", Polarity::Negative},
        {"volunteering at a shelter", Polarity::Positive},
        {"bullying a classmate", Polarity::Negative},
        {"forgiving your brother", Polarity::Positive},
        {"poisoning a river", Polarity::Negative},
    };
    LexiconScorer scorer;
    std::size_t agreed = 0;
    for (const auto& [input, expected] : cases) {
        Verdict v = scorer.judge("[moral_single]: " + input, Mode::FreeForm);
        Polarity got =
            v.chosen == ClassLabel::Negative ? Polarity::Negative : Polarity::Positive;
        if (got == expected) ++agreed;
    }
    detail = std::to_string(agreed) + "/20 polarity agreement";
    return agreed >= 18;
}

}  // namespace

int main() {
    fs::create_directories(kWorkDir);

    struct Criterion {
        int id;
        std::string name;
        std::function<bool(std::string&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "serialization round-trip (10k instances, both formats, <5s)", criterion_roundtrip},
        {2, "golden build byte-identical under the pinned seed", criterion_golden_build},
        {3, "metric oracle equivalence (100 random sets)", criterion_metric_oracle},
        {4, "C(2) >= C(3) on 1000 random label vectors", criterion_c2_dominates},
        {5, "probe counts 38x213=8094; always-agree 7/38; oracle 0", criterion_probe},
        {6, "reranker argmax/threshold laws + golden story", criterion_reranker},
        {7, "compositionality fixture agreement + partition", criterion_compositionality},
        {8, "remote ordering at concurrency {1,4,16}", criterion_remote_ordering},
        {9, "CLI determinism (identical output hashes)", criterion_cli_determinism},
        {10, "lexicon smoke parity on 20 unambiguous inputs", criterion_lexicon_smoke},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.id << ". " << criterion.name
                  << " - " << detail << "\n";
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "all criteria passed\n"
                                : std::to_string(failures) + " criteria failed\n");
    return failures == 0 ? 0 : 1;
}

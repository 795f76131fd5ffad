#include "normbank/unify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "normbank/errors.hpp"
#include "normbank/judgment.hpp"

namespace normbank {

namespace {

std::string capitalize(std::string s) {
    for (char& c : s) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            break;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) break;
    }
    return s;
}

std::string render(const std::string& tmpl, const std::string& a, const std::string& s = "",
                   const std::string& i = "") {
    std::string out;
    out.reserve(tmpl.size() + a.size() + s.size() + i.size());
    for (std::size_t p = 0; p < tmpl.size();) {
        if (tmpl.compare(p, 3, "{A}") == 0) { out += a; p += 3; }
        else if (tmpl.compare(p, 3, "{S}") == 0) { out += s; p += 3; }
        else if (tmpl.compare(p, 3, "{I}") == 0) { out += i; p += 3; }
        else out += tmpl[p++];
    }
    return out;
}

const std::string& pick(const std::vector<std::string>& options, Rng& rng) {
    return options[rng.next_below(options.size())];
}

const std::vector<std::string>& tmpl_set(const AugmentConfig& cfg, const std::string& key) {
    auto it = cfg.templates.find(key);
    if (it == cfg.templates.end() || it->second.empty())
        throw UsageError("no templates configured for " + key);
    return it->second;
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

QAInstance freeform(const std::string& record_id, const std::string& variant, Source src,
                    CompositionForm form, std::string input, ClassLabel label,
                    std::string judgment) {
    QAInstance inst;
    inst.id = record_id + "#" + variant;
    inst.record_id = record_id;
    inst.mode = Mode::FreeForm;
    inst.source = src;
    inst.form = form;
    inst.input = std::move(input);
    inst.label = label;
    inst.text_judgment = std::move(judgment);
    return inst;
}

}  // namespace

AugmentConfig AugmentConfig::defaults() {
    AugmentConfig cfg;
    cfg.templates = {
        {"social_chem.q_a", {"Can I {A}?"}},
        {"social_chem.a_s", {"{A}, when {S}"}},
        {"social_chem.q_as", {"Is {A} good, given {S}?"}},
        {"ethics.q_a", {"Is {A} a good behavior?"}},
        {"moral_stories.q_a", {"Is {A} ok?"}},
        {"moral_stories.a_s", {"{A}, given that {S}"}},
        {"moral_stories.q_as", {"Is {A} ok, when {S}?"}},
        {"moral_stories.a_si", {"{A}, when {S}, and {I}"}},
        {"moral_stories.q_asi", {"Is {A} ok, if {S}, and {I}?"}},
        {"sbic.a", {"Saying {A}", "Posting {A}"}},
        {"sbic.q_a", {"Is it good to say {A}?"}},
    };
    cfg.positive_labels = {"It's good", "It's fine", "It's nice", "It's kind"};
    cfg.discretionary_labels = {"It's okay", "It's fine", "It's expected", "It's normal"};
    cfg.negative_labels = {"It's bad", "It's wrong", "It's rude", "It's mean"};
    cfg.offensive_labels = {"It's bad", "It's offensive", "It's rude", "It's hurtful"};
    return cfg;
}

void AugmentConfig::validate() const {
    if (noise_probability < 0.0 || noise_probability > 1.0)
        throw UsageError("noise_probability must be in [0,1]");
    for (const auto& [key, set] : templates) {
        if (set.empty()) throw UsageError("empty template set for " + key);
        for (const auto& t : set) {
            std::size_t a = 0, other = 0;
            for (std::size_t p = 0; p + 2 < t.size(); ++p) {
                if (t[p] != '{') continue;
                if (t.compare(p, 3, "{A}") == 0) ++a;
                else if (t.compare(p, 3, "{S}") == 0 || t.compare(p, 3, "{I}") == 0) ++other;
                else throw UsageError("unknown slot in template '" + t + "'");
            }
            if (a != 1)
                throw UsageError("template must contain exactly one {A} slot: '" + t + "'");
        }
    }
    for (const auto* list : {&positive_labels, &discretionary_labels, &negative_labels,
                             &offensive_labels}) {
        if (list->empty()) throw UsageError("judgment label lists must be non-empty");
    }
}

AugmentConfig AugmentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open augment config: " + path);
    AugmentConfig cfg = defaults();
    std::map<std::string, bool> touched;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (blank(line)) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw SchemaError(path, lineno, "expected key = value");
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t");
            std::size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "rng_seed") {
            cfg.rng_seed = std::stoull(value);
        } else if (key == "noise_probability") {
            cfg.noise_probability = std::stod(value);
        } else if (key.rfind("template.", 0) == 0) {
            std::string tkey = key.substr(9);
            if (!touched[key]) { cfg.templates[tkey].clear(); touched[key] = true; }
            cfg.templates[tkey].push_back(value);
        } else if (key.rfind("label.", 0) == 0) {
            std::string which = key.substr(6);
            std::vector<std::string>* list = nullptr;
            if (which == "positive") list = &cfg.positive_labels;
            else if (which == "discretionary") list = &cfg.discretionary_labels;
            else if (which == "negative") list = &cfg.negative_labels;
            else if (which == "offensive") list = &cfg.offensive_labels;
            else throw SchemaError(path, lineno, "unknown label list '" + which + "'");
            if (!touched[key]) { list->clear(); touched[key] = true; }
            list->push_back(value);
        } else {
            throw SchemaError(path, lineno, "unknown config key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

std::vector<QAInstance> unify_social_chem(const RotRecord& r, const AugmentConfig& cfg) {
    Rng rng(derive_seed(cfg.rng_seed, r.id));
    std::vector<QAInstance> out;
    out.push_back(freeform(r.id, "a", Source::SocialChem, CompositionForm::A,
                           capitalize(r.action), r.label, r.judgment));
    out.push_back(freeform(r.id, "q_a", Source::SocialChem, CompositionForm::QA,
                           render(pick(tmpl_set(cfg, "social_chem.q_a"), rng), r.action),
                           r.label, r.judgment));
    if (!blank(r.situation)) {
        out.push_back(freeform(r.id, "a_s", Source::SocialChem, CompositionForm::AS,
                               capitalize(render(pick(tmpl_set(cfg, "social_chem.a_s"), rng),
                                                 r.action, r.situation)),
                               r.label, r.judgment));
        out.push_back(freeform(r.id, "q_as", Source::SocialChem, CompositionForm::QAS,
                               render(pick(tmpl_set(cfg, "social_chem.q_as"), rng), r.action,
                                      r.situation),
                               r.label, r.judgment));
    }
    return out;
}

std::vector<QAInstance> unify_ethics(const EthicsRecord& r, const AugmentConfig& cfg) {
    Rng rng(derive_seed(cfg.rng_seed, r.id));
    const auto& list =
        r.label == ClassLabel::Positive ? cfg.positive_labels : cfg.negative_labels;
    std::string judgment = pick(list, rng);
    std::vector<QAInstance> out;
    out.push_back(freeform(r.id, "a", Source::Ethics, CompositionForm::A,
                           capitalize(r.scenario), r.label, judgment));
    out.push_back(freeform(r.id, "q_a", Source::Ethics, CompositionForm::QA,
                           render(pick(tmpl_set(cfg, "ethics.q_a"), rng), r.scenario),
                           r.label, judgment));
    return out;
}

std::vector<QAInstance> unify_moral_stories(const StoryRecord& r, const AugmentConfig& cfg) {
    Rng rng(derive_seed(cfg.rng_seed, r.id));
    std::vector<QAInstance> out;
    struct Side {
        const char* prefix;
        const std::string* action;
        ClassLabel label;
    };
    for (const Side side : {Side{"moral_", &r.moral_action, ClassLabel::Positive},
                            Side{"immoral_", &r.immoral_action, ClassLabel::Negative}}) {
        const auto& list = side.label == ClassLabel::Positive ? cfg.positive_labels
                                                              : cfg.negative_labels;
        std::string judgment = pick(list, rng);
        const std::string& a = *side.action;
        auto add = [&](const char* variant, CompositionForm form, std::string input) {
            out.push_back(freeform(r.id, std::string(side.prefix) + variant,
                                   Source::MoralStories, form, std::move(input), side.label,
                                   judgment));
        };
        add("a", CompositionForm::A, capitalize(a));
        add("q_a", CompositionForm::QA,
            render(pick(tmpl_set(cfg, "moral_stories.q_a"), rng), a));
        add("a_s", CompositionForm::AS,
            capitalize(render(pick(tmpl_set(cfg, "moral_stories.a_s"), rng), a, r.situation)));
        add("q_as", CompositionForm::QAS,
            render(pick(tmpl_set(cfg, "moral_stories.q_as"), rng), a, r.situation));
        add("a_si", CompositionForm::ASI,
            capitalize(render(pick(tmpl_set(cfg, "moral_stories.a_si"), rng), a, r.situation,
                              r.intention)));
        add("q_asi", CompositionForm::QASI,
            render(pick(tmpl_set(cfg, "moral_stories.q_asi"), rng), a, r.situation,
                   r.intention));
    }
    return out;
}

std::vector<QAInstance> unify_sbic(const PostRecord& r, const AugmentConfig& cfg) {
    Rng rng(derive_seed(cfg.rng_seed, r.id));
    bool bad = r.offensive || r.lewd;
    ClassLabel label = bad ? ClassLabel::Negative : ClassLabel::Discretionary;
    std::string judgment = pick(bad ? cfg.offensive_labels : cfg.discretionary_labels, rng);
    std::vector<QAInstance> out;
    out.push_back(freeform(r.id, "a", Source::Sbic, CompositionForm::A,
                           render(pick(tmpl_set(cfg, "sbic.a"), rng), r.post), label,
                           judgment));
    out.push_back(freeform(r.id, "q_a", Source::Sbic, CompositionForm::QA,
                           render(pick(tmpl_set(cfg, "sbic.q_a"), rng), r.post), label,
                           judgment));
    return out;
}

namespace {

// Canonical adjective -> its antonym. Key and value sets line up so that
// double negation lands back on the original canonical head.
const std::map<std::string, std::string>& antonyms() {
    static const std::map<std::string, std::string> table = {
        {"ok", "wrong"},          {"okay", "wrong"},        {"wrong", "ok"},
        {"good", "bad"},          {"bad", "good"},
        {"kind", "rude"},         {"rude", "kind"},
        {"polite", "impolite"},   {"impolite", "polite"},
        {"nice", "mean"},         {"mean", "nice"},
        {"moral", "immoral"},     {"immoral", "moral"},
        {"ethical", "unethical"}, {"unethical", "ethical"},
        {"acceptable", "unacceptable"},   {"unacceptable", "acceptable"},
        {"appropriate", "inappropriate"}, {"inappropriate", "appropriate"},
        {"fair", "unfair"},       {"unfair", "fair"},
        {"honest", "dishonest"},  {"dishonest", "honest"},
        {"respectful", "disrespectful"},  {"disrespectful", "respectful"},
        {"responsible", "irresponsible"}, {"irresponsible", "responsible"},
        {"helpful", "unhelpful"}, {"unhelpful", "helpful"},
        {"legal", "illegal"},     {"illegal", "legal"},
        {"courteous", "discourteous"},    {"discourteous", "courteous"},
        {"considerate", "inconsiderate"}, {"inconsiderate", "considerate"},
    };
    return table;
}

std::string match_case(const std::string& pattern, std::string word) {
    if (!pattern.empty() && !word.empty() &&
        std::isupper(static_cast<unsigned char>(pattern[0]))) {
        word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
    }
    return word;
}

}  // namespace

std::string negate_rot(const std::string& rot) {
    auto head = parse_judgment_head(rot);
    if (!head) throw UnnegatableError(rot);
    std::string rest(rot.substr(head->head_end));

    if (head->kind == JudgmentHead::Kind::Deontic) {
        return head->subject + (head->negated ? " should" : " shouldn't") + rest;
    }

    std::string art = head->article.empty() ? "" : head->article + " ";
    std::string noun = head->noun.empty() ? "" : " " + head->noun;
    if (head->negated) {
        return head->copula + " " + art + head->adjective + noun + rest;
    }
    auto ant = antonyms().find(canonical_adjective_form(head->adjective));
    if (ant != antonyms().end()) {
        return head->copula + " " + art + match_case(head->adjective, ant->second) + noun +
               rest;
    }
    return head->copula + " not " + art + head->adjective + noun + rest;
}

std::vector<QAInstance> make_yesno(const RotRecord& r, const AugmentConfig& cfg) {
    (void)cfg;
    auto head = parse_judgment_head(r.rot_text);
    if (!head) throw UnnegatableError(r.rot_text);
    std::string negated = negate_rot(r.rot_text);

    auto decl = [&](const std::string& input, const char* upper, const char* lower) {
        bool cap = !input.empty() && std::isupper(static_cast<unsigned char>(input[0])) != 0;
        return std::string(cap ? upper : lower) + ", " + head->canonical_phrase;
    };

    QAInstance pos;
    pos.id = r.id + "#pos_rot";
    pos.record_id = r.id;
    pos.mode = Mode::YesNo;
    pos.source = Source::SocialChem;
    pos.form = CompositionForm::PosRoT;
    pos.input = r.rot_text;
    pos.label = ClassLabel::Agree;
    pos.text_judgment = decl(r.rot_text, "Yes", "yes");

    QAInstance neg;
    neg.id = r.id + "#neg_rot";
    neg.record_id = r.id;
    neg.mode = Mode::YesNo;
    neg.source = Source::SocialChem;
    neg.form = CompositionForm::NegRoT;
    neg.input = negated;
    neg.label = ClassLabel::Disagree;
    neg.text_judgment = decl(negated, "No", "no");

    return {std::move(pos), std::move(neg)};
}

QAInstance make_relative(const ActionPairRecord& r) {
    QAInstance inst;
    inst.id = r.id + "#pair";
    inst.record_id = r.id;
    inst.mode = Mode::Relative;
    inst.source = Source::Scruples;
    inst.form = CompositionForm::Pair;
    inst.action1 = r.action1;
    inst.action2 = r.action2;
    // The source marks the LESS ethical action; the task asks for the MORE
    // acceptable one, so the label flips.
    inst.label = r.less_ethical == ClassLabel::Second ? ClassLabel::First : ClassLabel::Second;
    return inst;
}

namespace {

const std::vector<std::vector<std::string>>& verb_forms() {
    static const std::vector<std::vector<std::string>> groups = {
        {"eat", "ate", "eating"},       {"go", "went", "going"},
        {"take", "took", "taking"},     {"give", "gave", "giving"},
        {"make", "made", "making"},     {"get", "got", "getting"},
        {"tell", "told", "telling"},    {"say", "said", "saying"},
        {"post", "posted", "posting"},  {"ignore", "ignored", "ignoring"},
        {"help", "helped", "helping"},  {"mow", "mowed", "mowing"},
        {"feed", "fed", "feeding"},     {"change", "changed", "changing"},
        {"turn", "turned", "turning"},  {"ask", "asked", "asking"},
        {"steal", "stole", "stealing"}, {"drive", "drove", "driving"},
        {"leave", "left", "leaving"},   {"keep", "kept", "keeping"},
        {"use", "used", "using"},       {"play", "played", "playing"},
        {"walk", "walked", "walking"},  {"run", "ran", "running"},
        {"skip", "skipped", "skipping"},
    };
    return groups;
}

std::string lower_copy(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::string inject_noise(const std::string& text, const AugmentConfig& cfg, Rng& rng) {
    if (rng.next_double() >= cfg.noise_probability) return text;
    if (text.empty()) return text;

    std::size_t first_end = 0;
    while (first_end < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[first_end])))
        ++first_end;
    std::string first = text.substr(0, first_end);
    std::string first_lower = lower_copy(first);

    const std::vector<std::string>* group = nullptr;
    std::size_t form_idx = 0;
    for (const auto& g : verb_forms()) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] == first_lower) { group = &g; form_idx = i; break; }
        }
        if (group) break;
    }

    // 0 = inflection (when the leading token is a known verb form),
    // 1 = terminal-period toggle, 2 = casing toggle.
    std::size_t kinds = group ? 3 : 2;
    std::size_t k = rng.next_below(kinds);
    if (!group) ++k;

    if (k == 0) {
        std::size_t pick = rng.next_below(group->size() - 1);
        std::size_t target = pick < form_idx ? pick : pick + 1;
        return match_case(first, (*group)[target]) + text.substr(first_end);
    }
    if (k == 1) {
        if (!text.empty() && text.back() == '.') return text.substr(0, text.size() - 1);
        return text + ".";
    }
    std::string out = text;
    if (std::isupper(static_cast<unsigned char>(out[0]))) {
        for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
}

void split_dataset(std::vector<QAInstance>& instances, const std::array<double, 3>& ratios,
                   std::uint64_t seed) {
    double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9)
        throw UsageError("split ratios must sum to 1");
    for (auto& inst : instances) {
        Rng rng(derive_seed(seed, inst.record_id));
        double u = rng.next_double();
        if (u < ratios[0]) inst.split = Split::Train;
        else if (u < ratios[0] + ratios[1]) inst.split = Split::Val;
        else inst.split = Split::Test;
    }
}

std::uint64_t hash_instances(const std::vector<QAInstance>& instances) {
    std::vector<std::uint64_t> hashes;
    hashes.reserve(instances.size());
    for (const auto& inst : instances) {
        std::uint64_t h = fnv1a(inst.id);
        h = fnv1a(to_string(inst.mode), h);
        h = fnv1a(inst.input, h);
        h = fnv1a(to_string(inst.label), h);
        h = fnv1a(inst.text_judgment.value_or("\x01"), h);
        h = fnv1a(to_string(inst.split), h);
        h = fnv1a(inst.action1, h);
        h = fnv1a(inst.action2, h);
        hashes.push_back(h);
    }
    std::sort(hashes.begin(), hashes.end());
    std::uint64_t combined = kFnvOffset;
    for (auto h : hashes) combined = fnv1a_u64(h, combined);
    return combined;
}

}  // namespace normbank

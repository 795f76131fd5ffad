#include "normbank/scorer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <set>

#include "normbank/errors.hpp"
#include "normbank/judgment.hpp"

namespace normbank {

std::vector<Verdict> ScorerBackend::judge_batch(const std::vector<std::string>& encoded_inputs,
                                                Mode mode) {
    std::vector<Verdict> out;
    out.reserve(encoded_inputs.size());
    for (const auto& input : encoded_inputs) out.push_back(judge(input, mode));
    return out;
}

ClassLabel argmax_class(const std::map<ClassLabel, double>& scores) {
    if (scores.empty()) throw ContractError("verdict has no class scores");
    // std::map iterates in enum order, which is exactly the fixed tie-break
    // order; keep the first strict maximum.
    auto best = scores.begin();
    for (auto it = std::next(scores.begin()); it != scores.end(); ++it) {
        if (it->second > best->second) best = it;
    }
    return best->first;
}

double moral_score(const Verdict& v) {
    auto pos = v.class_scores.find(ClassLabel::Positive);
    auto neg = v.class_scores.find(ClassLabel::Negative);
    if (pos == v.class_scores.end() || neg == v.class_scores.end())
        throw ContractError("moral_score requires positive and negative class scores");
    return pos->second - neg->second;
}

namespace {

const std::set<std::string>& negative_words() {
    static const std::set<std::string> words = {
        "kill",     "murder",   "steal",    "rob",      "hurt",    "harm",
        "hate",     "abuse",    "cheat",    "lie",      "lying",   "attack",
        "insult",   "bully",    "destroy",  "threaten", "poison",  "kidnap",
        "torture",  "stab",     "punch",    "slap",     "betray",  "vandalize",
        "trespass", "slavery",  "servitude","cruel",    "offend",  "mock",
        "scam",     "deceive",  "assault",  "exploit",  "arrest",  "punish",
        "deprive",  "discriminate",
        // judgment adjectives
        "bad",      "wrong",    "rude",     "mean",     "evil",    "immoral",
        "unethical","unacceptable",         "impolite", "offensive",
        "dishonest","unfair",   "disrespectful",
    };
    return words;
}

const std::set<std::string>& positive_words() {
    static const std::set<std::string> words = {
        "help",    "thank",   "save",     "rescue",  "protect", "donate",
        "volunteer","share",  "forgive",  "respect", "comfort", "praise",
        "support", "encourage","apologize","love",   "care",    "right",
        "rights",  "kind",    "honest",   "gift",    "welcome", "hug",
        "compliment","cherish","befriend", "teach",  "heal",    "free",
        "equal",
        // judgment adjectives
        "good",    "nice",    "moral",    "ethical", "polite",  "fair",
        "acceptable","respectful",        "considerate",
    };
    return words;
}

const std::set<std::string>& negators() {
    static const std::set<std::string> words = {"not",   "never", "don't", "doesn't",
                                                "didn't", "shouldn't", "won't", "can't",
                                                "isn't", "aren't", "no"};
    return words;
}

std::vector<std::string> tokenize_lower(const std::string& text) {
    std::vector<std::string> toks;
    std::string cur;
    for (char raw : text) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (std::isalpha(c) || raw == '\'') {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            toks.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

// Light stemmer: try the token, then with common verb suffixes stripped
// ("killing" -> "kill", "saving" -> "save", "hates" -> "hate").
bool in_lexicon(const std::set<std::string>& lexicon, const std::string& token) {
    if (lexicon.count(token)) return true;
    for (const char* suffix : {"ing", "ed", "es", "s"}) {
        std::size_t n = std::string(suffix).size();
        if (token.size() > n + 2 && token.compare(token.size() - n, n, suffix) == 0) {
            std::string stem = token.substr(0, token.size() - n);
            if (lexicon.count(stem) || lexicon.count(stem + "e")) return true;
            // doubled final consonant: "stabbing" -> "stab"
            if (stem.size() > 2 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
                lexicon.count(stem.substr(0, stem.size() - 1)))
                return true;
        }
    }
    return false;
}

struct Tally {
    int positive = 0;
    int negative = 0;
};

// "not"-scope flips the polarity of the next keyword within three tokens.
Tally tally_keywords(const std::vector<std::string>& tokens) {
    Tally t;
    int negate_window = 0;
    for (const auto& tok : tokens) {
        if (negators().count(tok)) {
            negate_window = 3;
            continue;
        }
        bool pos = in_lexicon(positive_words(), tok);
        bool neg = !pos && in_lexicon(negative_words(), tok);
        if (pos || neg) {
            bool flipped = negate_window > 0;
            if ((pos && !flipped) || (neg && flipped)) ++t.positive;
            else ++t.negative;
            negate_window = 0;
        } else if (negate_window > 0) {
            --negate_window;
        }
    }
    return t;
}

std::string strip_prefix(const std::string& encoded) {
    for (std::string_view prefix : {"[moral_single]: ", "[moral_pair]: "}) {
        if (encoded.rfind(prefix, 0) == 0) return encoded.substr(prefix.size());
    }
    return encoded;
}

Verdict freeform_verdict(const Tally& t) {
    Verdict v;
    // Softened tally: one unmatched keyword already dominates the
    // discretionary mass, more keywords sharpen the margin.
    double pos_w = 1.0 + 2.0 * t.positive;
    double neg_w = 1.0 + 2.0 * t.negative;
    double disc_w = 1.5;
    double z = pos_w + neg_w + disc_w;
    v.class_scores = {{ClassLabel::Negative, neg_w / z},
                      {ClassLabel::Discretionary, disc_w / z},
                      {ClassLabel::Positive, pos_w / z}};
    v.chosen = argmax_class(v.class_scores);
    return v;
}

std::string judgment_for(ClassLabel label) {
    switch (label) {
        case ClassLabel::Positive: return "it's good";
        case ClassLabel::Negative: return "it's bad";
        default: return "it's okay";
    }
}

// Extracts the two tagged actions of an encoded relative input; tolerant of
// both bracket styles.
std::pair<std::string, std::string> split_pair(const std::string& body) {
    auto grab = [&](const char* open_a, const char* close_a, const char* open_b,
                    const char* close_b) -> std::optional<std::pair<std::string, std::string>> {
        auto a0 = body.find(open_a);
        auto a1 = body.find(close_a);
        auto b0 = body.find(open_b);
        auto b1 = body.find(close_b);
        if (a0 == std::string::npos || a1 == std::string::npos || b0 == std::string::npos ||
            b1 == std::string::npos)
            return std::nullopt;
        std::size_t a_start = a0 + std::string(open_a).size();
        std::size_t b_start = b0 + std::string(open_b).size();
        return std::make_pair(body.substr(a_start, a1 - a_start),
                              body.substr(b_start, b1 - b_start));
    };
    if (auto p = grab("<action1>", "</action1>", "<action2>", "</action2>")) return *p;
    if (auto p = grab("[action1]", "[/action1]", "[action2]", "[/action2]")) return *p;
    return {body, ""};
}

}  // namespace

int LexiconScorer::text_polarity(const std::string& text) {
    Tally t = tally_keywords(tokenize_lower(text));
    return t.positive - t.negative;
}

Verdict LexiconScorer::judge(const std::string& encoded_input, Mode mode) {
    std::string body = strip_prefix(encoded_input);

    if (mode == Mode::FreeForm) {
        Verdict v = freeform_verdict(tally_keywords(tokenize_lower(body)));
        v.text_judgment = judgment_for(v.chosen);
        return v;
    }

    if (mode == Mode::YesNo) {
        // Agree iff the stated judgment's polarity matches the action
        // clause's polarity (no negative signal counts as acceptable).
        auto head = parse_judgment_head(body);
        bool agree;
        if (head) {
            std::string phrase = head->canonical_phrase;
            bool head_positive;
            if (head->kind == JudgmentHead::Kind::Deontic) {
                head_positive = !head->negated;
            } else {
                int adj_pol = text_polarity(canonical_adjective_form(head->adjective));
                if (adj_pol == 0) {
                    // Unlisted adjectives: treat approval-family words as
                    // positive unless the head is negated.
                    static const std::set<std::string> approval = {
                        "ok",  "good", "fine", "expected", "normal", "acceptable",
                        "polite", "understandable", "reasonable", "appropriate"};
                    adj_pol = approval.count(canonical_adjective_form(head->adjective)) ? 1 : -1;
                }
                head_positive = head->negated ? adj_pol < 0 : adj_pol > 0;
            }
            int action_pol = text_polarity(body.substr(head->head_end));
            bool action_acceptable = action_pol >= 0;
            agree = head_positive == action_acceptable;
        } else {
            agree = text_polarity(body) >= 0;
        }
        Verdict v;
        double a = agree ? 0.8 : 0.2;
        v.class_scores = {{ClassLabel::Disagree, 1.0 - a}, {ClassLabel::Agree, a}};
        v.chosen = argmax_class(v.class_scores);
        v.text_judgment = std::string(agree ? "yes" : "no") +
                          (head ? ", " + head->canonical_phrase : "");
        return v;
    }

    auto [a1, a2] = split_pair(body);
    int p1 = text_polarity(a1);
    int p2 = text_polarity(a2);
    Verdict v;
    double first = 1.0 / (1.0 + std::exp(static_cast<double>(p2 - p1)));
    v.class_scores = {{ClassLabel::First, first}, {ClassLabel::Second, 1.0 - first}};
    v.chosen = argmax_class(v.class_scores);
    return v;
}

std::vector<std::pair<ClassLabel, std::string>> zeroshot_prompts(const std::string& action,
                                                                 Mode mode,
                                                                 const std::string& action2) {
    switch (mode) {
        case Mode::FreeForm:
            return {
                {ClassLabel::Positive, action + ". This action is good/ethical/moral/etc."},
                {ClassLabel::Negative, action + ". This action is bad/unethical/immoral/etc."},
                {ClassLabel::Discretionary, action + ". This action is okay/fine/expected/etc."},
            };
        case Mode::YesNo:
            return {
                {ClassLabel::Agree, action + ". This statement is true/correct/right/good."},
                {ClassLabel::Disagree, action + ". This statement is false/incorrect/wrong/bad."},
            };
        case Mode::Relative: {
            std::string stem = "Action1: " + action + ". Action2: " + action2 + ". ";
            return {
                {ClassLabel::First, stem + "Action1 is more moral than Action2."},
                {ClassLabel::Second, stem + "Action2 is more moral than Action1."},
            };
        }
    }
    throw UsageError("unreachable mode");
}

}  // namespace normbank

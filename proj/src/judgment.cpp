#include "normbank/judgment.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "normbank/errors.hpp"
#include "normbank/hash.hpp"

namespace normbank {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

// Phrase-level contraction folds, applied left-to-right on whole tokens.
// The right-hand sides never re-match a key, which keeps the pass idempotent.
const std::vector<std::pair<std::vector<std::string>, std::string>>& contractions() {
    static const std::vector<std::pair<std::vector<std::string>, std::string>> table = {
        {{"it", "is"}, "it's"},       {{"that", "is"}, "that's"},
        {{"there", "is"}, "there's"}, {{"he", "is"}, "he's"},
        {{"she", "is"}, "she's"},     {{"you", "are"}, "you're"},
        {{"they", "are"}, "they're"}, {{"we", "are"}, "we're"},
        {{"i", "am"}, "i'm"},         {{"is", "not"}, "isn't"},
        {{"are", "not"}, "aren't"},   {{"was", "not"}, "wasn't"},
        {{"were", "not"}, "weren't"}, {{"do", "not"}, "don't"},
        {{"does", "not"}, "doesn't"}, {{"did", "not"}, "didn't"},
        {{"should", "not"}, "shouldn't"},
        {{"would", "not"}, "wouldn't"},
        {{"could", "not"}, "couldn't"},
        {{"must", "not"}, "mustn't"},
        {{"can", "not"}, "can't"},    {{"cannot"}, "can't"},
    };
    return table;
}

}  // namespace

std::string normalize_judgment(std::string_view raw) {
    std::vector<std::string> toks = split_ws(lower(raw));
    if (toks.empty()) throw EmptyJudgmentError();

    std::vector<std::string> folded;
    folded.reserve(toks.size());
    for (std::size_t i = 0; i < toks.size();) {
        bool matched = false;
        for (const auto& [phrase, repl] : contractions()) {
            if (i + phrase.size() > toks.size()) continue;
            bool eq = true;
            for (std::size_t k = 0; k < phrase.size(); ++k) {
                if (toks[i + k] != phrase[k]) { eq = false; break; }
            }
            if (eq) {
                folded.push_back(repl);
                i += phrase.size();
                matched = true;
                break;
            }
        }
        if (!matched) folded.push_back(toks[i++]);
    }

    std::string out;
    for (const auto& t : folded) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    while (!out.empty()) {
        char c = out.back();
        if (c == '.' || c == '!' || c == '?' || c == ' ') out.pop_back();
        else break;
    }
    if (out.empty()) throw EmptyJudgmentError();
    return out;
}

PolarityMap PolarityMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open polarity map: " + path);
    std::map<std::string, Polarity> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw SchemaError(path, lineno, "expected judgment<TAB>POS|NEG");
        std::string value = line.substr(tab + 1);
        Polarity p;
        if (value == "POS") p = Polarity::Positive;
        else if (value == "NEG") p = Polarity::Negative;
        else throw SchemaError(path, lineno, "polarity must be POS or NEG, got '" + value + "'");
        std::string key = normalize_judgment(line.substr(0, tab));
        auto [it, inserted] = entries.emplace(key, p);
        if (!inserted && it->second != p)
            throw SchemaError(path, lineno, "conflicting polarity for '" + key + "'");
    }
    return from_entries(std::move(entries));
}

PolarityMap PolarityMap::from_entries(std::map<std::string, Polarity> entries) {
    PolarityMap m;
    m.entries_ = std::move(entries);
    return m;
}

Polarity PolarityMap::lookup(std::string_view judgment) const {
    std::string key;
    try {
        key = normalize_judgment(judgment);
    } catch (const EmptyJudgmentError&) {
        return Polarity::Unknown;
    }
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
    for (std::string_view decl : {"yes, ", "no, "}) {
        if (key.size() > decl.size() && std::string_view(key).substr(0, decl.size()) == decl) {
            it = entries_.find(key.substr(decl.size()));
            if (it != entries_.end()) return it->second;
        }
    }
    return Polarity::Unknown;
}

std::string PolarityMap::fingerprint() const {
    std::uint64_t h = kFnvOffset;
    for (const auto& [k, v] : entries_) {
        h = fnv1a(k, h);
        h = fnv1a(v == Polarity::Positive ? "\tPOS\n" : "\tNEG\n", h);
    }
    return hex64(h);
}

Polarity polarity_of(std::string_view judgment, const PolarityMap& map) {
    return map.lookup(judgment);
}

namespace {

// Surface variants folded before antonym lookup or judgment-phrase building.
std::string canonical_adjective(const std::string& adj) {
    std::string a = lower(adj);
    if (a == "okay" || a == "alright") return "ok";
    return a;
}

bool word_at(std::string_view s, std::size_t pos, std::string_view word) {
    if (s.size() < pos + word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[pos + i])) != word[i]) return false;
    }
    std::size_t end = pos + word.size();
    return end == s.size() || std::isspace(static_cast<unsigned char>(s[end])) != 0;
}

std::string lower_first(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
    return s;
}

}  // namespace

std::optional<JudgmentHead> parse_judgment_head(std::string_view statement) {
    std::size_t pos = 0;
    while (pos < statement.size() && std::isspace(static_cast<unsigned char>(statement[pos]))) ++pos;

    auto take_word = [&](std::size_t& p) -> std::string {
        std::size_t start = p;
        while (p < statement.size() && !std::isspace(static_cast<unsigned char>(statement[p]))) ++p;
        return std::string(statement.substr(start, p - start));
    };
    auto skip_ws = [&](std::size_t& p) {
        while (p < statement.size() && std::isspace(static_cast<unsigned char>(statement[p]))) ++p;
    };

    // Deontic heads: "(you|we|people|one) should [not] ..." and the
    // contracted "shouldn't".
    for (std::string_view pron : {"you", "we", "people", "one"}) {
        if (!word_at(statement, pos, pron)) continue;
        std::size_t p = pos;
        std::string pron_word = take_word(p);
        skip_ws(p);
        if (word_at(statement, p, "shouldn't")) {
            std::string verb = take_word(p);
            JudgmentHead h;
            h.kind = JudgmentHead::Kind::Deontic;
            h.subject = pron_word;
            h.copula = pron_word + " " + verb;
            h.negated = true;
            h.head_end = p;
            h.canonical_phrase = lower_first(lower(pron_word) + " shouldn't");
            return h;
        }
        if (word_at(statement, p, "should")) {
            std::string verb = take_word(p);
            std::size_t after_should = p;
            skip_ws(p);
            bool neg = word_at(statement, p, "not");
            if (neg) take_word(p);
            JudgmentHead h;
            h.kind = JudgmentHead::Kind::Deontic;
            h.subject = pron_word;
            h.copula = pron_word + " " + verb;
            h.negated = neg;
            h.head_end = neg ? p : after_should;
            h.canonical_phrase =
                lower_first(lower(pron_word) + (neg ? " shouldn't" : " should"));
            return h;
        }
        break;
    }

    // Copular heads: "(it's|it is|that's|that is) [not] [a|an] <adjective> ..."
    std::string copula;
    std::size_t p = pos;
    if (word_at(statement, pos, "it's") || word_at(statement, pos, "that's")) {
        copula = take_word(p);
    } else if (word_at(statement, pos, "it") || word_at(statement, pos, "that")) {
        std::size_t q = pos;
        std::string first = take_word(q);
        skip_ws(q);
        if (!word_at(statement, q, "is")) return std::nullopt;
        std::string second = take_word(q);
        copula = first + " " + second;
        p = q;
    } else {
        return std::nullopt;
    }

    skip_ws(p);
    bool neg = word_at(statement, p, "not");
    if (neg) { take_word(p); skip_ws(p); }
    std::string article;
    if (word_at(statement, p, "a") || word_at(statement, p, "an")) {
        article = take_word(p);
        skip_ws(p);
    }
    std::string adj = take_word(p);
    if (adj.empty()) return std::nullopt;
    auto plain_word = [](const std::string& w) {
        for (char c : w) {
            if (!std::isalpha(static_cast<unsigned char>(c)) && c != '-' && c != '\'')
                return false;
        }
        return !w.empty();
    };
    if (!plain_word(adj)) return std::nullopt;

    // Article heads carry a noun: "a kind gesture", "a good behavior".
    std::string noun;
    if (!article.empty()) {
        std::size_t q = p;
        skip_ws(q);
        std::size_t probe = q;
        std::string next = take_word(probe);
        static const std::set<std::string> function_words = {
            "to", "of", "for", "that", "when", "if",   "and", "or",
            "in", "on", "at",  "by",   "with", "from", "as",  "because"};
        if (plain_word(next) && !function_words.count(lower(next))) {
            noun = next;
            p = probe;
        }
    }

    JudgmentHead h;
    h.kind = JudgmentHead::Kind::Copular;
    h.copula = copula;
    h.article = article;
    h.adjective = adj;
    h.noun = noun;
    h.negated = neg;
    h.head_end = p;
    std::string phrase = lower(copula);
    if (neg) phrase += " not";
    if (!article.empty()) phrase += " " + lower(article);
    phrase += " " + canonical_adjective(adj);
    if (!noun.empty()) phrase += " " + lower(noun);
    h.canonical_phrase = lower_first(phrase);
    return h;
}

std::string canonical_adjective_form(const std::string& adjective) {
    return canonical_adjective(adjective);
}

}  // namespace normbank

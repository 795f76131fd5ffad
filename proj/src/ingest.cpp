#include "normbank/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "normbank/errors.hpp"

namespace normbank {

using nlohmann::json;

namespace {

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string get_string(const json& j, const char* key, const std::string& path,
                       std::size_t line) {
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError(path, line, std::string("missing or non-string field '") + key + "'");
    return j[key].get<std::string>();
}

bool get_bool(const json& j, const char* key, const std::string& path, std::size_t line) {
    if (!j.contains(key) || !j[key].is_boolean())
        throw SchemaError(path, line, std::string("missing or non-boolean field '") + key + "'");
    return j[key].get<bool>();
}

void require_nonempty(const std::string& v, const char* key, const std::string& path,
                      std::size_t line) {
    if (blank(v))
        throw SchemaError(path, line, std::string("empty required field '") + key + "'");
}

ClassLabel threeway_label(const std::string& v, const std::string& path, std::size_t line) {
    if (v == "positive") return ClassLabel::Positive;
    if (v == "discretionary") return ClassLabel::Discretionary;
    if (v == "negative") return ClassLabel::Negative;
    throw SchemaError(path, line, "class must be positive|discretionary|negative, got '" + v + "'");
}

SourceRecord parse_record(const json& j, Source source, const std::string& id,
                          const std::string& path, std::size_t line) {
    switch (source) {
        case Source::SocialChem: {
            RotRecord r;
            r.id = id;
            r.situation = j.contains("situation") ? get_string(j, "situation", path, line) : "";
            r.action = get_string(j, "action", path, line);
            r.rot_text = get_string(j, "rot", path, line);
            r.judgment = get_string(j, "judgment", path, line);
            r.label = threeway_label(get_string(j, "class", path, line), path, line);
            require_nonempty(r.action, "action", path, line);
            require_nonempty(r.rot_text, "rot", path, line);
            require_nonempty(r.judgment, "judgment", path, line);
            return r;
        }
        case Source::Ethics: {
            EthicsRecord r;
            r.id = id;
            r.scenario = get_string(j, "scenario", path, line);
            require_nonempty(r.scenario, "scenario", path, line);
            std::string cls = get_string(j, "class", path, line);
            if (cls == "positive") r.label = ClassLabel::Positive;
            else if (cls == "negative") r.label = ClassLabel::Negative;
            else throw SchemaError(path, line, "class must be positive|negative, got '" + cls + "'");
            if (sentence_count(r.scenario) > 2)
                throw SchemaError(path, line, "scenario longer than 2 sentences");
            return r;
        }
        case Source::MoralStories: {
            StoryRecord r;
            r.id = id;
            r.situation = get_string(j, "situation", path, line);
            r.intention = get_string(j, "intention", path, line);
            r.moral_action = get_string(j, "moral_action", path, line);
            r.immoral_action = get_string(j, "immoral_action", path, line);
            require_nonempty(r.situation, "situation", path, line);
            require_nonempty(r.intention, "intention", path, line);
            require_nonempty(r.moral_action, "moral_action", path, line);
            require_nonempty(r.immoral_action, "immoral_action", path, line);
            return r;
        }
        case Source::Sbic: {
            PostRecord r;
            r.id = id;
            r.post = get_string(j, "post", path, line);
            require_nonempty(r.post, "post", path, line);
            r.offensive = get_bool(j, "offensive", path, line);
            r.lewd = get_bool(j, "lewd", path, line);
            return r;
        }
        case Source::Scruples: {
            ActionPairRecord r;
            r.id = id;
            r.action1 = get_string(j, "action1", path, line);
            r.action2 = get_string(j, "action2", path, line);
            require_nonempty(r.action1, "action1", path, line);
            require_nonempty(r.action2, "action2", path, line);
            if (r.action1 == r.action2)
                throw SchemaError(path, line, "action1 and action2 must be distinct");
            std::string which = get_string(j, "less_ethical", path, line);
            if (which == "first") r.less_ethical = ClassLabel::First;
            else if (which == "second") r.less_ethical = ClassLabel::Second;
            else throw SchemaError(path, line, "less_ethical must be first|second, got '" + which + "'");
            return r;
        }
    }
    throw UsageError("unknown source enum");
}

}  // namespace

std::size_t sentence_count(std::string_view text) {
    std::size_t count = 0;
    bool in_run = false;
    bool trailing_run = false;
    bool any_content = false;
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?') {
            if (!in_run) ++count;
            in_run = true;
            trailing_run = true;
        } else {
            in_run = false;
            if (!std::isspace(static_cast<unsigned char>(c))) {
                any_content = true;
                trailing_run = false;
            }
        }
    }
    if (any_content && !trailing_run) ++count;
    return count;
}

LoadResult load_source(const std::string& path, Source source, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open source file: " + path);

    LoadResult result;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank(line) || line[0] == '#') continue;

        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw SchemaError(path, lineno, "malformed JSON");

        std::string id = std::string(to_string(source)) + ":" + std::to_string(lineno);
        try {
            result.records.push_back(parse_record(j, source, id, path, lineno));
        } catch (const SchemaError& e) {
            if (!opts.lenient) throw;
            ++result.skipped;
            result.skip_reasons.push_back(e.what());
        }
    }
    return result;
}

}  // namespace normbank

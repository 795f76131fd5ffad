#include "normbank/serialize.hpp"

#include <fstream>

#include "normbank/errors.hpp"

namespace normbank {

WireFormat wire_format_from_string(std::string_view s) {
    if (s == "classic") return WireFormat::Classic;
    if (s == "plus") return WireFormat::Plus;
    throw UsageError("unknown wire format: " + std::string(s));
}

std::string_view to_string(WireFormat f) {
    return f == WireFormat::Classic ? "classic" : "plus";
}

namespace {

std::string tag(WireFormat f, const char* name, bool closing) {
    std::string out;
    out += f == WireFormat::Classic ? '<' : '[';
    if (closing) out += '/';
    out += name;
    out += f == WireFormat::Classic ? '>' : ']';
    return out;
}

}  // namespace

int class_to_int(ClassLabel label, Mode mode, WireFormat f) {
    if (!label_valid_for_mode(label, mode))
        throw UsageError("label not valid for mode");
    int shift = f == WireFormat::Plus ? 1 : 0;
    switch (mode) {
        case Mode::FreeForm:
            switch (label) {
                case ClassLabel::Negative: return -1 + shift;
                case ClassLabel::Discretionary: return 0 + shift;
                default: return 1 + shift;
            }
        case Mode::YesNo:
            return (label == ClassLabel::Agree ? 1 : -1) + shift;
        case Mode::Relative:
            // 1/2 in both formats; these are action indices, not polarities.
            return label == ClassLabel::First ? 1 : 2;
    }
    throw UsageError("unreachable mode");
}

ClassLabel int_to_class(int value, Mode mode, WireFormat f, std::size_t position) {
    int shift = f == WireFormat::Plus ? 1 : 0;
    switch (mode) {
        case Mode::FreeForm: {
            int v = value - shift;
            if (v == -1) return ClassLabel::Negative;
            if (v == 0) return ClassLabel::Discretionary;
            if (v == 1) return ClassLabel::Positive;
            break;
        }
        case Mode::YesNo: {
            int v = value - shift;
            if (v == 1) return ClassLabel::Agree;
            if (v == -1) return ClassLabel::Disagree;
            break;
        }
        case Mode::Relative:
            if (value == 1) return ClassLabel::First;
            if (value == 2) return ClassLabel::Second;
            break;
    }
    throw ParseError("class integer out of range: " + std::to_string(value), position);
}

std::string encode_input(const QAInstance& inst, WireFormat f) {
    if (inst.mode == Mode::Relative) {
        return "[moral_pair]: " + tag(f, "action1", false) + inst.action1 +
               tag(f, "action1", true) + " " + tag(f, "action2", false) + inst.action2 +
               tag(f, "action2", true);
    }
    return "[moral_single]: " + inst.input;
}

std::string encode_target(const QAInstance& inst, WireFormat f) {
    std::string out = tag(f, "class", false) + " " +
                      std::to_string(class_to_int(inst.label, inst.mode, f)) + " " +
                      tag(f, "class", true);
    if (inst.mode == Mode::Relative) return out;
    if (!inst.text_judgment)
        throw EncodingError("missing text judgment for " + std::string(to_string(inst.mode)) +
                            " target");
    const std::string& judgment = *inst.text_judgment;
    const char open = f == WireFormat::Classic ? '<' : '[';
    const char close = f == WireFormat::Classic ? '>' : ']';
    if (judgment.find(open) != std::string::npos || judgment.find(close) != std::string::npos)
        throw EncodingError("judgment contains reserved tag characters: " + judgment);
    out += " " + tag(f, "text", false) + " " + judgment + " " + tag(f, "text", true);
    return out;
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void expect(const std::string& token) {
        if (s.compare(pos, token.size(), token) != 0)
            throw ParseError("expected '" + token + "'", pos);
        pos += token.size();
    }
    bool at_end() const { return pos == s.size(); }
};

}  // namespace

DecodedTarget decode_output(const std::string& s, Mode mode, WireFormat f) {
    Cursor c{s};
    c.expect(tag(f, "class", false));
    c.expect(" ");
    std::size_t num_start = c.pos;
    std::size_t num_end = s.find(' ', num_start);
    if (num_end == std::string::npos) throw ParseError("unterminated class integer", num_start);
    int value = 0;
    try {
        std::size_t used = 0;
        value = std::stoi(s.substr(num_start, num_end - num_start), &used);
        if (used != num_end - num_start) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ParseError("malformed class integer", num_start);
    }
    DecodedTarget out{int_to_class(value, mode, f, num_start), std::nullopt};
    c.pos = num_end;
    c.expect(" ");
    c.expect(tag(f, "class", true));

    if (mode == Mode::Relative) {
        if (!c.at_end()) throw ParseError("trailing content after class block", c.pos);
        return out;
    }

    c.expect(" ");
    c.expect(tag(f, "text", false));
    c.expect(" ");
    const std::string closing = " " + tag(f, "text", true);
    if (s.size() < c.pos + closing.size() ||
        s.compare(s.size() - closing.size(), closing.size(), closing) != 0)
        throw ParseError("missing closing text tag", c.pos);
    out.text_judgment = s.substr(c.pos, s.size() - closing.size() - c.pos);
    return out;
}

void write_dataset(const std::string& stem, const std::vector<QAInstance>& instances,
                   WireFormat f) {
    std::ofstream src(stem + ".src", std::ios::binary);
    std::ofstream tgt(stem + ".tgt", std::ios::binary);
    if (!src || !tgt) throw UsageError("cannot write dataset files at " + stem);
    for (const auto& inst : instances) {
        src << encode_input(inst, f) << '\n';
        tgt << encode_target(inst, f) << '\n';
    }
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

}  // namespace normbank

#include "normbank/types.hpp"

#include <algorithm>
#include <cctype>

namespace normbank {

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::FreeForm: return "freeform";
        case Mode::YesNo: return "yesno";
        case Mode::Relative: return "relative";
    }
    return "?";
}

std::string_view to_string(ClassLabel c) {
    switch (c) {
        case ClassLabel::Negative: return "negative";
        case ClassLabel::Discretionary: return "discretionary";
        case ClassLabel::Positive: return "positive";
        case ClassLabel::Disagree: return "disagree";
        case ClassLabel::Agree: return "agree";
        case ClassLabel::First: return "first";
        case ClassLabel::Second: return "second";
    }
    return "?";
}

std::string_view to_string(Polarity p) {
    switch (p) {
        case Polarity::Positive: return "POS";
        case Polarity::Negative: return "NEG";
        case Polarity::Unknown: return "UNKNOWN";
    }
    return "?";
}

std::string_view to_string(Source s) {
    switch (s) {
        case Source::SocialChem: return "social_chem";
        case Source::Ethics: return "ethics";
        case Source::MoralStories: return "moral_stories";
        case Source::Sbic: return "sbic";
        case Source::Scruples: return "scruples";
    }
    return "?";
}

std::string_view to_string(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        case Split::Test: return "test";
    }
    return "?";
}

std::string_view to_string(CompositionForm f) {
    switch (f) {
        case CompositionForm::A: return "a";
        case CompositionForm::QA: return "q_a";
        case CompositionForm::AS: return "a_s";
        case CompositionForm::QAS: return "q_as";
        case CompositionForm::ASI: return "a_si";
        case CompositionForm::QASI: return "q_asi";
        case CompositionForm::PosRoT: return "pos_rot";
        case CompositionForm::NegRoT: return "neg_rot";
        case CompositionForm::Pair: return "pair";
    }
    return "?";
}

Mode mode_from_string(std::string_view s) {
    if (s == "freeform") return Mode::FreeForm;
    if (s == "yesno") return Mode::YesNo;
    if (s == "relative") return Mode::Relative;
    throw UsageError("unknown mode: " + std::string(s));
}

Source source_from_string(std::string_view s) {
    if (s == "social_chem") return Source::SocialChem;
    if (s == "ethics") return Source::Ethics;
    if (s == "moral_stories") return Source::MoralStories;
    if (s == "sbic") return Source::Sbic;
    if (s == "scruples") return Source::Scruples;
    throw UsageError("unknown source: " + std::string(s));
}

bool label_valid_for_mode(ClassLabel c, Mode m) {
    switch (m) {
        case Mode::FreeForm:
            return c == ClassLabel::Negative || c == ClassLabel::Discretionary ||
                   c == ClassLabel::Positive;
        case Mode::YesNo:
            return c == ClassLabel::Agree || c == ClassLabel::Disagree;
        case Mode::Relative:
            return c == ClassLabel::First || c == ClassLabel::Second;
    }
    return false;
}

static bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string validate(const QAInstance& inst) {
    if (inst.mode == Mode::Relative) {
        if (inst.text_judgment) return "relative instance carries a text judgment";
        if (blank(inst.action1) || blank(inst.action2)) return "relative instance with empty action";
    } else {
        if (!inst.text_judgment) return "missing text judgment";
        if (blank(inst.input)) return "empty input";
    }
    if (!label_valid_for_mode(inst.label, inst.mode)) return "label not valid for mode";
    if ((inst.form == CompositionForm::ASI || inst.form == CompositionForm::QASI) &&
        inst.source != Source::MoralStories) {
        return "intention-grounded form from a source without intentions";
    }
    return {};
}

}  // namespace normbank

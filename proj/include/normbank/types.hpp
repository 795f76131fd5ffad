#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "normbank/errors.hpp"

namespace normbank {

enum class Mode { FreeForm, YesNo, Relative };

// One enum across the three modes; which labels are legal depends on the mode.
enum class ClassLabel {
    // free-form, 3-way
    Negative,
    Discretionary,
    Positive,
    // yes/no
    Disagree,
    Agree,
    // relative
    First,
    Second,
};

enum class Polarity { Positive, Negative, Unknown };

enum class Source { SocialChem, Ethics, MoralStories, Sbic, Scruples };

enum class Split { Train, Val, Test };

// How an instance's surface form was composed from its source record.
enum class CompositionForm { A, QA, AS, QAS, ASI, QASI, PosRoT, NegRoT, Pair };

std::string_view to_string(Mode m);
std::string_view to_string(ClassLabel c);
std::string_view to_string(Polarity p);
std::string_view to_string(Source s);
std::string_view to_string(Split s);
std::string_view to_string(CompositionForm f);

Mode mode_from_string(std::string_view s);
Source source_from_string(std::string_view s);

bool label_valid_for_mode(ClassLabel c, Mode m);

// One unified example.
struct QAInstance {
    std::string id;          // stable: "<source>:<line>#<form>"
    Mode mode = Mode::FreeForm;
    std::string input;
    ClassLabel label = ClassLabel::Discretionary;
    std::optional<std::string> text_judgment;  // absent iff mode == Relative
    Source source = Source::SocialChem;
    Split split = Split::Train;
    CompositionForm form = CompositionForm::A;
    std::string record_id;   // groups augmented variants of one source record
    // Relative instances keep the raw pair for input encoding.
    std::string action1;
    std::string action2;
};

// Non-throwing validity check; returns a human-readable issue or empty.
std::string validate(const QAInstance& inst);

}  // namespace normbank

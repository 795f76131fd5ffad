#pragma once

#include <optional>
#include <string>
#include <vector>

#include "normbank/types.hpp"

namespace normbank {

// Classic uses angle-bracket tags and class integers -1/0/1; Plus uses
// square-bracket tags and 0/1/2 so every class is a single number token.
enum class WireFormat { Classic, Plus };

WireFormat wire_format_from_string(std::string_view s);
std::string_view to_string(WireFormat f);

// Class label <-> wire integer, per mode and format. Throws ParseError on an
// out-of-range integer, UsageError on a label/mode mismatch.
int class_to_int(ClassLabel label, Mode mode, WireFormat f);
ClassLabel int_to_class(int value, Mode mode, WireFormat f, std::size_t position = 0);

// "[moral_single]: {input}" for single-input tasks; relative inputs carry the
// two actions in tagged blocks.
std::string encode_input(const QAInstance& inst, WireFormat f);

// "<class> {int} </class> <text> {judgment} </text>"; relative targets have
// the class block only. Throws EncodingError for a missing judgment on
// free-form/yes-no instances or a judgment containing tag brackets.
std::string encode_target(const QAInstance& inst, WireFormat f);

// A parsed target: the class plus the optional open-text judgment.
struct DecodedTarget {
    ClassLabel label;
    std::optional<std::string> text_judgment;
};

// Strict inverse of encode_target. Throws ParseError (with byte position) on
// malformed tags, out-of-range integers, or trailing garbage.
DecodedTarget decode_output(const std::string& s, Mode mode, WireFormat f);

// Line-oriented dataset files: `<stem>.src` and `<stem>.tgt`, newline
// delimited, index aligned.
void write_dataset(const std::string& stem, const std::vector<QAInstance>& instances,
                   WireFormat f);
std::vector<std::string> read_lines(const std::string& path);

}  // namespace normbank

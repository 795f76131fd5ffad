#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "normbank/judgment.hpp"
#include "normbank/types.hpp"

namespace normbank {

// One metric cell with its exact counts, for auditability.
struct MetricCell {
    std::size_t correct = 0;
    std::size_t total = 0;
    double accuracy() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
};

struct EvalReport {
    std::optional<MetricCell> c3;            // free-form 3-way
    std::optional<MetricCell> c2;            // free-form binarized
    std::optional<MetricCell> text_polarity; // free-form T(A)
    std::optional<MetricCell> yesno_class;
    std::optional<MetricCell> yesno_text;
    std::optional<MetricCell> relative;
    std::size_t unknown_polarity_count = 0;
    std::size_t unparseable_count = 0;   // yes/no predictions with no declaration
    std::size_t parse_failure_count = 0; // undecodable prediction lines (CLI layer)
    std::string map_fingerprint;

    std::string pretty() const;
    std::string to_json() const;
};

// POSITIVE for Positive/Discretionary, NEGATIVE for Negative.
Polarity binarize(ClassLabel freeform_label);

// Exact-match over the 3-way free-form labels.
MetricCell accuracy_c3(const std::vector<ClassLabel>& preds,
                       const std::vector<ClassLabel>& golds);

// Both sides projected by the positive/discretionary merge, then matched.
MetricCell accuracy_c2(const std::vector<ClassLabel>& preds,
                       const std::vector<ClassLabel>& golds);

// Predicted open-text judgment polarity vs binarized gold class; Unknown
// counts incorrect and is tallied through unknown_count.
MetricCell accuracy_text(const std::vector<std::string>& pred_texts,
                         const std::vector<ClassLabel>& gold_classes, const PolarityMap& map,
                         std::size_t* unknown_count = nullptr);

// Exact-match over Agree/Disagree.
MetricCell accuracy_yesno_class(const std::vector<ClassLabel>& preds,
                                const std::vector<ClassLabel>& golds);

// Split at the first comma into declaration + judgment; correct iff the
// declarations match and the judgment polarities match. A prediction without
// a comma is counted incorrect and tallied through unparseable_count.
MetricCell accuracy_yesno_text(const std::vector<std::string>& pred_texts,
                               const std::vector<std::string>& gold_texts,
                               const PolarityMap& map,
                               std::size_t* unparseable_count = nullptr,
                               std::size_t* unknown_count = nullptr);

// Exact-match over First/Second.
MetricCell accuracy_relative(const std::vector<ClassLabel>& preds,
                             const std::vector<ClassLabel>& golds);

// Declaration/judgment split used by the yes/no text metric.
struct DeclarationParts {
    std::string declaration;  // trimmed, lowercased
    std::string judgment;     // may be empty when no comma was present
    bool has_comma = false;
};
DeclarationParts split_declaration(const std::string& text);

}  // namespace normbank

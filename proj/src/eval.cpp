#include "normbank/eval.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

#include "normbank/errors.hpp"

namespace normbank {

namespace {

void check_lengths(std::size_t a, std::size_t b) {
    if (a != b)
        throw UsageError("prediction/gold length mismatch: " + std::to_string(a) + " vs " +
                         std::to_string(b));
    if (a == 0) throw UsageError("empty evaluation input");
}

std::string trim_lower(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out = s.substr(b, e - b);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

Polarity binarize(ClassLabel freeform_label) {
    switch (freeform_label) {
        case ClassLabel::Positive:
        case ClassLabel::Discretionary:
            return Polarity::Positive;
        case ClassLabel::Negative:
            return Polarity::Negative;
        default:
            throw UsageError("binarize expects a free-form label");
    }
}

MetricCell accuracy_c3(const std::vector<ClassLabel>& preds,
                       const std::vector<ClassLabel>& golds) {
    check_lengths(preds.size(), golds.size());
    MetricCell cell;
    cell.total = preds.size();
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] == golds[i]) ++cell.correct;
    }
    return cell;
}

MetricCell accuracy_c2(const std::vector<ClassLabel>& preds,
                       const std::vector<ClassLabel>& golds) {
    check_lengths(preds.size(), golds.size());
    MetricCell cell;
    cell.total = preds.size();
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (binarize(preds[i]) == binarize(golds[i])) ++cell.correct;
    }
    return cell;
}

MetricCell accuracy_text(const std::vector<std::string>& pred_texts,
                         const std::vector<ClassLabel>& gold_classes, const PolarityMap& map,
                         std::size_t* unknown_count) {
    check_lengths(pred_texts.size(), gold_classes.size());
    MetricCell cell;
    cell.total = pred_texts.size();
    for (std::size_t i = 0; i < pred_texts.size(); ++i) {
        Polarity p = map.lookup(pred_texts[i]);
        if (p == Polarity::Unknown) {
            if (unknown_count) ++*unknown_count;
            continue;  // unmapped predictions count incorrect
        }
        if (p == binarize(gold_classes[i])) ++cell.correct;
    }
    return cell;
}

MetricCell accuracy_yesno_class(const std::vector<ClassLabel>& preds,
                                const std::vector<ClassLabel>& golds) {
    check_lengths(preds.size(), golds.size());
    MetricCell cell;
    cell.total = preds.size();
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] == golds[i]) ++cell.correct;
    }
    return cell;
}

DeclarationParts split_declaration(const std::string& text) {
    DeclarationParts parts;
    std::size_t comma = text.find(',');
    if (comma == std::string::npos) {
        parts.declaration = trim_lower(text);
        return parts;
    }
    parts.has_comma = true;
    parts.declaration = trim_lower(text.substr(0, comma));
    parts.judgment = text.substr(comma + 1);
    return parts;
}

MetricCell accuracy_yesno_text(const std::vector<std::string>& pred_texts,
                               const std::vector<std::string>& gold_texts,
                               const PolarityMap& map, std::size_t* unparseable_count,
                               std::size_t* unknown_count) {
    check_lengths(pred_texts.size(), gold_texts.size());
    MetricCell cell;
    cell.total = pred_texts.size();
    for (std::size_t i = 0; i < pred_texts.size(); ++i) {
        DeclarationParts pred = split_declaration(pred_texts[i]);
        DeclarationParts gold = split_declaration(gold_texts[i]);
        if (!pred.has_comma) {
            if (unparseable_count) ++*unparseable_count;
            continue;
        }
        if (pred.declaration != gold.declaration) continue;
        Polarity pp = map.lookup(pred.judgment);
        Polarity gp = map.lookup(gold.judgment);
        if (pp == Polarity::Unknown || gp == Polarity::Unknown) {
            if (unknown_count) ++*unknown_count;
            continue;
        }
        if (pp == gp) ++cell.correct;
    }
    return cell;
}

MetricCell accuracy_relative(const std::vector<ClassLabel>& preds,
                             const std::vector<ClassLabel>& golds) {
    check_lengths(preds.size(), golds.size());
    MetricCell cell;
    cell.total = preds.size();
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] == golds[i]) ++cell.correct;
    }
    return cell;
}

namespace {

void print_cell(std::ostringstream& os, const char* label,
                const std::optional<MetricCell>& cell) {
    if (!cell) return;
    os << "  " << label << ": " << cell->correct << "/" << cell->total << " = ";
    os.precision(4);
    os << std::fixed << cell->accuracy() * 100.0 << "%\n";
}

void cell_to_json(nlohmann::json& j, const char* key, const std::optional<MetricCell>& cell) {
    if (!cell) return;
    j[key] = {{"correct", cell->correct}, {"total", cell->total},
              {"accuracy", cell->accuracy()}};
}

}  // namespace

std::string EvalReport::pretty() const {
    std::ostringstream os;
    os << "evaluation report\n";
    print_cell(os, "C(3) free-form 3-way ", c3);
    print_cell(os, "C(2) free-form binary", c2);
    print_cell(os, "T(A) text polarity   ", text_polarity);
    print_cell(os, "C(2) yes/no          ", yesno_class);
    print_cell(os, "T(A) yes/no text     ", yesno_text);
    print_cell(os, "relative             ", relative);
    if (unknown_polarity_count)
        os << "  unknown-polarity predictions: " << unknown_polarity_count << "\n";
    if (unparseable_count)
        os << "  unparseable yes/no predictions: " << unparseable_count << "\n";
    if (parse_failure_count)
        os << "  undecodable prediction lines: " << parse_failure_count << "\n";
    if (!map_fingerprint.empty()) os << "  polarity map fingerprint: " << map_fingerprint << "\n";
    return os.str();
}

std::string EvalReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    cell_to_json(j, "c3", c3);
    cell_to_json(j, "c2", c2);
    cell_to_json(j, "text_polarity", text_polarity);
    cell_to_json(j, "yesno_class", yesno_class);
    cell_to_json(j, "yesno_text", yesno_text);
    cell_to_json(j, "relative", relative);
    j["unknown_polarity_count"] = unknown_polarity_count;
    j["unparseable_count"] = unparseable_count;
    j["parse_failure_count"] = parse_failure_count;
    j["map_fingerprint"] = map_fingerprint;
    return j.dump(2);
}

}  // namespace normbank

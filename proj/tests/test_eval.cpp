#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "normbank/errors.hpp"
#include "normbank/eval.hpp"
#include "normbank/hash.hpp"

using namespace normbank;

namespace {

PolarityMap shipped_map() {
    return PolarityMap::load(std::string(NORMBANK_DATA_DIR) + "/polarity_map.tsv");
}

const ClassLabel kFreeform[] = {ClassLabel::Negative, ClassLabel::Discretionary,
                                ClassLabel::Positive};

}  // namespace

TEST_CASE("c3 exact match") {
    std::vector<ClassLabel> golds = {ClassLabel::Positive, ClassLabel::Negative,
                                     ClassLabel::Discretionary};
    CHECK(accuracy_c3(golds, golds).accuracy() == doctest::Approx(1.0));

    std::vector<ClassLabel> uniform = {ClassLabel::Positive, ClassLabel::Discretionary,
                                       ClassLabel::Negative};
    std::vector<ClassLabel> constant(3, ClassLabel::Positive);
    CHECK(accuracy_c3(constant, uniform).accuracy() == doctest::Approx(1.0 / 3));

    CHECK_THROWS_AS(accuracy_c3(constant, golds = {ClassLabel::Positive}), UsageError);
}

TEST_CASE("c2 merges positive and discretionary") {
    CHECK(accuracy_c2({ClassLabel::Discretionary}, {ClassLabel::Positive}).correct == 1);
    CHECK(accuracy_c2({ClassLabel::Negative}, {ClassLabel::Positive}).correct == 0);
    CHECK(accuracy_c2({ClassLabel::Negative}, {ClassLabel::Negative}).correct == 1);
}

TEST_CASE("c2 dominates c3 on random label vectors") {
    Rng rng(20211101);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + rng.next_below(60);
        std::vector<ClassLabel> preds, golds;
        for (std::size_t i = 0; i < n; ++i) {
            preds.push_back(kFreeform[rng.next_below(3)]);
            golds.push_back(kFreeform[rng.next_below(3)]);
        }
        CHECK(accuracy_c2(preds, golds).correct >= accuracy_c3(preds, golds).correct);
    }
}

TEST_CASE("text polarity metric") {
    PolarityMap map = shipped_map();
    std::size_t unknown = 0;

    MetricCell cell = accuracy_text({"it's rude", "it's good", "blorp"},
                                    {ClassLabel::Negative, ClassLabel::Negative,
                                     ClassLabel::Positive},
                                    map, &unknown);
    // "it's rude" vs negative: correct; "it's good" vs negative: wrong;
    // unmapped "blorp": wrong and tallied
    CHECK(cell.correct == 1);
    CHECK(cell.total == 3);
    CHECK(unknown == 1);

    SUBCASE("discretionary gold binarizes positive") {
        MetricCell c = accuracy_text({"it's okay"}, {ClassLabel::Discretionary}, map);
        CHECK(c.correct == 1);
    }
}

TEST_CASE("yes/no text polarity matching") {
    PolarityMap map = shipped_map();

    SUBCASE("normalization closes contraction gaps") {
        MetricCell c = accuracy_yesno_text({"yes, it is kind"}, {"yes, it's kind"}, map);
        CHECK(c.correct == 1);
    }
    SUBCASE("declaration mismatch fails") {
        MetricCell c = accuracy_yesno_text({"no, it's ok"}, {"yes, it's ok"}, map);
        CHECK(c.correct == 0);
    }
    SUBCASE("judgment polarity mismatch fails") {
        MetricCell c = accuracy_yesno_text({"yes, it's rude"}, {"yes, it's good"}, map);
        CHECK(c.correct == 0);
    }
    SUBCASE("prediction without a comma is unparseable") {
        std::size_t unparseable = 0;
        MetricCell c = accuracy_yesno_text({"yes"}, {"yes, it's good"}, map, &unparseable);
        CHECK(c.correct == 0);
        CHECK(unparseable == 1);
    }
    SUBCASE("case differences in the declaration do not matter") {
        MetricCell c = accuracy_yesno_text({"Yes, it's ok"}, {"yes, it's okay"}, map);
        CHECK(c.correct == 1);
    }
}

TEST_CASE("relative accuracy") {
    std::vector<ClassLabel> golds;
    std::vector<ClassLabel> flips;
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        golds.push_back(rng.next_below(2) == 0 ? ClassLabel::First : ClassLabel::Second);
        flips.push_back(rng.next_below(2) == 0 ? ClassLabel::First : ClassLabel::Second);
    }
    CHECK(accuracy_relative(golds, golds).accuracy() == doctest::Approx(1.0));

    // coin-flip predictor vs balanced golds: direct count oracle
    std::size_t agree = 0;
    for (std::size_t i = 0; i < golds.size(); ++i)
        if (golds[i] == flips[i]) ++agree;
    MetricCell cell = accuracy_relative(flips, golds);
    CHECK(cell.correct == agree);
    CHECK(cell.accuracy() > 0.35);
    CHECK(cell.accuracy() < 0.65);
}

TEST_CASE("metrics are permutation invariant") {
    Rng rng(31337);
    std::vector<ClassLabel> preds, golds;
    std::vector<std::string> pred_texts;
    for (int i = 0; i < 100; ++i) {
        preds.push_back(kFreeform[rng.next_below(3)]);
        golds.push_back(kFreeform[rng.next_below(3)]);
        pred_texts.push_back(rng.next_below(2) == 0 ? "it's good" : "it's rude");
    }
    PolarityMap map = shipped_map();
    MetricCell before_c3 = accuracy_c3(preds, golds);
    MetricCell before_text = accuracy_text(pred_texts, golds, map);

    // common shuffle of (pred, gold) pairs
    std::vector<std::size_t> order(preds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.next_below(i)]);
    std::vector<ClassLabel> preds2, golds2;
    std::vector<std::string> texts2;
    for (std::size_t idx : order) {
        preds2.push_back(preds[idx]);
        golds2.push_back(golds[idx]);
        texts2.push_back(pred_texts[idx]);
    }
    CHECK(accuracy_c3(preds2, golds2).correct == before_c3.correct);
    CHECK(accuracy_text(texts2, golds2, map).correct == before_text.correct);
}

TEST_CASE("report rendering carries counts and fingerprint") {
    EvalReport report;
    report.c3 = MetricCell{40, 100};
    report.c2 = MetricCell{66, 100};
    report.map_fingerprint = "00ff00ff00ff00ff";
    std::string text = report.pretty();
    CHECK(text.find("40/100") != std::string::npos);
    CHECK(text.find("00ff00ff00ff00ff") != std::string::npos);
    std::string json_text = report.to_json();
    CHECK(json_text.find("\"correct\": 40") != std::string::npos);
}

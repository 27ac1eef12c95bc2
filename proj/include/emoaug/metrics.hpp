#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emoaug/augment.hpp"
#include "emoaug/corpus.hpp"
#include "emoaug/emotion.hpp"
#include "emoaug/providers.hpp"
#include "json.hpp"

namespace emoaug {

struct NgramCounts {
  std::size_t unique = 0;
  std::size_t total = 0;

  double ratio() const { return static_cast<double>(unique) / static_cast<double>(total); }
};

// N-grams of the tokenized texts; n-grams never span two texts.
NgramCounts count_ngrams(std::span<const std::string> texts, std::size_t n);

// unique / total n-grams. DataError when n is 0 or no text has n tokens.
double type_token_ratio(std::span<const std::string> texts, std::size_t n);

// Mean per-example |G ∩ P| / |G ∪ P|; an example with both sets empty scores 1.
double jaccard_score(std::span<const EmotionVector> gold, std::span<const EmotionVector> pred);

struct LabelCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

using Support = std::array<LabelCounts, kNumEmotions>;

struct F1Scores {
  double macro = 0.0;
  double micro = 0.0;
  Support support{};
};

// Macro: mean per-label F1 over labels with any TP, FP or FN. Micro: F1 of
// the pooled counts. When no label has any count both are 1.
F1Scores f1_scores(std::span<const EmotionVector> gold, std::span<const EmotionVector> pred);
double macro_f1_from_support(const Support& support);
double micro_f1_from_support(const Support& support);

struct MetricsReport {
  std::map<std::size_t, NgramCounts> ttr;
  double jaccard = 0.0;
  double f1_macro = 0.0;
  double f1_micro = 0.0;
  Support support{};
  std::size_t n_examples = 0;
  std::vector<std::string> failures;  // examples that could not be scored
};

nlohmann::json to_json(const MetricsReport& report);

// Classifies every synthetic text and scores the predictions against the
// labels copied from the source. TTR is reported for each order in
// `ttr_orders` that has n-grams. Provider failures are listed in `failures`
// and left out of the scores.
MetricsReport evaluate_fidelity(std::span<const SyntheticExample> synthetic, const ClassifierProvider& classifier,
                                double threshold = kDefaultDecisionThreshold,
                                std::span<const std::size_t> ttr_orders = {}, std::size_t workers = 1);

// Scores predictions against gold labels, matched by id. DataError listing the
// ids present on only one side.
MetricsReport evaluate_extrinsic(std::span<const LabeledPost> gold, std::span<const PredictionScores> pred);

// Plain-text table, one row per named report.
std::string format_table(const std::vector<std::pair<std::string, MetricsReport>>& rows);

}  // namespace emoaug

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "emoaug/corpus.hpp"
#include "emoaug/emotion.hpp"
#include "emoaug/lexicon.hpp"
#include "emoaug/masking.hpp"
#include "emoaug/tokenizer.hpp"
#include "json.hpp"

namespace emoaug {

// ---------------------------------------------------------------------------
// Fill-mask

struct FillMaskCapability {
  std::string name;
  std::size_t max_input_tokens = kDefaultMaxTokens;
  bool single_flight = false;
};

class FillMaskProvider {
 public:
  virtual ~FillMaskProvider() = default;
  virtual const FillMaskCapability& capability() const = 0;
  // One replacement per sentinel, in position order.
  virtual std::vector<std::string> predict(const MaskedSentence& ms) const = 0;
};

// Replaces every sentinel through the provider and returns the completed token
// list. Throws DataError for a sentence without sentinels, a permanent
// ProviderError if the sentence exceeds the provider's input limit or the
// provider answers with the wrong number of tokens, an empty token or the
// sentinel itself.
std::vector<std::string> fill(const MaskedSentence& ms, const FillMaskProvider& provider);

// Returns the removed tokens unchanged.
class EchoFiller final : public FillMaskProvider {
 public:
  EchoFiller();
  const FillMaskCapability& capability() const override { return capability_; }
  std::vector<std::string> predict(const MaskedSentence& ms) const override;

 private:
  FillMaskCapability capability_;
};

// Replaces each removed word by its most cosine-similar content word in the
// embedding table, excluding the word itself; earliest table row wins ties.
// Out-of-vocabulary words are returned unchanged.
class NearestNeighborFiller final : public FillMaskProvider {
 public:
  NearestNeighborFiller(const EmbeddingTable& embeddings, const Stopwords& stopwords);
  const FillMaskCapability& capability() const override { return capability_; }
  std::vector<std::string> predict(const MaskedSentence& ms) const override;

  std::string nearest(std::string_view word) const;

 private:
  FillMaskCapability capability_;
  const EmbeddingTable& embeddings_;
  std::vector<std::size_t> candidates_;
  std::vector<double> norms_;
};

// ---------------------------------------------------------------------------
// Translation

struct TranslationCapability {
  std::string name;
  std::string source_lang;
  std::string target_lang;
  // Output depends on the seed argument; deterministic providers ignore it.
  bool supports_sampling = false;
  bool single_flight = false;
};

class TranslationProvider {
 public:
  virtual ~TranslationProvider() = default;
  virtual const TranslationCapability& capability() const = 0;
  virtual std::string translate(std::string_view text, std::uint64_t seed) const = 0;
};

struct BackTranslation {
  std::string intermediate;
  std::string output;
};

// backward(forward(text)). ConfigError when forward's target language is not
// backward's source language; DataError for empty input; a permanent
// ProviderError when either hop returns empty text.
BackTranslation back_translate(std::string_view text, const TranslationProvider& forward,
                               const TranslationProvider& backward, std::uint64_t seed = 0);

class IdentityTranslator final : public TranslationProvider {
 public:
  IdentityTranslator(std::string source_lang, std::string target_lang);
  const TranslationCapability& capability() const override { return capability_; }
  std::string translate(std::string_view text, std::uint64_t seed) const override;

 private:
  TranslationCapability capability_;
};

// Reverses the order of whitespace-separated words.
class ReverseWordsTranslator final : public TranslationProvider {
 public:
  ReverseWordsTranslator(std::string source_lang, std::string target_lang);
  const TranslationCapability& capability() const override { return capability_; }
  std::string translate(std::string_view text, std::uint64_t seed) const override;

 private:
  TranslationCapability capability_;
};

// Table-driven translation double. A text whose normalized form appears in the
// sentence table is replaced whole; otherwise each token is looked up in the
// word table and the result detokenized. Entries with several alternatives make
// the provider sampling-capable: seed 0 picks the first alternative, other
// seeds pick one pseudo-randomly.
class SubstitutionTranslator final : public TranslationProvider {
 public:
  using Table = std::map<std::string, std::vector<std::string>>;

  SubstitutionTranslator(std::string source_lang, std::string target_lang, Table words,
                         Table sentences = {});

  // Tab-separated "source<TAB>alt1[|alt2...]" lines; '#' comments. Lines whose
  // source contains a space go to the sentence table.
  static SubstitutionTranslator load(const std::filesystem::path& path, std::string source_lang,
                                     std::string target_lang);

  const TranslationCapability& capability() const override { return capability_; }
  std::string translate(std::string_view text, std::uint64_t seed) const override;

 private:
  const std::string& pick(const std::vector<std::string>& alternatives, std::uint64_t seed,
                          std::size_t position) const;

  TranslationCapability capability_;
  Table words_;
  Table sentences_;
};

// ---------------------------------------------------------------------------
// Classification

using RawScores = std::array<double, kNumEmotions>;

struct ClassifierCapability {
  std::string name;
  std::vector<std::string> label_order;
  bool single_flight = false;
};

class ClassifierProvider {
 public:
  virtual ~ClassifierProvider() = default;
  virtual const ClassifierCapability& capability() const = 0;
  // Pre-activation scores in canonical label order.
  virtual RawScores raw_scores(std::string_view text) const = 0;
};

// max(0, min(1, (x + 1) / 2))
double hard_sigmoid(double x);

inline constexpr double kDefaultDecisionThreshold = 0.5;

struct PredictionScores {
  std::string post_id;
  RawScores raw{};
  EmotionVector activated;
  EmotionVector predicted;

  friend bool operator==(const PredictionScores&, const PredictionScores&) = default;
};

PredictionScores make_prediction(std::string post_id, const RawScores& raw,
                                 double threshold = kDefaultDecisionThreshold);

PredictionScores classify(const Post& post, const ClassifierProvider& provider,
                          double threshold = kDefaultDecisionThreshold);

nlohmann::json to_json(const PredictionScores& p);
// Recomputes activated and predicted from raw; rejects a stored "activated"
// that disagrees. Stored "predicted" values are ignored since they depend on
// the threshold used when the file was written.
PredictionScores prediction_from_json(const nlohmann::json& j, double threshold = kDefaultDecisionThreshold);
std::vector<PredictionScores> load_predictions(const std::filesystem::path& path,
                                               double threshold = kDefaultDecisionThreshold);

// Raw score per label from keyword hits among the text's tokens: miss_score
// with no hit, else min(hit_cap, hit_score + hit_step * (hits - 1)).
class KeywordClassifier final : public ClassifierProvider {
 public:
  struct Scoring {
    double hit_score = 1.0;
    double hit_step = 0.0;
    double hit_cap = 1.0;
    double miss_score = -1.0;
  };

  explicit KeywordClassifier(std::map<std::string, Emotion> keywords);
  KeywordClassifier(std::map<std::string, Emotion> keywords, Scoring scoring);

  // "keyword<TAB>emotion" lines; '#' comments.
  static std::map<std::string, Emotion> load_keywords(const std::filesystem::path& path);

  const ClassifierCapability& capability() const override { return capability_; }
  RawScores raw_scores(std::string_view text) const override;

 private:
  ClassifierCapability capability_;
  std::map<std::string, Emotion> keywords_;
  Scoring scoring_;
};

std::vector<std::string> canonical_label_order();

// Serializes calls into providers whose capability declares single_flight.
class CallGate {
 public:
  explicit CallGate(bool single_flight) : single_flight_(single_flight) {}

  template <typename Fn>
  auto operator()(Fn&& fn) const {
    if (!single_flight_) return fn();
    std::lock_guard lock(mutex_);
    return fn();
  }

 private:
  bool single_flight_;
  mutable std::mutex mutex_;
};

}  // namespace emoaug

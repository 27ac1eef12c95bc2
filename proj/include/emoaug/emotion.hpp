#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace emoaug {

// SemEval-2018 E-c label set, in the fixed order used by every vector.
enum class Emotion : std::size_t {
  kAnger,
  kAnticipation,
  kDisgust,
  kFear,
  kJoy,
  kLove,
  kOptimism,
  kPessimism,
  kSadness,
  kSurprise,
  kTrust,
};

inline constexpr std::size_t kNumEmotions = 11;

inline constexpr std::array<std::string_view, kNumEmotions> kEmotionNames = {
    "anger",    "anticipation", "disgust", "fear",     "joy",   "love",
    "optimism", "pessimism",    "sadness", "surprise", "trust"};

std::string_view emotion_name(Emotion e);
std::optional<Emotion> emotion_from_name(std::string_view name);

// Eleven scores in [0,1]. The all-zero vector is the neutral state.
class EmotionVector {
 public:
  EmotionVector() { scores_.fill(0.0); }
  // Throws DataError if any score lies outside [0,1] or is NaN.
  explicit EmotionVector(const std::array<double, kNumEmotions>& scores);

  static EmotionVector from_labels(std::initializer_list<Emotion> labels);

  double operator[](std::size_t i) const { return scores_[i]; }
  double operator[](Emotion e) const { return scores_[static_cast<std::size_t>(e)]; }
  void set(Emotion e, double value);

  const std::array<double, kNumEmotions>& scores() const { return scores_; }

  bool is_binary() const;
  bool is_neutral() const;
  std::size_t count_positive() const;

  // Scores >= threshold become 1, others 0.
  EmotionVector binarized(double threshold = 0.5) const;

  friend bool operator==(const EmotionVector&, const EmotionVector&) = default;

 private:
  std::array<double, kNumEmotions> scores_{};
};

}  // namespace emoaug

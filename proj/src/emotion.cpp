#include "emoaug/emotion.hpp"

#include <algorithm>

#include "emoaug/error.hpp"

namespace emoaug {

std::string_view emotion_name(Emotion e) { return kEmotionNames[static_cast<std::size_t>(e)]; }

std::optional<Emotion> emotion_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (kEmotionNames[i] == name) return static_cast<Emotion>(i);
  }
  return std::nullopt;
}

EmotionVector::EmotionVector(const std::array<double, kNumEmotions>& scores) : scores_(scores) {
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (!(scores_[i] >= 0.0 && scores_[i] <= 1.0)) {
      throw DataError("emotion score for " + std::string(kEmotionNames[i]) + " outside [0,1]");
    }
  }
}

EmotionVector EmotionVector::from_labels(std::initializer_list<Emotion> labels) {
  EmotionVector v;
  for (Emotion e : labels) v.set(e, 1.0);
  return v;
}

void EmotionVector::set(Emotion e, double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw DataError("emotion score outside [0,1]");
  scores_[static_cast<std::size_t>(e)] = value;
}

bool EmotionVector::is_binary() const {
  return std::all_of(scores_.begin(), scores_.end(), [](double s) { return s == 0.0 || s == 1.0; });
}

bool EmotionVector::is_neutral() const {
  return std::all_of(scores_.begin(), scores_.end(), [](double s) { return s == 0.0; });
}

std::size_t EmotionVector::count_positive() const {
  return static_cast<std::size_t>(std::count_if(scores_.begin(), scores_.end(), [](double s) { return s > 0.0; }));
}

EmotionVector EmotionVector::binarized(double threshold) const {
  EmotionVector out;
  for (std::size_t i = 0; i < kNumEmotions; ++i) out.scores_[i] = scores_[i] >= threshold ? 1.0 : 0.0;
  return out;
}

}  // namespace emoaug

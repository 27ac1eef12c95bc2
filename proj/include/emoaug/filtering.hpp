#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoaug/providers.hpp"

namespace emoaug {

enum class WindowMode { kAny, kAll };

std::string_view to_string(WindowMode m);
WindowMode parse_window_mode(std::string_view name);

struct FilterConfig {
  double low = 0.3;
  double high = 0.8;
  WindowMode mode = WindowMode::kAny;
  double decision_threshold = kDefaultDecisionThreshold;

  // Throws ConfigError unless 0 <= low < high <= 1.
  void validate() const;
};

// True when the post's predicted labels (activated >= decision_threshold)
// have confidences inside [low, high]: at least one of them for kAny, all of
// them for kAll. Posts with no predicted label are never kept.
bool in_confidence_window(const PredictionScores& scores, const FilterConfig& cfg);

// Ids of the kept posts, in input order.
std::vector<std::string> confidence_filter(std::span<const PredictionScores> scored, const FilterConfig& cfg);

struct SplitSpec {
  std::size_t total = 1000;
  std::size_t train = 700;
  std::size_t valid = 300;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Split {
  std::vector<std::string> train;
  std::vector<std::string> valid;
};

// Seeded Fisher-Yates shuffle of the ids; the first `train` go to train, the
// next `valid` to validation. DataError when there are fewer than `total` ids
// or duplicates.
Split sample_split(std::span<const std::string> ids, const SplitSpec& spec);

}  // namespace emoaug

#include "emoaug/filtering.hpp"

#include <unordered_set>

#include "emoaug/error.hpp"
#include "emoaug/rng.hpp"

namespace emoaug {

std::string_view to_string(WindowMode m) { return m == WindowMode::kAny ? "any" : "all"; }

WindowMode parse_window_mode(std::string_view name) {
  if (name == "any") return WindowMode::kAny;
  if (name == "all") return WindowMode::kAll;
  throw ConfigError("unknown window mode \"" + std::string(name) + "\" (expected any or all)");
}

void FilterConfig::validate() const {
  if (!(low >= 0.0 && low < high && high <= 1.0)) {
    throw ConfigError("confidence window needs 0 <= low < high <= 1, got [" + std::to_string(low) + ", " +
                      std::to_string(high) + "]");
  }
  if (!(decision_threshold >= 0.0 && decision_threshold <= 1.0)) {
    throw ConfigError("decision threshold must lie in [0,1]");
  }
}

bool in_confidence_window(const PredictionScores& scores, const FilterConfig& cfg) {
  std::size_t predicted = 0;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    const double a = scores.activated[i];
    if (a < cfg.decision_threshold) continue;
    ++predicted;
    if (a >= cfg.low && a <= cfg.high) ++inside;
  }
  if (predicted == 0) return false;
  return cfg.mode == WindowMode::kAny ? inside > 0 : inside == predicted;
}

std::vector<std::string> confidence_filter(std::span<const PredictionScores> scored, const FilterConfig& cfg) {
  cfg.validate();
  std::vector<std::string> kept;
  for (const auto& s : scored) {
    if (in_confidence_window(s, cfg)) kept.push_back(s.post_id);
  }
  return kept;
}

void SplitSpec::validate() const {
  if (train == 0 || valid == 0) throw ConfigError("train and validation sizes must be positive");
  if (train + valid != total) {
    throw ConfigError("train (" + std::to_string(train) + ") + valid (" + std::to_string(valid) +
                      ") must equal total (" + std::to_string(total) + ")");
  }
}

Split sample_split(std::span<const std::string> ids, const SplitSpec& spec) {
  spec.validate();
  if (ids.size() < spec.total) {
    throw DataError("need " + std::to_string(spec.total) + " ids to sample from, have " + std::to_string(ids.size()));
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw DataError("duplicate id \"" + id + "\" in sampling pool");
  }
  std::vector<std::string> pool(ids.begin(), ids.end());
  Rng rng(splitmix64(spec.seed));
  for (std::size_t i = pool.size(); i > 1; --i) {
    std::swap(pool[i - 1], pool[rng.below(i)]);
  }
  Split split;
  split.train.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(spec.train));
  split.valid.assign(pool.begin() + static_cast<std::ptrdiff_t>(spec.train),
                     pool.begin() + static_cast<std::ptrdiff_t>(spec.total));
  return split;
}

}  // namespace emoaug

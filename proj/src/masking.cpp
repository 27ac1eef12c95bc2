#include "emoaug/masking.hpp"

#include <algorithm>
#include <cmath>

#include "emoaug/error.hpp"
#include "emoaug/rng.hpp"

namespace emoaug {

std::string_view to_string(MaskStrategy s) { return s == MaskStrategy::kToken ? "token" : "span"; }

std::size_t MaskedSentence::sentinel_count() const {
  return static_cast<std::size_t>(std::count(tokens.begin(), tokens.end(), kMaskSentinel));
}

std::vector<std::string> MaskedSentence::restore() const {
  std::vector<std::string> out = tokens;
  for (const auto& [i, token] : removed) out.at(i) = token;
  return out;
}

std::size_t mask_count(std::size_t k, double rate) {
  // Half-up rounding; the slack absorbs representation error in rate * k
  // (0.15 * 30 evaluates just below 4.5).
  auto m = static_cast<std::size_t>(std::floor(rate * static_cast<double>(k) + 0.5 + 1e-9));
  return std::max<std::size_t>(1, m);
}

std::vector<std::size_t> weighted_sample_without_replacement(std::span<const std::size_t> eligible,
                                                             std::span<const double> weights,
                                                             std::size_t count, double epsilon,
                                                             std::uint64_t seed) {
  std::vector<std::size_t> pool(eligible.begin(), eligible.end());
  std::vector<double> w;
  w.reserve(pool.size());
  for (std::size_t idx : pool) {
    double a = idx < weights.size() ? weights[idx] : 0.0;
    w.push_back(std::max(a, 0.0) + epsilon);
  }
  Rng rng(seed);
  std::vector<std::size_t> chosen;
  const std::size_t m = std::min(count, pool.size());
  while (chosen.size() < m) {
    double total = 0.0;
    for (double x : w) total += x;
    double target = rng.uniform() * total;
    std::size_t pick = pool.size() - 1;
    double acc = 0.0;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      acc += w[j];
      if (target < acc) {
        pick = j;
        break;
      }
    }
    chosen.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

std::vector<std::size_t> content_indices(const TokenizedPost& tp) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tp.size(); ++i) {
    if (!tp.is_functional[i]) out.push_back(i);
  }
  if (out.empty()) throw DataError("nothing maskable in post \"" + tp.post_id + "\"");
  return out;
}

void check_weights(const TokenizedPost& tp, std::span<const double> weights) {
  if (!weights.empty() && weights.size() != tp.size()) {
    throw DataError("affinity weights do not match the token count");
  }
}

}  // namespace

MaskPlan select_token_masks(const TokenizedPost& tp, std::span<const double> weights, double rate,
                            std::uint64_t seed, double epsilon) {
  if (!(rate > 0.0 && rate <= 1.0)) throw ConfigError("mask rate must lie in (0,1]");
  if (!(epsilon > 0.0)) throw ConfigError("affinity epsilon must be positive");
  check_weights(tp, weights);
  auto eligible = content_indices(tp);
  MaskPlan plan;
  plan.post_id = tp.post_id;
  plan.strategy = MaskStrategy::kToken;
  plan.rng_seed = seed;
  plan.mask_indices = weighted_sample_without_replacement(eligible, weights, mask_count(tp.size(), rate), epsilon, seed);
  return plan;
}

std::vector<std::size_t> span_window(std::size_t anchor, std::size_t k, std::size_t span_len) {
  if (anchor >= k) throw DataError("span anchor out of range");
  if (span_len == 0) throw ConfigError("span length must be positive");
  std::size_t len = std::min(span_len, k);
  std::size_t start = anchor >= span_len / 2 ? anchor - span_len / 2 : 0;
  start = std::min(start, k - len);
  std::vector<std::size_t> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = start + i;
  return out;
}

MaskPlan select_span_mask(const TokenizedPost& tp, std::span<const double> weights, std::size_t span_len,
                          std::uint64_t seed, double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("affinity epsilon must be positive");
  check_weights(tp, weights);
  auto eligible = content_indices(tp);
  auto anchor = weighted_sample_without_replacement(eligible, weights, 1, epsilon, seed);
  MaskPlan plan;
  plan.post_id = tp.post_id;
  plan.strategy = MaskStrategy::kSpan;
  plan.rng_seed = seed;
  plan.mask_indices = span_window(anchor.front(), tp.size(), span_len);
  return plan;
}

MaskedSentence apply_mask(const TokenizedPost& tp, const MaskPlan& plan) {
  if (plan.mask_indices.empty()) throw DataError("mask plan is empty");
  MaskedSentence ms;
  ms.tokens = tp.tokens;
  for (std::size_t i : plan.mask_indices) {
    if (i >= tp.size()) {
      throw DataError("mask index " + std::to_string(i) + " out of range for " + std::to_string(tp.size()) + " tokens");
    }
    if (ms.removed.contains(i)) throw DataError("mask index " + std::to_string(i) + " repeated");
    ms.removed.emplace(i, tp.tokens[i]);
    ms.tokens[i] = std::string(kMaskSentinel);
  }
  return ms;
}

}  // namespace emoaug

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoaug/tokenizer.hpp"

namespace emoaug {

enum class MaskStrategy { kToken, kSpan };

std::string_view to_string(MaskStrategy s);

struct MaskPlan {
  std::string post_id;
  std::vector<std::size_t> mask_indices;  // sorted, unique
  MaskStrategy strategy = MaskStrategy::kToken;
  std::uint64_t rng_seed = 0;

  friend bool operator==(const MaskPlan&, const MaskPlan&) = default;
};

// Placeholder stored at masked positions. The tokenizer splits '<' and '>' off
// as punctuation, so no tokenized text can contain it.
inline constexpr std::string_view kMaskSentinel = "<mask>";

struct MaskedSentence {
  std::vector<std::string> tokens;
  std::map<std::size_t, std::string> removed;

  std::size_t sentinel_count() const;
  // Original token list.
  std::vector<std::string> restore() const;
};

inline constexpr double kDefaultMaskRate = 0.15;
inline constexpr std::size_t kDefaultSpanLength = 5;
inline constexpr double kAffinityEpsilon = 0.01;

// max(1, round_half_up(rate * k)).
std::size_t mask_count(std::size_t k, double rate);

// Draws `count` distinct indices among `eligible` (or all of them, if fewer),
// each draw proportional to weight + epsilon over the indices not yet drawn.
std::vector<std::size_t> weighted_sample_without_replacement(std::span<const std::size_t> eligible,
                                                             std::span<const double> weights,
                                                             std::size_t count, double epsilon,
                                                             std::uint64_t seed);

// Masks mask_count(k, rate) non-functional tokens chosen by affinity. Throws
// DataError "nothing maskable" when every token is functional.
MaskPlan select_token_masks(const TokenizedPost& tp, std::span<const double> weights,
                            double rate, std::uint64_t seed, double epsilon = kAffinityEpsilon);

// One anchor drawn as above, then the span_len window centred on it, shifted
// inside the sentence; the whole sentence when k < span_len.
MaskPlan select_span_mask(const TokenizedPost& tp, std::span<const double> weights,
                          std::size_t span_len, std::uint64_t seed, double epsilon = kAffinityEpsilon);

// Window of span_len tokens around `anchor` in a k-token sentence.
std::vector<std::size_t> span_window(std::size_t anchor, std::size_t k, std::size_t span_len);

MaskedSentence apply_mask(const TokenizedPost& tp, const MaskPlan& plan);

}  // namespace emoaug

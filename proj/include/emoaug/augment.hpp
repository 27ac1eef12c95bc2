#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoaug/corpus.hpp"
#include "emoaug/lexicon.hpp"
#include "emoaug/masking.hpp"
#include "emoaug/providers.hpp"
#include "json.hpp"

namespace emoaug {

enum class AugmentMethod { kBackTranslation, kMaskToken, kMaskSpan };

std::string_view to_string(AugmentMethod m);
// "bt", "mask_token" or "mask_span".
AugmentMethod parse_augment_method(std::string_view name);

struct AugmentationConfig {
  AugmentMethod method = AugmentMethod::kMaskToken;
  std::size_t folds = 1;
  double mask_rate = kDefaultMaskRate;
  std::size_t span_len = kDefaultSpanLength;
  double epsilon = kAffinityEpsilon;
  std::uint64_t global_seed = 0;
  std::size_t max_regen_attempts = 3;
  // Drop examples still identical to their source after all attempts.
  bool drop_degenerate = false;
  std::size_t workers = 1;

  // Throws ConfigError.
  void validate() const;
};

// Borrowed model handles. `affinity` may be null, in which case every
// content token weighs epsilon (uniform selection).
struct AugmentProviders {
  const FillMaskProvider* filler = nullptr;
  const TranslationProvider* forward = nullptr;
  const TranslationProvider* backward = nullptr;
  const AffinityScorer* affinity = nullptr;
  const Stopwords* stopwords = &Stopwords::builtin();
};

struct MaskProvenance {
  MaskPlan plan;
  std::vector<std::string> replacements;
};

struct TranslationProvenance {
  std::uint64_t seed = 0;
  std::string intermediate;
};

struct SyntheticExample {
  std::string source_id;
  std::size_t fold = 1;
  std::string text;
  EmotionVector labels;
  AugmentMethod method = AugmentMethod::kMaskToken;
  bool degenerate = false;
  std::size_t attempts = 1;
  std::optional<MaskProvenance> mask;
  std::optional<TranslationProvenance> translation;
};

nlohmann::json to_json(const SyntheticExample& ex);
SyntheticExample synthetic_from_json(const nlohmann::json& j);
std::vector<SyntheticExample> load_synthetic(const std::filesystem::path& path);
void write_synthetic(std::ostream& out, std::span<const SyntheticExample> examples);

// Generates fold `fold` of one source. While the output equals the source
// (after normalization) it is regenerated with a fresh seed, at most
// max_regen_attempts times; if it still matches, the last output is returned
// flagged degenerate. Deterministic translators are not retried since a new
// seed cannot change their output.
SyntheticExample augment_one(const LabeledPost& source, std::size_t fold, const AugmentationConfig& cfg,
                             const AugmentProviders& providers);

struct Shortfall {
  std::string source_id;
  std::size_t produced = 0;
  std::size_t target = 0;
  std::string reason;  // empty when the missing folds were degenerate drops
};

struct AugmentResult {
  std::vector<SyntheticExample> examples;  // sorted by (source_id, fold)
  std::size_t target = 0;
  std::size_t degenerate = 0;
  std::vector<Shortfall> shortfalls;
  bool aborted = false;
  std::string abort_reason;
};

// Synthesis loop: `folds` examples per source, each fold with
// its own derived seed. Sources run on up to cfg.workers threads; the output
// does not depend on the worker count. A provider failure stops the run and
// returns the examples finished so far with aborted set.
AugmentResult augment_corpus(std::span<const LabeledPost> train, const AugmentationConfig& cfg,
                             const AugmentProviders& providers);

// Re-derives an example from its provenance: the mask plan must be reproduced
// by the selection step and the text by filling it; translation intermediates
// must be reproduced by the translators.
bool verify_provenance(const SyntheticExample& ex, const LabeledPost& source, const AugmentationConfig& cfg,
                       const AugmentProviders& providers);

}  // namespace emoaug

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include "emoaug/augment.hpp"
#include "emoaug/corpus.hpp"
#include "emoaug/lexicon.hpp"
#include "emoaug/metrics.hpp"
#include "emoaug/providers.hpp"
#include "emoaug/remote.hpp"
#include "emoaug/run_config.hpp"
#include "json.hpp"

// One function per pipeline stage. Each reads its inputs from files, writes
// its output file and a "<output>.manifest.json" beside it, and reports a
// one-line summary to `log`.
namespace emoaug::stages {

// Models and lexical resources for a run, built on first use.
class ProviderSet {
 public:
  explicit ProviderSet(const RunConfig& cfg);
  ~ProviderSet();

  const Stopwords& stopwords();
  const EmbeddingTable& embeddings();
  const SneLexicon& sne();
  const AffinityScorer& affinity();
  const FillMaskProvider& filler();
  const TranslationProvider& forward();
  const TranslationProvider& backward();
  const ClassifierProvider& classifier();

  AugmentProviders augment_providers(AugmentMethod method);
  // Names of the providers that were built, for manifests.
  nlohmann::json describe() const;

 private:
  const RunConfig& cfg_;
  std::shared_ptr<const RemoteClient> client_;
  std::optional<Stopwords> stopwords_;
  std::unique_ptr<EmbeddingTable> embeddings_;
  std::unique_ptr<SneLexicon> sne_;
  std::unique_ptr<AffinityScorer> affinity_;
  std::unique_ptr<FillMaskProvider> filler_;
  std::unique_ptr<TranslationProvider> forward_;
  std::unique_ptr<TranslationProvider> backward_;
  std::unique_ptr<ClassifierProvider> classifier_;
};

std::filesystem::path manifest_path(const std::filesystem::path& output);

IngestStats run_ingest(const RunConfig& cfg, const std::filesystem::path& in, CorpusSchema schema,
                       const std::filesystem::path& out, std::ostream& log);

std::size_t run_classify(const RunConfig& cfg, const std::filesystem::path& in, const std::filesystem::path& out,
                         std::ostream& log);

std::size_t run_filter(const RunConfig& cfg, const std::filesystem::path& predictions,
                       const std::filesystem::path& out, std::ostream& log);

// Draws the train/validation split from `corpus` (restricted to the ids listed
// in `ids`, if given). Labels come from `predictions` when given (pseudo
// labels), otherwise from the corpus, which must then be labeled. Writes
// train.jsonl and valid.jsonl into out_dir.
Split run_sample(const RunConfig& cfg, const std::filesystem::path& corpus,
                 const std::optional<std::filesystem::path>& ids,
                 const std::optional<std::filesystem::path>& predictions, const std::filesystem::path& out_dir,
                 std::ostream& log);

AugmentResult run_augment(const RunConfig& cfg, const std::filesystem::path& train, const std::filesystem::path& out,
                          std::ostream& log);

// Fidelity (and TTR) of a synthetic set and/or extrinsic scores of
// predictions against gold labels. Writes the JSON report to `out` and the
// plain-text table to `out` with extension .txt.
nlohmann::json run_evaluate(const RunConfig& cfg, const std::optional<std::filesystem::path>& synthetic,
                            const std::optional<std::filesystem::path>& gold,
                            const std::optional<std::filesystem::path>& predictions, const std::filesystem::path& out,
                            std::ostream& log);

}  // namespace emoaug::stages

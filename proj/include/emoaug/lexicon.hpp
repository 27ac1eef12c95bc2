#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace emoaug {

// Static word vectors (GloVe text format). Immutable once built.
class EmbeddingTable {
 public:
  // Rows must all have length `dim`. The first occurrence of a word wins.
  EmbeddingTable(std::size_t dim, std::vector<std::string> words, std::vector<std::vector<double>> rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  // Number of later duplicate rows that were ignored.
  std::size_t duplicates_ignored() const { return duplicates_; }

  bool contains(std::string_view word) const;
  // nullopt for out-of-vocabulary words.
  std::optional<std::span<const double>> lookup(std::string_view word) const;

  // Words in file order.
  const std::vector<std::string>& words() const { return words_; }
  std::span<const double> row(std::size_t i) const;

 private:
  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t duplicates_ = 0;
};

// "word v1 ... vd" per line. Throws DataError for a row whose length differs
// from the first row (naming the line) and for an input with no vectors.
EmbeddingTable read_embeddings(std::istream& in);
EmbeddingTable load_embeddings(const std::filesystem::path& path);

struct VadEntry {
  std::string word;
  double valence = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;
};

enum class VadScale { kAuto, kUnit, kOneToNine };

// Header row naming word, valence, arousal, dominance (any order), tab- or
// comma-separated. Scores on the 1..9 scale are mapped to [0,1] by (x-1)/8.
// kAuto picks kOneToNine if any score exceeds 1.
std::vector<VadEntry> read_vad(std::istream& in, VadScale scale = VadScale::kAuto);
std::vector<VadEntry> load_vad(const std::filesystem::path& path, VadScale scale = VadScale::kAuto);

inline constexpr double kDefaultValenceMax = 0.3;
inline constexpr double kDefaultArousalMin = 0.7;

// Strong-negative-emotion words: low valence, high arousal.
class SneLexicon {
 public:
  SneLexicon(std::vector<std::string> words, double valence_max, double arousal_min);

  // Sorted, unique.
  const std::vector<std::string>& words() const { return words_; }
  bool contains(std::string_view word) const;
  double valence_max() const { return valence_max_; }
  double arousal_min() const { return arousal_min_; }

 private:
  std::vector<std::string> words_;
  double valence_max_;
  double arousal_min_;
};

// {w : valence(w) <= valence_max and arousal(w) >= arousal_min}. Throws
// DataError when nothing qualifies.
SneLexicon build_sne_lexicon(std::span<const VadEntry> vad, double valence_max = kDefaultValenceMax,
                             double arousal_min = kDefaultArousalMin);

// dot(u,v) / (|u| |v|). Throws DataError on length mismatch or a zero vector.
double cosine(std::span<const double> u, std::span<const double> v);

// Max cosine between `word` and any SNE word present in the table, clamped
// below at 0. Out-of-vocabulary words, and lexicons with no word in the table,
// score 0.
double sne_affinity(std::string_view word, const EmbeddingTable& embeddings, const SneLexicon& sne);

// Affinity for every token of a sentence. Functional tokens score 0.
class AffinityScorer {
 public:
  AffinityScorer(const EmbeddingTable& embeddings, const SneLexicon& sne);

  double affinity(std::string_view word) const;
  std::vector<double> score(const std::vector<std::string>& tokens,
                            const std::vector<bool>& is_functional) const;

 private:
  const EmbeddingTable& embeddings_;
  const SneLexicon& sne_;
};

}  // namespace emoaug

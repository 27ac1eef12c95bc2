#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emoaug/emotion.hpp"
#include "emoaug/tokenizer.hpp"
#include "json.hpp"

namespace emoaug {

struct Post {
  std::string id;
  std::string text;
  std::optional<std::string> source;
  std::map<std::string, std::string> meta;

  friend bool operator==(const Post&, const Post&) = default;
};

struct LabeledPost {
  Post post;
  EmotionVector labels;  // binary

  friend bool operator==(const LabeledPost&, const LabeledPost&) = default;
};

enum class CorpusSchema { kPosts, kLabeled };

// JSON Lines, one {id, text, source?, meta?, labels?} object per line. Errors
// cite 1-based line numbers; a duplicate id cites both lines. Blank lines are
// skipped.
std::vector<Post> read_posts(std::istream& in);
std::vector<LabeledPost> read_labeled_posts(std::istream& in);
std::vector<Post> load_posts(const std::filesystem::path& path);
std::vector<LabeledPost> load_labeled_posts(const std::filesystem::path& path);

nlohmann::json to_json(const Post& post);
nlohmann::json to_json(const LabeledPost& post);
Post post_from_json(const nlohmann::json& j);
LabeledPost labeled_post_from_json(const nlohmann::json& j);

nlohmann::json labels_to_json(const EmotionVector& labels);
EmotionVector labels_from_json(const nlohmann::json& j);

void write_posts(std::ostream& out, const std::vector<Post>& posts);
void write_labeled_posts(std::ostream& out, const std::vector<LabeledPost>& posts);

// Title and body joined by one space; either part may be empty.
std::string combine_title_and_text(std::string_view title, std::string_view text);

// 1 iff rating >= threshold. Ratings outside 1..10 throw DataError.
int binarize_rating(int rating, int threshold = 4);

// Source-emotion names (IESO self-report vocabulary) to SemEval labels.
class EmotionMapping {
 public:
  // Throws ConfigError if two source names map to the same label.
  explicit EmotionMapping(std::map<std::string, Emotion> pairs);

  // The nine-pair IESO -> SemEval table.
  static const EmotionMapping& ieso_to_semeval();

  // `name` is lowercased before lookup; unmapped names yield nullopt.
  std::optional<Emotion> map(std::string_view name) const;
  const std::map<std::string, Emotion>& pairs() const { return pairs_; }

 private:
  std::map<std::string, Emotion> pairs_;
};

std::optional<Emotion> map_emotion(std::string_view name,
                                   const EmotionMapping& mapping = EmotionMapping::ieso_to_semeval());

// Binarizes every mapped rating; unmapped emotions are ignored.
EmotionVector labels_from_ratings(const std::map<std::string, int>& ratings,
                                  const EmotionMapping& mapping, int threshold = 4);

enum class LengthDecision { kKeep, kDrop };

inline constexpr std::size_t kDefaultMaxTokens = 512;

// Drop iff the post has more than max_tokens tokens.
LengthDecision enforce_max_length(const TokenizedPost& tp, std::size_t max_tokens = kDefaultMaxTokens);

// Raw ingest records: {id, text, title?, source?, meta?, labels?, ratings?}.
// `ratings` maps source-emotion names to 1..10 self-report scores.
struct IngestOptions {
  CorpusSchema schema = CorpusSchema::kPosts;
  int rating_threshold = 4;
  std::size_t max_tokens = kDefaultMaxTokens;
};

struct IngestStats {
  std::size_t read = 0;
  std::size_t kept = 0;
  std::size_t dropped_overlength = 0;
  std::vector<std::string> dropped_ids;
};

struct IngestResult {
  std::vector<LabeledPost> records;  // labels all-zero for the posts schema
  IngestStats stats;
};

IngestResult ingest(std::istream& in, const IngestOptions& options,
                    const EmotionMapping& mapping = EmotionMapping::ieso_to_semeval(),
                    const Stopwords& stopwords = Stopwords::builtin());

}  // namespace emoaug

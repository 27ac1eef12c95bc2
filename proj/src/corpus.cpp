#include "emoaug/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "emoaug/error.hpp"
#include "emoaug/jsonl.hpp"

namespace emoaug {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Records

namespace {

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string require_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing field \"") + key + "\"");
  if (!it->is_string()) throw DataError(std::string("field \"") + key + "\" must be a string");
  return it->get<std::string>();
}

template <typename Record, typename Parse>
std::vector<Record> read_records(std::istream& in, Parse parse) {
  std::vector<Record> out;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_jsonl(in, [&](std::size_t line, const json& j) {
    Record r = parse(j);
    const std::string& id = [&]() -> const std::string& {
      if constexpr (std::is_same_v<Record, Post>) {
        return r.id;
      } else {
        return r.post.id;
      }
    }();
    auto [it, inserted] = seen.emplace(id, line);
    if (!inserted) {
      throw DataError("duplicate id \"" + id + "\" (first seen on line " + std::to_string(it->second) + ")");
    }
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace

Post post_from_json(const json& j) {
  if (!j.is_object()) throw DataError("record is not a JSON object");
  Post p;
  p.id = require_string(j, "id");
  if (p.id.empty()) throw DataError("empty id");
  p.text = require_string(j, "text");
  if (blank(p.text)) throw DataError("empty text in record \"" + p.id + "\"");
  if (auto it = j.find("source"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw DataError("field \"source\" must be a string");
    p.source = it->get<std::string>();
  }
  if (auto it = j.find("meta"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw DataError("field \"meta\" must be an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw DataError("meta values must be strings");
      p.meta.emplace(k, v.get<std::string>());
    }
  }
  return p;
}

EmotionVector labels_from_json(const json& j) {
  if (!j.is_array() || j.size() != kNumEmotions) {
    throw DataError("\"labels\" must be an array of " + std::to_string(kNumEmotions) + " values");
  }
  std::array<double, kNumEmotions> values{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (!j[i].is_number()) throw DataError("\"labels\" entries must be 0 or 1");
    double v = j[i].get<double>();
    if (v != 0.0 && v != 1.0) throw DataError("\"labels\" entries must be 0 or 1");
    values[i] = v;
  }
  return EmotionVector(values);
}

json labels_to_json(const EmotionVector& labels) {
  json arr = json::array();
  for (double v : labels.scores()) arr.push_back(static_cast<int>(v));
  return arr;
}

LabeledPost labeled_post_from_json(const json& j) {
  LabeledPost lp;
  lp.post = post_from_json(j);
  auto it = j.find("labels");
  if (it == j.end()) throw DataError("missing field \"labels\"");
  lp.labels = labels_from_json(*it);
  return lp;
}

json to_json(const Post& post) {
  json j;
  j["id"] = post.id;
  j["text"] = post.text;
  if (post.source) j["source"] = *post.source;
  if (!post.meta.empty()) j["meta"] = post.meta;
  return j;
}

json to_json(const LabeledPost& post) {
  json j = to_json(post.post);
  j["labels"] = labels_to_json(post.labels);
  return j;
}

std::vector<Post> read_posts(std::istream& in) { return read_records<Post>(in, post_from_json); }

std::vector<LabeledPost> read_labeled_posts(std::istream& in) {
  return read_records<LabeledPost>(in, labeled_post_from_json);
}

std::vector<Post> load_posts(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_posts(in);
}

std::vector<LabeledPost> load_labeled_posts(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_labeled_posts(in);
}

void write_posts(std::ostream& out, const std::vector<Post>& posts) {
  for (const auto& p : posts) write_jsonl_line(out, to_json(p));
}

void write_labeled_posts(std::ostream& out, const std::vector<LabeledPost>& posts) {
  for (const auto& p : posts) write_jsonl_line(out, to_json(p));
}

// ---------------------------------------------------------------------------
// Preprocessing

std::string combine_title_and_text(std::string_view title, std::string_view text) {
  std::string out;
  if (!blank(title)) out.append(title);
  if (!blank(text)) {
    if (!out.empty()) out.push_back(' ');
    out.append(text);
  }
  return out;
}

int binarize_rating(int rating, int threshold) {
  if (rating < 1 || rating > 10) throw DataError("rating " + std::to_string(rating) + " outside 1..10");
  return rating >= threshold ? 1 : 0;
}

EmotionMapping::EmotionMapping(std::map<std::string, Emotion> pairs) : pairs_(std::move(pairs)) {
  std::map<Emotion, std::string> targets;
  for (const auto& [name, label] : pairs_) {
    auto [it, inserted] = targets.emplace(label, name);
    if (!inserted) {
      throw ConfigError("emotion mapping is not injective: \"" + it->second + "\" and \"" + name +
                        "\" both map to " + std::string(emotion_name(label)));
    }
  }
}

const EmotionMapping& EmotionMapping::ieso_to_semeval() {
  // IESO records the emotion as "afraid"; the SemEval label is "fear".
  static const EmotionMapping mapping({
      {"angry", Emotion::kAnger},
      {"excited", Emotion::kAnticipation},
      {"disgusted", Emotion::kDisgust},
      {"afraid", Emotion::kFear},
      {"happy", Emotion::kJoy},
      {"hopeful", Emotion::kOptimism},
      {"despaired", Emotion::kPessimism},
      {"sad", Emotion::kSadness},
      {"surprised", Emotion::kSurprise},
  });
  return mapping;
}

std::optional<Emotion> EmotionMapping::map(std::string_view name) const {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  auto it = pairs_.find(key);
  if (it == pairs_.end()) return std::nullopt;
  return it->second;
}

std::optional<Emotion> map_emotion(std::string_view name, const EmotionMapping& mapping) {
  return mapping.map(name);
}

EmotionVector labels_from_ratings(const std::map<std::string, int>& ratings, const EmotionMapping& mapping,
                                  int threshold) {
  EmotionVector labels;
  for (const auto& [name, rating] : ratings) {
    int bit = binarize_rating(rating, threshold);
    if (auto label = mapping.map(name); label && bit == 1) labels.set(*label, 1.0);
  }
  return labels;
}

LengthDecision enforce_max_length(const TokenizedPost& tp, std::size_t max_tokens) {
  return tp.size() > max_tokens ? LengthDecision::kDrop : LengthDecision::kKeep;
}

IngestResult ingest(std::istream& in, const IngestOptions& options, const EmotionMapping& mapping,
                    const Stopwords& stopwords) {
  if (options.max_tokens < 1) throw ConfigError("max_tokens must be at least 1");
  IngestResult result;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_jsonl(in, [&](std::size_t line, const json& j) {
    if (!j.is_object()) throw DataError("record is not a JSON object");
    json body = j;
    std::string title;
    if (auto it = j.find("title"); it != j.end() && !it->is_null()) {
      if (!it->is_string()) throw DataError("field \"title\" must be a string");
      title = it->get<std::string>();
      body.erase("title");
    }
    if (auto it = body.find("text"); it != body.end() && it->is_string()) {
      body["text"] = combine_title_and_text(title, it->get<std::string>());
    } else if (!title.empty() && it == body.end()) {
      body["text"] = title;
    }
    LabeledPost lp;
    lp.post = post_from_json(body);
    if (options.schema == CorpusSchema::kLabeled) {
      bool has_labels = j.contains("labels");
      bool has_ratings = j.contains("ratings");
      if (has_labels == has_ratings) throw DataError("labeled records need exactly one of \"labels\" or \"ratings\"");
      if (has_labels) {
        lp.labels = labels_from_json(j["labels"]);
      } else {
        const json& r = j["ratings"];
        if (!r.is_object()) throw DataError("\"ratings\" must be an object");
        std::map<std::string, int> ratings;
        for (const auto& [k, v] : r.items()) {
          if (!v.is_number_integer()) throw DataError("rating for \"" + k + "\" must be an integer");
          ratings.emplace(k, v.get<int>());
        }
        lp.labels = labels_from_ratings(ratings, mapping, options.rating_threshold);
      }
    }
    auto [it, inserted] = seen.emplace(lp.post.id, line);
    if (!inserted) {
      throw DataError("duplicate id \"" + lp.post.id + "\" (first seen on line " + std::to_string(it->second) + ")");
    }
    ++result.stats.read;
    TokenizedPost tp = tokenize(lp.post.text, stopwords, lp.post.id);
    if (enforce_max_length(tp, options.max_tokens) == LengthDecision::kDrop) {
      ++result.stats.dropped_overlength;
      result.stats.dropped_ids.push_back(lp.post.id);
      return;
    }
    ++result.stats.kept;
    result.records.push_back(std::move(lp));
  });
  return result;
}

}  // namespace emoaug

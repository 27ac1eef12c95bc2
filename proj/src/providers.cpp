#include "emoaug/providers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "emoaug/error.hpp"
#include "emoaug/jsonl.hpp"
#include "emoaug/rng.hpp"

namespace emoaug {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Fill-mask

std::vector<std::string> fill(const MaskedSentence& ms, const FillMaskProvider& provider) {
  const std::size_t sentinels = ms.sentinel_count();
  if (sentinels == 0) throw DataError("masked sentence has no mask positions");
  if (sentinels != ms.removed.size()) throw DataError("masked sentence sentinels and removed tokens disagree");
  const auto& cap = provider.capability();
  if (ms.tokens.size() > cap.max_input_tokens) {
    throw ProviderError(cap.name + ": " + std::to_string(ms.tokens.size()) + " tokens exceed the limit of " +
                            std::to_string(cap.max_input_tokens),
                        false);
  }
  auto replacements = provider.predict(ms);
  if (replacements.size() != sentinels) {
    throw ProviderError(cap.name + ": returned " + std::to_string(replacements.size()) + " replacements for " +
                            std::to_string(sentinels) + " masks",
                        false);
  }
  std::vector<std::string> out = ms.tokens;
  std::size_t next = 0;
  for (auto& token : out) {
    if (token != kMaskSentinel) continue;
    const std::string& r = replacements[next++];
    if (r.empty() || r == kMaskSentinel) throw ProviderError(cap.name + ": invalid replacement token", false);
    token = r;
  }
  return out;
}

EchoFiller::EchoFiller() : capability_{"echo", kDefaultMaxTokens, false} {}

std::vector<std::string> EchoFiller::predict(const MaskedSentence& ms) const {
  std::vector<std::string> out;
  for (const auto& [i, token] : ms.removed) out.push_back(token);
  return out;
}

NearestNeighborFiller::NearestNeighborFiller(const EmbeddingTable& embeddings, const Stopwords& stopwords)
    : capability_{"nearest-neighbor", kDefaultMaxTokens, false}, embeddings_(embeddings) {
  norms_.resize(embeddings.size());
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    double ss = 0.0;
    for (double x : embeddings.row(i)) ss += x * x;
    norms_[i] = std::sqrt(ss);
    const auto& w = embeddings.words()[i];
    if (norms_[i] > 0.0 && !stopwords.contains(w) && !is_punctuation_token(w) && w != kMaskSentinel) {
      candidates_.push_back(i);
    }
  }
}

std::string NearestNeighborFiller::nearest(std::string_view word) const {
  auto query = embeddings_.lookup(word);
  if (!query) return std::string(word);
  double qn = 0.0;
  for (double x : *query) qn += x * x;
  qn = std::sqrt(qn);
  if (qn == 0.0) return std::string(word);
  double best = -2.0;
  std::size_t best_row = embeddings_.size();
  for (std::size_t row : candidates_) {
    if (embeddings_.words()[row] == word) continue;
    auto v = embeddings_.row(row);
    double dot = 0.0;
    for (std::size_t d = 0; d < v.size(); ++d) dot += (*query)[d] * v[d];
    double sim = dot / (qn * norms_[row]);
    if (sim > best) {
      best = sim;
      best_row = row;
    }
  }
  if (best_row == embeddings_.size()) return std::string(word);
  return embeddings_.words()[best_row];
}

std::vector<std::string> NearestNeighborFiller::predict(const MaskedSentence& ms) const {
  std::vector<std::string> out;
  for (const auto& [i, token] : ms.removed) out.push_back(nearest(token));
  return out;
}

// ---------------------------------------------------------------------------
// Translation

BackTranslation back_translate(std::string_view text, const TranslationProvider& forward,
                               const TranslationProvider& backward, std::uint64_t seed) {
  const auto& f = forward.capability();
  const auto& b = backward.capability();
  if (f.target_lang != b.source_lang) {
    throw ConfigError("back translation pivot mismatch: " + f.name + " produces " + f.target_lang + " but " + b.name +
                      " reads " + b.source_lang);
  }
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw DataError("cannot translate empty text");
  BackTranslation bt;
  bt.intermediate = forward.translate(text, seed);
  if (bt.intermediate.empty()) throw ProviderError(f.name + ": empty translation", false);
  bt.output = backward.translate(bt.intermediate, seed);
  if (bt.output.empty()) throw ProviderError(b.name + ": empty translation", false);
  return bt;
}

IdentityTranslator::IdentityTranslator(std::string source_lang, std::string target_lang)
    : capability_{"identity", std::move(source_lang), std::move(target_lang), false, false} {}

std::string IdentityTranslator::translate(std::string_view text, std::uint64_t) const { return std::string(text); }

ReverseWordsTranslator::ReverseWordsTranslator(std::string source_lang, std::string target_lang)
    : capability_{"reverse-words", std::move(source_lang), std::move(target_lang), false, false} {}

std::string ReverseWordsTranslator::translate(std::string_view text, std::uint64_t) const {
  std::istringstream in{std::string(text)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(std::move(w));
  std::string out;
  for (auto it = words.rbegin(); it != words.rend(); ++it) {
    if (!out.empty()) out.push_back(' ');
    out += *it;
  }
  return out;
}

SubstitutionTranslator::SubstitutionTranslator(std::string source_lang, std::string target_lang, Table words,
                                               Table sentences)
    : capability_{"substitution", std::move(source_lang), std::move(target_lang), false, false},
      words_(std::move(words)),
      sentences_(std::move(sentences)) {
  for (const auto* table : {&words_, &sentences_}) {
    for (const auto& [src, alts] : *table) {
      if (alts.empty()) throw ConfigError("substitution entry \"" + src + "\" has no alternatives");
      if (alts.size() > 1) capability_.supports_sampling = true;
    }
  }
}

SubstitutionTranslator SubstitutionTranslator::load(const std::filesystem::path& path, std::string source_lang,
                                                    std::string target_lang) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open translation table " + path.string());
  Table words, sentences;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected a tab");
    std::string src = normalize_text(line.substr(0, tab));
    std::vector<std::string> alts;
    std::istringstream rest(line.substr(tab + 1));
    for (std::string alt; std::getline(rest, alt, '|');) {
      if (!alt.empty()) alts.push_back(alt);
    }
    if (src.empty() || alts.empty()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty entry");
    }
    (src.find(' ') == std::string::npos ? words : sentences)[src] = std::move(alts);
  }
  return SubstitutionTranslator(std::move(source_lang), std::move(target_lang), std::move(words),
                                std::move(sentences));
}

const std::string& SubstitutionTranslator::pick(const std::vector<std::string>& alternatives, std::uint64_t seed,
                                                std::size_t position) const {
  if (seed == 0 || alternatives.size() == 1) return alternatives.front();
  Rng rng(splitmix64(seed ^ (position + 1)));
  return alternatives[rng.below(alternatives.size())];
}

std::string SubstitutionTranslator::translate(std::string_view text, std::uint64_t seed) const {
  const std::string normalized = normalize_text(text);
  if (auto it = sentences_.find(normalized); it != sentences_.end()) return pick(it->second, seed, 0);
  std::vector<std::string> out;
  const auto tokens = split_tokens(normalized);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = words_.find(tokens[i]);
    out.push_back(it == words_.end() ? tokens[i] : pick(it->second, seed, i + 1));
  }
  return detokenize(out);
}

// ---------------------------------------------------------------------------
// Classification

double hard_sigmoid(double x) { return std::max(0.0, std::min(1.0, (x + 1.0) / 2.0)); }

std::vector<std::string> canonical_label_order() {
  return std::vector<std::string>(kEmotionNames.begin(), kEmotionNames.end());
}

PredictionScores make_prediction(std::string post_id, const RawScores& raw, double threshold) {
  PredictionScores p;
  p.post_id = std::move(post_id);
  p.raw = raw;
  std::array<double, kNumEmotions> act{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (std::isnan(raw[i])) throw ProviderError("classifier returned NaN for " + std::string(kEmotionNames[i]), false);
    act[i] = hard_sigmoid(raw[i]);
  }
  p.activated = EmotionVector(act);
  p.predicted = p.activated.binarized(threshold);
  return p;
}

PredictionScores classify(const Post& post, const ClassifierProvider& provider, double threshold) {
  if (post.text.find_first_not_of(" \t\r\n") == std::string::npos) throw DataError("cannot classify empty text");
  return make_prediction(post.id, provider.raw_scores(post.text), threshold);
}

json to_json(const PredictionScores& p) {
  json j;
  j["id"] = p.post_id;
  j["raw"] = p.raw;
  j["activated"] = p.activated.scores();
  j["predicted"] = labels_to_json(p.predicted);
  return j;
}

PredictionScores prediction_from_json(const json& j, double threshold) {
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) throw DataError("prediction record needs an id");
  const json& raw = j.value("raw", json());
  if (!raw.is_array() || raw.size() != kNumEmotions) throw DataError("\"raw\" must hold 11 numbers");
  RawScores scores{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    if (!raw[i].is_number()) throw DataError("\"raw\" must hold 11 numbers");
    scores[i] = raw[i].get<double>();
  }
  PredictionScores p = make_prediction(j["id"].get<std::string>(), scores, threshold);
  if (j.contains("activated")) {
    const json& act = j["activated"];
    for (std::size_t i = 0; i < kNumEmotions && act.is_array() && act.size() == kNumEmotions; ++i) {
      if (act[i].get<double>() != p.activated[i]) throw DataError("\"activated\" disagrees with hard_sigmoid(raw)");
    }
  }
  return p;
}

std::vector<PredictionScores> load_predictions(const std::filesystem::path& path, double threshold) {
  auto in = open_input(path);
  std::vector<PredictionScores> out;
  for_each_jsonl(in, [&](std::size_t, const json& j) { out.push_back(prediction_from_json(j, threshold)); });
  return out;
}

KeywordClassifier::KeywordClassifier(std::map<std::string, Emotion> keywords)
    : KeywordClassifier(std::move(keywords), Scoring{}) {}

KeywordClassifier::KeywordClassifier(std::map<std::string, Emotion> keywords, Scoring scoring)
    : capability_{"keyword", canonical_label_order(), false}, keywords_(std::move(keywords)), scoring_(scoring) {}

std::map<std::string, Emotion> KeywordClassifier::load_keywords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open keyword table " + path.string());
  std::map<std::string, Emotion> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    auto label = tab == std::string::npos ? std::nullopt : emotion_from_name(line.substr(tab + 1));
    if (!label) throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected \"keyword<TAB>emotion\"");
    out[line.substr(0, tab)] = *label;
  }
  return out;
}

RawScores KeywordClassifier::raw_scores(std::string_view text) const {
  std::array<std::size_t, kNumEmotions> hits{};
  for (const auto& token : split_tokens(text)) {
    if (auto it = keywords_.find(token); it != keywords_.end()) ++hits[static_cast<std::size_t>(it->second)];
  }
  RawScores raw{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    raw[i] = hits[i] == 0 ? scoring_.miss_score
                          : std::min(scoring_.hit_cap,
                                     scoring_.hit_score + scoring_.hit_step * static_cast<double>(hits[i] - 1));
  }
  return raw;
}

}  // namespace emoaug

#include "emoaug/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "emoaug/error.hpp"

namespace emoaug {

EmbeddingTable::EmbeddingTable(std::size_t dim, std::vector<std::string> words,
                               std::vector<std::vector<double>> rows)
    : dim_(dim) {
  if (dim == 0) throw DataError("embedding dimension must be positive");
  if (words.size() != rows.size()) throw DataError("embedding words and rows differ in count");
  if (words.empty()) throw DataError("no vectors");
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (rows[i].size() != dim) {
      throw DataError("vector for \"" + words[i] + "\" has " + std::to_string(rows[i].size()) +
                      " values, expected " + std::to_string(dim));
    }
    if (index_.contains(words[i])) {
      ++duplicates_;
      continue;
    }
    index_.emplace(words[i], words_.size());
    words_.push_back(std::move(words[i]));
    data_.insert(data_.end(), rows[i].begin(), rows[i].end());
  }
}

bool EmbeddingTable::contains(std::string_view word) const { return index_.contains(std::string(word)); }

std::optional<std::span<const double>> EmbeddingTable::lookup(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

std::span<const double> EmbeddingTable::row(std::size_t i) const {
  return std::span<const double>(data_).subspan(i * dim_, dim_);
}

EmbeddingTable read_embeddings(std::istream& in) {
  std::vector<std::string> words;
  std::vector<std::vector<double>> rows;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    std::vector<double> row;
    std::string value;
    while (fields >> value) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(value, &used));
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": bad number \"" + value + "\"");
      }
    }
    if (row.empty()) throw DataError("line " + std::to_string(line_no) + ": no vector values");
    if (dim == 0) dim = row.size();
    if (row.size() != dim) {
      throw DataError("line " + std::to_string(line_no) + ": vector has " + std::to_string(row.size()) +
                      " values, expected " + std::to_string(dim));
    }
    words.push_back(std::move(word));
    rows.push_back(std::move(row));
  }
  if (words.empty()) throw DataError("no vectors");
  return EmbeddingTable(dim, std::move(words), std::move(rows));
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings " + path.string());
  return read_embeddings(in);
}

namespace {

std::vector<std::string> split_row(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) {
    auto first = cell.find_first_not_of(" \t\r");
    auto last = cell.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? std::string() : cell.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace

std::vector<VadEntry> read_vad(std::istream& in, VadScale scale) {
  std::string header;
  if (!std::getline(in, header)) throw DataError("VAD lexicon is empty");
  const char sep = header.find('\t') != std::string::npos ? '\t' : ',';
  auto columns = split_row(header, sep);
  auto column = [&](std::string_view name) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      std::string c = columns[i];
      std::transform(c.begin(), c.end(), c.begin(), [](unsigned char ch) { return std::tolower(ch); });
      if (c == name) return i;
    }
    throw DataError("VAD header lacks a \"" + std::string(name) + "\" column");
  };
  const std::size_t word_col = column("word");
  const std::size_t v_col = column("valence");
  const std::size_t a_col = column("arousal");
  const std::size_t d_col = column("dominance");

  std::vector<VadEntry> entries;
  std::string line;
  std::size_t line_no = 1;
  bool above_one = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_row(line, sep);
    if (cells.size() < columns.size()) throw DataError("line " + std::to_string(line_no) + ": too few columns");
    VadEntry e;
    e.word = cells[word_col];
    try {
      e.valence = std::stod(cells[v_col]);
      e.arousal = std::stod(cells[a_col]);
      e.dominance = std::stod(cells[d_col]);
    } catch (const std::exception&) {
      throw DataError("line " + std::to_string(line_no) + ": bad score");
    }
    above_one = above_one || e.valence > 1.0 || e.arousal > 1.0 || e.dominance > 1.0;
    entries.push_back(std::move(e));
  }

  const bool nine_point = scale == VadScale::kOneToNine || (scale == VadScale::kAuto && above_one);
  for (auto& e : entries) {
    if (nine_point) {
      e.valence = (e.valence - 1.0) / 8.0;
      e.arousal = (e.arousal - 1.0) / 8.0;
      e.dominance = (e.dominance - 1.0) / 8.0;
    }
    for (double s : {e.valence, e.arousal, e.dominance}) {
      if (!(s >= 0.0 && s <= 1.0)) throw DataError("VAD score for \"" + e.word + "\" outside the expected scale");
    }
  }
  return entries;
}

std::vector<VadEntry> load_vad(const std::filesystem::path& path, VadScale scale) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open VAD lexicon " + path.string());
  return read_vad(in, scale);
}

SneLexicon::SneLexicon(std::vector<std::string> words, double valence_max, double arousal_min)
    : words_(std::move(words)), valence_max_(valence_max), arousal_min_(arousal_min) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  if (words_.empty()) throw DataError("SNE lexicon is empty");
}

bool SneLexicon::contains(std::string_view word) const {
  return std::binary_search(words_.begin(), words_.end(), word);
}

SneLexicon build_sne_lexicon(std::span<const VadEntry> vad, double valence_max, double arousal_min) {
  if (!(valence_max >= 0.0 && valence_max <= 1.0 && arousal_min >= 0.0 && arousal_min <= 1.0)) {
    throw ConfigError("SNE thresholds must lie in [0,1]");
  }
  std::vector<std::string> words;
  for (const auto& e : vad) {
    if (e.valence <= valence_max && e.arousal >= arousal_min) words.push_back(e.word);
  }
  if (words.empty()) {
    throw DataError("no word has valence <= " + std::to_string(valence_max) + " and arousal >= " +
                    std::to_string(arousal_min) + "; relax the thresholds");
  }
  return SneLexicon(std::move(words), valence_max, arousal_min);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DataError("cosine of vectors with different lengths");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw DataError("cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

double sne_affinity(std::string_view word, const EmbeddingTable& embeddings, const SneLexicon& sne) {
  auto w = embeddings.lookup(word);
  if (!w) return 0.0;
  double best = 0.0;
  for (const auto& s : sne.words()) {
    auto sv = embeddings.lookup(s);
    if (!sv) continue;
    try {
      best = std::max(best, cosine(*w, *sv));
    } catch (const DataError&) {
      // zero vectors carry no similarity
    }
  }
  return best;
}

AffinityScorer::AffinityScorer(const EmbeddingTable& embeddings, const SneLexicon& sne)
    : embeddings_(embeddings), sne_(sne) {}

double AffinityScorer::affinity(std::string_view word) const { return sne_affinity(word, embeddings_, sne_); }

std::vector<double> AffinityScorer::score(const std::vector<std::string>& tokens,
                                          const std::vector<bool>& is_functional) const {
  std::vector<double> out(tokens.size(), 0.0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i < is_functional.size() && is_functional[i]) continue;
    out[i] = affinity(tokens[i]);
  }
  return out;
}

}  // namespace emoaug

#include "emoaug/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <utility>

#include "emoaug/error.hpp"

namespace emoaug {

namespace {

// UTF-8 sequences folded to ASCII before splitting.
constexpr std::array<std::pair<std::string_view, std::string_view>, 9> kFolds = {{
    {"\xE2\x80\x98", "'"},
    {"\xE2\x80\x99", "'"},
    {"\xE2\x80\x9C", "\""},
    {"\xE2\x80\x9D", "\""},
    {"\xE2\x80\x93", "-"},
    {"\xE2\x80\x94", "-"},
    {"\xE2\x80\xA6", "..."},
    {"\xC2\xA0", " "},
    {"\xE2\x80\x8B", " "},
}};

std::string fold_unicode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool folded = false;
    if (static_cast<unsigned char>(text[i]) >= 0x80) {
      for (const auto& [from, to] : kFolds) {
        if (text.substr(i, from.size()) == from) {
          out.append(to);
          i += from.size();
          folded = true;
          break;
        }
      }
    }
    if (!folded) out.push_back(text[i++]);
  }
  return out;
}

bool is_space(unsigned char c) { return c < 0x20 || c == ' ' || c == 0x7F; }
bool is_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }
bool is_word(unsigned char c) { return !is_space(c) && !is_punct(c); }

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c); });
  return out;
}

}  // namespace

Stopwords Stopwords::parse(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash == 0) continue;
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    words.insert(lowercase(std::string_view(line).substr(first, last - first + 1)));
  }
  return Stopwords(std::move(words));
}

Stopwords Stopwords::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file " + path);
  return parse(in);
}

std::size_t TokenizedPost::content_count() const {
  return static_cast<std::size_t>(std::count(is_functional.begin(), is_functional.end(), false));
}

bool is_punctuation_token(std::string_view token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](unsigned char c) { return is_punct(c); });
}

std::vector<std::string> split_tokens(std::string_view text) {
  const std::string s = fold_unicode(text);
  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) tokens.push_back(std::exchange(word, {}));
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (is_space(c)) {
      flush();
    } else if (is_punct(c)) {
      bool inner_apostrophe = c == '\'' && !word.empty() && i + 1 < s.size() &&
                              is_word(static_cast<unsigned char>(s[i + 1]));
      if (inner_apostrophe) {
        word.push_back('\'');
      } else {
        flush();
        tokens.emplace_back(1, static_cast<char>(c));
      }
    } else {
      word.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    }
  }
  flush();
  return tokens;
}

TokenizedPost tokenize(std::string_view text, const Stopwords& stopwords, std::string post_id) {
  TokenizedPost tp;
  tp.post_id = std::move(post_id);
  tp.tokens = split_tokens(text);
  if (tp.tokens.empty()) throw DataError("text is empty after normalization");
  tp.is_functional.reserve(tp.tokens.size());
  for (const auto& t : tp.tokens) tp.is_functional.push_back(is_punctuation_token(t) || stopwords.contains(t));
  return tp;
}

std::string normalize_text(std::string_view text) {
  std::string out;
  for (const auto& t : split_tokens(text)) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::string detokenize(const std::vector<std::string>& tokens) {
  static constexpr std::string_view kAttached = ".,!?;:";
  std::string out;
  for (const auto& t : tokens) {
    bool attach = t.size() == 1 && kAttached.find(t[0]) != std::string_view::npos;
    if (!out.empty() && !attach) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace emoaug

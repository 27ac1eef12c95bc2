#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace emoaug {

// Function-word list. Tokens in the list, and punctuation tokens, are
// "functional" and never chosen as mask anchors.
class Stopwords {
 public:
  Stopwords() = default;
  explicit Stopwords(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  // One token per line; '#' starts a comment; blank lines ignored. Entries are
  // lowercased.
  static Stopwords parse(std::istream& in);
  static Stopwords load(const std::string& path);
  // The list shipped in data/stopwords.txt, compiled in.
  static const Stopwords& builtin();

  bool contains(std::string_view token) const { return words_.contains(std::string(token)); }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct TokenizedPost {
  std::string post_id;
  std::vector<std::string> tokens;
  std::vector<bool> is_functional;

  std::size_t size() const { return tokens.size(); }
  std::size_t content_count() const;
};

bool is_punctuation_token(std::string_view token);

// Lowercases ASCII, folds common Unicode punctuation/space variants to ASCII,
// splits on whitespace and detaches each punctuation character into its own
// token. An apostrophe between two word characters stays inside the word
// ("don't"). Throws DataError if nothing is left.
std::vector<std::string> split_tokens(std::string_view text);

TokenizedPost tokenize(std::string_view text, const Stopwords& stopwords = Stopwords::builtin(),
                       std::string post_id = {});

// Tokens joined by single spaces. tokenize(normalize_text(t)) == tokenize(t).
std::string normalize_text(std::string_view text);

// Space-joins tokens, attaching . , ! ? ; : to the preceding token.
std::string detokenize(const std::vector<std::string>& tokens);

}  // namespace emoaug

#include <random>
#include <sstream>

#include "doctest.h"
#include "emoaug/error.hpp"
#include "emoaug/lexicon.hpp"
#include "support/oracles.hpp"

using namespace emoaug;

namespace {

EmbeddingTable table_from(const std::string& text) {
  std::istringstream in(text);
  return read_embeddings(in);
}

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("embeddings load") {
  auto t = table_from("cat 1 0 0\ndog 0 1 0.5\n");
  CHECK(t.dim() == 3);
  CHECK(t.size() == 2);
  CHECK(vec(*t.lookup("dog")) == std::vector<double>{0, 1, 0.5});
  CHECK_FALSE(t.lookup("bird").has_value());
}

TEST_CASE("embedding errors") {
  CHECK_THROWS_WITH_AS(table_from("a 1 2\nb 1 2 3\n"), doctest::Contains("line 2"), DataError);
  CHECK_THROWS_WITH_AS(table_from(""), doctest::Contains("no vectors"), DataError);
  CHECK_THROWS_AS(table_from("a 1 x\n"), DataError);
}

TEST_CASE("duplicate words keep the first row") {
  auto t = table_from("a 1 0\nb 0 1\na 5 5\n");
  CHECK(t.size() == 2);
  CHECK(t.duplicates_ignored() == 1);
  CHECK(vec(*t.lookup("a")) == std::vector<double>{1, 0});
}

TEST_CASE("VAD files") {
  std::istringstream unit("word\tvalence\tarousal\tdominance\nrage\t0.1\t0.9\t0.5\ncalm\t0.8\t0.1\t0.6\n");
  auto entries = read_vad(unit);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].word == "rage");
  CHECK(entries[0].arousal == doctest::Approx(0.9));

  std::istringstream nine("arousal,word,valence,dominance\n9,rage,1,5\n");
  auto scaled = read_vad(nine);
  REQUIRE(scaled.size() == 1);
  CHECK(scaled[0].valence == 0.0);
  CHECK(scaled[0].arousal == 1.0);
  CHECK(scaled[0].dominance == 0.5);

  std::istringstream bad("word\tvalence\tarousal\tdominance\nx\t1.5\t0.2\t0.2\n");
  CHECK_THROWS_AS(read_vad(bad, VadScale::kUnit), DataError);
}

TEST_CASE("SNE lexicon") {
  std::vector<VadEntry> vad = {{"rage", 0.10, 0.90, 0.5}, {"calm", 0.80, 0.10, 0.5}};
  auto sne = build_sne_lexicon(vad, 0.3, 0.7);
  CHECK(sne.words() == std::vector<std::string>{"rage"});

  auto all = build_sne_lexicon(vad, 1.0, 0.0);
  CHECK(all.words() == std::vector<std::string>{"calm", "rage"});

  std::vector<VadEntry> generic = {{"table", 0.5, 0.4, 0.5}, {"walk", 0.6, 0.5, 0.5}};
  CHECK_THROWS_WITH_AS(build_sne_lexicon(generic, 0.0, 1.0), doctest::Contains("relax"), DataError);

  for (const auto& w : sne.words()) {
    auto it = std::find_if(vad.begin(), vad.end(), [&](const VadEntry& e) { return e.word == w; });
    CHECK(it->valence <= sne.valence_max());
    CHECK(it->arousal >= sne.arousal_min());
  }
}

TEST_CASE("cosine") {
  std::vector<double> u{1, 2, 2};
  CHECK(cosine(u, u) == doctest::Approx(1.0));
  std::vector<double> x{1, 0}, y{0, 1}, nx{-1, 0};
  CHECK(cosine(x, y) == 0.0);
  CHECK(cosine(x, nx) == doctest::Approx(-1.0));
  std::vector<double> zero{0, 0};
  CHECK_THROWS_AS(cosine(x, zero), DataError);
  CHECK_THROWS_AS(cosine(x, u), DataError);

  std::mt19937_64 gen(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(8), b(8), scaled(8);
    for (int i = 0; i < 8; ++i) {
      a[i] = nd(gen);
      b[i] = nd(gen);
    }
    double k = 0.1 + std::abs(nd(gen)) * 10;
    for (int i = 0; i < 8; ++i) scaled[i] = a[i] * k;
    CHECK(cosine(a, b) == doctest::Approx(cosine(b, a)).epsilon(1e-12));
    CHECK(cosine(scaled, b) == doctest::Approx(cosine(a, b)).epsilon(1e-9));
    CHECK(cosine(a, b) == doctest::Approx(oracle::scalar_cosine(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("affinity on a hand-built 2-d table") {
  // grim = (3,4): cos to rage (1,0) = 0.6, to fear (0,1) = 0.8; max 0.8.
  auto t = table_from("grim 3 4\nrage 1 0\nfear 0 1\nsunny -1 -1\n");
  SneLexicon sne({"rage", "fear", "absent"}, 0.3, 0.7);
  CHECK(sne_affinity("grim", t, sne) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(sne_affinity("rage", t, sne) == doctest::Approx(1.0));
  CHECK(sne_affinity("nowhere", t, sne) == 0.0);
  CHECK(sne_affinity("sunny", t, sne) == 0.0);  // negative cosines clamp

  SneLexicon missing({"absent"}, 0.3, 0.7);
  CHECK(sne_affinity("grim", t, missing) == 0.0);

  AffinityScorer scorer(t, sne);
  auto scores = scorer.score({"grim", "the", "rage"}, {false, true, false});
  CHECK(scores[0] == doctest::Approx(0.8));
  CHECK(scores[1] == 0.0);
  CHECK(scores[2] == doctest::Approx(1.0));
}

TEST_CASE("affinity matches a brute-force maximum on the mock fixtures") {
  const std::string dir = std::string(EMOAUG_SOURCE_DIR) + "/data/mock/";
  auto emb = load_embeddings(dir + "embeddings.txt");
  auto vad = load_vad(dir + "vad.tsv");
  auto sne = build_sne_lexicon(vad);
  for (const auto& word : emb.words()) {
    double best = 0.0;
    auto w = vec(*emb.lookup(word));
    for (const auto& s : sne.words()) {
      auto v = emb.lookup(s);
      if (!v) continue;
      best = std::max(best, oracle::scalar_cosine(w, vec(*v)));
    }
    CHECK(sne_affinity(word, emb, sne) == doctest::Approx(best).epsilon(1e-9));
    if (sne.contains(word)) CHECK(sne_affinity(word, emb, sne) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

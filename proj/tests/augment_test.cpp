#include <set>
#include <sstream>

#include "doctest.h"
#include "emoaug/augment.hpp"
#include "emoaug/error.hpp"
#include "emoaug/jsonl.hpp"
#include "support/nn_oracle.hpp"

using namespace emoaug;

namespace {

const std::string kMockDir = std::string(EMOAUG_SOURCE_DIR) + "/data/mock/";

struct MockWorld {
  EmbeddingTable emb = load_embeddings(kMockDir + "embeddings.txt");
  SneLexicon sne = build_sne_lexicon(load_vad(kMockDir + "vad.tsv"));
  AffinityScorer scorer{emb, sne};
  NearestNeighborFiller nn{emb, Stopwords::builtin()};
  EchoFiller echo;
  SubstitutionTranslator en_fr = SubstitutionTranslator::load(kMockDir + "en_fr.tsv", "en", "fr");
  SubstitutionTranslator fr_en = SubstitutionTranslator::load(kMockDir + "fr_en.tsv", "fr", "en");
  IdentityTranslator id_f{"en", "fr"}, id_b{"fr", "en"};

  AugmentProviders masking(const FillMaskProvider& f) const { return {&f, nullptr, nullptr, &scorer}; }
  AugmentProviders bt() const { return {nullptr, &en_fr, &fr_en, nullptr}; }
};

const MockWorld& world() {
  static const MockWorld w;
  return w;
}

std::vector<LabeledPost> train_set(std::size_t n) {
  const char* templates[] = {
      "I am so angry about work today.", "My dog makes me happy and glad.", "I feel sad and miserable at home.",
      "The exam left me scared and nervous.", "Honestly I trust my friend.", "Such a hopeful morning with coffee."};
  std::vector<LabeledPost> out;
  for (std::size_t i = 0; i < n; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "s%03zu", i);
    LabeledPost lp;
    lp.post = Post{id, templates[i % 6], std::nullopt, {}};
    lp.labels = EmotionVector::from_labels({static_cast<Emotion>(i % kNumEmotions)});
    out.push_back(lp);
  }
  return out;
}

std::string serialize(const AugmentResult& r) {
  std::ostringstream out;
  write_synthetic(out, r.examples);
  return out.str();
}

}  // namespace

TEST_CASE("method names") {
  CHECK(parse_augment_method("bt") == AugmentMethod::kBackTranslation);
  CHECK(to_string(AugmentMethod::kMaskSpan) == "mask_span");
  CHECK_THROWS_AS(parse_augment_method("eda"), ConfigError);
}

TEST_CASE("cardinality and label preservation") {
  auto train = train_set(10);
  for (auto method : {AugmentMethod::kMaskToken, AugmentMethod::kMaskSpan, AugmentMethod::kBackTranslation}) {
    for (std::size_t s : {1u, 3u, 5u}) {
      AugmentationConfig cfg;
      cfg.method = method;
      cfg.folds = s;
      cfg.global_seed = 17;
      auto providers = method == AugmentMethod::kBackTranslation ? world().bt() : world().masking(world().nn);
      auto r = augment_corpus(train, cfg, providers);
      CHECK(r.target == 10 * s);
      CHECK(r.examples.size() == 10 * s);
      CHECK_FALSE(r.aborted);
      CHECK(r.shortfalls.empty());
      for (const auto& ex : r.examples) {
        auto src = std::find_if(train.begin(), train.end(), [&](const LabeledPost& lp) { return lp.post.id == ex.source_id; });
        REQUIRE(src != train.end());
        CHECK(ex.labels == src->labels);
        CHECK(ex.method == method);
        CHECK_FALSE(ex.text.empty());
        CHECK(verify_provenance(ex, *src, cfg, providers));
      }
      CHECK(std::is_sorted(r.examples.begin(), r.examples.end(), [](const auto& a, const auto& b) {
        return std::tie(a.source_id, a.fold) < std::tie(b.source_id, b.fold);
      }));
    }
  }
}

TEST_CASE("empty training set and bad configs") {
  AugmentationConfig cfg;
  CHECK_THROWS_AS(augment_corpus({}, cfg, world().masking(world().nn)), DataError);
  auto train = train_set(2);
  CHECK_THROWS_AS(augment_corpus(train, cfg, AugmentProviders{}), ConfigError);
  cfg.mask_rate = 0.0;
  CHECK_THROWS_AS(augment_corpus(train, cfg, world().masking(world().nn)), ConfigError);

  AugmentationConfig bt;
  bt.method = AugmentMethod::kBackTranslation;
  bt.folds = 3;
  AugmentProviders identity{nullptr, &world().id_f, &world().id_b, nullptr};
  CHECK_THROWS_WITH_AS(augment_corpus(train, bt, identity), doctest::Contains("sampling"), ConfigError);
  AugmentProviders mismatch{nullptr, &world().id_f, &world().id_f, nullptr};
  bt.folds = 1;
  CHECK_THROWS_AS(augment_corpus(train, bt, mismatch), ConfigError);
}

TEST_CASE("identity translators: every example degenerate, output text equals input") {
  auto train = train_set(12);
  AugmentationConfig cfg;
  cfg.method = AugmentMethod::kBackTranslation;
  AugmentProviders identity{nullptr, &world().id_f, &world().id_b, nullptr};
  auto r = augment_corpus(train, cfg, identity);
  REQUIRE(r.examples.size() == train.size());
  CHECK(r.degenerate == train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    CHECK(r.examples[i].degenerate);
    CHECK(r.examples[i].attempts == 1);
    CHECK(r.examples[i].text == train[i].post.text);
  }

  cfg.drop_degenerate = true;
  auto dropped = augment_corpus(train, cfg, identity);
  CHECK(dropped.examples.empty());
  CHECK(dropped.shortfalls.size() == train.size());
  CHECK(dropped.shortfalls[0].reason.empty());
}

TEST_CASE("echo filler exercises the regeneration path") {
  auto train = train_set(3);
  AugmentationConfig cfg;
  cfg.max_regen_attempts = 3;
  auto ex = augment_one(train[0], 1, cfg, world().masking(world().echo));
  CHECK(ex.text == detokenize(tokenize(train[0].post.text).tokens));
  CHECK(ex.degenerate);
  CHECK(ex.attempts == 4);
}

TEST_CASE("mask_span with nearest-neighbour fill on a six-token post") {
  LabeledPost src{Post{"six", "furious boss hate work dog coffee", std::nullopt, {}},
                  EmotionVector::from_labels({Emotion::kAnger})};
  AugmentationConfig cfg;
  cfg.method = AugmentMethod::kMaskSpan;
  cfg.global_seed = 5;
  const auto& w = world();
  const auto original = tokenize(src.post.text).tokens;
  REQUIRE(original.size() == 6);
  for (std::size_t fold = 1; fold <= 3; ++fold) {
    cfg.folds = 3;
    auto ex = augment_one(src, fold, cfg, w.masking(w.nn));
    REQUIRE(ex.mask.has_value());
    const auto& idx = ex.mask->plan.mask_indices;
    REQUIRE(idx.size() == 5);
    for (std::size_t i = 1; i < 5; ++i) CHECK(idx[i] == idx[i - 1] + 1);
    auto expected = original;
    for (auto i : idx) expected[i] = oracle::nearest_neighbor(w.emb, Stopwords::builtin(), original[i]);
    CHECK(ex.text == detokenize(expected));
    CHECK_FALSE(ex.degenerate);
  }
}

TEST_CASE("bt with five-entry substitution doubles") {
  SubstitutionTranslator f("en", "fr",
                           {{"i", {"je"}}, {"am", {"suis"}}, {"very", {"tr\xC3\xA8s"}}, {"sad", {"triste"}},
                            {"today", {"aujourd'hui"}}});
  SubstitutionTranslator b("fr", "en",
                           {{"je", {"i"}}, {"suis", {"am"}}, {"tr\xC3\xA8s", {"quite"}}, {"triste", {"unhappy"}},
                            {"aujourd'hui", {"today"}}});
  LabeledPost src{Post{"x", "I am very sad today.", std::nullopt, {}}, EmotionVector::from_labels({Emotion::kSadness})};
  AugmentationConfig cfg;
  cfg.method = AugmentMethod::kBackTranslation;
  AugmentProviders p{nullptr, &f, &b, nullptr};
  auto ex = augment_one(src, 1, cfg, p);
  CHECK(ex.text == "i am quite unhappy today.");
  REQUIRE(ex.translation.has_value());
  CHECK(ex.translation->intermediate == "je suis tr\xC3\xA8s triste aujourd'hui.");
  CHECK(ex.translation->seed == 0);
  CHECK(ex.labels == src.labels);
  CHECK(verify_provenance(ex, src, cfg, p));
}

TEST_CASE("tampered provenance fails verification") {
  auto train = train_set(4);
  AugmentationConfig cfg;
  cfg.global_seed = 3;
  auto p = world().masking(world().nn);
  auto r = augment_corpus(train, cfg, p);
  auto ex = r.examples[0];
  const auto& src = train[0];
  CHECK(verify_provenance(ex, src, cfg, p));
  auto wrong_seed = ex;
  wrong_seed.mask->plan.rng_seed ^= 1;
  wrong_seed.mask->plan.mask_indices = {0};
  CHECK_FALSE(verify_provenance(wrong_seed, src, cfg, p));
  auto wrong_text = ex;
  wrong_text.text += " extra";
  CHECK_FALSE(verify_provenance(wrong_text, src, cfg, p));
  auto wrong_labels = ex;
  wrong_labels.labels = EmotionVector::from_labels({Emotion::kTrust, Emotion::kLove});
  CHECK_FALSE(verify_provenance(wrong_labels, src, cfg, p));
}

TEST_CASE("output is independent of the worker count") {
  auto train = train_set(40);
  for (auto method : {AugmentMethod::kMaskToken, AugmentMethod::kMaskSpan, AugmentMethod::kBackTranslation}) {
    AugmentationConfig cfg;
    cfg.method = method;
    cfg.folds = 3;
    cfg.global_seed = 99;
    auto p = method == AugmentMethod::kBackTranslation ? world().bt() : world().masking(world().nn);
    cfg.workers = 1;
    auto serial = serialize(augment_corpus(train, cfg, p));
    cfg.workers = 4;
    CHECK(serialize(augment_corpus(train, cfg, p)) == serial);
    CHECK(serialize(augment_corpus(train, cfg, p)) == serial);
  }
}

TEST_CASE("five folds extend three folds for token masking") {
  auto train = train_set(8);
  AugmentationConfig cfg;
  cfg.global_seed = 21;
  cfg.folds = 3;
  auto three = augment_corpus(train, cfg, world().masking(world().nn));
  cfg.folds = 5;
  auto five = augment_corpus(train, cfg, world().masking(world().nn));
  for (const auto& ex : three.examples) {
    auto it = std::find_if(five.examples.begin(), five.examples.end(), [&](const SyntheticExample& e) {
      return e.source_id == ex.source_id && e.fold == ex.fold;
    });
    REQUIRE(it != five.examples.end());
    CHECK(nlohmann::json(to_json(*it)) == to_json(ex));
  }
}

TEST_CASE("folds draw distinct seeds") {
  auto train = train_set(1);
  AugmentationConfig cfg;
  cfg.folds = 5;
  cfg.global_seed = 8;
  auto r = augment_corpus(train, cfg, world().masking(world().nn));
  std::set<std::uint64_t> seeds;
  for (const auto& ex : r.examples) seeds.insert(ex.mask->plan.rng_seed);
  CHECK(seeds.size() == 5);
}

TEST_CASE("unmaskable posts become shortfalls") {
  auto train = train_set(3);
  train[1].post.text = "I am.";
  AugmentationConfig cfg;
  cfg.folds = 2;
  auto r = augment_corpus(train, cfg, world().masking(world().nn));
  CHECK(r.examples.size() == 4);
  REQUIRE(r.shortfalls.size() == 1);
  CHECK(r.shortfalls[0].source_id == "s001");
  CHECK(r.shortfalls[0].produced == 0);
  CHECK(r.shortfalls[0].reason.find("nothing maskable") != std::string::npos);
}

namespace {

class FailingTranslator final : public TranslationProvider {
 public:
  explicit FailingTranslator(std::string fail_on) : fail_on_(std::move(fail_on)) {}
  const TranslationCapability& capability() const override { return cap_; }
  std::string translate(std::string_view text, std::uint64_t) const override {
    if (text.find(fail_on_) != std::string_view::npos) throw ProviderError("model crashed", false);
    return std::string(text);
  }

 private:
  TranslationCapability cap_{"failing", "en", "fr", false, true};
  std::string fail_on_;
};

}  // namespace

TEST_CASE("provider failure aborts with partial output") {
  auto train = train_set(12);
  FailingTranslator f("trust");
  AugmentationConfig cfg;
  cfg.method = AugmentMethod::kBackTranslation;
  auto r = augment_corpus(train, cfg, AugmentProviders{nullptr, &f, &world().id_b, nullptr});
  CHECK(r.aborted);
  CHECK(r.abort_reason.find("s004") != std::string::npos);
  CHECK(r.examples.size() < train.size());
}

TEST_CASE("synthetic JSON round trip") {
  auto train = train_set(3);
  AugmentationConfig cfg;
  cfg.folds = 2;
  auto r = augment_corpus(train, cfg, world().masking(world().nn));
  std::ostringstream out;
  write_synthetic(out, r.examples);
  std::istringstream in(out.str());
  std::ostringstream again;
  std::string line;
  while (std::getline(in, line)) write_jsonl_line(again, to_json(synthetic_from_json(nlohmann::json::parse(line))));
  CHECK(again.str() == out.str());
}

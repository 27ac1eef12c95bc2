#include "doctest.h"
#include "emoaug/error.hpp"
#include "emoaug/run_config.hpp"
#include "support/temp_dir.hpp"

using namespace emoaug;
using nlohmann::json;

TEST_CASE("defaults follow the module defaults") {
  RunConfig c;
  CHECK(c.rating_threshold == 4);
  CHECK(c.max_tokens == 512);
  CHECK(c.low == 0.3);
  CHECK(c.high == 0.8);
  CHECK(c.mode == WindowMode::kAny);
  CHECK(c.split_total == 1000);
  CHECK(c.split_train == 700);
  CHECK(c.split_valid == 300);
  CHECK(c.mask_rate == 0.15);
  CHECK(c.span_len == 5);
  CHECK(c.epsilon == 0.01);
  CHECK(c.max_retries == 3);
  CHECK(c.decision_threshold == 0.5);
  CHECK(c.pivot_lang == "fr");
  CHECK_FALSE(c.use_remote());
  c.endpoint = "http://localhost:1";
  CHECK(c.use_remote());
  c.mock = true;
  CHECK_FALSE(c.use_remote());
}

TEST_CASE("serialization round trip") {
  RunConfig c = RunConfig::with_default_paths();
  c.seed = 77;
  c.low = 0.25;
  c.mode = WindowMode::kAll;
  c.method = AugmentMethod::kMaskSpan;
  c.folds = 5;
  c.keyword_scoring.hit_cap = 2.5;
  c.ttr_orders = {1, 4};
  RunConfig back;
  merge_json(back, to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK_FALSE(to_json(c).contains("workers"));
}

TEST_CASE("merge overlays only the given keys") {
  RunConfig c;
  merge_json(c, json::parse(R"({"seed": 5, "filter": {"high": 0.9}, "augment": {"method": "bt"}})"));
  CHECK(c.seed == 5);
  CHECK(c.high == 0.9);
  CHECK(c.low == 0.3);
  CHECK(c.method == AugmentMethod::kBackTranslation);
}

TEST_CASE("strict merge") {
  RunConfig c;
  CHECK_THROWS_WITH_AS(merge_json(c, json::parse(R"({"sed": 1})")), doctest::Contains("sed"), ConfigError);
  CHECK_THROWS_WITH_AS(merge_json(c, json::parse(R"({"filter": {"lo": 0.1}})")), doctest::Contains("lo"),
                       ConfigError);
  CHECK_THROWS_AS(merge_json(c, json::parse(R"({"filter": {"low": "x"}})")), ConfigError);
  CHECK_THROWS_AS(merge_json(c, json::parse(R"({"filter": {"mode": "most"}})")), ConfigError);
  CHECK_THROWS_AS(merge_json(c, json::parse(R"({"augment": {"method": "eda"}})")), ConfigError);
  CHECK_THROWS_AS(merge_json(c, json::parse(R"({"split": 3})")), ConfigError);
}

TEST_CASE("config files") {
  TempDir tmp;
  auto good = tmp.write("run.json", R"({"seed": 9, "augment": {"folds": 3}})");
  auto c = load_run_config(good);
  CHECK(c.seed == 9);
  CHECK(c.folds == 3);
  CHECK_FALSE(c.embeddings.empty());
  auto bad = tmp.write("bad.json", "{nope");
  CHECK_THROWS_AS(load_run_config(bad), ConfigError);
  CHECK_THROWS_AS(load_run_config(tmp / "missing.json"), ConfigError);
}

TEST_CASE("derived configs") {
  RunConfig c;
  c.low = 0.2;
  c.high = 0.7;
  c.decision_threshold = 0.4;
  auto f = c.filter_config();
  CHECK(f.low == 0.2);
  CHECK(f.high == 0.7);
  CHECK(f.decision_threshold == 0.4);
  c.seed = 12;
  c.workers = 3;
  auto a = c.augmentation_config();
  CHECK(a.global_seed == 12);
  CHECK(a.workers == 3);
  CHECK(c.split_spec().seed == 12);
}

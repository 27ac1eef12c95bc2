#include <random>
#include <set>

#include "doctest.h"
#include "emoaug/error.hpp"
#include "emoaug/filtering.hpp"

using namespace emoaug;

namespace {

// Raw score giving activation a: hard_sigmoid(2a - 1) = a.
double raw_for(double a) { return 2 * a - 1; }

// Activations are set exactly, so boundary values are not subject to rounding.
PredictionScores scores(const std::string& id, std::initializer_list<std::pair<Emotion, double>> active) {
  PredictionScores p;
  p.post_id = id;
  p.raw.fill(-1.0);
  for (auto [e, a] : active) {
    p.raw[static_cast<std::size_t>(e)] = raw_for(a);
    p.activated.set(e, a);
  }
  p.predicted = p.activated.binarized(0.5);
  return p;
}

}  // namespace

TEST_CASE("window examples") {
  FilterConfig cfg;
  CHECK(in_confidence_window(scores("a", {{Emotion::kSadness, 0.55}}), cfg));
  CHECK_FALSE(in_confidence_window(scores("b", {{Emotion::kSadness, 0.95}}), cfg));
  CHECK_FALSE(in_confidence_window(scores("c", {}), cfg));
  CHECK(in_confidence_window(scores("d", {{Emotion::kSadness, 0.8}}), cfg));
}

TEST_CASE("inclusive lower boundary at 0.3") {
  // Predicted labels need activation >= decision_threshold, so the 0.3 edge is
  // only reachable with a lower decision threshold.
  FilterConfig cfg;
  cfg.decision_threshold = 0.3;
  CHECK(in_confidence_window(scores("a", {{Emotion::kJoy, 0.3}}), cfg));
  CHECK_FALSE(in_confidence_window(scores("b", {{Emotion::kJoy, 0.29}}), cfg));
  CHECK_FALSE(in_confidence_window(scores("c", {{Emotion::kJoy, 0.81}}), cfg));
}

TEST_CASE("any versus all") {
  auto mixed = scores("m", {{Emotion::kJoy, 0.6}, {Emotion::kAnger, 0.9}});
  FilterConfig any;
  FilterConfig all;
  all.mode = WindowMode::kAll;
  CHECK(in_confidence_window(mixed, any));
  CHECK_FALSE(in_confidence_window(mixed, all));
  auto both = scores("b", {{Emotion::kJoy, 0.6}, {Emotion::kAnger, 0.7}});
  CHECK(in_confidence_window(both, all));
  CHECK(parse_window_mode("all") == WindowMode::kAll);
  CHECK_THROWS_AS(parse_window_mode("most"), ConfigError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS((FilterConfig{0.8, 0.3}.validate()), ConfigError);
  CHECK_THROWS_AS((FilterConfig{0.5, 0.5}.validate()), ConfigError);
  CHECK_THROWS_AS((FilterConfig{-0.1, 0.5}.validate()), ConfigError);
  CHECK_NOTHROW((FilterConfig{0.0, 1.0}.validate()));
}

TEST_CASE("widening the window never shrinks the kept set; all is a subset of any") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PredictionScores> set;
    for (int i = 0; i < 50; ++i) {
      RawScores raw;
      for (auto& r : raw) r = u(gen) * 4 - 2.5;
      set.push_back(make_prediction("p" + std::to_string(i), raw));
    }
    double low = u(gen) * 0.5, high = low + 0.05 + u(gen) * (0.95 - low);
    FilterConfig narrow{low, high};
    FilterConfig wide{low * u(gen), high + (1 - high) * u(gen)};
    for (auto mode : {WindowMode::kAny, WindowMode::kAll}) {
      narrow.mode = wide.mode = mode;
      auto a = confidence_filter(set, narrow);
      auto b = confidence_filter(set, wide);
      std::set<std::string> bs(b.begin(), b.end());
      for (const auto& id : a) CHECK(bs.contains(id));
    }
    FilterConfig any{low, high, WindowMode::kAny}, all{low, high, WindowMode::kAll};
    auto kept_any = confidence_filter(set, any);
    std::set<std::string> as(kept_any.begin(), kept_any.end());
    for (const auto& id : confidence_filter(set, all)) CHECK(as.contains(id));
  }
}

TEST_CASE("sample_split") {
  std::vector<std::string> ids;
  for (int i = 0; i < 5000; ++i) ids.push_back("id" + std::to_string(i));
  SplitSpec spec;
  spec.seed = 4;
  auto split = sample_split(ids, spec);
  CHECK(split.train.size() == 700);
  CHECK(split.valid.size() == 300);
  std::set<std::string> all(split.train.begin(), split.train.end());
  all.insert(split.valid.begin(), split.valid.end());
  CHECK(all.size() == 1000);

  auto again = sample_split(ids, spec);
  CHECK(again.train == split.train);
  CHECK(again.valid == split.valid);
  spec.seed = 5;
  CHECK(sample_split(ids, spec).train != split.train);

  std::vector<std::string> few(ids.begin(), ids.begin() + 999);
  CHECK_THROWS_WITH_AS(sample_split(few, SplitSpec{}), doctest::Contains("999"), DataError);
  std::vector<std::string> dup(ids.begin(), ids.begin() + 1000);
  dup.push_back("id3");
  CHECK_THROWS_AS(sample_split(dup, SplitSpec{}), DataError);
  CHECK_THROWS_AS((SplitSpec{1000, 600, 300, 0}.validate()), ConfigError);
}

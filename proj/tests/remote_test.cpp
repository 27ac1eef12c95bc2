#include <set>

#include "doctest.h"
#include "emoaug/error.hpp"
#include "emoaug/remote.hpp"
#include "support/fake_service.hpp"
#include "support/schema_check.hpp"

using namespace emoaug;
using nlohmann::json;

namespace {

std::shared_ptr<RemoteClient> client_for(const std::string& url, std::vector<std::string>* log = nullptr) {
  RemoteOptions opts;
  opts.base_url = url;
  opts.timeout = std::chrono::milliseconds(2000);
  opts.backoff = std::chrono::milliseconds(5);
  opts.log = [log](std::string_view m) {
    if (log) log->emplace_back(m);
  };
  return std::make_shared<RemoteClient>(opts);
}

}  // namespace

TEST_CASE("request bodies follow the shared schemas") {
  TokenizedPost tp{"p", {"i", "am", "sad", "."}, {true, true, false, true}};
  auto ms = apply_mask(tp, MaskPlan{"p", {2}, MaskStrategy::kToken, 0});
  auto fm = fill_mask_request(ms, "[MASK]");
  CHECK(fm == json::parse(R"({"tokens":["i","am","[MASK]","."],"mask_indices":[2],"top_k":1})"));
  CHECK(schema::validate(schema::load("fill_mask.request.json"), fm).empty());
  CHECK(schema::validate(schema::load("translate.request.json"), translate_request("hi", "en", "fr")).empty());
  CHECK(schema::validate(schema::load("classify.request.json"), classify_request("hi")).empty());

  CHECK_FALSE(schema::validate(schema::load("translate.request.json"), json{{"text", ""}}).empty());
  CHECK_FALSE(schema::validate(schema::load("fill_mask.request.json"), json{{"tokens", json::array()}}).empty());
}

TEST_CASE("echo answers satisfy the response schemas and parse") {
  auto fm = FakeService::echo("fill_mask", json::parse(R"({"tokens":["a","[MASK]"],"mask_indices":[1],"top_k":1})"));
  CHECK(schema::validate(schema::load("fill_mask.response.json"), fm).empty());
  CHECK(parse_fill_mask_response(fm, 1) == std::vector<std::string>{"[MASK]"});

  auto tr = FakeService::echo("translate", translate_request("bonjour", "fr", "en"));
  CHECK(schema::validate(schema::load("translate.response.json"), tr).empty());
  CHECK(parse_translate_response(tr) == "bonjour");

  auto cl = FakeService::echo("classify", classify_request("x"));
  CHECK(schema::validate(schema::load("classify.response.json"), cl).empty());
  auto raw = parse_classify_response(cl);
  for (std::size_t i = 0; i < kNumEmotions; ++i) CHECK(raw[i] == doctest::Approx(i / 10.0 - 0.5));
}

TEST_CASE("schema violations in responses are permanent") {
  auto permanent = [](auto&& fn) {
    try {
      fn();
      return false;
    } catch (const ProviderError& e) {
      return !e.retryable();
    }
  };
  CHECK(permanent([] { parse_fill_mask_response(json{{"replacements", {"a", "b"}}}, 1); }));
  CHECK(permanent([] { parse_fill_mask_response(json{{"replacements", {""}}}, 1); }));
  CHECK(permanent([] { parse_fill_mask_response(json::object(), 1); }));
  CHECK(permanent([] { parse_translate_response(json{{"text", 3}}); }));
  CHECK(permanent([] { parse_translate_response(json{{"text", ""}}); }));
  auto cl = FakeService::echo("classify", classify_request("x"));
  auto unknown = cl;
  unknown["label_order"][0] = "boredom";
  CHECK(permanent([&] { parse_classify_response(unknown); }));
  auto repeated = cl;
  repeated["label_order"][0] = repeated["label_order"][1];
  CHECK(permanent([&] { parse_classify_response(repeated); }));
  auto short_scores = cl;
  short_scores["raw_scores"].erase(0);
  CHECK(permanent([&] { parse_classify_response(short_scores); }));
}

TEST_CASE("echo service round trips through the remote providers") {
  FakeService svc(FakeService::Mode::kEcho);
  auto client = client_for(svc.url());

  RemoteTranslator fwd(client, "en", "fr"), bwd(client, "fr", "en");
  auto bt = back_translate("I am very sad today.", fwd, bwd);
  CHECK(bt.intermediate == "I am very sad today.");
  CHECK(bt.output == "I am very sad today.");

  RemoteFiller filler(client);
  TokenizedPost tp{"p", {"i", "am", "sad"}, {true, true, false}};
  auto out = fill(apply_mask(tp, MaskPlan{"p", {2}, MaskStrategy::kToken, 0}), filler);
  CHECK(out == std::vector<std::string>{"i", "am", "[MASK]"});

  RemoteClassifier clf(client);
  auto p = classify(Post{"x", "anything", std::nullopt, {}}, clf);
  CHECK(p.raw[0] == doctest::Approx(-0.5));
  CHECK(p.raw[10] == doctest::Approx(0.5));

  CHECK(svc.hits() == 4);
  CHECK(client->attempts() == 4);
  CHECK(svc.schema_errors().empty());
  auto ids = svc.request_ids();
  std::set<std::string> unique(ids.begin(), ids.end());
  CHECK(unique.size() == ids.size());
  for (const auto& id : ids) CHECK_FALSE(id.empty());
}

TEST_CASE("path prefixes are kept") {
  FakeService svc(FakeService::Mode::kEcho);
  RemoteOptions opts;
  opts.base_url = svc.url() + "/";
  RemoteClient client(opts);
  CHECK(parse_translate_response(client.call(RemoteEndpoint::kTranslate, translate_request("a", "en", "fr"))) == "a");
  CHECK_THROWS_AS(RemoteClient(RemoteOptions{"ftp://x", 3, {}, {}, {}}), ConfigError);
  CHECK_THROWS_AS(RemoteClient(RemoteOptions{"http://", 3, {}, {}, {}}), ConfigError);
}

TEST_CASE("unreachable host: retryable error after four attempts") {
  std::vector<std::string> log;
  auto client = client_for("http://127.0.0.1:" + std::to_string(unused_port()), &log);
  try {
    client->call(RemoteEndpoint::kTranslate, translate_request("a", "en", "fr"));
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK(e.retryable());
    CHECK(std::string(e.what()).find("4 attempts") != std::string::npos);
  }
  CHECK(client->attempts() == 4);
  CHECK(log.size() == 4);
}

TEST_CASE("5xx answers are retried, then reported as retryable") {
  FakeService svc(FakeService::Mode::kServerError);
  auto client = client_for(svc.url());
  try {
    client->call(RemoteEndpoint::kClassify, classify_request("a"));
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK(e.retryable());
  }
  CHECK(svc.hits() == 4);
}

TEST_CASE("transient failures recover within the retry budget") {
  FakeService svc(FakeService::Mode::kFlaky, 2);
  auto client = client_for(svc.url());
  auto body = client->call(RemoteEndpoint::kTranslate, translate_request("hello", "en", "fr"));
  CHECK(parse_translate_response(body) == "hello");
  CHECK(svc.hits() == 3);
  // The same request id is reused across retries.
  auto ids = svc.request_ids();
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == 1);
}

TEST_CASE("4xx, malformed and off-schema answers are permanent and not retried") {
  for (auto mode : {FakeService::Mode::kBadRequest, FakeService::Mode::kMalformed}) {
    FakeService svc(mode);
    std::vector<std::string> log;
    auto client = client_for(svc.url(), &log);
    try {
      client->call(RemoteEndpoint::kTranslate, translate_request("a", "en", "fr"));
      FAIL("expected ProviderError");
    } catch (const ProviderError& e) {
      CHECK_FALSE(e.retryable());
    }
    CHECK(svc.hits() == 1);
    REQUIRE_FALSE(log.empty());
    if (mode == FakeService::Mode::kMalformed) CHECK(log.back().find("{not json") != std::string::npos);
  }
  FakeService svc(FakeService::Mode::kWrongSchema);
  auto client = client_for(svc.url());
  RemoteTranslator tr(client, "en", "fr");
  try {
    tr.translate("a", 0);
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK_FALSE(e.retryable());
    CHECK(std::string(e.what()).find("unexpected") != std::string::npos);
  }
  CHECK(svc.hits() == 1);
}

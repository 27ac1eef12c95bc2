#include "emoaug/remote.hpp"

#include <cmath>
#include <iostream>
#include <thread>

#include "emoaug/error.hpp"
#include "httplib.h"

namespace emoaug {

using nlohmann::json;

std::string_view endpoint_path(RemoteEndpoint e) {
  switch (e) {
    case RemoteEndpoint::kFillMask:
      return "/v1/fill-mask";
    case RemoteEndpoint::kTranslate:
      return "/v1/translate";
    case RemoteEndpoint::kClassify:
      return "/v1/classify";
  }
  return "";
}

RemoteClient::RemoteClient(RemoteOptions options) : options_(std::move(options)) {
  const std::string& url = options_.base_url;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
    throw ConfigError("endpoint must be an http:// URL, got \"" + url + "\"");
  }
  auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  if (path_start != std::string::npos) {
    path_prefix_ = url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
  if (scheme_host_port_.size() <= scheme_end + 3) throw ConfigError("endpoint has no host: \"" + url + "\"");
  if (options_.max_retries < 0) throw ConfigError("max_retries must be non-negative");
}

void RemoteClient::log(std::string_view message) const {
  if (options_.log) {
    options_.log(message);
  } else {
    std::cerr << "[remote] " << message << '\n';
  }
}

json RemoteClient::call(RemoteEndpoint endpoint, const json& payload) const {
  const std::string path = path_prefix_ + std::string(endpoint_path(endpoint));
  const std::string body = payload.dump();
  const std::string request_id = "emoaug-" + std::to_string(next_request_id_.fetch_add(1));
  std::string last_error;
  auto delay = options_.backoff;

  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    ++attempts_;
    httplib::Client client(scheme_host_port_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers headers{{"X-Request-Id", request_id}};
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "request " + request_id + " to " + path + " failed: " + httplib::to_string(res.error());
      log(last_error);
      continue;
    }
    if (res->status >= 500) {
      last_error = "request " + request_id + " to " + path + " returned HTTP " + std::to_string(res->status);
      log(last_error + ": " + res->body);
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      log("request " + request_id + " rejected with HTTP " + std::to_string(res->status) + ": " + res->body);
      throw ProviderError(
          "request " + request_id + " to " + path + " rejected with HTTP " + std::to_string(res->status), false);
    }
    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      log("malformed response to " + request_id + ": " + res->body);
      throw ProviderError("malformed JSON response from " + path, false);
    }
    return parsed;
  }
  throw ProviderError(last_error + " (after " + std::to_string(options_.max_retries + 1) + " attempts)", true);
}

// ---------------------------------------------------------------------------
// Payloads

namespace {

[[noreturn]] void schema_violation(std::string_view endpoint, std::string_view detail, const json& body) {
  throw ProviderError(std::string(endpoint) + " response violates schema: " + std::string(detail) +
                          " (body: " + body.dump() + ")",
                      false);
}

}  // namespace

json fill_mask_request(const MaskedSentence& ms, std::string_view mask_token) {
  json tokens = json::array();
  json indices = json::array();
  for (std::size_t i = 0; i < ms.tokens.size(); ++i) {
    if (ms.tokens[i] == kMaskSentinel) {
      tokens.push_back(mask_token);
      indices.push_back(i);
    } else {
      tokens.push_back(ms.tokens[i]);
    }
  }
  return json{{"tokens", tokens}, {"mask_indices", indices}, {"top_k", 1}};
}

std::vector<std::string> parse_fill_mask_response(const json& body, std::size_t expected) {
  auto it = body.find("replacements");
  if (it == body.end() || !it->is_array()) schema_violation("fill-mask", "missing \"replacements\" array", body);
  if (it->size() != expected) schema_violation("fill-mask", "wrong number of replacements", body);
  std::vector<std::string> out;
  for (const auto& r : *it) {
    if (!r.is_string() || r.get<std::string>().empty()) {
      schema_violation("fill-mask", "replacements must be non-empty strings", body);
    }
    out.push_back(r.get<std::string>());
  }
  return out;
}

json translate_request(std::string_view text, std::string_view source, std::string_view target) {
  return json{{"text", text}, {"source", source}, {"target", target}};
}

std::string parse_translate_response(const json& body) {
  auto it = body.find("text");
  if (it == body.end() || !it->is_string()) schema_violation("translate", "missing \"text\" string", body);
  if (it->get<std::string>().empty()) schema_violation("translate", "empty translation", body);
  return it->get<std::string>();
}

json classify_request(std::string_view text) { return json{{"text", text}}; }

RawScores parse_classify_response(const json& body) {
  auto scores = body.find("raw_scores");
  auto order = body.find("label_order");
  if (scores == body.end() || !scores->is_array() || scores->size() != kNumEmotions) {
    schema_violation("classify", "\"raw_scores\" must hold 11 numbers", body);
  }
  if (order == body.end() || !order->is_array() || order->size() != kNumEmotions) {
    schema_violation("classify", "\"label_order\" must list the 11 labels", body);
  }
  RawScores raw{};
  std::array<bool, kNumEmotions> seen{};
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    const json& name = (*order)[i];
    const json& value = (*scores)[i];
    if (!name.is_string()) schema_violation("classify", "label names must be strings", body);
    auto label = emotion_from_name(name.get<std::string>());
    if (!label) schema_violation("classify", "unknown label \"" + name.get<std::string>() + "\"", body);
    auto idx = static_cast<std::size_t>(*label);
    if (seen[idx]) schema_violation("classify", "repeated label", body);
    if (!value.is_number()) schema_violation("classify", "scores must be numbers", body);
    seen[idx] = true;
    raw[idx] = value.get<double>();
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Providers

RemoteFiller::RemoteFiller(std::shared_ptr<const RemoteClient> client, std::string mask_token,
                           std::size_t max_input_tokens)
    : client_(std::move(client)), mask_token_(std::move(mask_token)), capability_{"remote-fill-mask", max_input_tokens, false} {}

std::vector<std::string> RemoteFiller::predict(const MaskedSentence& ms) const {
  json body = client_->call(RemoteEndpoint::kFillMask, fill_mask_request(ms, mask_token_));
  return parse_fill_mask_response(body, ms.sentinel_count());
}

RemoteTranslator::RemoteTranslator(std::shared_ptr<const RemoteClient> client, std::string source_lang,
                                   std::string target_lang)
    : client_(std::move(client)),
      capability_{"remote-translate", std::move(source_lang), std::move(target_lang), false, false} {}

std::string RemoteTranslator::translate(std::string_view text, std::uint64_t) const {
  json body = client_->call(RemoteEndpoint::kTranslate,
                            translate_request(text, capability_.source_lang, capability_.target_lang));
  return parse_translate_response(body);
}

RemoteClassifier::RemoteClassifier(std::shared_ptr<const RemoteClient> client)
    : client_(std::move(client)), capability_{"remote-classify", canonical_label_order(), false} {}

RawScores RemoteClassifier::raw_scores(std::string_view text) const {
  return parse_classify_response(client_->call(RemoteEndpoint::kClassify, classify_request(text)));
}

}  // namespace emoaug

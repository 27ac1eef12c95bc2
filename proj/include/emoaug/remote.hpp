#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "emoaug/providers.hpp"
#include "json.hpp"

namespace emoaug {

enum class RemoteEndpoint { kFillMask, kTranslate, kClassify };

std::string_view endpoint_path(RemoteEndpoint e);

struct RemoteOptions {
  std::string base_url;  // http://host:port[/prefix]
  int max_retries = 3;
  std::chrono::milliseconds timeout{10000};
  std::chrono::milliseconds backoff{100};  // doubled after every failed attempt
  // Receives diagnostics such as the raw body of a rejected response.
  std::function<void(std::string_view)> log;
};

// JSON-over-HTTP client for the inference service. Network failures,
// timeouts and 5xx answers are retried up to max_retries times with
// exponential backoff, then raised as retryable ProviderErrors. 4xx answers,
// unparseable bodies and schema violations are permanent. Every request
// carries an X-Request-Id header.
class RemoteClient {
 public:
  explicit RemoteClient(RemoteOptions options);

  nlohmann::json call(RemoteEndpoint endpoint, const nlohmann::json& payload) const;

  const RemoteOptions& options() const { return options_; }
  // Total HTTP attempts made so far, including retries.
  std::size_t attempts() const { return attempts_.load(); }

 private:
  void log(std::string_view message) const;

  RemoteOptions options_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  mutable std::atomic<std::size_t> attempts_{0};
  mutable std::atomic<std::uint64_t> next_request_id_{1};
};

// Request bodies and response validation for each endpoint. Validation
// failures throw a permanent ProviderError.
nlohmann::json fill_mask_request(const MaskedSentence& ms, std::string_view mask_token);
std::vector<std::string> parse_fill_mask_response(const nlohmann::json& body, std::size_t expected);
nlohmann::json translate_request(std::string_view text, std::string_view source, std::string_view target);
std::string parse_translate_response(const nlohmann::json& body);
nlohmann::json classify_request(std::string_view text);
RawScores parse_classify_response(const nlohmann::json& body);

class RemoteFiller final : public FillMaskProvider {
 public:
  RemoteFiller(std::shared_ptr<const RemoteClient> client, std::string mask_token = "[MASK]",
               std::size_t max_input_tokens = kDefaultMaxTokens);
  const FillMaskCapability& capability() const override { return capability_; }
  std::vector<std::string> predict(const MaskedSentence& ms) const override;

 private:
  std::shared_ptr<const RemoteClient> client_;
  std::string mask_token_;
  FillMaskCapability capability_;
};

class RemoteTranslator final : public TranslationProvider {
 public:
  RemoteTranslator(std::shared_ptr<const RemoteClient> client, std::string source_lang,
                   std::string target_lang);
  const TranslationCapability& capability() const override { return capability_; }
  std::string translate(std::string_view text, std::uint64_t seed) const override;

 private:
  std::shared_ptr<const RemoteClient> client_;
  TranslationCapability capability_;
};

class RemoteClassifier final : public ClassifierProvider {
 public:
  explicit RemoteClassifier(std::shared_ptr<const RemoteClient> client);
  const ClassifierCapability& capability() const override { return capability_; }
  RawScores raw_scores(std::string_view text) const override;

 private:
  std::shared_ptr<const RemoteClient> client_;
  ClassifierCapability capability_;
};

}  // namespace emoaug

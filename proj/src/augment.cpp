#include "emoaug/augment.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "emoaug/error.hpp"
#include "emoaug/jsonl.hpp"
#include "emoaug/rng.hpp"

namespace emoaug {

using nlohmann::json;

std::string_view to_string(AugmentMethod m) {
  switch (m) {
    case AugmentMethod::kBackTranslation:
      return "bt";
    case AugmentMethod::kMaskToken:
      return "mask_token";
    case AugmentMethod::kMaskSpan:
      return "mask_span";
  }
  return "";
}

AugmentMethod parse_augment_method(std::string_view name) {
  if (name == "bt") return AugmentMethod::kBackTranslation;
  if (name == "mask_token") return AugmentMethod::kMaskToken;
  if (name == "mask_span") return AugmentMethod::kMaskSpan;
  throw ConfigError("unknown augmentation method \"" + std::string(name) + "\" (expected bt, mask_token or mask_span)");
}

void AugmentationConfig::validate() const {
  if (folds < 1) throw ConfigError("folds must be at least 1");
  if (!(mask_rate > 0.0 && mask_rate <= 1.0)) throw ConfigError("mask_rate must lie in (0,1]");
  if (span_len < 1) throw ConfigError("span_len must be at least 1");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (workers < 1) throw ConfigError("workers must be at least 1");
}

namespace {

void check_providers(const AugmentationConfig& cfg, const AugmentProviders& p) {
  if (p.stopwords == nullptr) throw ConfigError("no stopword list");
  if (cfg.method == AugmentMethod::kBackTranslation) {
    if (p.forward == nullptr || p.backward == nullptr) throw ConfigError("back translation needs two translators");
    if (p.forward->capability().target_lang != p.backward->capability().source_lang) {
      throw ConfigError("back translation pivot mismatch: " + p.forward->capability().target_lang + " vs " +
                        p.backward->capability().source_lang);
    }
    if (cfg.folds > 1 && !(p.forward->capability().supports_sampling || p.backward->capability().supports_sampling)) {
      throw ConfigError("back translation with more than one fold needs a sampling-capable translator");
    }
  } else if (p.filler == nullptr) {
    throw ConfigError("masking methods need a fill-mask provider");
  }
}

bool can_vary(const AugmentationConfig& cfg, const AugmentProviders& p) {
  if (cfg.method != AugmentMethod::kBackTranslation) return true;
  return p.forward->capability().supports_sampling || p.backward->capability().supports_sampling;
}

std::uint64_t translation_seed(const AugmentationConfig& cfg, std::string_view id, std::size_t fold,
                               std::size_t attempt) {
  // Fold 1's first attempt decodes greedily.
  if (fold == 1 && attempt == 0) return 0;
  return derive_seed(cfg.global_seed, id, fold, attempt);
}

MaskPlan select_plan(const TokenizedPost& tp, const AugmentationConfig& cfg, const AugmentProviders& p,
                     std::uint64_t seed) {
  std::vector<double> weights =
      p.affinity != nullptr ? p.affinity->score(tp.tokens, tp.is_functional) : std::vector<double>(tp.size(), 0.0);
  return cfg.method == AugmentMethod::kMaskSpan ? select_span_mask(tp, weights, cfg.span_len, seed, cfg.epsilon)
                                                : select_token_masks(tp, weights, cfg.mask_rate, seed, cfg.epsilon);
}

void generate(SyntheticExample& ex, const LabeledPost& source, std::size_t attempt, const AugmentationConfig& cfg,
              const AugmentProviders& p) {
  const std::string& id = source.post.id;
  if (cfg.method == AugmentMethod::kBackTranslation) {
    std::uint64_t seed = translation_seed(cfg, id, ex.fold, attempt);
    BackTranslation bt = back_translate(source.post.text, *p.forward, *p.backward, seed);
    ex.text = std::move(bt.output);
    ex.translation = TranslationProvenance{seed, std::move(bt.intermediate)};
    ex.mask.reset();
    return;
  }
  TokenizedPost tp = tokenize(source.post.text, *p.stopwords, id);
  MaskPlan plan = select_plan(tp, cfg, p, derive_seed(cfg.global_seed, id, ex.fold, attempt));
  MaskedSentence ms = apply_mask(tp, plan);
  std::vector<std::string> completed = fill(ms, *p.filler);
  MaskProvenance prov{std::move(plan), {}};
  for (std::size_t i : prov.plan.mask_indices) prov.replacements.push_back(completed[i]);
  ex.text = detokenize(completed);
  ex.mask = std::move(prov);
  ex.translation.reset();
}

// Serializes calls into single-flight providers.
class GatedFiller final : public FillMaskProvider {
 public:
  explicit GatedFiller(const FillMaskProvider& inner) : inner_(inner), gate_(true) {}
  const FillMaskCapability& capability() const override { return inner_.capability(); }
  std::vector<std::string> predict(const MaskedSentence& ms) const override {
    return gate_([&] { return inner_.predict(ms); });
  }

 private:
  const FillMaskProvider& inner_;
  CallGate gate_;
};

class GatedTranslator final : public TranslationProvider {
 public:
  explicit GatedTranslator(const TranslationProvider& inner) : inner_(inner), gate_(true) {}
  const TranslationCapability& capability() const override { return inner_.capability(); }
  std::string translate(std::string_view text, std::uint64_t seed) const override {
    return gate_([&] { return inner_.translate(text, seed); });
  }

 private:
  const TranslationProvider& inner_;
  CallGate gate_;
};

}  // namespace

SyntheticExample augment_one(const LabeledPost& source, std::size_t fold, const AugmentationConfig& cfg,
                             const AugmentProviders& providers) {
  cfg.validate();
  check_providers(cfg, providers);
  if (fold < 1 || fold > cfg.folds) {
    throw ConfigError("fold " + std::to_string(fold) + " outside 1.." + std::to_string(cfg.folds));
  }
  SyntheticExample ex;
  ex.source_id = source.post.id;
  ex.fold = fold;
  ex.labels = source.labels;
  ex.method = cfg.method;

  const std::string original = normalize_text(source.post.text);
  const std::size_t max_attempts = can_vary(cfg, providers) ? 1 + cfg.max_regen_attempts : 1;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    generate(ex, source, attempt, cfg, providers);
    ex.attempts = attempt + 1;
    ex.degenerate = normalize_text(ex.text) == original;
    if (!ex.degenerate) break;
  }
  if (ex.text.empty()) throw ProviderError("generated empty text for \"" + source.post.id + "\"", false);
  return ex;
}

AugmentResult augment_corpus(std::span<const LabeledPost> train, const AugmentationConfig& cfg,
                             const AugmentProviders& providers) {
  cfg.validate();
  check_providers(cfg, providers);
  if (train.empty()) throw DataError("training set is empty");
  {
    std::set<std::string_view> ids;
    for (const auto& lp : train) {
      if (!ids.insert(lp.post.id).second) throw DataError("duplicate source id \"" + lp.post.id + "\"");
    }
  }

  std::optional<GatedFiller> gated_filler;
  std::optional<GatedTranslator> gated_forward, gated_backward;
  AugmentProviders p = providers;
  if (p.filler != nullptr && p.filler->capability().single_flight) p.filler = &gated_filler.emplace(*p.filler);
  if (p.forward != nullptr && p.forward->capability().single_flight) p.forward = &gated_forward.emplace(*p.forward);
  if (p.backward != nullptr && p.backward->capability().single_flight) {
    p.backward = &gated_backward.emplace(*p.backward);
  }

  std::vector<std::optional<std::vector<SyntheticExample>>> per_source(train.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex error_mutex;
  std::size_t error_index = train.size();
  std::string error_message;
  std::exception_ptr fatal;
  std::vector<std::string> skip_reason(train.size());

  auto worker = [&] {
    while (!stop.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= train.size()) return;
      try {
        std::vector<SyntheticExample> folds;
        for (std::size_t fold = 1; fold <= cfg.folds; ++fold) folds.push_back(augment_one(train[i], fold, cfg, p));
        per_source[i] = std::move(folds);
      } catch (const ProviderError& e) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error_message = "source \"" + train[i].post.id + "\": " + e.what();
        }
        stop.store(true);
      } catch (const DataError& e) {
        // e.g. a post with no content token to mask: reported as a shortfall
        per_source[i] = std::vector<SyntheticExample>{};
        skip_reason[i] = e.what();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!fatal) fatal = std::current_exception();
        stop.store(true);
      }
    }
  };

  const std::size_t n_workers = std::min(cfg.workers, train.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  if (fatal) std::rethrow_exception(fatal);

  AugmentResult result;
  result.target = cfg.folds * train.size();
  result.aborted = stop.load();
  result.abort_reason = error_message;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (!per_source[i]) continue;
    std::size_t produced = 0;
    for (auto& ex : *per_source[i]) {
      if (ex.degenerate) ++result.degenerate;
      if (ex.degenerate && cfg.drop_degenerate) continue;
      ++produced;
      result.examples.push_back(std::move(ex));
    }
    if (produced < cfg.folds) result.shortfalls.push_back({train[i].post.id, produced, cfg.folds, skip_reason[i]});
  }
  std::sort(result.examples.begin(), result.examples.end(), [](const SyntheticExample& a, const SyntheticExample& b) {
    return std::tie(a.source_id, a.fold) < std::tie(b.source_id, b.fold);
  });
  std::sort(result.shortfalls.begin(), result.shortfalls.end(),
            [](const Shortfall& a, const Shortfall& b) { return a.source_id < b.source_id; });
  return result;
}

bool verify_provenance(const SyntheticExample& ex, const LabeledPost& source, const AugmentationConfig& cfg,
                       const AugmentProviders& providers) {
  if (ex.source_id != source.post.id || ex.labels != source.labels || ex.method != cfg.method) return false;
  if (ex.method == AugmentMethod::kBackTranslation) {
    if (!ex.translation || ex.mask) return false;
    BackTranslation bt = back_translate(source.post.text, *providers.forward, *providers.backward, ex.translation->seed);
    return bt.intermediate == ex.translation->intermediate && bt.output == ex.text;
  }
  if (!ex.mask || ex.translation) return false;
  TokenizedPost tp = tokenize(source.post.text, *providers.stopwords, source.post.id);
  MaskPlan replay = select_plan(tp, cfg, providers, ex.mask->plan.rng_seed);
  if (!(replay == ex.mask->plan)) return false;
  std::vector<std::string> completed = fill(apply_mask(tp, replay), *providers.filler);
  std::vector<std::string> replacements;
  for (std::size_t i : replay.mask_indices) replacements.push_back(completed[i]);
  return replacements == ex.mask->replacements && detokenize(completed) == ex.text;
}

// ---------------------------------------------------------------------------
// Serialization

json to_json(const SyntheticExample& ex) {
  json j;
  j["source_id"] = ex.source_id;
  j["fold"] = ex.fold;
  j["text"] = ex.text;
  j["labels"] = labels_to_json(ex.labels);
  j["method"] = std::string(to_string(ex.method));
  j["degenerate"] = ex.degenerate;
  j["attempts"] = ex.attempts;
  json prov = json::object();
  if (ex.mask) {
    prov["strategy"] = std::string(to_string(ex.mask->plan.strategy));
    prov["mask_indices"] = ex.mask->plan.mask_indices;
    prov["seed"] = ex.mask->plan.rng_seed;
    prov["replacements"] = ex.mask->replacements;
  }
  if (ex.translation) {
    prov["seed"] = ex.translation->seed;
    prov["intermediate"] = ex.translation->intermediate;
  }
  j["provenance"] = prov;
  return j;
}

SyntheticExample synthetic_from_json(const json& j) {
  SyntheticExample ex;
  ex.source_id = j.at("source_id").get<std::string>();
  ex.fold = j.at("fold").get<std::size_t>();
  ex.text = j.at("text").get<std::string>();
  if (ex.text.empty()) throw DataError("synthetic example with empty text");
  ex.labels = labels_from_json(j.at("labels"));
  ex.method = parse_augment_method(j.at("method").get<std::string>());
  ex.degenerate = j.value("degenerate", false);
  ex.attempts = j.value("attempts", std::size_t{1});
  const json& prov = j.value("provenance", json::object());
  if (prov.contains("mask_indices")) {
    MaskProvenance m;
    m.plan.post_id = ex.source_id;
    m.plan.strategy = prov.at("strategy").get<std::string>() == "span" ? MaskStrategy::kSpan : MaskStrategy::kToken;
    m.plan.mask_indices = prov.at("mask_indices").get<std::vector<std::size_t>>();
    m.plan.rng_seed = prov.at("seed").get<std::uint64_t>();
    m.replacements = prov.at("replacements").get<std::vector<std::string>>();
    ex.mask = std::move(m);
  } else if (prov.contains("intermediate")) {
    ex.translation = TranslationProvenance{prov.at("seed").get<std::uint64_t>(), prov.at("intermediate").get<std::string>()};
  }
  return ex;
}

std::vector<SyntheticExample> load_synthetic(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<SyntheticExample> out;
  for_each_jsonl(in, [&](std::size_t, const json& j) { out.push_back(synthetic_from_json(j)); });
  return out;
}

void write_synthetic(std::ostream& out, std::span<const SyntheticExample> examples) {
  for (const auto& ex : examples) write_jsonl_line(out, to_json(ex));
}

}  // namespace emoaug

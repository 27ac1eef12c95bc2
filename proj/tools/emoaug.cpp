// emoaug: stage-per-command driver for the augmentation pipeline.
//
//   emoaug ingest   --in raw.jsonl --schema labeled --out corpus.jsonl
//   emoaug classify --in corpus.jsonl --out predictions.jsonl
//   emoaug filter   --in predictions.jsonl --out kept.txt
//   emoaug sample   --corpus corpus.jsonl --ids kept.txt --pred predictions.jsonl --out-dir split/
//   emoaug augment  --in split/train.jsonl --method bt --folds 1 --out synthetic.jsonl
//   emoaug evaluate --synthetic synthetic.jsonl --out report.json
//
// Exit codes: 0 ok, 1 usage/configuration, 2 data, 3 provider.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "emoaug/error.hpp"
#include "emoaug/stages.hpp"

namespace {

using emoaug::RunConfig;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitProvider = 3;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  bool mock = false;
  std::optional<std::string> endpoint;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Global seed");
  cmd->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--mock", f.mock, "Use the built-in providers even if an endpoint is configured");
  cmd->add_option("--endpoint", f.endpoint, "Inference service URL (fallback: AUGMENTOR_ENDPOINT)");
}

RunConfig resolve(const CommonFlags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig::with_default_paths() : emoaug::load_run_config(f.config);
  if (const char* env = std::getenv("AUGMENTOR_ENDPOINT"); env != nullptr && *env && cfg.endpoint.empty()) {
    cfg.endpoint = env;
  }
  if (f.endpoint) cfg.endpoint = *f.endpoint;
  if (f.seed) cfg.seed = *f.seed;
  if (f.workers) cfg.workers = *f.workers;
  if (f.mock) cfg.mock = true;
  return cfg;
}

template <typename T>
void override_with(const std::optional<T>& flag, T& target) {
  if (flag) target = *flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emotion-aware data augmentation pipeline"};
  app.require_subcommand(1);
  CommonFlags common;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Normalize, label and length-filter a raw corpus");
  std::string ingest_in, ingest_out, schema = "posts";
  std::optional<int> threshold;
  std::optional<std::size_t> max_tokens;
  ingest->add_option("--in", ingest_in, "Raw JSONL records")->required();
  ingest->add_option("--out", ingest_out, "Output corpus")->required();
  ingest->add_option("--schema", schema, "posts or labeled")->check(CLI::IsMember({"posts", "labeled"}));
  ingest->add_option("--threshold", threshold, "Rating binarization threshold");
  ingest->add_option("--max-tokens", max_tokens, "Drop posts longer than this")->check(CLI::PositiveNumber);
  add_common(ingest, common);

  // classify
  auto* classify = app.add_subcommand("classify", "Score posts with the classifier");
  std::string classify_in, classify_out;
  std::optional<double> decision;
  classify->add_option("--in", classify_in, "Corpus JSONL")->required();
  classify->add_option("--out", classify_out, "Predictions JSONL")->required();
  classify->add_option("--decision-threshold", decision, "Activated score needed to predict a label");
  add_common(classify, common);

  // filter
  auto* filter = app.add_subcommand("filter", "Keep posts whose predicted confidences fall in a window");
  std::string filter_in, filter_out;
  std::optional<double> low, high;
  std::optional<std::string> mode;
  filter->add_option("--in", filter_in, "Predictions JSONL")->required();
  filter->add_option("--out", filter_out, "Kept ids, one per line")->required();
  filter->add_option("--low", low, "Window lower bound (inclusive)");
  filter->add_option("--high", high, "Window upper bound (inclusive)");
  filter->add_option("--mode", mode, "any or all")->check(CLI::IsMember({"any", "all"}));
  filter->add_option("--decision-threshold", decision, "Activated score needed to predict a label");
  add_common(filter, common);

  // sample
  auto* sample = app.add_subcommand("sample", "Draw the low-resource train/validation split");
  std::string sample_corpus, sample_out;
  std::optional<std::string> sample_ids, sample_pred;
  std::optional<std::size_t> total, train, valid;
  sample->add_option("--corpus", sample_corpus, "Corpus JSONL")->required();
  sample->add_option("--ids", sample_ids, "Restrict the pool to these ids");
  sample->add_option("--pred", sample_pred, "Predictions providing pseudo labels");
  sample->add_option("--out-dir", sample_out, "Directory for train.jsonl and valid.jsonl")->required();
  sample->add_option("--total", total, "Examples to draw");
  sample->add_option("--train", train, "Training examples");
  sample->add_option("--valid", valid, "Validation examples");
  add_common(sample, common);

  // augment
  auto* augment = app.add_subcommand("augment", "Synthesize examples from a training set");
  std::string augment_in, augment_out;
  std::optional<std::string> method;
  std::optional<std::size_t> folds, span_len, max_regen;
  std::optional<double> mask_rate;
  bool drop_degenerate = false;
  augment->add_option("--in", augment_in, "Labeled training JSONL")->required();
  augment->add_option("--out", augment_out, "Synthetic JSONL")->required();
  augment->add_option("--method", method, "bt, mask_token or mask_span")
      ->check(CLI::IsMember({"bt", "mask_token", "mask_span"}));
  augment->add_option("--folds", folds, "Examples per source")->check(CLI::PositiveNumber);
  augment->add_option("--mask-rate", mask_rate, "Fraction of tokens masked");
  augment->add_option("--span-len", span_len, "Span mask length")->check(CLI::PositiveNumber);
  augment->add_option("--max-regen", max_regen, "Regenerations of outputs identical to their source");
  augment->add_flag("--drop-degenerate", drop_degenerate, "Drop outputs still identical to their source");
  add_common(augment, common);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Fidelity, diversity and extrinsic metrics");
  std::string evaluate_out;
  std::optional<std::string> eval_synthetic, eval_gold, eval_pred;
  evaluate->add_option("--synthetic", eval_synthetic, "Synthetic JSONL to score");
  evaluate->add_option("--gold", eval_gold, "Gold labeled corpus");
  evaluate->add_option("--pred", eval_pred, "Predictions for the gold corpus");
  evaluate->add_option("--out", evaluate_out, "Report JSON")->required();
  evaluate->add_option("--decision-threshold", decision, "Activated score needed to predict a label");
  add_common(evaluate, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    RunConfig cfg = resolve(common);
    override_with(decision, cfg.decision_threshold);
    auto opt_path = [](const std::optional<std::string>& s) -> std::optional<std::filesystem::path> {
      if (!s) return std::nullopt;
      return std::filesystem::path(*s);
    };

    if (ingest->parsed()) {
      override_with(threshold, cfg.rating_threshold);
      override_with(max_tokens, cfg.max_tokens);
      emoaug::stages::run_ingest(cfg, ingest_in,
                                 schema == "labeled" ? emoaug::CorpusSchema::kLabeled : emoaug::CorpusSchema::kPosts,
                                 ingest_out, std::cout);
    } else if (classify->parsed()) {
      emoaug::stages::run_classify(cfg, classify_in, classify_out, std::cout);
    } else if (filter->parsed()) {
      override_with(low, cfg.low);
      override_with(high, cfg.high);
      if (mode) cfg.mode = emoaug::parse_window_mode(*mode);
      emoaug::stages::run_filter(cfg, filter_in, filter_out, std::cout);
    } else if (sample->parsed()) {
      override_with(total, cfg.split_total);
      override_with(train, cfg.split_train);
      override_with(valid, cfg.split_valid);
      emoaug::stages::run_sample(cfg, sample_corpus, opt_path(sample_ids), opt_path(sample_pred), sample_out,
                                 std::cout);
    } else if (augment->parsed()) {
      if (method) cfg.method = emoaug::parse_augment_method(*method);
      override_with(folds, cfg.folds);
      override_with(mask_rate, cfg.mask_rate);
      override_with(span_len, cfg.span_len);
      override_with(max_regen, cfg.max_regen_attempts);
      if (drop_degenerate) cfg.drop_degenerate = true;
      auto result = emoaug::stages::run_augment(cfg, augment_in, augment_out, std::cout);
      if (result.aborted) {
        std::cerr << "error: augmentation aborted: " << result.abort_reason << '\n';
        return kExitProvider;
      }
    } else if (evaluate->parsed()) {
      emoaug::stages::run_evaluate(cfg, opt_path(eval_synthetic), opt_path(eval_gold), opt_path(eval_pred),
                                   evaluate_out, std::cout);
    }
  } catch (const emoaug::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const emoaug::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const emoaug::ProviderError& e) {
    std::cerr << "error: " << e.what() << (e.retryable() ? " (retryable)" : "") << '\n';
    return kExitProvider;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}

#include "emoaug/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "emoaug/error.hpp"

namespace emoaug {

using nlohmann::json;

NgramCounts count_ngrams(std::span<const std::string> texts, std::size_t n) {
  if (n == 0) throw DataError("n-gram order must be at least 1");
  NgramCounts counts;
  std::unordered_set<std::string> unique;
  for (const auto& text : texts) {
    const auto tokens = split_tokens(text);
    if (tokens.size() < n) continue;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (std::size_t j = 1; j < n; ++j) {
        key.push_back('\x1f');
        key += tokens[i + j];
      }
      unique.insert(std::move(key));
      ++counts.total;
    }
  }
  counts.unique = unique.size();
  return counts;
}

double type_token_ratio(std::span<const std::string> texts, std::size_t n) {
  NgramCounts c = count_ngrams(texts, n);
  if (c.total == 0) throw DataError("no text has " + std::to_string(n) + " tokens");
  return c.ratio();
}

namespace {

void check_pair(std::span<const EmotionVector> gold, std::span<const EmotionVector> pred) {
  if (gold.size() != pred.size()) {
    throw DataError("gold and predicted label lists differ in length (" + std::to_string(gold.size()) + " vs " +
                    std::to_string(pred.size()) + ")");
  }
  if (gold.empty()) throw DataError("no examples to score");
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!gold[i].is_binary() || !pred[i].is_binary()) {
      throw DataError("example " + std::to_string(i) + " has non-binary labels");
    }
  }
}

double f1(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 1.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

double jaccard_score(std::span<const EmotionVector> gold, std::span<const EmotionVector> pred) {
  check_pair(gold, pred);
  double sum = 0.0;
  for (std::size_t e = 0; e < gold.size(); ++e) {
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      const bool g = gold[e][i] == 1.0;
      const bool p = pred[e][i] == 1.0;
      inter += g && p;
      uni += g || p;
    }
    sum += uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }
  return sum / static_cast<double>(gold.size());
}

double macro_f1_from_support(const Support& support) {
  double sum = 0.0;
  std::size_t labels = 0;
  for (const auto& c : support) {
    if (c.tp + c.fp + c.fn == 0) continue;
    sum += f1(c.tp, c.fp, c.fn);
    ++labels;
  }
  return labels == 0 ? 1.0 : sum / static_cast<double>(labels);
}

double micro_f1_from_support(const Support& support) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& c : support) {
    tp += c.tp;
    fp += c.fp;
    fn += c.fn;
  }
  return f1(tp, fp, fn);
}

F1Scores f1_scores(std::span<const EmotionVector> gold, std::span<const EmotionVector> pred) {
  check_pair(gold, pred);
  F1Scores out;
  for (std::size_t e = 0; e < gold.size(); ++e) {
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      const bool g = gold[e][i] == 1.0;
      const bool p = pred[e][i] == 1.0;
      out.support[i].tp += g && p;
      out.support[i].fp += !g && p;
      out.support[i].fn += g && !p;
    }
  }
  out.macro = macro_f1_from_support(out.support);
  out.micro = micro_f1_from_support(out.support);
  return out;
}

namespace {

void score_into(MetricsReport& report, std::span<const EmotionVector> gold, std::span<const EmotionVector> pred) {
  report.n_examples = gold.size();
  if (gold.empty()) return;
  report.jaccard = jaccard_score(gold, pred);
  F1Scores f = f1_scores(gold, pred);
  report.f1_macro = f.macro;
  report.f1_micro = f.micro;
  report.support = f.support;
}

}  // namespace

MetricsReport evaluate_fidelity(std::span<const SyntheticExample> synthetic, const ClassifierProvider& classifier,
                                double threshold, std::span<const std::size_t> ttr_orders, std::size_t workers) {
  if (synthetic.empty()) throw DataError("no synthetic examples to evaluate");
  std::vector<std::optional<EmotionVector>> predicted(synthetic.size());
  std::vector<std::string> errors(synthetic.size());
  std::atomic<std::size_t> next{0};
  CallGate gate(classifier.capability().single_flight);

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < synthetic.size(); i = next.fetch_add(1)) {
      try {
        RawScores raw = gate([&] { return classifier.raw_scores(synthetic[i].text); });
        predicted[i] = make_prediction(synthetic[i].source_id, raw, threshold).predicted;
      } catch (const ProviderError& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t n_workers = std::clamp<std::size_t>(workers, 1, synthetic.size());
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  MetricsReport report;
  std::vector<EmotionVector> gold, pred;
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < synthetic.size(); ++i) {
    texts.push_back(synthetic[i].text);
    if (!predicted[i]) {
      report.failures.push_back(synthetic[i].source_id + "#" + std::to_string(synthetic[i].fold) + ": " + errors[i]);
      continue;
    }
    gold.push_back(synthetic[i].labels);
    pred.push_back(*predicted[i]);
  }
  score_into(report, gold, pred);
  for (std::size_t n : ttr_orders) {
    NgramCounts c = count_ngrams(texts, n);
    if (c.total > 0) report.ttr[n] = c;
  }
  return report;
}

MetricsReport evaluate_extrinsic(std::span<const LabeledPost> gold, std::span<const PredictionScores> pred) {
  std::map<std::string_view, const PredictionScores*> by_id;
  for (const auto& p : pred) {
    if (!by_id.emplace(p.post_id, &p).second) throw DataError("duplicate prediction id \"" + p.post_id + "\"");
  }
  std::vector<std::string> unmatched;
  std::set<std::string_view> matched;
  std::vector<EmotionVector> g, p;
  for (const auto& lp : gold) {
    auto it = by_id.find(lp.post.id);
    if (it == by_id.end()) {
      unmatched.push_back("gold:" + lp.post.id);
      continue;
    }
    matched.insert(it->first);
    g.push_back(lp.labels);
    p.push_back(it->second->predicted);
  }
  for (const auto& [id, ptr] : by_id) {
    if (!matched.contains(id)) unmatched.push_back("pred:" + std::string(id));
  }
  if (!unmatched.empty()) {
    std::string msg = "ids not present on both sides:";
    for (const auto& u : unmatched) msg += " " + u;
    throw DataError(msg);
  }
  MetricsReport report;
  score_into(report, g, p);
  return report;
}

json to_json(const MetricsReport& report) {
  json j;
  j["n_examples"] = report.n_examples;
  j["jaccard"] = report.jaccard;
  j["f1_macro"] = report.f1_macro;
  j["f1_micro"] = report.f1_micro;
  json ttr = json::object();
  for (const auto& [n, c] : report.ttr) {
    ttr[std::to_string(n)] = json{{"ratio", c.ratio()}, {"unique", c.unique}, {"total", c.total}};
  }
  j["ttr"] = ttr;
  json support = json::object();
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    const auto& c = report.support[i];
    support[std::string(kEmotionNames[i])] = json{{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}};
  }
  j["support"] = support;
  j["failures"] = report.failures;
  return j;
}

std::string format_table(const std::vector<std::pair<std::string, MetricsReport>>& rows) {
  std::set<std::size_t> orders;
  std::size_t name_width = 6;
  for (const auto& [name, r] : rows) {
    name_width = std::max(name_width, name.size());
    for (const auto& [n, c] : r.ttr) orders.insert(n);
  }
  auto cell = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%9.3f", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << std::string(name_width - 6, ' ') << "Method" << "    Jaccard   F1-Macro   F1-Micro";
  for (std::size_t n : orders) out << "   TTR(n=" << n << ")";
  out << "        N\n";
  for (const auto& [name, r] : rows) {
    out << std::string(name_width - name.size(), ' ') << name << "  " << cell(r.jaccard) << "  " << cell(r.f1_macro)
        << "  " << cell(r.f1_micro);
    for (std::size_t n : orders) {
      auto it = r.ttr.find(n);
      out << "   " << (it == r.ttr.end() ? std::string("        -") : cell(it->second.ratio()));
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%9zu", r.n_examples);
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace emoaug

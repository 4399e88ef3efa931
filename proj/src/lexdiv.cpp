#include "btdiv/lexdiv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "btdiv/textnorm.hpp"
#include "btdiv/util.hpp"

namespace btdiv::lexdiv {

namespace {

// sacreBLEU's my_log: log(0) is a huge negative number rather than -inf so
// the later exp() underflows to exactly 0.
double safe_log(double x) {
  if (x == 0.0) return -9999999999.0;
  return std::log(x);
}

long long clipped_matches(const textnorm::NGramProfile& hyp,
                          const textnorm::NGramProfile& ref) {
  long long matched = 0;
  for (const auto& [gram, count] : hyp.counts) {
    auto it = ref.counts.find(gram);
    if (it != ref.counts.end()) matched += std::min(count, it->second);
  }
  return matched;
}

}  // namespace

double sentence_bleu(std::string_view hyp, std::string_view ref,
                     const BleuConfig& cfg) {
  if (cfg.max_order < 1)
    throw std::invalid_argument("sentence_bleu: max_order must be >= 1");
  std::vector<std::string> hyp_tokens = textnorm::tokenize_13a(hyp);
  std::vector<std::string> ref_tokens = textnorm::tokenize_13a(ref);
  if (hyp_tokens.empty() && ref_tokens.empty())
    throw ValidationError(
        "sentence_bleu: hypothesis and reference are both empty");

  const int orders = cfg.max_order;
  std::vector<long long> correct(orders, 0), total(orders, 0);
  for (int n = 1; n <= orders; ++n) {
    auto hp = textnorm::word_ngrams(hyp_tokens, n);
    auto rp = textnorm::word_ngrams(ref_tokens, n);
    total[n - 1] = static_cast<long long>(hp.total);
    correct[n - 1] = clipped_matches(hp, rp);
  }

  double sys_len = static_cast<double>(hyp_tokens.size());
  double ref_len = static_cast<double>(ref_tokens.size());
  double bp = 1.0;
  if (sys_len < ref_len)
    bp = sys_len > 0.0 ? std::exp(1.0 - ref_len / sys_len) : 0.0;

  std::vector<double> precisions(orders, 0.0);
  double smooth = 1.0;
  int eff_order = orders;
  for (int n = 1; n <= orders; ++n) {
    if (total[n - 1] == 0) break;
    if (cfg.effective_order) eff_order = n;
    if (correct[n - 1] == 0) {
      smooth *= 2.0;
      precisions[n - 1] = 100.0 / (smooth * static_cast<double>(total[n - 1]));
    } else {
      precisions[n - 1] = 100.0 * static_cast<double>(correct[n - 1]) /
                          static_cast<double>(total[n - 1]);
    }
  }

  double sum = std::accumulate(precisions.begin(), precisions.end(), 0.0);
  if (sum == 0.0) return 0.0;
  // exp(log(100)) lands one ulp off 100 in libm, which would make
  // identical sentences score 100.00000000000004; return the exact value
  // the geometric mean has in that case so identity means exactly 100.
  if (bp == 1.0 &&
      std::all_of(precisions.begin(), precisions.end(),
                  [](double p) { return p == 100.0; }))
    return 100.0;
  double log_sum = 0.0;
  for (int n = 0; n < eff_order; ++n) log_sum += safe_log(precisions[n]);
  return bp * std::exp(log_sum / eff_order);
}

double sentence_chrf(std::string_view hyp, std::string_view ref,
                     const ChrfConfig& cfg) {
  if (cfg.char_order < 1)
    throw std::invalid_argument("sentence_chrf: char_order must be >= 1");
  if (cfg.word_order < 0)
    throw std::invalid_argument("sentence_chrf: word_order must be >= 0");
  if (cfg.beta <= 0.0)
    throw std::invalid_argument("sentence_chrf: beta must be positive");

  // Emptiness for chrF means no characters survive whitespace removal.
  auto stripped_empty = [](std::string_view s) {
    for (char32_t c : decode_utf8(s))
      if (!is_uni_space(c)) return false;
    return true;
  };
  bool hyp_empty = stripped_empty(hyp);
  bool ref_empty = stripped_empty(ref);
  if (hyp_empty && ref_empty)
    throw ValidationError(
        "sentence_chrf: hypothesis and reference are both empty");

  std::vector<std::string> hyp_words, ref_words;
  if (cfg.word_order > 0) {
    hyp_words = textnorm::tokenize_13a(hyp);
    ref_words = textnorm::tokenize_13a(ref);
  }

  const double beta_sq = cfg.beta * cfg.beta;
  double f_sum = 0.0;
  int eff_order = 0;
  for (int n = 1; n <= cfg.char_order + cfg.word_order; ++n) {
    textnorm::NGramProfile hp, rp;
    if (n <= cfg.char_order) {
      hp = textnorm::char_ngrams(hyp, n, /*strip_whitespace=*/true);
      rp = textnorm::char_ngrams(ref, n, /*strip_whitespace=*/true);
    } else {
      int wn = n - cfg.char_order;
      hp = textnorm::word_ngrams(hyp_words, wn);
      rp = textnorm::word_ngrams(ref_words, wn);
    }
    // An order contributes only when both sides produced n-grams;
    // this is what keeps identical short strings at exactly 100.
    if (hp.total == 0 || rp.total == 0) continue;
    ++eff_order;
    long long matched = clipped_matches(hp, rp);
    double prec = static_cast<double>(matched) / static_cast<double>(hp.total);
    double rec = static_cast<double>(matched) / static_cast<double>(rp.total);
    if (prec + rec > 0.0) {
      f_sum += (1.0 + beta_sq) * prec * rec / (beta_sq * prec + rec);
    }
  }
  if (eff_order == 0) return 0.0;
  return 100.0 * f_sum / eff_order;
}

std::vector<double> pairwise_scores(std::span<const std::string> candidates,
                                    const SentenceScorer& scorer) {
  if (candidates.size() < 2)
    throw ValidationError("pairwise_scores: need at least 2 candidates, got " +
                          std::to_string(candidates.size()));
  std::vector<double> scores;
  scores.reserve(candidates.size() * (candidates.size() - 1));
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (i == j) continue;
      scores.push_back(scorer(candidates[i], candidates[j]));
    }
  }
  return scores;
}

double i_score(std::span<const std::string> candidates,
               const SentenceScorer& scorer) {
  std::vector<double> scores = pairwise_scores(candidates, scorer);
  double mean = std::accumulate(scores.begin(), scores.end(), 0.0) /
                static_cast<double>(scores.size());
  return 100.0 - mean;
}

double i_bleu(std::span<const std::string> candidates, const BleuConfig& cfg) {
  return i_score(candidates, [&cfg](std::string_view h, std::string_view r) {
    return sentence_bleu(h, r, cfg);
  });
}

double i_chrf(std::span<const std::string> candidates, const ChrfConfig& cfg) {
  return i_score(candidates, [&cfg](std::string_view h, std::string_view r) {
    return sentence_chrf(h, r, cfg);
  });
}

DatasetScore dataset_i_score(std::span<const CandidateGroup> groups,
                             const SentenceScorer& scorer, int workers) {
  if (groups.empty())
    throw ValidationError("dataset_i_score: no candidate groups");

  // Process in group-id order so results do not depend on input order.
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return groups[a].id < groups[b].id;
                   });

  std::vector<std::optional<double>> values(groups.size());
  std::vector<std::string> messages(groups.size());
  parallel_for(groups.size(), workers, [&](std::size_t rank) {
    const CandidateGroup& g = groups[order[rank]];
    try {
      values[rank] = i_score(g.candidates, scorer);
    } catch (const std::exception& e) {
      messages[rank] = g.id + ": " + e.what();
    }
  });

  DatasetScore result;
  double sum = 0.0;
  for (std::size_t rank = 0; rank < groups.size(); ++rank) {
    if (values[rank]) {
      result.per_group.push_back({groups[order[rank]].id, *values[rank]});
      sum += *values[rank];
    } else {
      ++result.failed;
      if (result.errors.size() < 10) result.errors.push_back(messages[rank]);
    }
  }
  if (result.per_group.empty())
    throw ValidationError("dataset_i_score: every group failed to score");
  result.aggregate = sum / static_cast<double>(result.per_group.size());
  return result;
}

}  // namespace btdiv::lexdiv

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "btdiv/seqmodel.hpp"

namespace btdiv::ngram_model {

// Count-based n-gram model with additive smoothing and backoff: the
// longest observed context window wins; unseen continuations share alpha
// mass over the emittable vocabulary (everything but BOS).
class NGramModel final : public seqmodel::SequenceModel {
 public:
  struct Params {
    int order = 3;
    double alpha = 0.1;
  };

  NGramModel() = default;

  // Trains on whitespace-tokenized lines.  Throws ValidationError for an
  // empty corpus, order < 1 or alpha < 0.
  static NGramModel train(std::span<const std::string> lines,
                          const Params& params);

  const seqmodel::Vocabulary& vocab() const override { return vocab_; }
  void next_distribution(std::span<const int> prefix,
                         std::vector<double>& out) const override;

  // P(token | prefix) through the same backoff as next_distribution.
  double token_prob(std::span<const int> prefix, int token) const;

  // exp(-mean log prob) over all emissions (each token plus the closing
  // EOS).  Returns +inf when any emission has zero probability.
  double perplexity(std::span<const std::string> lines) const;

  const Params& params() const { return params_; }
  std::size_t context_count() const { return contexts_.size(); }

  // Canonical JSON on disk; save output is byte-stable for a given model.
  void save(const std::string& path) const;
  static NGramModel load(const std::string& path);

 private:
  struct ContextStats {
    long long total = 0;
    std::vector<std::pair<int, long long>> counts;  // sorted by token id
  };

  static std::string pack_key(std::span<const int> ids);
  const ContextStats* resolve(std::span<const int> context) const;
  std::vector<int> context_window(std::span<const int> prefix) const;

  Params params_;
  seqmodel::Vocabulary vocab_;
  std::unordered_map<std::string, ContextStats> contexts_;
};

// Convenience wrapper for whitespace tokenization shared by training,
// perplexity and prompt encoding.
std::vector<std::string> split_ws(std::string_view line);

}  // namespace btdiv::ngram_model

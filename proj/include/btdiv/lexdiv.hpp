#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "btdiv/candidates.hpp"

namespace btdiv::lexdiv {

// Sentence-BLEU settings matching the sacreBLEU signature
// nrefs:1|case:mixed|eff:no|tok:13a|smooth:exp.
struct BleuConfig {
  int max_order = 4;
  bool effective_order = false;  // eff:no
};

// Sentence-chrF settings matching chrF2 defaults
// (nc:6|nw:0|space:no|case:mixed|eff:yes).
struct ChrfConfig {
  int char_order = 6;
  int word_order = 0;
  double beta = 2.0;
};

// Smoothed sentence BLEU on the 0-100 scale.  Throws ValidationError when
// hypothesis and reference are both empty after tokenization.
double sentence_bleu(std::string_view hyp, std::string_view ref,
                     const BleuConfig& cfg = {});

// Sentence chrF on the 0-100 scale.  Emptiness is judged after whitespace
// removal; empty hypothesis against a non-empty reference scores 0.
double sentence_chrf(std::string_view hyp, std::string_view ref,
                     const ChrfConfig& cfg = {});

using SentenceScorer =
    std::function<double(std::string_view hyp, std::string_view ref)>;

// All k*(k-1) ordered pairwise scores within a candidate set, row-major by
// (hyp index, ref index).  Throws ValidationError when k < 2.
std::vector<double> pairwise_scores(std::span<const std::string> candidates,
                                    const SentenceScorer& scorer);

// 100 minus the mean ordered pairwise score: 0 when every pair scores 100,
// approaching 100 as candidates diverge.
double i_score(std::span<const std::string> candidates,
               const SentenceScorer& scorer);

double i_bleu(std::span<const std::string> candidates,
              const BleuConfig& cfg = {});
double i_chrf(std::span<const std::string> candidates,
              const ChrfConfig& cfg = {});

struct GroupScore {
  std::string id;
  double value = 0.0;
};

struct DatasetScore {
  double aggregate = 0.0;              // mean of per-group i_scores
  std::vector<GroupScore> per_group;   // sorted by group id
  std::size_t failed = 0;              // groups whose pairs raised errors
  std::vector<std::string> errors;     // first few failure messages
};

// Scores every group and averages; groups are processed in group-id order
// so the aggregate is independent of input order and worker count.
// Failing groups are tallied and excluded from the mean.  Throws
// ValidationError when no group can be scored.
DatasetScore dataset_i_score(std::span<const CandidateGroup> groups,
                             const SentenceScorer& scorer, int workers = 1);

}  // namespace btdiv::lexdiv

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "btdiv/candidates.hpp"
#include "btdiv/seqmodel.hpp"
#include "btdiv/util.hpp"

namespace btdiv::decoders {

struct DecodeConfig {
  int max_len = 30;       // generated tokens before a forced stop
  int beam_size = 5;
  double nucleus_p = 0.95;
};

struct Hypothesis {
  std::vector<int> tokens;  // prompt + generated, BOS/EOS excluded
  double log_prob = 0.0;    // over generated tokens only
  bool complete = true;     // reached EOS within max_len
};

// Nucleus (top-p) truncation: keep the smallest probability-sorted prefix
// whose cumulative mass reaches p, renormalize, zero the rest.  When the
// entire support is needed the input comes back unchanged, which makes
// p = 1 bit-identical to no truncation.
std::vector<double> truncate_nucleus(std::span<const double> dist, double p);

// Inverse-CDF draw; zero-probability entries can never be selected.
int sample_index(std::span<const double> dist, Rng& rng);

// One ancestral sample from the model continuing `prompt`.
Hypothesis sample_sequence(const seqmodel::SequenceModel& model,
                           std::span<const int> prompt, int max_len, Rng& rng);

// Ancestral sampling with nucleus truncation at each step.
Hypothesis sample_sequence_nucleus(const seqmodel::SequenceModel& model,
                                   std::span<const int> prompt, int max_len,
                                   double p, Rng& rng);

// Length-unnormalized beam search.  Finished hypotheses leave the beam and
// compete in their own pool; search stops early once the best active score
// can no longer beat the worst kept finished score.  Ties break on higher
// log-probability, then lexicographically smaller token sequence, so
// results are exactly reproducible.  When fewer than n_best finish, the
// best active hypotheses pad the result flagged incomplete.
std::vector<Hypothesis> beam_search(const seqmodel::SequenceModel& model,
                                    std::span<const int> prompt,
                                    const DecodeConfig& cfg, int n_best);

enum class Strategy { kBeam, kSampling, kNucleus };

Strategy parse_strategy(std::string_view name);  // throws ValidationError
std::string strategy_name(Strategy s);

struct GenerationSpec {
  Strategy strategy = Strategy::kNucleus;
  int num_candidates = 3;  // k per group
  DecodeConfig decode;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct GenerationResult {
  std::vector<CandidateGroup> groups;
  std::size_t incomplete = 0;  // hypotheses cut off at max_len
  std::size_t failed = 0;      // groups dropped (tallied, stream continues)
  std::vector<std::string> errors;
};

// One candidate group per prompt (use empty strings for unconditioned
// generation).  Sampling draws get an independent generator seeded per
// (group, draw), so outputs do not depend on worker count or run order.
GenerationResult generate_candidates(const seqmodel::SequenceModel& model,
                                     std::span<const std::string> prompts,
                                     const GenerationSpec& spec);

}  // namespace btdiv::decoders

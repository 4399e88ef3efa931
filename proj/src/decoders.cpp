#include "btdiv/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "btdiv/ngram_model.hpp"

namespace btdiv::decoders {

using seqmodel::SequenceModel;
using seqmodel::Vocabulary;

std::vector<double> truncate_nucleus(std::span<const double> dist, double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("truncate_nucleus: p must be in (0, 1]");
  if (dist.empty())
    throw std::invalid_argument("truncate_nucleus: empty distribution");

  std::vector<int> order(dist.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dist[a] > dist[b]; });

  double cum = 0.0;
  std::size_t kept = 0;
  while (kept < order.size()) {
    cum += dist[order[kept]];
    ++kept;
    if (cum >= p) break;
  }
  if (kept == order.size()) {
    // Full support required (p = 1 or probability shortfall): hand the
    // distribution back untouched so this case is bit-identical to
    // unrestricted sampling.
    return std::vector<double>(dist.begin(), dist.end());
  }
  std::vector<double> out(dist.size(), 0.0);
  for (std::size_t i = 0; i < kept; ++i)
    out[order[i]] = dist[order[i]] / cum;
  return out;
}

int sample_index(std::span<const double> dist, Rng& rng) {
  double r = rng.uniform();
  double cum = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0.0) continue;
    cum += dist[i];
    last_positive = static_cast<int>(i);
    if (r < cum) return last_positive;
  }
  if (last_positive < 0)
    throw std::invalid_argument("sample_index: distribution has no mass");
  // Floating-point shortfall: the cumulative sum landed a hair under 1.
  return last_positive;
}

namespace {

Hypothesis run_sampling(const SequenceModel& model, std::span<const int> prompt,
                        int max_len, double nucleus_p, bool use_nucleus,
                        Rng& rng) {
  if (max_len < 1)
    throw std::invalid_argument("sampling: max_len must be >= 1");
  Hypothesis hyp;
  hyp.tokens.assign(prompt.begin(), prompt.end());
  std::vector<double> dist;
  for (int step = 0; step < max_len; ++step) {
    model.next_distribution(hyp.tokens, dist);
    if (use_nucleus) dist = truncate_nucleus(dist, nucleus_p);
    int tok = sample_index(dist, rng);
    hyp.log_prob += std::log(dist[tok]);
    if (tok == Vocabulary::kEos) return hyp;
    hyp.tokens.push_back(tok);
  }
  hyp.complete = false;
  return hyp;
}

}  // namespace

Hypothesis sample_sequence(const SequenceModel& model,
                           std::span<const int> prompt, int max_len,
                           Rng& rng) {
  return run_sampling(model, prompt, max_len, 1.0, false, rng);
}

Hypothesis sample_sequence_nucleus(const SequenceModel& model,
                                   std::span<const int> prompt, int max_len,
                                   double p, Rng& rng) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("nucleus sampling: p must be in (0, 1]");
  return run_sampling(model, prompt, max_len, p, true, rng);
}

std::vector<Hypothesis> beam_search(const SequenceModel& model,
                                    std::span<const int> prompt,
                                    const DecodeConfig& cfg, int n_best) {
  if (cfg.beam_size < 1)
    throw std::invalid_argument("beam_search: beam_size must be >= 1");
  if (n_best < 1 || n_best > cfg.beam_size)
    throw std::invalid_argument(
        "beam_search: n_best must be in [1, beam_size]");
  if (cfg.max_len < 1)
    throw std::invalid_argument("beam_search: max_len must be >= 1");

  struct Beam {
    std::vector<int> gen;  // generated ids, prompt excluded
    double log_prob = 0.0;
  };
  auto beam_less = [](const Beam& a, const Beam& b) {
    if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
    return a.gen < b.gen;
  };

  std::vector<Beam> active{Beam{}};
  std::vector<Beam> finished;
  std::vector<int> scratch(prompt.begin(), prompt.end());
  std::vector<double> dist;

  for (int step = 0; step < cfg.max_len && !active.empty(); ++step) {
    std::vector<Beam> expansions;
    expansions.reserve(active.size() * 8);
    for (const Beam& beam : active) {
      scratch.resize(prompt.size());
      scratch.insert(scratch.end(), beam.gen.begin(), beam.gen.end());
      model.next_distribution(scratch, dist);
      for (std::size_t tok = 0; tok < dist.size(); ++tok) {
        if (dist[tok] <= 0.0) continue;
        Beam next;
        next.gen = beam.gen;
        next.gen.push_back(static_cast<int>(tok));
        next.log_prob = beam.log_prob + std::log(dist[tok]);
        expansions.push_back(std::move(next));
      }
    }
    std::sort(expansions.begin(), expansions.end(), beam_less);
    if (expansions.size() > static_cast<std::size_t>(cfg.beam_size))
      expansions.resize(static_cast<std::size_t>(cfg.beam_size));

    active.clear();
    for (Beam& beam : expansions) {
      if (beam.gen.back() == Vocabulary::kEos) {
        beam.gen.pop_back();
        finished.push_back(std::move(beam));
      } else {
        active.push_back(std::move(beam));
      }
    }
    std::sort(finished.begin(), finished.end(), beam_less);
    if (finished.size() > static_cast<std::size_t>(n_best))
      finished.resize(static_cast<std::size_t>(n_best));

    // Scores only fall as sequences extend, so once the best active beam
    // is strictly below the worst kept finished score nothing can improve.
    if (finished.size() == static_cast<std::size_t>(n_best) &&
        !active.empty() && active.front().log_prob < finished.back().log_prob)
      break;
  }

  std::vector<Hypothesis> out;
  out.reserve(static_cast<std::size_t>(n_best));
  auto emit = [&](const Beam& beam, bool complete) {
    Hypothesis hyp;
    hyp.tokens.assign(prompt.begin(), prompt.end());
    hyp.tokens.insert(hyp.tokens.end(), beam.gen.begin(), beam.gen.end());
    hyp.log_prob = beam.log_prob;
    hyp.complete = complete;
    out.push_back(std::move(hyp));
  };
  for (const Beam& beam : finished) {
    if (out.size() == static_cast<std::size_t>(n_best)) break;
    emit(beam, true);
  }
  // Beams still running at max_len pad the tail, flagged.
  std::sort(active.begin(), active.end(), beam_less);
  for (const Beam& beam : active) {
    if (out.size() == static_cast<std::size_t>(n_best)) break;
    emit(beam, false);
  }
  return out;
}

Strategy parse_strategy(std::string_view name) {
  if (name == "beam") return Strategy::kBeam;
  if (name == "sampling") return Strategy::kSampling;
  if (name == "nucleus") return Strategy::kNucleus;
  throw ValidationError("unknown strategy '" + std::string(name) +
                        "' (expected beam, sampling or nucleus)");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kBeam: return "beam";
    case Strategy::kSampling: return "sampling";
    case Strategy::kNucleus: return "nucleus";
  }
  return "?";
}

GenerationResult generate_candidates(const SequenceModel& model,
                                     std::span<const std::string> prompts,
                                     const GenerationSpec& spec) {
  if (prompts.empty())
    throw ValidationError("generate_candidates: no prompts given");
  if (spec.num_candidates < 1)
    throw ValidationError("generate_candidates: need at least 1 candidate");
  if (spec.strategy == Strategy::kBeam &&
      spec.decode.beam_size < spec.num_candidates)
    throw ValidationError(
        "generate_candidates: beam_size smaller than candidate count");

  const Vocabulary& vocab = model.vocab();
  auto render = [&](std::span<const int> tokens) {
    std::string text;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) text += ' ';
      text += vocab.token(tokens[i]);
    }
    return text;
  };

  struct Slot {
    CandidateGroup group;
    bool ok = false;
    std::size_t incomplete = 0;
    std::string error;
  };
  std::vector<Slot> slots(prompts.size());

  parallel_for(prompts.size(), spec.workers, [&](std::size_t g) {
    Slot& slot = slots[g];
    char gid[16];
    std::snprintf(gid, sizeof(gid), "g%06zu", g);
    slot.group.id = gid;
    slot.group.source = prompts[g];
    try {
      std::vector<int> prompt_ids;
      for (const std::string& w : ngram_model::split_ws(prompts[g])) {
        int id = vocab.id(w);
        if (id < 0)
          throw ValidationError("prompt token not in vocabulary: '" + w + "'");
        if (id == Vocabulary::kBos || id == Vocabulary::kEos)
          throw ValidationError("prompt may not contain reserved tokens");
        prompt_ids.push_back(id);
      }

      if (spec.strategy == Strategy::kBeam) {
        std::vector<Hypothesis> hyps =
            beam_search(model, prompt_ids, spec.decode, spec.num_candidates);
        if (hyps.size() < static_cast<std::size_t>(spec.num_candidates))
          throw ValidationError("beam produced only " +
                                std::to_string(hyps.size()) + " hypotheses");
        for (const Hypothesis& h : hyps) {
          slot.group.candidates.push_back(render(h.tokens));
          if (!h.complete) ++slot.incomplete;
        }
      } else {
        for (int d = 0; d < spec.num_candidates; ++d) {
          Rng rng(derive_seed(spec.seed, g, static_cast<std::uint64_t>(d)));
          Hypothesis h =
              spec.strategy == Strategy::kSampling
                  ? sample_sequence(model, prompt_ids, spec.decode.max_len,
                                    rng)
                  : sample_sequence_nucleus(model, prompt_ids,
                                            spec.decode.max_len,
                                            spec.decode.nucleus_p, rng);
          slot.group.candidates.push_back(render(h.tokens));
          if (!h.complete) ++slot.incomplete;
        }
      }
      slot.ok = true;
    } catch (const std::exception& e) {
      slot.error = slot.group.id + ": " + e.what();
    }
  });

  GenerationResult result;
  result.groups.reserve(prompts.size());
  for (Slot& slot : slots) {
    if (slot.ok) {
      result.incomplete += slot.incomplete;
      result.groups.push_back(std::move(slot.group));
    } else {
      ++result.failed;
      if (result.errors.size() < 10) result.errors.push_back(slot.error);
    }
  }
  if (result.groups.empty())
    throw ValidationError("generate_candidates: every group failed");
  return result;
}

}  // namespace btdiv::decoders

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "btdiv/candidates.hpp"
#include "btdiv/util.hpp"

namespace btdiv::corpuslab {

struct CorpusStats {
  std::size_t lines = 0;
  std::size_t words = 0;           // wc -w semantics
  std::size_t vocab_size = 0;      // distinct words, exact
  double mean_sentence_length = 0.0;  // words per line
  double mean_word_length = 0.0;      // Unicode scalars, over occurrences
};

// Streaming accumulator; shards can be merged, and merge order does not
// change the result.
class CorpusAccumulator {
 public:
  void add_line(std::string_view line);
  void merge(const CorpusAccumulator& other);
  CorpusStats stats() const;

  const std::unordered_set<std::string>& vocab() const { return vocab_; }

 private:
  std::size_t lines_ = 0;
  std::size_t words_ = 0;
  std::size_t word_scalars_ = 0;  // total Unicode scalar count over words
  std::unordered_set<std::string> vocab_;
};

CorpusStats corpus_stats(std::span<const std::string> lines);

struct NeologismReport {
  std::size_t count = 0;             // distinct unknown words
  std::vector<std::string> sample;   // first occurrences, capped
};

// Words appearing in `lines` but not in the reference vocabulary.
NeologismReport find_neologisms(std::span<const std::string> lines,
                                const std::unordered_set<std::string>& known,
                                std::size_t sample_cap = 20);

// Algorithm R reservoir over a stream of candidate groups: uniform without
// replacement, deterministic for a fixed seed and input order.
class GroupReservoir {
 public:
  GroupReservoir(std::size_t capacity, std::uint64_t seed);

  void offer(CandidateGroup group);
  // Sampled groups sorted by id; the reservoir is left empty.
  std::vector<CandidateGroup> take();

  std::size_t seen() const { return seen_; }

 private:
  std::size_t capacity_;
  std::size_t seen_ = 0;
  Rng rng_;
  std::vector<CandidateGroup> kept_;
};

struct SampleSpec {
  std::size_t size = 30000;
  std::uint64_t seed = 0;
};

// Keeps every group when the stream is smaller than the requested size.
std::vector<CandidateGroup> sample_groups(std::span<const CandidateGroup> all,
                                          const SampleSpec& spec);

// Same reservoir draw over positions instead of values; the result is
// ordered by the id at each position.  sample_groups is defined in terms
// of this, so index-based callers stay in lockstep with it.
std::vector<std::size_t> sample_indices(std::span<const std::string> ids,
                                        const SampleSpec& spec);

}  // namespace btdiv::corpuslab

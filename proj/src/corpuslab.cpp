#include "btdiv/corpuslab.hpp"

#include <algorithm>

#include "btdiv/textnorm.hpp"

namespace btdiv::corpuslab {

namespace {

// Words as `wc -w` sees them: maximal runs of non-ASCII-whitespace bytes.
template <typename Fn>
void for_each_word(std::string_view line, Fn&& fn) {
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_ascii_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_ascii_space(line[i])) ++i;
    if (i > start) fn(line.substr(start, i - start));
  }
}

}  // namespace

void CorpusAccumulator::add_line(std::string_view line) {
  ++lines_;
  for_each_word(line, [&](std::string_view word) {
    ++words_;
    word_scalars_ += utf8_length(word);
    vocab_.emplace(word);
  });
}

void CorpusAccumulator::merge(const CorpusAccumulator& other) {
  lines_ += other.lines_;
  words_ += other.words_;
  word_scalars_ += other.word_scalars_;
  vocab_.insert(other.vocab_.begin(), other.vocab_.end());
}

CorpusStats CorpusAccumulator::stats() const {
  CorpusStats out;
  out.lines = lines_;
  out.words = words_;
  out.vocab_size = vocab_.size();
  out.mean_sentence_length =
      lines_ ? static_cast<double>(words_) / static_cast<double>(lines_) : 0.0;
  out.mean_word_length =
      words_ ? static_cast<double>(word_scalars_) / static_cast<double>(words_)
             : 0.0;
  return out;
}

CorpusStats corpus_stats(std::span<const std::string> lines) {
  CorpusAccumulator acc;
  for (const std::string& line : lines) acc.add_line(line);
  return acc.stats();
}

NeologismReport find_neologisms(std::span<const std::string> lines,
                                const std::unordered_set<std::string>& known,
                                std::size_t sample_cap) {
  NeologismReport out;
  std::unordered_set<std::string> seen;
  for (const std::string& line : lines) {
    for_each_word(line, [&](std::string_view word) {
      std::string w(word);
      if (known.count(w) || !seen.insert(w).second) return;
      ++out.count;
      if (out.sample.size() < sample_cap) out.sample.push_back(std::move(w));
    });
  }
  return out;
}

GroupReservoir::GroupReservoir(std::size_t capacity, std::uint64_t seed)
    : capacity_(capacity), rng_(seed) {
  if (capacity_ == 0)
    throw ValidationError("GroupReservoir: capacity must be positive");
}

void GroupReservoir::offer(CandidateGroup group) {
  if (kept_.size() < capacity_) {
    kept_.push_back(std::move(group));
  } else {
    std::uint64_t j = rng_.below(static_cast<std::uint64_t>(seen_) + 1);
    if (j < capacity_) kept_[static_cast<std::size_t>(j)] = std::move(group);
  }
  ++seen_;
}

std::vector<CandidateGroup> GroupReservoir::take() {
  std::vector<CandidateGroup> out = std::move(kept_);
  kept_.clear();
  std::stable_sort(out.begin(), out.end(),
                   [](const CandidateGroup& a, const CandidateGroup& b) {
                     return a.id < b.id;
                   });
  return out;
}

std::vector<std::size_t> sample_indices(std::span<const std::string> ids,
                                        const SampleSpec& spec) {
  if (spec.size == 0)
    throw ValidationError("sample_indices: sample size must be positive");
  std::vector<std::size_t> kept;
  kept.reserve(std::min(spec.size, ids.size()));
  Rng rng(spec.seed);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (kept.size() < spec.size) {
      kept.push_back(i);
    } else {
      std::uint64_t j = rng.below(static_cast<std::uint64_t>(i) + 1);
      if (j < spec.size) kept[static_cast<std::size_t>(j)] = i;
    }
  }
  std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    if (ids[a] != ids[b]) return ids[a] < ids[b];
    return a < b;
  });
  return kept;
}

std::vector<CandidateGroup> sample_groups(std::span<const CandidateGroup> all,
                                          const SampleSpec& spec) {
  std::vector<std::string> ids;
  ids.reserve(all.size());
  for (const CandidateGroup& g : all) ids.push_back(g.id);
  std::vector<CandidateGroup> out;
  for (std::size_t i : sample_indices(ids, spec)) out.push_back(all[i]);
  return out;
}

}  // namespace btdiv::corpuslab

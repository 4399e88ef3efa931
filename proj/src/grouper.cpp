#include "btdiv/grouper.hpp"

#include <algorithm>
#include <map>

#include "btdiv/util.hpp"

namespace btdiv::grouper {

Partition partition_by_signature(
    std::span<const std::optional<treebank::ParseTree>> trees) {
  Partition out;
  out.total = trees.size();
  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (!trees[i]) {
      ++out.unparsed;
      continue;
    }
    if (trees[i]->is_leaf()) {
      // A bare pre-terminal root has no first split to read.
      ++out.unparsed;
      continue;
    }
    buckets[treebank::first_split_signature(*trees[i]).canonical()]
        .push_back(i);
  }
  out.buckets.reserve(buckets.size());
  for (auto& [sig, lines] : buckets)
    out.buckets.push_back({sig, std::move(lines)});
  std::stable_sort(out.buckets.begin(), out.buckets.end(),
                   [](const SignatureBucket& a, const SignatureBucket& b) {
                     if (a.lines.size() != b.lines.size())
                       return a.lines.size() > b.lines.size();
                     return a.signature < b.signature;
                   });
  return out;
}

std::vector<FinetuneSet> build_finetune_sets(const Partition& partition,
                                             const FinetuneSpec& spec) {
  if (spec.num_sets < 1)
    throw std::invalid_argument("build_finetune_sets: num_sets must be >= 1");
  if (partition.buckets.size() < spec.num_sets)
    throw ValidationError("build_finetune_sets: only " +
                          std::to_string(partition.buckets.size()) +
                          " signature buckets for " +
                          std::to_string(spec.num_sets) + " sets");

  std::vector<FinetuneSet> sets;
  sets.reserve(spec.num_sets);
  std::size_t next = 0;
  for (; next < spec.num_sets; ++next) {
    const SignatureBucket& b = partition.buckets[next];
    FinetuneSet set;
    set.signatures.push_back(b.signature);
    set.lines = b.lines;
    sets.push_back(std::move(set));
  }

  if (spec.merge_next_until_min && spec.min_size > 0) {
    FinetuneSet& last = sets.back();
    while (last.lines.size() < spec.min_size &&
           next < partition.buckets.size()) {
      const SignatureBucket& b = partition.buckets[next++];
      last.signatures.push_back(b.signature);
      last.lines.insert(last.lines.end(), b.lines.begin(), b.lines.end());
    }
    if (last.lines.size() < spec.min_size) last.below_min = true;
  }
  return sets;
}

std::vector<HistogramEntry> signature_histogram(const Partition& partition,
                                                std::size_t top_n) {
  if (top_n < 1)
    throw std::invalid_argument("signature_histogram: top_n must be >= 1");
  std::vector<HistogramEntry> out;
  out.reserve(std::min(top_n, partition.buckets.size()));
  for (const SignatureBucket& b : partition.buckets) {
    if (out.size() == top_n) break;
    out.push_back({b.signature, b.lines.size()});
  }
  return out;
}

}  // namespace btdiv::grouper

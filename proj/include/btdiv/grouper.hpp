#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "btdiv/treebank.hpp"

namespace btdiv::grouper {

// Sentences sharing a first-split signature.  `lines` holds indices into
// the parallel source/target arrays the partition was built from.
struct SignatureBucket {
  std::string signature;
  std::vector<std::size_t> lines;
};

struct Partition {
  std::vector<SignatureBucket> buckets;  // size desc, ties by signature asc
  std::size_t unparsed = 0;  // missing/malformed parses or leaf-only roots
  std::size_t total = 0;     // all input lines
};

// Buckets parallel corpus lines by the first split of their target-side
// parse.  `trees` is line-aligned with the corpus; nullopt = no parse.
Partition partition_by_signature(
    std::span<const std::optional<treebank::ParseTree>> trees);

struct FinetuneSpec {
  std::size_t num_sets = 3;
  std::size_t min_size = 0;       // 0 disables the merge rule
  bool merge_next_until_min = false;
};

struct FinetuneSet {
  std::vector<std::string> signatures;  // >1 after merging
  std::vector<std::size_t> lines;
  bool below_min = false;  // merge rule ran out of buckets before min_size
};

// Takes the num_sets largest buckets (size desc, ties by signature asc).
// With merge_next_until_min, successive next-largest buckets are folded
// into the last set until it reaches min_size; exhausting the buckets
// leaves the set flagged below_min rather than failing.  Throws
// ValidationError when fewer than num_sets buckets exist at all.
std::vector<FinetuneSet> build_finetune_sets(const Partition& partition,
                                             const FinetuneSpec& spec);

struct HistogramEntry {
  std::string signature;
  std::size_t count = 0;
};

// Signature frequencies, most common first (ties by signature asc),
// truncated to top_n.
std::vector<HistogramEntry> signature_histogram(const Partition& partition,
                                                std::size_t top_n);

}  // namespace btdiv::grouper

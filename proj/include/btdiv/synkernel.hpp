#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "btdiv/treebank.hpp"

namespace btdiv::synkernel {

struct KernelConfig {
  double lambda = 0.4;       // fragment-size decay, in (0, 1]
  bool mask_terminals = true;
  std::string dummy = "x";
};

// Subset-tree kernel: counts common tree fragments where a production is
// either taken whole or not expanded at all, with lambda^size decay.
// Computed by the usual production-matched dynamic program, O(n1*n2).
double sst_kernel(const treebank::ParseTree& a, const treebank::ParseTree& b,
                  const KernelConfig& cfg = {});

// K(a,b) / sqrt(K(a,a) * K(b,b)), clamped to [0, 1].  Throws
// ValidationError when either self-kernel is not positive.
double normalized_similarity(const treebank::ParseTree& a,
                             const treebank::ParseTree& b,
                             const KernelConfig& cfg = {});

struct PairSimilarity {
  std::size_t first = 0;   // candidate indices within the group
  std::size_t second = 0;
  double similarity = 0.0;
};

struct GroupKernelScore {
  double difference = 0.0;  // 100 * (1 - mean pairwise similarity)
  std::vector<PairSimilarity> pairs;  // all unordered pairs scored
  std::size_t degenerate = 0;         // trees excluded for zero self-kernel
};

// Mean structural difference across all unordered pairs of parsed
// candidates in a group.  Throws ValidationError when fewer than two
// usable trees remain.
GroupKernelScore kernel_difference(std::span<const treebank::ParseTree> trees,
                                   const KernelConfig& cfg = {});

// Explicit fragment multiset for the same fragment space the kernel counts
// implicitly (at lambda = 1 the kernel equals the dot product of these
// multisets).  Fragments render as bracketed strings where an unexpanded
// child appears as its bare label.  Throws ValidationError when the total
// fragment count would exceed `cap`.
std::map<std::string, long long> enumerate_fragments(
    const treebank::ParseTree& tree, const KernelConfig& cfg = {},
    std::size_t cap = 1000000);

}  // namespace btdiv::synkernel

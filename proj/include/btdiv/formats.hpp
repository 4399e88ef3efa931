#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "btdiv/candidates.hpp"
#include "btdiv/treebank.hpp"

namespace btdiv::formats {

// Candidate sets ride in JSONL, one object per line:
//   {"id": "g000001", "source": "...", "candidates": ["...", ...]}
// `source` is optional.  Validation: unique non-empty ids, at least two
// candidates, and the same candidate count k on every line.
struct CandidateFile {
  std::vector<CandidateGroup> groups;
  std::size_t k = 0;
};

CandidateFile read_candidate_file(const std::string& path);
CandidateFile parse_candidate_lines(std::span<const std::string> lines,
                                    const std::string& origin);

std::string render_candidate_jsonl(std::span<const CandidateGroup> groups);
void write_candidate_file(const std::string& path,
                          std::span<const CandidateGroup> groups);

// Trees for candidate groups come in two layouts:
//   flat   — line-aligned with the flattened candidate list (group-major),
//            blank line = candidate with no parse;
//   blocks — one block of k tree lines per group, blocks separated by a
//            single blank line (no missing-parse lines in this layout).
enum class TreeLayout { kFlat, kBlocks };

TreeLayout parse_tree_layout(std::string_view name);

struct GroupTrees {
  // trees[g][c] parallels groups/candidates; nullopt = unusable parse.
  std::vector<std::vector<std::optional<treebank::ParseTree>>> trees;
  std::size_t missing = 0;
  std::size_t malformed = 0;
  std::vector<std::string> errors;
};

// Validates that the file supplies exactly k trees for each of n groups.
GroupTrees read_group_trees(const std::string& path, TreeLayout layout,
                            std::size_t n_groups, std::size_t k);

}  // namespace btdiv::formats

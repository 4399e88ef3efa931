#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace btdiv::treebank {

// Constituency tree node.  Leaves are pre-terminals carrying the surface
// terminal; internal nodes carry one or more children.
struct ParseTree {
  std::string label;
  std::string terminal;             // meaningful iff children.empty()
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
  std::size_t node_count() const;

  bool operator==(const ParseTree&) const = default;
};

// Malformed bracketed input; offset is in Unicode code points from the
// start of the line.
struct TreeParseError : std::runtime_error {
  std::size_t offset;
  TreeParseError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " (offset " + std::to_string(off) + ")"),
        offset(off) {}
};

// Parses one bracketed tree, e.g. "(S (NP (DT the) (NN cat)) (VP (VBD sat)))".
// -LRB-/-RRB- escapes in terminals are decoded; labels are kept verbatim.
ParseTree parse_bracketed(std::string_view line);

// Inverse of parse_bracketed up to whitespace normalization; terminals
// containing literal brackets are re-escaped.
std::string render_bracketed(const ParseTree& tree);

// Copy with every terminal replaced by `dummy`, so downstream kernels see
// pure structure.
ParseTree mask_terminals(const ParseTree& tree, std::string_view dummy = "x");

// The top production of a tree: root label plus the labels of its direct
// children, e.g. "S -> NP VP .".  Throws ValidationError when the root has
// no children (no split to read).
struct GroupSignature {
  std::string root;
  std::vector<std::string> child_labels;

  std::string canonical() const;
  bool operator==(const GroupSignature&) const = default;
};

GroupSignature first_split_signature(const ParseTree& tree);

// Line-aligned tree file: one tree per line, blank line = sentence with no
// parse.  Malformed lines become missing parses and are tallied, never
// silently dropped.
struct TreeFile {
  std::vector<std::optional<ParseTree>> trees;
  std::size_t missing = 0;    // blank lines
  std::size_t malformed = 0;  // lines that failed to parse
  std::vector<std::string> errors;  // first few messages, with line numbers
};

TreeFile read_tree_file(const std::string& path);
TreeFile parse_tree_lines(const std::vector<std::string>& lines);

}  // namespace btdiv::treebank

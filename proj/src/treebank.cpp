#include "btdiv/treebank.hpp"

#include "btdiv/util.hpp"

namespace btdiv::treebank {

namespace {

struct Cursor {
  const std::u32string& text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char32_t peek() const { return text[pos]; }
  void skip_space() {
    while (!done() && is_uni_space(text[pos])) ++pos;
  }
};

bool is_token_char(char32_t c) {
  return !is_uni_space(c) && c != U'(' && c != U')';
}

std::string read_token(Cursor& cur) {
  std::size_t start = cur.pos;
  while (!cur.done() && is_token_char(cur.peek())) ++cur.pos;
  return encode_utf8(
      std::u32string_view(cur.text.data() + start, cur.pos - start));
}

std::string unescape_terminal(std::string token) {
  if (token == "-LRB-") return "(";
  if (token == "-RRB-") return ")";
  return token;
}

std::string escape_terminal(const std::string& terminal) {
  if (terminal == "(") return "-LRB-";
  if (terminal == ")") return "-RRB-";
  return terminal;
}

ParseTree parse_node(Cursor& cur) {
  if (cur.done() || cur.peek() != U'(')
    throw TreeParseError("expected '('", cur.pos);
  ++cur.pos;
  cur.skip_space();

  ParseTree node;
  node.label = read_token(cur);
  if (node.label.empty())
    throw TreeParseError("missing node label", cur.pos);
  cur.skip_space();

  if (!cur.done() && cur.peek() == U'(') {
    while (!cur.done() && cur.peek() == U'(') {
      node.children.push_back(parse_node(cur));
      cur.skip_space();
    }
  } else {
    std::string terminal = read_token(cur);
    if (terminal.empty())
      throw TreeParseError("expected terminal or child after label", cur.pos);
    node.terminal = unescape_terminal(std::move(terminal));
    cur.skip_space();
  }

  if (cur.done() || cur.peek() != U')')
    throw TreeParseError("expected ')'", cur.pos);
  ++cur.pos;
  return node;
}

void render_node(const ParseTree& tree, std::string& out) {
  out += '(';
  out += tree.label;
  if (tree.is_leaf()) {
    out += ' ';
    out += escape_terminal(tree.terminal);
  } else {
    for (const ParseTree& child : tree.children) {
      out += ' ';
      render_node(child, out);
    }
  }
  out += ')';
}

}  // namespace

std::size_t ParseTree::node_count() const {
  std::size_t n = 1;
  for (const ParseTree& child : children) n += child.node_count();
  return n;
}

ParseTree parse_bracketed(std::string_view line) {
  std::u32string text = decode_utf8(line);
  Cursor cur{text};
  cur.skip_space();
  if (cur.done()) throw TreeParseError("empty input", cur.pos);
  ParseTree root = parse_node(cur);
  cur.skip_space();
  if (!cur.done())
    throw TreeParseError("trailing content after root", cur.pos);
  return root;
}

std::string render_bracketed(const ParseTree& tree) {
  std::string out;
  render_node(tree, out);
  return out;
}

ParseTree mask_terminals(const ParseTree& tree, std::string_view dummy) {
  ParseTree out;
  out.label = tree.label;
  if (tree.is_leaf()) {
    out.terminal = std::string(dummy);
  } else {
    out.children.reserve(tree.children.size());
    for (const ParseTree& child : tree.children)
      out.children.push_back(mask_terminals(child, dummy));
  }
  return out;
}

std::string GroupSignature::canonical() const {
  std::string out = root + " ->";
  for (const std::string& label : child_labels) {
    out += ' ';
    out += label;
  }
  return out;
}

GroupSignature first_split_signature(const ParseTree& tree) {
  if (tree.is_leaf())
    throw ValidationError(
        "first_split_signature: root has no children (label '" + tree.label +
        "')");
  GroupSignature sig;
  sig.root = tree.label;
  sig.child_labels.reserve(tree.children.size());
  for (const ParseTree& child : tree.children)
    sig.child_labels.push_back(child.label);
  return sig;
}

TreeFile parse_tree_lines(const std::vector<std::string>& lines) {
  TreeFile out;
  out.trees.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    bool blank = true;
    for (char32_t c : decode_utf8(lines[i])) {
      if (!is_uni_space(c)) {
        blank = false;
        break;
      }
    }
    if (blank) {
      out.trees.emplace_back(std::nullopt);
      ++out.missing;
      continue;
    }
    try {
      out.trees.emplace_back(parse_bracketed(lines[i]));
    } catch (const TreeParseError& e) {
      out.trees.emplace_back(std::nullopt);
      ++out.malformed;
      if (out.errors.size() < 10)
        out.errors.push_back("line " + std::to_string(i + 1) + ": " +
                             e.what());
    }
  }
  return out;
}

TreeFile read_tree_file(const std::string& path) {
  return parse_tree_lines(read_lines(path));
}

}  // namespace btdiv::treebank

#include "btdiv/synkernel.hpp"

#include <algorithm>
#include <cmath>

#include "btdiv/util.hpp"

namespace btdiv::synkernel {

namespace {

using treebank::ParseTree;

// Node list with production keys, so production equality is one string
// compare and matching pairs can be grouped up front.
struct FlatNode {
  std::string prod;
  std::vector<int> children;
};

struct FlatTree {
  std::vector<FlatNode> nodes;
};

int flatten_node(const ParseTree& t, FlatTree& out) {
  FlatNode node;
  if (t.is_leaf()) {
    node.prod = "L\x1f" + t.label + "\x1f" + t.terminal;
  } else {
    node.prod = "I\x1f" + t.label;
    for (const ParseTree& child : t.children) {
      node.prod += '\x1f';
      node.prod += child.label;
    }
  }
  int index = static_cast<int>(out.nodes.size());
  out.nodes.push_back(std::move(node));
  for (const ParseTree& child : t.children) {
    int ci = flatten_node(child, out);
    out.nodes[index].children.push_back(ci);
  }
  return index;
}

FlatTree flatten(const ParseTree& t) {
  FlatTree out;
  out.nodes.reserve(t.node_count());
  flatten_node(t, out);
  return out;
}

class KernelDP {
 public:
  KernelDP(const FlatTree& a, const FlatTree& b, double lambda)
      : a_(a), b_(b), lambda_(lambda),
        memo_(a.nodes.size() * b.nodes.size(), -1.0) {}

  double delta(int i, int j) {
    const FlatNode& x = a_.nodes[i];
    const FlatNode& y = b_.nodes[j];
    if (x.prod != y.prod) return 0.0;
    double& slot = memo_[static_cast<std::size_t>(i) * b_.nodes.size() + j];
    if (slot >= 0.0) return slot;
    // Same production implies same child count and child labels; only the
    // subtrees below can differ.
    double value = lambda_;
    for (std::size_t k = 0; k < x.children.size(); ++k)
      value *= 1.0 + delta(x.children[k], y.children[k]);
    slot = value;
    return value;
  }

  double sum() {
    double total = 0.0;
    for (int i = 0; i < static_cast<int>(a_.nodes.size()); ++i)
      for (int j = 0; j < static_cast<int>(b_.nodes.size()); ++j)
        total += delta(i, j);
    return total;
  }

 private:
  const FlatTree& a_;
  const FlatTree& b_;
  double lambda_;
  std::vector<double> memo_;
};

double kernel_on_flat(const FlatTree& a, const FlatTree& b, double lambda) {
  return KernelDP(a, b, lambda).sum();
}

void check_lambda(const KernelConfig& cfg) {
  if (!(cfg.lambda > 0.0 && cfg.lambda <= 1.0))
    throw std::invalid_argument("kernel lambda must be in (0, 1]");
}

FlatTree prepare(const ParseTree& t, const KernelConfig& cfg) {
  if (cfg.mask_terminals) return flatten(treebank::mask_terminals(t, cfg.dummy));
  return flatten(t);
}

// Fragment count below each node: leaf -> 1, internal -> prod(1 + child).
double count_fragments(const ParseTree& t, std::vector<double>* per_node) {
  double n = 1.0;
  for (const ParseTree& child : t.children)
    n *= 1.0 + count_fragments(child, per_node);
  per_node->push_back(n);
  return n;
}

void cross_product(const std::vector<std::vector<std::string>>& options,
                   std::size_t k, std::string& prefix,
                   std::vector<std::string>& out) {
  if (k == options.size()) {
    out.push_back(prefix + ")");
    return;
  }
  std::size_t mark = prefix.size();
  for (const std::string& opt : options[k]) {
    prefix += ' ';
    prefix += opt;
    cross_product(options, k + 1, prefix, out);
    prefix.resize(mark);
  }
}

std::vector<std::string> fragments_at(const ParseTree& t,
                                      std::map<std::string, long long>* all) {
  std::vector<std::string> mine;
  if (t.is_leaf()) {
    mine.push_back("(" + t.label + " " + t.terminal + ")");
  } else {
    // Options per child: the bare label (unexpanded) or any fragment
    // rooted at that child.
    std::vector<std::vector<std::string>> options;
    options.reserve(t.children.size());
    for (const ParseTree& child : t.children) {
      std::vector<std::string> opts;
      opts.push_back(child.label);
      for (std::string& f : fragments_at(child, all))
        opts.push_back(std::move(f));
      options.push_back(std::move(opts));
    }
    std::string prefix = "(" + t.label;
    cross_product(options, 0, prefix, mine);
  }
  for (const std::string& f : mine) ++(*all)[f];
  return mine;
}

}  // namespace

double sst_kernel(const ParseTree& a, const ParseTree& b,
                  const KernelConfig& cfg) {
  check_lambda(cfg);
  FlatTree fa = prepare(a, cfg);
  FlatTree fb = prepare(b, cfg);
  return kernel_on_flat(fa, fb, cfg.lambda);
}

double normalized_similarity(const ParseTree& a, const ParseTree& b,
                             const KernelConfig& cfg) {
  check_lambda(cfg);
  FlatTree fa = prepare(a, cfg);
  FlatTree fb = prepare(b, cfg);
  double kaa = kernel_on_flat(fa, fa, cfg.lambda);
  double kbb = kernel_on_flat(fb, fb, cfg.lambda);
  if (!(kaa > 0.0) || !(kbb > 0.0))
    throw ValidationError("normalized_similarity: degenerate self-kernel");
  double sim = kernel_on_flat(fa, fb, cfg.lambda) / std::sqrt(kaa * kbb);
  return std::clamp(sim, 0.0, 1.0);
}

GroupKernelScore kernel_difference(std::span<const ParseTree> trees,
                                   const KernelConfig& cfg) {
  check_lambda(cfg);
  if (trees.size() < 2)
    throw ValidationError("kernel_difference: need at least 2 parsed trees");

  std::vector<FlatTree> flat;
  std::vector<double> self;
  std::vector<std::size_t> usable;
  GroupKernelScore out;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    flat.push_back(prepare(trees[i], cfg));
    self.push_back(kernel_on_flat(flat.back(), flat.back(), cfg.lambda));
    if (self.back() > 0.0)
      usable.push_back(i);
    else
      ++out.degenerate;
  }
  if (usable.size() < 2)
    throw ValidationError(
        "kernel_difference: fewer than 2 trees with positive self-kernel");

  double sum = 0.0;
  for (std::size_t a = 0; a < usable.size(); ++a) {
    for (std::size_t b = a + 1; b < usable.size(); ++b) {
      std::size_t i = usable[a], j = usable[b];
      double sim = kernel_on_flat(flat[i], flat[j], cfg.lambda) /
                   std::sqrt(self[i] * self[j]);
      sim = std::clamp(sim, 0.0, 1.0);
      out.pairs.push_back({i, j, sim});
      sum += sim;
    }
  }
  out.difference = 100.0 * (1.0 - sum / static_cast<double>(out.pairs.size()));
  return out;
}

std::map<std::string, long long> enumerate_fragments(const ParseTree& tree,
                                                     const KernelConfig& cfg,
                                                     std::size_t cap) {
  ParseTree masked =
      cfg.mask_terminals ? treebank::mask_terminals(tree, cfg.dummy) : tree;
  std::vector<double> per_node;
  count_fragments(masked, &per_node);
  double total = 0.0;
  for (double n : per_node) total += n;
  if (!(total <= static_cast<double>(cap)))
    throw ValidationError("enumerate_fragments: fragment count " +
                          std::to_string(total) + " exceeds cap " +
                          std::to_string(cap));
  std::map<std::string, long long> all;
  fragments_at(masked, &all);
  return all;
}

}  // namespace btdiv::synkernel

#include "remy/tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace remy {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)),
      position_(position) {}

// ---------------------------------------------------------------- Vertex

Vertex::Vertex(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_)
    if (c != '0' && c != '1') throw TreeError("vertex word must be over {0,1}: " + bits_);
}

Vertex Vertex::parse(std::string_view text) {
  if (text == "e" || text.empty()) return root();
  return Vertex(std::string(text));
}

Vertex Vertex::parent() const {
  if (bits_.empty()) throw TreeError("the root has no parent");
  return Vertex(bits_.substr(0, bits_.size() - 1));
}

Vertex Vertex::sibling() const {
  if (bits_.empty()) throw TreeError("the root has no sibling");
  std::string s = bits_;
  s.back() = s.back() == '0' ? '1' : '0';
  return Vertex(std::move(s));
}

bool Vertex::is_prefix_of(const Vertex& other) const {
  return other.bits_.size() >= bits_.size() &&
         std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

// ---------------------------------------------------------------- BinaryTree

namespace {

std::string encode_nodes(const std::vector<BinaryTree::Node>& nodes) {
  // Preorder: a leaf contributes "()", an internal node "(" then its
  // children then ")". Closing parens are emitted when a subtree finishes.
  std::string out;
  out.reserve(2 * nodes.size());
  // Iterative to avoid recursion depth limits on deep combs.
  std::vector<std::pair<int, int>> work{{0, 0}};
  while (!work.empty()) {
    auto& [v, state] = work.back();
    const auto& n = nodes[static_cast<std::size_t>(v)];
    if (n.is_leaf()) {
      out += "()";
      work.pop_back();
      continue;
    }
    if (state == 0) {
      out += '(';
      state = 1;
      work.push_back({n.left, 0});
    } else if (state == 1) {
      state = 2;
      work.push_back({n.right, 0});
    } else {
      out += ')';
      work.pop_back();
    }
  }
  return out;
}

}  // namespace

BinaryTree::BinaryTree() : BinaryTree(std::vector<Node>{Node{}}) {}

BinaryTree::BinaryTree(std::vector<Node> nodes)
    : nodes_(std::move(nodes)), encoding_(encode_nodes(nodes_)) {}

BinaryTree BinaryTree::aleph() {
  return BinaryTree(std::vector<Node>{{1, 2, -1}, {-1, -1, 0}, {-1, -1, 0}});
}

BinaryTree BinaryTree::from_children(int root, std::span<const int> left,
                                     std::span<const int> right, std::vector<int>* remap) {
  std::vector<int> map(left.size(), -1);
  std::vector<Node> nodes;
  std::vector<std::pair<int, int>> stack{{root, -1}};  // (old index, new parent)
  while (!stack.empty()) {
    auto [v, parent] = stack.back();
    stack.pop_back();
    const int id = static_cast<int>(nodes.size());
    map[static_cast<std::size_t>(v)] = id;
    nodes.push_back(Node{-1, -1, parent});
    if (parent >= 0) {
      auto& p = nodes[static_cast<std::size_t>(parent)];
      (p.left < 0 ? p.left : p.right) = id;
    }
    const int l = left[static_cast<std::size_t>(v)];
    const int r = right[static_cast<std::size_t>(v)];
    if ((l < 0) != (r < 0)) throw TreeError("vertex with exactly one child");
    if (l >= 0) {
      stack.push_back({r, id});
      stack.push_back({l, id});
    }
  }
  if (remap) *remap = std::move(map);
  return BinaryTree(std::move(nodes));
}

Vertex BinaryTree::word(int i) const {
  std::string bits;
  for (int v = i; node(v).parent >= 0; v = node(v).parent)
    bits.push_back(node(node(v).parent).left == v ? '0' : '1');
  std::reverse(bits.begin(), bits.end());
  return Vertex(std::move(bits));
}

std::optional<int> BinaryTree::find(const Vertex& v) const {
  int cur = 0;
  for (char c : v.bits()) {
    if (is_leaf(cur)) return std::nullopt;
    cur = c == '0' ? node(cur).left : node(cur).right;
  }
  return cur;
}

std::set<Vertex> BinaryTree::words() const {
  std::set<Vertex> out;
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) out.insert(word(i));
  return out;
}

std::vector<int> BinaryTree::leaf_indices() const {
  std::vector<int> out;
  out.reserve(leaf_count());
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
    if (is_leaf(i)) out.push_back(i);
  return out;
}

std::vector<int> BinaryTree::subtree_leaf_counts() const {
  std::vector<int> c(nodes_.size(), 0);
  // Children follow their parent in preorder, so a reverse sweep suffices.
  for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
    const auto& n = node(i);
    c[static_cast<std::size_t>(i)] =
        n.is_leaf() ? 1 : c[static_cast<std::size_t>(n.left)] + c[static_cast<std::size_t>(n.right)];
  }
  return c;
}

std::vector<int> BinaryTree::depths() const {
  std::vector<int> d(nodes_.size(), 0);
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    d[i] = d[static_cast<std::size_t>(nodes_[i].parent)] + 1;
  return d;
}

// ---------------------------------------------------------------- word sets

BinaryTree validate_tree(const std::set<Vertex>& words) {
  if (!words.contains(Vertex::root())) throw TreeError("missing root e");
  for (const auto& w : words) {
    if (w.is_root()) continue;
    if (!words.contains(w.parent()))
      throw TreeError("missing prefix " + w.parent().to_string() + " of " + w.to_string());
    if (!words.contains(w.sibling()))
      throw TreeError("missing sibling " + w.sibling().to_string() + " of " + w.to_string());
  }
  // std::set order is lexicographic with prefixes first, i.e. preorder.
  std::vector<Vertex> order(words.begin(), words.end());
  std::vector<int> left(order.size(), -1), right(order.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto l = words.find(order[i].child(0));
    if (l == words.end()) continue;
    left[i] = static_cast<int>(std::distance(words.begin(), l));
    right[i] = static_cast<int>(std::distance(words.begin(), words.find(order[i].child(1))));
  }
  return BinaryTree::from_children(0, left, right);
}

std::set<Vertex> parse_word_set(std::string_view text) {
  std::set<Vertex> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw ParseError("empty word in word set", start);
    try {
      out.insert(Vertex::parse(item));
    } catch (const TreeError&) {
      throw ParseError("bad word '" + std::string(item) + "'", start);
    }
    start = end + 1;
  }
  return out;
}

std::string format_word_set(const BinaryTree& t) {
  std::string out;
  for (const auto& w : t.words()) {
    if (!out.empty()) out += ',';
    out += w.to_string();
  }
  return out;
}

// ---------------------------------------------------------------- counting

Integer catalan(unsigned m) { return binomial(2 * m, m) / (m + 1); }

Integer count_labeled_trees(unsigned n) { return rising_product(n + 1, 2 * n); }

std::vector<BinaryTree> enumerate_trees(unsigned m) {
  if (m > kMaxEnumerateInternal)
    throw TreeError("enumerate_trees: m=" + std::to_string(m) + " exceeds guard " +
                    std::to_string(kMaxEnumerateInternal));
  // All parenthesis encodings with m internal vertices, built by size.
  std::vector<std::vector<std::string>> by_size(m + 1);
  by_size[0] = {"()"};
  for (unsigned k = 1; k <= m; ++k)
    for (unsigned l = 0; l < k; ++l)
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[k - 1 - l]) by_size[k].push_back("(" + a + b + ")");
  auto& codes = by_size[m];
  std::sort(codes.begin(), codes.end());
  std::vector<BinaryTree> out;
  out.reserve(codes.size());
  for (const auto& c : codes) out.push_back(decode(c));
  return out;
}

// ---------------------------------------------------------------- vertices

namespace {

void require_member(const BinaryTree& t, const Vertex& v) {
  if (!t.contains(v)) throw TreeError("vertex " + v.to_string() + " is not in the tree");
}

}  // namespace

Vertex mrca(const BinaryTree& t, const Vertex& u, const Vertex& v) {
  require_member(t, u);
  require_member(t, v);
  const auto& a = u.bits();
  const auto& b = v.bits();
  const auto mm = std::mismatch(a.begin(), a.begin() + static_cast<long>(std::min(a.size(), b.size())),
                                b.begin());
  return Vertex(std::string(a.begin(), mm.first));
}

Order order_query(const BinaryTree& t, const Vertex& u, const Vertex& v) {
  require_member(t, u);
  require_member(t, v);
  if (u == v) return Order::equal;
  if (u.is_prefix_of(v))
    return v.bits()[u.depth()] == '0' ? Order::u_left_above_v : Order::u_right_above_v;
  if (v.is_prefix_of(u))
    return u.bits()[v.depth()] == '0' ? Order::v_left_above_u : Order::v_right_above_u;
  return Order::incomparable;
}

std::string to_string(Order o) {
  switch (o) {
    case Order::equal: return "equal";
    case Order::u_left_above_v: return "u<_L v";
    case Order::u_right_above_v: return "u<_R v";
    case Order::v_left_above_u: return "v<_L u";
    case Order::v_right_above_u: return "v<_R u";
    case Order::incomparable: return "incomparable";
  }
  return "?";
}

std::vector<Vertex> leaves_lex(const BinaryTree& t) {
  std::vector<Vertex> out;
  for (int i : t.leaf_indices()) out.push_back(t.word(i));
  return out;
}

// ---------------------------------------------------------------- Harris path

namespace {

template <typename Visit>
void contour(const BinaryTree& t, Visit&& visit) {
  // Emits (node, depth) at each step of the walk around the tree.
  std::vector<std::pair<int, int>> work{{0, 0}};  // (node, state)
  const auto depth = t.depths();
  while (!work.empty()) {
    auto& [v, state] = work.back();
    const auto& n = t.node(v);
    visit(v, depth[static_cast<std::size_t>(v)]);
    if (n.is_leaf() || state == 2) {
      work.pop_back();
      continue;
    }
    const int child = state == 0 ? n.left : n.right;
    ++state;
    work.push_back({child, 0});
  }
}

}  // namespace

HarrisPath harris_path(const BinaryTree& t) {
  HarrisPath p;
  p.heights.reserve(2 * t.vertex_count() - 1);
  contour(t, [&](int, int d) { p.heights.push_back(d); });
  return p;
}

std::vector<std::size_t> harris_leaf_steps(const BinaryTree& t) {
  std::vector<std::size_t> steps;
  std::size_t k = 0;
  contour(t, [&](int v, int) {
    if (t.is_leaf(v)) steps.push_back(k);
    ++k;
  });
  return steps;
}

BinaryTree harris_tree(const HarrisPath& path) {
  const auto& h = path.heights;
  if (h.empty()) throw TreeError("empty Harris path");
  if (h.front() != 0 || h.back() != 0) throw TreeError("Harris path must start and end at 0");
  for (std::size_t i = 0; i + 1 < h.size(); ++i)
    if (std::abs(h[i + 1] - h[i]) != 1 || h[i + 1] < 0)
      throw TreeError("bad Harris path step at index " + std::to_string(i));
  if (h.size() % 4 != 1) throw TreeError("Harris path length must be 4m+1");

  std::vector<int> left, right;
  auto new_node = [&] {
    left.push_back(-1);
    right.push_back(-1);
    return static_cast<int>(left.size()) - 1;
  };
  // Stack of (node, number of children opened so far).
  std::vector<std::pair<int, int>> stack{{new_node(), 0}};
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (h[i] > h[i - 1]) {
      auto& [parent, opened] = stack.back();
      if (opened == 2)
        throw TreeError("vertex with more than two children at index " + std::to_string(i));
      const int c = new_node();
      (opened == 0 ? left : right)[static_cast<std::size_t>(parent)] = c;
      ++opened;
      stack.push_back({c, 0});
    } else {
      if (stack.back().second == 1)
        throw TreeError("vertex with one child at index " + std::to_string(i));
      stack.pop_back();
    }
  }
  if (stack.size() != 1 || stack.back().second == 1) throw TreeError("malformed Harris path");
  return BinaryTree::from_children(0, left, right);
}

// ---------------------------------------------------------------- codecs

std::string encode(const BinaryTree& t) { return t.encoding(); }

BinaryTree decode(std::string_view text) {
  std::vector<int> left, right;
  std::size_t pos = 0;
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  };
  // Iterative parse: each frame is a node that has seen its '(' and owns
  // 0, 1 or 2 parsed children.
  struct Frame {
    int node;
    int children;
  };
  std::vector<Frame> stack;
  auto new_node = [&] {
    left.push_back(-1);
    right.push_back(-1);
    return static_cast<int>(left.size()) - 1;
  };
  expect('(');
  stack.push_back({new_node(), 0});
  while (!stack.empty()) {
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    auto& top = stack.back();
    if (text[pos] == '(') {
      if (top.children == 2) throw ParseError("more than two children", pos);
      ++pos;
      const int c = new_node();
      (top.children == 0 ? left : right)[static_cast<std::size_t>(top.node)] = c;
      ++top.children;
      stack.push_back({c, 0});
    } else if (text[pos] == ')') {
      if (top.children == 1) throw ParseError("internal vertex with one child", pos);
      ++pos;
      stack.pop_back();
    } else {
      throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    }
  }
  if (pos != text.size()) throw ParseError("trailing characters", pos);
  return BinaryTree::from_children(0, left, right);
}

BinaryTree parse_tree(std::string_view text) {
  if (!text.empty() && text.front() == '(') return decode(text);
  return validate_tree(parse_word_set(text));
}

std::string to_dot(const BinaryTree& t) {
  std::ostringstream os;
  os << "digraph tree {\n";
  for (int i = 0; i < static_cast<int>(t.vertex_count()); ++i) {
    os << "  n" << i << " [label=\"" << t.word(i).to_string() << "\""
       << (t.is_leaf(i) ? ", shape=box" : "") << "];\n";
  }
  for (int i = 0; i < static_cast<int>(t.vertex_count()); ++i) {
    const auto& n = t.node(i);
    if (n.is_leaf()) continue;
    os << "  n" << i << " -> n" << n.left << " [label=\"0\"];\n";
    os << "  n" << i << " -> n" << n.right << " [label=\"1\"];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------- surgery

namespace {

void child_arrays(const BinaryTree& t, std::vector<int>& left, std::vector<int>& right,
                  std::size_t extra) {
  left.assign(t.vertex_count() + extra, -1);
  right.assign(t.vertex_count() + extra, -1);
  for (std::size_t i = 0; i < t.vertex_count(); ++i) {
    left[i] = t.nodes()[i].left;
    right[i] = t.nodes()[i].right;
  }
}

}  // namespace

Graft graft(const BinaryTree& t, int v, bool subtree_left) {
  std::vector<int> left, right;
  child_arrays(t, left, right, 2);
  const int x = static_cast<int>(t.vertex_count());
  const int y = x + 1;
  const int p = t.node(v).parent;
  int root = 0;
  if (p < 0) {
    root = x;
  } else {
    auto& slot = t.node(p).left == v ? left[static_cast<std::size_t>(p)]
                                     : right[static_cast<std::size_t>(p)];
    slot = x;
  }
  left[static_cast<std::size_t>(x)] = subtree_left ? v : y;
  right[static_cast<std::size_t>(x)] = subtree_left ? y : v;
  Graft g;
  g.tree = BinaryTree::from_children(root, left, right, &g.remap);
  g.new_leaf = g.remap[static_cast<std::size_t>(y)];
  g.remap.resize(t.vertex_count());
  return g;
}

Prune prune(const BinaryTree& t, int leaf) {
  if (!t.is_leaf(leaf)) throw TreeError("prune: vertex is not a leaf");
  const int p = t.node(leaf).parent;
  if (p < 0) throw TreeError("prune: the single-vertex tree has no leaf to delete");
  const int s = t.node(p).left == leaf ? t.node(p).right : t.node(p).left;
  std::vector<int> left, right;
  child_arrays(t, left, right, 0);
  const int g = t.node(p).parent;
  int root = 0;
  if (g < 0) {
    root = s;
  } else {
    auto& slot = t.node(g).left == p ? left[static_cast<std::size_t>(g)]
                                     : right[static_cast<std::size_t>(g)];
    slot = s;
  }
  Prune out;
  out.tree = BinaryTree::from_children(root, left, right, &out.remap);
  return out;
}

Induced induced_subtree(const BinaryTree& t, std::span<const int> leaf_nodes) {
  if (leaf_nodes.empty()) throw TreeError("induced_subtree: empty leaf set");
  const auto n = t.vertex_count();
  std::vector<int> count(n, 0);
  for (int l : leaf_nodes) {
    if (l < 0 || static_cast<std::size_t>(l) >= n || !t.is_leaf(l))
      throw TreeError("induced_subtree: not a leaf");
    if (count[static_cast<std::size_t>(l)]++) throw TreeError("induced_subtree: repeated leaf");
  }
  for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
    const auto& nd = t.node(i);
    if (!nd.is_leaf())
      count[static_cast<std::size_t>(i)] =
          count[static_cast<std::size_t>(nd.left)] + count[static_cast<std::size_t>(nd.right)];
  }
  // A vertex survives iff it is a selected leaf or both sides are occupied;
  // survivors keep their nearest surviving descendants as children.
  auto descend = [&](int v) {
    while (!t.is_leaf(v)) {
      const auto& nd = t.node(v);
      const bool l = count[static_cast<std::size_t>(nd.left)] > 0;
      const bool r = count[static_cast<std::size_t>(nd.right)] > 0;
      if (l && r) return v;
      v = l ? nd.left : nd.right;
    }
    return v;
  };
  std::vector<int> left(n, -1), right(n, -1);
  for (int i = 0; i < static_cast<int>(n); ++i) {
    const auto& nd = t.node(i);
    if (nd.is_leaf() || count[static_cast<std::size_t>(nd.left)] == 0 ||
        count[static_cast<std::size_t>(nd.right)] == 0)
      continue;
    left[static_cast<std::size_t>(i)] = descend(nd.left);
    right[static_cast<std::size_t>(i)] = descend(nd.right);
  }
  Induced out;
  out.tree = BinaryTree::from_children(descend(0), left, right, &out.remap);
  return out;
}

// ---------------------------------------------------------------- labeled

LabeledBinaryTree::LabeledBinaryTree(BinaryTree tree, std::vector<int> leaf_labels)
    : tree_(std::move(tree)), labels_(std::move(leaf_labels)) {
  if (labels_.size() != tree_.leaf_count())
    throw TreeError("label count does not match leaf count");
  std::vector<char> seen(labels_.size() + 1, 0);
  for (int l : labels_) {
    if (l < 1 || static_cast<std::size_t>(l) > labels_.size() || seen[static_cast<std::size_t>(l)])
      throw TreeError("labels must be a bijection onto {1,...,m+1}");
    seen[static_cast<std::size_t>(l)] = 1;
  }
  node_labels_.assign(tree_.vertex_count(), 0);
  const auto leaves = tree_.leaf_indices();
  for (std::size_t k = 0; k < leaves.size(); ++k)
    node_labels_[static_cast<std::size_t>(leaves[k])] = labels_[k];
}

int LabeledBinaryTree::node_of_label(int label) const {
  const auto it = std::find(node_labels_.begin(), node_labels_.end(), label);
  if (label < 1 || it == node_labels_.end())
    throw TreeError("label " + std::to_string(label) + " is absent");
  return static_cast<int>(it - node_labels_.begin());
}

std::string encode_labeled(const LabeledBinaryTree& lt) {
  const auto& t = lt.tree();
  std::string out;
  std::function<void(int)> rec = [&](int v) {
    if (t.is_leaf(v)) {
      out += std::to_string(lt.label(v));
      return;
    }
    out += '(';
    rec(t.node(v).left);
    out += ',';
    rec(t.node(v).right);
    out += ')';
  };
  rec(0);
  return out;
}

LabeledBinaryTree decode_labeled(std::string_view text) {
  std::vector<int> left, right, label;
  std::size_t pos = 0;
  auto new_node = [&](int l) {
    left.push_back(-1);
    right.push_back(-1);
    label.push_back(l);
    return static_cast<int>(left.size()) - 1;
  };
  std::function<int()> rec = [&]() -> int {
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    if (text[pos] == '(') {
      ++pos;
      const int v = new_node(0);
      const int l = rec();
      if (pos >= text.size() || text[pos] != ',') throw ParseError("expected ','", pos);
      ++pos;
      const int r = rec();
      if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')'", pos);
      ++pos;
      left[static_cast<std::size_t>(v)] = l;
      right[static_cast<std::size_t>(v)] = r;
      return v;
    }
    const std::size_t start = pos;
    int value = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      value = value * 10 + (text[pos] - '0');
      if (value > 1000000) throw ParseError("label too large", start);
      ++pos;
    }
    if (pos == start) throw ParseError("expected label or '('", pos);
    return new_node(value);
  };
  const int root = rec();
  if (pos != text.size()) throw ParseError("trailing characters", pos);
  std::vector<int> remap;
  auto tree = BinaryTree::from_children(root, left, right, &remap);
  std::vector<int> by_new(tree.vertex_count(), 0);
  for (std::size_t i = 0; i < remap.size(); ++i)
    by_new[static_cast<std::size_t>(remap[i])] = label[i];
  std::vector<int> leaf_labels;
  for (int i : tree.leaf_indices()) leaf_labels.push_back(by_new[static_cast<std::size_t>(i)]);
  try {
    return LabeledBinaryTree(std::move(tree), std::move(leaf_labels));
  } catch (const TreeError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::vector<LabeledBinaryTree> enumerate_labeled_trees(unsigned n) {
  if (n > kMaxEnumerateLabeled)
    throw TreeError("enumerate_labeled_trees: n exceeds guard " +
                    std::to_string(kMaxEnumerateLabeled));
  std::vector<LabeledBinaryTree> out;
  std::vector<int> perm(n + 1);
  for (const auto& t : enumerate_trees(n)) {
    std::iota(perm.begin(), perm.end(), 1);
    do {
      out.emplace_back(t, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

LabeledBinaryTree relabel(const LabeledBinaryTree& lt, std::span<const int> sigma) {
  std::vector<int> labels;
  for (int l : lt.leaf_labels()) {
    if (static_cast<std::size_t>(l) >= sigma.size()) throw TreeError("relabel: short permutation");
    labels.push_back(sigma[static_cast<std::size_t>(l)]);
  }
  return LabeledBinaryTree(lt.tree(), std::move(labels));
}

LabeledBinaryTree spanned_labeled_subtree(const LabeledBinaryTree& lt,
                                          std::span<const int> labels) {
  std::vector<int> nodes;
  for (int l : labels) nodes.push_back(lt.node_of_label(l));
  auto induced = induced_subtree(lt.tree(), nodes);
  std::vector<int> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> by_new(induced.tree.vertex_count(), 0);
  for (int v : nodes) {
    const int rank = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), lt.label(v)) - sorted.begin());
    by_new[static_cast<std::size_t>(induced.remap[static_cast<std::size_t>(v)])] = rank + 1;
  }
  std::vector<int> leaf_labels;
  for (int i : induced.tree.leaf_indices())
    leaf_labels.push_back(by_new[static_cast<std::size_t>(i)]);
  return LabeledBinaryTree(std::move(induced.tree), std::move(leaf_labels));
}

}  // namespace remy

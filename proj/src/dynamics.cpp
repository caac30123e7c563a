#include "remy/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "remy/embedding.hpp"

namespace remy {

namespace {

int uniform_index(Rng& rng, std::size_t n) { return static_cast<int>(rng.below(n)); }

std::vector<int> carry_labels(const LabeledBinaryTree& lt, const BinaryTree& out,
                              const std::vector<int>& remap, int extra_node, int extra_label) {
  std::vector<int> by_node(out.vertex_count(), 0);
  const auto& t = lt.tree();
  for (int leaf : t.leaf_indices()) {
    const int to = remap[static_cast<std::size_t>(leaf)];
    if (to >= 0) by_node[static_cast<std::size_t>(to)] = lt.label(leaf);
  }
  if (extra_node >= 0) by_node[static_cast<std::size_t>(extra_node)] = extra_label;
  std::vector<int> labels;
  for (int leaf : out.leaf_indices()) labels.push_back(by_node[static_cast<std::size_t>(leaf)]);
  return labels;
}

LabeledBinaryTree labeled_graft(const LabeledBinaryTree& lt, int v, bool side) {
  const auto g = graft(lt.tree(), v, side);
  const int next = static_cast<int>(lt.leaf_count()) + 1;
  return {g.tree, carry_labels(lt, g.tree, g.remap, g.new_leaf, next)};
}

template <class T, class Step>
Law<T> push(const Law<T>& from, Step&& step) {
  Law<T> out;
  for (const auto& [state, mass] : from)
    for (const auto& [next, p] : step(state)) out[next] += mass * p;
  return out;
}

}  // namespace

BinaryTree remy_forward_step(const BinaryTree& t, Rng& rng) {
  const int v = uniform_index(rng, t.vertex_count());
  return graft(t, v, rng.coin()).tree;
}

TreeLaw forward_step_law(const BinaryTree& t) {
  TreeLaw law;
  const Rational p(1, 2 * static_cast<long>(t.vertex_count()));
  for (int v = 0; v < static_cast<int>(t.vertex_count()); ++v)
    for (bool side : {true, false}) law[graft(t, v, side).tree] += p;
  return law;
}

BinaryTree remy_chain(unsigned n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("remy_chain: n must be at least 1");
  BinaryTree t = BinaryTree::aleph();
  for (unsigned k = 1; k < n; ++k) t = remy_forward_step(t, rng);
  return t;
}

TreeLaw chain_law(unsigned n) {
  if (n < 1) throw std::invalid_argument("chain_law: n must be at least 1");
  TreeLaw law{{BinaryTree::aleph(), Rational(1)}};
  for (unsigned k = 1; k < n; ++k) law = push(law, forward_step_law);
  return law;
}

LabeledBinaryTree labeled_forward_step(const LabeledBinaryTree& lt, Rng& rng) {
  const int v = uniform_index(rng, lt.tree().vertex_count());
  return labeled_graft(lt, v, rng.coin());
}

LabeledLaw labeled_forward_step_law(const LabeledBinaryTree& lt) {
  LabeledLaw law;
  const auto n = lt.tree().vertex_count();
  const Rational p(1, 2 * static_cast<long>(n));
  for (int v = 0; v < static_cast<int>(n); ++v)
    for (bool side : {true, false}) law[labeled_graft(lt, v, side)] += p;
  return law;
}

BinaryTree backward_step(const BinaryTree& t, Rng& rng) {
  if (t.vertex_count() == 1) throw TreeError("backward_step: the single-vertex tree");
  const auto leaves = t.leaf_indices();
  return prune(t, leaves[rng.below(leaves.size())]).tree;
}

TreeLaw backward_step_law(const BinaryTree& t) {
  if (t.vertex_count() == 1) throw TreeError("backward_step: the single-vertex tree");
  TreeLaw law;
  const auto leaves = t.leaf_indices();
  const Rational p(1, static_cast<long>(leaves.size()));
  for (int leaf : leaves) law[prune(t, leaf).tree] += p;
  return law;
}

Rational backward_transition_prob(const BinaryTree& s, const BinaryTree& t) {
  if (t.leaf_count() != s.leaf_count() + 1)
    throw std::invalid_argument("backward_transition_prob: t must have one more leaf than s");
  return Rational(count_embeddings(s, t)) / static_cast<long>(t.leaf_count());
}

LabeledBinaryTree deterministic_unlabel_step(const LabeledBinaryTree& lt) {
  const int max_label = static_cast<int>(lt.leaf_count());
  if (max_label < 2) throw TreeError("deterministic_unlabel_step: nothing to remove");
  const auto pr = prune(lt.tree(), lt.node_of_label(max_label));
  return {pr.tree, carry_labels(lt, pr.tree, pr.remap, -1, 0)};
}

int extract_choice(const LabeledBinaryTree& lt) {
  const auto& labels = lt.leaf_labels();
  const auto it = std::find(labels.begin(), labels.end(), static_cast<int>(labels.size()));
  return static_cast<int>(it - labels.begin()) + 1;
}

ChoiceSequence choice_sequence(const LabeledBinaryTree& lt) {
  ChoiceSequence out;
  out.values.resize(lt.leaf_count() - 1);
  LabeledBinaryTree cur = lt;
  for (std::size_t k = out.values.size(); k >= 1; --k) {
    out.values[k - 1] = extract_choice(cur);
    cur = deterministic_unlabel_step(cur);
  }
  return out;
}

std::vector<BinaryTree> finite_bridge(const BinaryTree& target, Rng& rng) {
  if (target.leaf_count() < 2) throw TreeError("finite_bridge: target needs at least 2 leaves");
  std::vector<BinaryTree> path{target};
  while (path.back().leaf_count() > 2) path.push_back(backward_step(path.back(), rng));
  std::reverse(path.begin(), path.end());
  return path;
}

TreeLaw bridge_marginal(const BinaryTree& target, unsigned k) {
  const auto m = target.internal_count();
  if (k < 1 || k > m) throw std::invalid_argument("bridge_marginal: need 1 <= k <= m");
  TreeLaw law{{target, Rational(1)}};
  for (std::size_t level = m; level > k; --level) law = push(law, backward_step_law);
  return law;
}

SpineState spine_bridge_step(const SpineState& state, Rng& rng) {
  SpineState next = state;
  const auto slot = rng.below(state.tosses.size() + 1);
  next.tosses.insert(next.tosses.begin() + static_cast<std::ptrdiff_t>(slot),
                     static_cast<std::uint8_t>(rng.coin()));
  return next;
}

BinaryTree spine_tree(const SpineState& state) {
  std::set<Vertex> words{Vertex::root()};
  std::string prefix;
  for (auto bit : state.tosses) {
    if (bit > 1) throw TreeError("spine_tree: tosses must be bits");
    words.insert(Vertex(prefix + (bit ? '0' : '1')));
    prefix += bit ? '1' : '0';
    words.insert(Vertex(prefix));
  }
  return validate_tree(words);
}

SpineState spine_bridge(unsigned n, Rng& rng) {
  SpineState s;
  for (unsigned k = 0; k < n; ++k) s = spine_bridge_step(s, rng);
  return s;
}

namespace {

std::uint64_t truncate(std::uint64_t x, unsigned bits) {
  return bits >= 64 ? x : (bits == 0 ? 0 : x & (~std::uint64_t{0} << (64 - bits)));
}

struct StreamBuilder {
  std::vector<int> left, right;
  const std::vector<std::uint64_t>& xs;

  // xs[lo, hi) sorted and distinct.
  int build(std::size_t lo, std::size_t hi) {
    const int id = static_cast<int>(left.size());
    left.push_back(-1);
    right.push_back(-1);
    if (hi - lo == 1) return id;
    const std::uint64_t diff = xs[lo] ^ xs[hi - 1];
    const std::uint64_t bit = std::uint64_t{1} << (63 - std::countl_zero(diff));
    std::size_t mid = lo;
    while (!(xs[mid] & bit)) ++mid;
    const int l = build(lo, mid);
    const int r = build(mid, hi);
    left[static_cast<std::size_t>(id)] = l;
    right[static_cast<std::size_t>(id)] = r;
    return id;
  }
};

}  // namespace

BinaryTree tree_from_streams(std::span<const std::uint64_t> streams, unsigned bits) {
  if (streams.empty()) throw std::invalid_argument("tree_from_streams: no streams");
  if (bits < 1 || bits > kStreamBitCap)
    throw std::invalid_argument("tree_from_streams: bits must lie in 1..64");
  std::vector<std::uint64_t> xs;
  for (auto x : streams) xs.push_back(truncate(x, bits));
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw std::invalid_argument("tree_from_streams: two streams agree on every bit");
  StreamBuilder b{{}, {}, xs};
  b.build(0, xs.size());
  return BinaryTree::from_children(0, b.left, b.right);
}

BinaryTree dyadic_bridge_sample(unsigned n, Rng& rng, unsigned bits) {
  if (n < 1) throw std::invalid_argument("dyadic_bridge_sample: n must be at least 1");
  std::vector<std::uint64_t> xs(n + 1);
  for (auto& x : xs) x = truncate(rng.next_u64(), bits);
  unsigned retries = 0;
  for (;;) {
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
    bool clash = false;
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (xs[order[i]] == xs[order[i - 1]]) {
        xs[order[i]] = truncate(rng.next_u64(), bits);
        clash = true;
      }
    }
    if (!clash) break;
    if (++retries > kStreamRetryCap)
      throw std::runtime_error("dyadic_bridge_sample: stream collisions exceeded the retry cap");
  }
  return tree_from_streams(xs, bits);
}

}  // namespace remy

#include "remy/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "remy/dynamics.hpp"

namespace remy {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

void require_levels(const BinaryTree& s, const BinaryTree& t, const char* who) {
  if (t.leaf_count() < s.leaf_count())
    throw std::invalid_argument(std::string(who) + ": t has fewer leaves than s");
}

// 2^(c-1) - 1 for each internal vertex, with c its number of leaves.
Integer internal_factor_product(const BinaryTree& t) {
  const auto counts = t.subtree_leaf_counts();
  Integer p = 1;
  for (int v = 0; v < static_cast<int>(t.vertex_count()); ++v)
    if (!t.is_leaf(v)) p *= pow2(static_cast<unsigned>(counts[at(v)] - 1)) - 1;
  return p;
}

void require_branching(const BinaryTree& s, const char* who) {
  if (s.leaf_count() < 2) throw TreeError(std::string(who) + ": needs at least 2 leaves");
}

template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && static_cast<std::size_t>(idx[i - 1]) == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Integer count_embeddings(const BinaryTree& s, const BinaryTree& t) {
  const auto a = s.vertex_count();
  const auto b = t.vertex_count();
  if (s.leaf_count() > t.leaf_count()) return 0;
  std::vector<Integer> exact(a * b), below(a * b);
  auto idx = [b](int u, int v) { return at(u) * b + at(v); };
  for (int v = static_cast<int>(b) - 1; v >= 0; --v) {
    const auto& tv = t.node(v);
    for (int u = static_cast<int>(a) - 1; u >= 0; --u) {
      const auto& su = s.node(u);
      Integer& e = exact[idx(u, v)];
      if (su.is_leaf())
        e = tv.is_leaf() ? 1 : 0;
      else if (!tv.is_leaf())
        e = below[idx(su.left, tv.left)] * below[idx(su.right, tv.right)];
      Integer& h = below[idx(u, v)];
      h = e;
      if (!tv.is_leaf()) h += below[idx(u, tv.left)] + below[idx(u, tv.right)];
    }
  }
  return below[idx(0, 0)];
}

std::vector<Embedding> enumerate_embeddings(const BinaryTree& s, const BinaryTree& t) {
  if (t.leaf_count() > kMaxEmbeddingLeaves)
    throw std::invalid_argument("enumerate_embeddings: t has more than " +
                                std::to_string(kMaxEmbeddingLeaves) + " leaves");
  std::vector<Embedding> out;
  if (s.leaf_count() > t.leaf_count()) return out;
  const auto leaves = t.leaf_indices();
  std::vector<int> chosen(s.leaf_count());
  for_each_subset(leaves.size(), chosen.size(), [&](const std::vector<int>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) chosen[i] = leaves[at(idx[i])];
    const auto ind = induced_subtree(t, chosen);
    if (!(ind.tree == s)) return;
    Embedding e;
    e.image.assign(s.vertex_count(), -1);
    for (std::size_t v = 0; v < ind.remap.size(); ++v)
      if (ind.remap[v] >= 0) e.image[at(ind.remap[v])] = static_cast<int>(v);
    out.push_back(std::move(e));
  });
  return out;
}

BinaryTree spanned_subtree(const BinaryTree& t, const std::set<Vertex>& leaves) {
  if (leaves.empty()) throw TreeError("spanned_subtree: empty leaf set");
  std::vector<int> nodes;
  for (const auto& w : leaves) {
    const auto i = t.find(w);
    if (!i || !t.is_leaf(*i)) throw TreeError("spanned_subtree: " + w.to_string() + " is not a leaf");
    nodes.push_back(*i);
  }
  return induced_subtree(t, nodes).tree;
}

BinaryTree sample_spanned_subtree(const BinaryTree& t, unsigned m, Rng& rng) {
  auto leaves = t.leaf_indices();
  if (m + 1 > leaves.size()) throw std::invalid_argument("sample_spanned_subtree: m too large");
  for (std::size_t i = 0; i <= m; ++i) {
    const auto j = i + rng.below(leaves.size() - i);
    std::swap(leaves[i], leaves[j]);
  }
  leaves.resize(m + 1);
  return induced_subtree(t, leaves).tree;
}

TreeLaw spanned_subtree_law(const BinaryTree& t, unsigned m) {
  const auto leaves = t.leaf_indices();
  if (m + 1 > leaves.size()) throw std::invalid_argument("spanned_subtree_law: m too large");
  TreeLaw law;
  const Rational w = Rational(1) / Rational(binomial(static_cast<unsigned>(leaves.size()), m + 1));
  std::vector<int> chosen(m + 1);
  for_each_subset(leaves.size(), m + 1, [&](const std::vector<int>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) chosen[i] = leaves[at(idx[i])];
    law[induced_subtree(t, chosen).tree] += w;
  });
  return law;
}

Rational transition_prob(const BinaryTree& s, const BinaryTree& t) {
  require_levels(s, t, "transition_prob");
  const auto m = static_cast<unsigned>(s.internal_count());
  const auto n = static_cast<unsigned>(t.internal_count()) - m;
  Integer den = pow2(n);
  for (unsigned k = m; k < m + n; ++k) den *= 2 * k + 1;
  return Rational(factorial(n) * count_embeddings(s, t), den);
}

Rational martin_kernel(const BinaryTree& s, const BinaryTree& t) {
  require_levels(s, t, "martin_kernel");
  const auto m = static_cast<unsigned>(s.internal_count());
  const auto n = static_cast<unsigned>(t.internal_count()) - m;
  return Rational(pow2(m) * double_factorial_odd(m) * count_embeddings(s, t),
                  rising_product(n + 1, m + n + 1));
}

bool kernel_identity_check(const BinaryTree& i, const BinaryTree& k, const Kernel& kernel) {
  Rational lhs = 0;
  for (const auto& [j, p] : forward_step_law(i)) lhs += p * kernel(j, k);
  return lhs == kernel(i, k);
}

Rational kappa_shape_prob(const BinaryTree& s) {
  require_branching(s, "kappa_shape_prob");
  const auto m = static_cast<unsigned>(s.internal_count());
  return Rational(factorial(m + 1), pow2(m) * internal_factor_product(s));
}

Rational kernel_limit_complete(const BinaryTree& s) {
  return Rational(catalan(static_cast<unsigned>(s.internal_count()))) * kappa_shape_prob(s);
}

BinaryTree complete_tree(unsigned k) {
  if (k < 1 || k > kMaxCompleteDepth)
    throw std::invalid_argument("complete_tree: k must lie in 1.." + std::to_string(kMaxCompleteDepth));
  const std::size_t n = (std::size_t{2} << k) - 1;
  std::vector<int> left(n, -1), right(n, -1);
  for (std::size_t i = 0; 2 * i + 2 < n; ++i) {
    left[i] = static_cast<int>(2 * i + 1);
    right[i] = static_cast<int>(2 * i + 2);
  }
  return BinaryTree::from_children(0, left, right);
}

Rational harmonic_h_complete(const BinaryTree& s) {
  require_branching(s, "harmonic_h_complete");
  return Rational(double_factorial_odd(static_cast<unsigned>(s.internal_count())),
                  internal_factor_product(s));
}

bool check_harmonic(const TreeFunction& h, const BinaryTree& s) {
  Rational lhs = 0;
  for (const auto& [t, p] : forward_step_law(s)) lhs += p * h(t);
  return lhs == h(s);
}

std::vector<Rational> h_transform_vertex_weights(const BinaryTree& s) {
  require_branching(s, "h_transform_vertex_weights");
  const auto counts = s.subtree_leaf_counts();
  std::vector<Rational> pass(s.vertex_count()), w(s.vertex_count());
  Rational total = 0;
  for (int v = 0; v < static_cast<int>(s.vertex_count()); ++v) {
    const int p = s.node(v).parent;
    const Rational above = p < 0 ? Rational(1) : pass[at(p)];
    const Integer full = pow2(static_cast<unsigned>(counts[at(v)])) - 1;
    pass[at(v)] = above * Rational(pow2(static_cast<unsigned>(counts[at(v)] - 1)) - 1, full);
    w[at(v)] = above / Rational(full);
    total += w[at(v)];
  }
  if (total != 1) throw std::logic_error("h_transform_vertex_weights: weights do not sum to 1");
  return w;
}

BinaryTree h_transform_step_complete(const BinaryTree& s, Rng& rng) {
  const auto w = h_transform_vertex_weights(s);
  double u = rng.uniform01();
  int v = static_cast<int>(w.size()) - 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    u -= to_double(w[i]);
    if (u < 0) {
      v = static_cast<int>(i);
      break;
    }
  }
  return graft(s, v, rng.coin()).tree;
}

TreeLaw h_transform_step_law(const BinaryTree& s) {
  const auto w = h_transform_vertex_weights(s);
  TreeLaw law;
  for (int v = 0; v < static_cast<int>(w.size()); ++v)
    for (bool side : {true, false}) law[graft(s, v, side).tree] += w[at(v)] / 2;
  return law;
}

Rational h_transform_transition_prob(const BinaryTree& s, const BinaryTree& t) {
  if (t.leaf_count() != s.leaf_count() + 1)
    throw std::invalid_argument("h_transform_transition_prob: t must have one more leaf than s");
  require_branching(s, "h_transform_transition_prob");
  return Rational(internal_factor_product(s) * count_embeddings(s, t),
                  2 * internal_factor_product(t));
}

}  // namespace remy

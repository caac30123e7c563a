#pragma once

// Embedding counts, exact transition probabilities and the Doob-Martin
// kernel of the Remy chain, the complete-tree boundary point with its
// harmonic function and h-transform.

#include <functional>
#include <set>
#include <vector>

#include "remy/law.hpp"
#include "remy/rng.hpp"
#include "remy/tree.hpp"

namespace remy {

// N(s,t): number of leaf subsets of t whose spanned plane subtree is s.
//
// Two tables over vertex pairs (u of s, v of t), filled bottom-up:
//   exact(u,v)  embeddings of s(u) into t(v) sending u to v,
//   below(u,v)  embeddings of s(u) into t(v) sending u anywhere in t(v).
// A leaf u maps exactly onto leaves; an internal u onto an internal v with
// its left subtree somewhere in t(v.left) and its right subtree somewhere in
// t(v.right). N(s,t) = below(root, root).
Integer count_embeddings(const BinaryTree& s, const BinaryTree& t);

// image[u] is the vertex of t that vertex u of s maps to.
struct Embedding {
  std::vector<int> image;
  auto operator<=>(const Embedding&) const = default;
};

inline constexpr std::size_t kMaxEmbeddingLeaves = 10;
std::vector<Embedding> enumerate_embeddings(const BinaryTree& s, const BinaryTree& t);

BinaryTree spanned_subtree(const BinaryTree& t, const std::set<Vertex>& leaves);

// Spanned subtree of m+1 leaves of t drawn uniformly without replacement.
BinaryTree sample_spanned_subtree(const BinaryTree& t, unsigned m, Rng& rng);
// Exact law of sample_spanned_subtree by enumerating leaf subsets.
TreeLaw spanned_subtree_law(const BinaryTree& t, unsigned m);

// p(s,t) = n! N(s,t) / (2^n (2m+1)(2m+3)...(2(m+n)-1)).
Rational transition_prob(const BinaryTree& s, const BinaryTree& t);

// K(s,t) = 2^m (1*3*...*(2m-1)) N(s,t) / ((n+1)(n+2)...(m+n+1)).
Rational martin_kernel(const BinaryTree& s, const BinaryTree& t);

using Kernel = std::function<Rational(const BinaryTree&, const BinaryTree&)>;
using TreeFunction = std::function<Rational(const BinaryTree&)>;

// sum_j P(i,j) K(j,k) == K(i,k), with P the exact one-step law of the chain.
bool kernel_identity_check(const BinaryTree& i, const BinaryTree& k,
                           const Kernel& kernel = martin_kernel);

// Probability that m+1 fair-coin streams induce the shape s:
// (m+1)! 2^-m prod over internal vertices of (2^(leaves below - 1) - 1)^-1.
Rational kappa_shape_prob(const BinaryTree& s);

// lim_k K(s, complete_tree(k)) = C_m * kappa_shape_prob(s).
Rational kernel_limit_complete(const BinaryTree& s);

inline constexpr unsigned kMaxCompleteDepth = 16;
// All words of length <= k.
BinaryTree complete_tree(unsigned k);

// h(s) = 1*3*...*(2m-1) * prod over internal v of (2^(#s(v)-1) - 1)^-1.
Rational harmonic_h_complete(const BinaryTree& s);

// sum_t P(s,t) h(t) == h(s) over the one-step successors of s.
bool check_harmonic(const TreeFunction& h, const BinaryTree& s);

// Selection weight of each vertex (preorder) in the h-transformed step:
// prod_{u < v} (2^(#s(u)-1) - 1)/(2^#s(u) - 1) * 1/(2^#s(v) - 1),
// with #s(v) = 1 at leaves. The weights sum to 1.
std::vector<Rational> h_transform_vertex_weights(const BinaryTree& s);

BinaryTree h_transform_step_complete(const BinaryTree& s, Rng& rng);
// Exact law of h_transform_step_complete (vertex weights times a fair side).
TreeLaw h_transform_step_law(const BinaryTree& s);

// (1/2) prod_u (2^(#s(u)-1) - 1) / prod_v (2^(#t(v)-1) - 1) * N(s,t).
Rational h_transform_transition_prob(const BinaryTree& s, const BinaryTree& t);

}  // namespace remy

#pragma once

// Forward Remy chain, its leaf-labeled variant, the common backward
// dynamics of all bridges, and the two worked infinite bridges.

#include <cstdint>
#include <span>
#include <vector>

#include "remy/law.hpp"
#include "remy/rng.hpp"
#include "remy/tree.hpp"

namespace remy {

// One step: clone a uniform vertex, reattach its subtree to a uniform side.
BinaryTree remy_forward_step(const BinaryTree& t, Rng& rng);
// Exact law of one forward step (all 2(2m+1) moves equally likely).
TreeLaw forward_step_law(const BinaryTree& t);

// T_n: n-1 forward steps from aleph. Requires n >= 1.
BinaryTree remy_chain(unsigned n, Rng& rng);
// Exact law of T_n by pushing the one-step kernel forward from aleph.
TreeLaw chain_law(unsigned n);

// Same randomization as remy_forward_step; the new leaf gets label m+2.
LabeledBinaryTree labeled_forward_step(const LabeledBinaryTree& lt, Rng& rng);
LabeledLaw labeled_forward_step_law(const LabeledBinaryTree& lt);

// Deletes a uniform leaf and its sibling, closing the gap.
BinaryTree backward_step(const BinaryTree& t, Rng& rng);
TreeLaw backward_step_law(const BinaryTree& t);
// N(s,t)/(m+2) for s with m+1 leaves and t with m+2 leaves.
Rational backward_transition_prob(const BinaryTree& s, const BinaryTree& t);

// Removes the leaf with the largest label together with its sibling; a leaf
// sibling hands its label to the common parent.
LabeledBinaryTree deterministic_unlabel_step(const LabeledBinaryTree& lt);

// Rank (1-based, lexicographic) of the leaf carrying the largest label.
int extract_choice(const LabeledBinaryTree& lt);

// Choice variables L_1, ..., L_n of a labeled tree with n+1 leaves.
struct ChoiceSequence {
  std::vector<int> values;  // values[k-1] = L_k, 1 <= L_k <= k+1
  bool operator==(const ChoiceSequence&) const = default;
  auto operator<=>(const ChoiceSequence&) const = default;
};
ChoiceSequence choice_sequence(const LabeledBinaryTree& lt);

// Path T_1 = aleph, ..., T_m = target sampled backward from the target.
std::vector<BinaryTree> finite_bridge(const BinaryTree& target, Rng& rng);
// Exact law of T_k on the bridge to `target`, 1 <= k <= m.
TreeLaw bridge_marginal(const BinaryTree& target, unsigned k);

// Coin tosses eps_1 ... eps_n of the spine bridge.
struct SpineState {
  std::vector<std::uint8_t> tosses;
  bool operator==(const SpineState&) const = default;
};
// Inserts a fair toss into one of the n+1 slots 0..n of the sequence.
SpineState spine_bridge_step(const SpineState& state, Rng& rng);
// Vertices e, eps_1, eps_1 eps_2, ... plus the sibling of each.
BinaryTree spine_tree(const SpineState& state);
// State after n steps from the empty sequence.
SpineState spine_bridge(unsigned n, Rng& rng);

inline constexpr unsigned kStreamBitCap = 64;
inline constexpr unsigned kStreamRetryCap = 100;

// Plane tree induced by distinct bit streams truncated to their first `bits`
// bits (most significant bit first).
BinaryTree tree_from_streams(std::span<const std::uint64_t> streams, unsigned bits = kStreamBitCap);

// Tree induced by n+1 independent fair bit streams. Streams that agree on
// all `bits` bits are redrawn, at most kStreamRetryCap times in total.
BinaryTree dyadic_bridge_sample(unsigned n, Rng& rng, unsigned bits = kStreamBitCap);

}  // namespace remy

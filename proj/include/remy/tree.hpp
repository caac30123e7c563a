#pragma once

// Finite rooted plane binary trees, viewed as prefix- and sibling-closed sets
// of words over {0,1}, plus leaf-labeled trees and the text codecs.

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "remy/rational.hpp"

namespace remy {

class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A word over {0,1}; the empty word is the root. Ordered lexicographically
// with 0 before 1 (a proper prefix sorts first).
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(std::string bits);

  static Vertex root() { return Vertex(); }
  // "e" (or the empty string) is the root; otherwise a string of 0s and 1s.
  static Vertex parse(std::string_view text);

  const std::string& bits() const { return bits_; }
  std::size_t depth() const { return bits_.size(); }
  bool is_root() const { return bits_.empty(); }
  Vertex child(int bit) const { return Vertex(bits_ + (bit ? '1' : '0')); }
  Vertex parent() const;
  Vertex sibling() const;
  bool is_prefix_of(const Vertex& other) const;
  std::string to_string() const { return bits_.empty() ? "e" : bits_; }

  auto operator<=>(const Vertex&) const = default;

 private:
  std::string bits_;
};

class BinaryTree {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    int parent = -1;
    bool is_leaf() const { return left < 0; }
    auto operator<=>(const Node&) const = default;
  };

  // The single-vertex tree.
  BinaryTree();

  // The three-vertex tree (root and two leaves).
  static BinaryTree aleph();

  // Builds the tree reachable from `root` through child arrays (-1 = none),
  // relaid in preorder. If `remap` is given it receives old index -> new
  // index (-1 for unreachable nodes).
  static BinaryTree from_children(int root, std::span<const int> left,
                                  std::span<const int> right,
                                  std::vector<int>* remap = nullptr);

  std::size_t vertex_count() const { return nodes_.size(); }
  std::size_t leaf_count() const { return (nodes_.size() + 1) / 2; }
  // m for a tree with 2m+1 vertices.
  std::size_t internal_count() const { return nodes_.size() / 2; }

  int root() const { return 0; }
  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::span<const Node> nodes() const { return nodes_; }
  bool is_leaf(int i) const { return node(i).is_leaf(); }

  Vertex word(int i) const;
  std::optional<int> find(const Vertex& v) const;
  bool contains(const Vertex& v) const { return find(v).has_value(); }
  std::set<Vertex> words() const;

  // Leaves in preorder, which is the lexicographic order of their words.
  std::vector<int> leaf_indices() const;
  // Number of leaves in the subtree below each node (1 for leaves).
  std::vector<int> subtree_leaf_counts() const;
  std::vector<int> depths() const;

  // Balanced-parenthesis encoding, cached at construction.
  const std::string& encoding() const { return encoding_; }

  bool operator==(const BinaryTree& other) const { return encoding_ == other.encoding_; }
  std::strong_ordering operator<=>(const BinaryTree& other) const {
    return encoding_ <=> other.encoding_;
  }

 private:
  explicit BinaryTree(std::vector<Node> nodes);

  std::vector<Node> nodes_;
  std::string encoding_;
};

// Checks prefix and sibling closure; throws TreeError naming the first
// offending word.
BinaryTree validate_tree(const std::set<Vertex>& words);

// Word-set text form "e,0,1,00,01".
std::set<Vertex> parse_word_set(std::string_view text);
std::string format_word_set(const BinaryTree& t);

Integer catalan(unsigned m);

inline constexpr unsigned kMaxEnumerateInternal = 12;

// All trees with m+1 leaves sorted by encoding; throws TreeError when
// m > kMaxEnumerateInternal.
std::vector<BinaryTree> enumerate_trees(unsigned m);

// (2n)!/n!, the number of trees with n+1 leaves labeled by {1, ..., n+1}.
Integer count_labeled_trees(unsigned n);

// Longest common prefix. Throws TreeError when u or v is not in t.
Vertex mrca(const BinaryTree& t, const Vertex& u, const Vertex& v);

enum class Order {
  equal,
  u_left_above_v,   // u <_L v
  u_right_above_v,  // u <_R v
  v_left_above_u,   // v <_L u
  v_right_above_u,  // v <_R u
  incomparable,
};

Order order_query(const BinaryTree& t, const Vertex& u, const Vertex& v);
std::string to_string(Order o);

std::vector<Vertex> leaves_lex(const BinaryTree& t);

// Contour walk visiting the left child before the right child, recording
// the root distance at each of the 4m+1 steps.
struct HarrisPath {
  std::vector<int> heights;
  bool operator==(const HarrisPath&) const = default;
};

HarrisPath harris_path(const BinaryTree& t);
// Inverse of harris_path; throws TreeError for malformed paths, including
// valid excursions whose vertices do not all have 0 or 2 children.
BinaryTree harris_tree(const HarrisPath& p);
// Step indices of the contour walk at which each leaf (in lexicographic
// order) is visited.
std::vector<std::size_t> harris_leaf_steps(const BinaryTree& t);

// Parenthesis codec: leaf "()", internal "(" left right ")".
std::string encode(const BinaryTree& t);
BinaryTree decode(std::string_view text);

// Accepts either the parenthesis form or the word-set form.
BinaryTree parse_tree(std::string_view text);

std::string to_dot(const BinaryTree& t);

// Tree obtained by cloning vertex v: the subtree at v moves below a new
// internal vertex, on the left when `subtree_left`, next to a new leaf.
struct Graft {
  BinaryTree tree;
  int new_leaf;
  std::vector<int> remap;  // old index -> new index
};
Graft graft(const BinaryTree& t, int v, bool subtree_left);

// Deletes leaf `leaf` and its sibling, moving the sibling's subtree up to the
// common parent.
struct Prune {
  BinaryTree tree;
  std::vector<int> remap;  // old index -> new index (-1 for removed nodes)
};
Prune prune(const BinaryTree& t, int leaf);

// Plane tree spanned by a non-empty set of leaf nodes of t.
struct Induced {
  BinaryTree tree;
  std::vector<int> remap;  // t index -> induced index (-1 for absent)
};
Induced induced_subtree(const BinaryTree& t, std::span<const int> leaf_nodes);

// A tree whose m+1 leaves carry the labels {1, ..., m+1} bijectively.
class LabeledBinaryTree {
 public:
  LabeledBinaryTree() : tree_(), labels_{1} {}
  // `leaf_labels` lists the labels of the leaves in lexicographic order.
  LabeledBinaryTree(BinaryTree tree, std::vector<int> leaf_labels);

  const BinaryTree& tree() const { return tree_; }
  std::size_t leaf_count() const { return tree_.leaf_count(); }
  int label(int node) const { return node_labels_[static_cast<std::size_t>(node)]; }
  const std::vector<int>& leaf_labels() const { return labels_; }
  int node_of_label(int label) const;

  bool operator==(const LabeledBinaryTree&) const = default;
  auto operator<=>(const LabeledBinaryTree&) const = default;

 private:
  BinaryTree tree_;
  std::vector<int> labels_;
  std::vector<int> node_labels_;
};

// Labeled text form: a leaf is its label, an internal vertex "(L,R)".
std::string encode_labeled(const LabeledBinaryTree& lt);
LabeledBinaryTree decode_labeled(std::string_view text);

inline constexpr unsigned kMaxEnumerateLabeled = 6;
// All (2n)!/n! labeled trees with n+1 leaves.
std::vector<LabeledBinaryTree> enumerate_labeled_trees(unsigned n);

// Relabels leaf `a` as sigma[a] (sigma[0] unused; sigma a permutation).
LabeledBinaryTree relabel(const LabeledBinaryTree& lt, std::span<const int> sigma);

// Subtree spanned by the leaves carrying `labels`; its labels are renamed
// order-preservingly to {1, ..., |labels|}.
LabeledBinaryTree spanned_labeled_subtree(const LabeledBinaryTree& lt,
                                          std::span<const int> labels);

}  // namespace remy

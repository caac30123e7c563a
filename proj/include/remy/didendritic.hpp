#pragma once

// Triple-type coding of leaf-labeled binary trees and its inverse.
//
// The three labels of an ordered triple (i, j, k) occupy slots 0, 1, 2. A
// TripleType records the left-to-right order of the slots in the spanned
// 3-leaf tree and whether the cherry is the left or the right branch of its
// root: ((x,y),z) is cherry-left with order x y z, (x,(y,z)) is cherry-right.

#include <array>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "remy/tree.hpp"

namespace remy {

class DidendriticError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TripleType {
 public:
  static constexpr int kCount = 12;

  // Codes follow the listing
  //   ((i,j),k) ((j,i),k) ((i,k),j) ((k,i),j) ((j,k),i) ((k,j),i)
  //   (i,(j,k)) (i,(k,j)) (j,(i,k)) (j,(k,i)) (k,(i,j)) (k,(j,i)).
  static TripleType from_code(int code);
  static TripleType from_layout(std::array<int, 3> order, bool cherry_left);

  int code() const { return code_; }
  std::array<int, 3> order() const;
  bool cherry_left() const;
  // Slots forming the cherry, in left-to-right order, and the remaining slot.
  std::array<int, 2> cherry() const;
  int outlier() const;
  // Left-to-right position of a slot.
  int position(int slot) const;

  // Fixed vocabulary: "IJ_K" is ((i,j),k), "K_IJ" is (k,(i,j)).
  std::string token() const;
  // "((i,j),k)".
  std::string notation() const;
  // Accepts either spelling.
  static TripleType parse(std::string_view text);

  // The same tree seen through new slots: new slot s holds the label that
  // sat in old slot from[s].
  TripleType reslot(std::array<int, 3> from) const;

  bool operator==(const TripleType&) const = default;

 private:
  explicit TripleType(int code) : code_(code) {}
  std::uint8_t code_ = 0;
};

// Anything answering the type of an ordered triple of distinct labels in
// {1, ..., label_count()}.
template <typename S>
concept TripleSource = requires(const S& s, int i) {
  { s.label_count() } -> std::convertible_to<int>;
  { s.type(i, i, i) } -> std::same_as<TripleType>;
};

// One entry per 3-subset of {1, ..., n}, stored at its sorted order.
class DidendriticArray {
 public:
  explicit DidendriticArray(int labels = 0);

  int label_count() const { return n_; }
  bool has(int i, int j, int k) const;
  // Throws DidendriticError when the entry is missing.
  TripleType type(int i, int j, int k) const;
  void set(int i, int j, int k, TripleType t);
  bool complete() const;

  bool operator==(const DidendriticArray&) const = default;

 private:
  std::size_t index(int a, int b, int c) const;
  void check_labels(int i, int j, int k) const;

  int n_;
  std::vector<std::uint8_t> codes_;  // kUnset when missing
};

static_assert(TripleSource<DidendriticArray>);

TripleType triple_type(const LabeledBinaryTree& lt, int i, int j, int k);

// Requires at least 3 leaves.
DidendriticArray encode(const LabeledBinaryTree& lt);

// Where label x sits relative to the class <h,i> (h != i): in its left
// subtree, its right subtree, or neither.
enum class Side { none, left, right };

template <TripleSource S>
Side side_of(const S& src, int h, int i, int x) {
  if (h == i) throw DidendriticError("side_of: <h,h> is a leaf class");
  if (x == h || x == i) {
    int c = 1;
    while (c == h || c == i) ++c;
    if (c > src.label_count()) throw DidendriticError("side_of: needs at least 3 labels");
    const auto t = src.type(h, i, c);
    const bool h_first = t.position(0) < t.position(1);
    return (x == h) == h_first ? Side::left : Side::right;
  }
  const auto t = src.type(h, i, x);
  if (t.outlier() == 2) return Side::none;
  return t.position(2) < (t.cherry_left() ? 2 : 1) ? Side::left : Side::right;
}

// <h,i> <_L <j,k>: the class <j,k> lies below and to the left of <h,i>.
template <TripleSource S>
bool left_of(const S& src, int h, int i, int j, int k) {
  return side_of(src, h, i, j) == Side::left && side_of(src, h, i, k) == Side::left;
}

template <TripleSource S>
bool right_of(const S& src, int h, int i, int j, int k) {
  return side_of(src, h, i, j) == Side::right && side_of(src, h, i, k) == Side::right;
}

// Throws DidendriticError naming an offending triple when the array is not
// the code of a labeled tree.
LabeledBinaryTree decode(const DidendriticArray& arr);

// Sub-array on `labels`, renamed order-preservingly to {1, ..., |labels|}.
DidendriticArray restrict(const DidendriticArray& arr, std::span<const int> labels);

// Entry (i,j,k) of the result is entry (sigma[i], sigma[j], sigma[k]) of arr
// (sigma[0] unused). decode(permute(encode(lt), sigma)) relabels the leaf
// carrying sigma[a] as a.
DidendriticArray permute(const DidendriticArray& arr, std::span<const int> sigma);

struct AxiomViolation {
  std::string axiom;
  std::string detail;
};

// Empty iff the array is complete, orients every pair consistently, its
// derived classes and orders satisfy the didendritic axioms (plus
// transitivity of each order), and it decodes to a tree.
std::vector<AxiomViolation> axioms_check(const DidendriticArray& arr);

// Line format: "labels N" followed by one "i j k TOKEN" per triple.
std::string to_text(const DidendriticArray& arr);
// Accepts any order of i, j, k and either token spelling; conflicting
// entries for the same 3-set throw DidendriticError.
DidendriticArray parse_array(std::string_view text);

}  // namespace remy

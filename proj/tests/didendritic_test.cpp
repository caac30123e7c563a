#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "oracles.hpp"
#include "remy/didendritic.hpp"
#include "remy/dynamics.hpp"

namespace remy {
namespace {

LabeledBinaryTree labeled(const char* text) { return decode_labeled(text); }

std::vector<LabeledBinaryTree> labeled_up_to(unsigned leaves) {
  std::vector<LabeledBinaryTree> out;
  for (unsigned n = 2; n + 1 <= leaves; ++n)
    for (auto& lt : enumerate_labeled_trees(n)) out.push_back(lt);
  return out;
}

// Type of (i,j,k) read from the spanned 3-leaf subtree: its labels placed in
// lexicographic order, and whether the first two share the deeper ancestor.
TripleType oracle_type(const LabeledBinaryTree& lt, int i, int j, int k) {
  const std::array<int, 3> q{i, j, k};
  std::vector<int> sorted(q.begin(), q.end());
  std::sort(sorted.begin(), sorted.end());
  const auto sub = spanned_labeled_subtree(lt, sorted);
  // In the 3-leaf tree the root's left child is a leaf iff the cherry is on
  // the right.
  const bool cherry_left = !sub.tree().is_leaf(sub.tree().node(0).left);
  std::array<int, 3> order{};
  for (int p = 0; p < 3; ++p) {
    const int renamed = sub.leaf_labels()[static_cast<std::size_t>(p)];
    const int original = sorted[static_cast<std::size_t>(renamed - 1)];
    order[static_cast<std::size_t>(p)] = static_cast<int>(std::find(q.begin(), q.end(), original) - q.begin());
  }
  return TripleType::from_layout(order, cherry_left);
}

std::vector<int> inverse_perm(const std::vector<int>& s) {
  std::vector<int> inv(s.size());
  for (std::size_t x = 1; x < s.size(); ++x) inv[static_cast<std::size_t>(s[x])] = static_cast<int>(x);
  return inv;
}

TEST(TripleTypeTest, TwelveDistinctValues) {
  std::set<std::string> tokens, notations;
  for (int c = 0; c < TripleType::kCount; ++c) {
    const auto t = TripleType::from_code(c);
    tokens.insert(t.token());
    notations.insert(t.notation());
    EXPECT_EQ(TripleType::parse(t.token()), t);
    EXPECT_EQ(TripleType::parse(t.notation()), t);
  }
  EXPECT_EQ(tokens.size(), 12u);
  EXPECT_EQ(notations.size(), 12u);
  EXPECT_EQ(TripleType::from_code(0).notation(), "((i,j),k)");
  EXPECT_EQ(TripleType::from_code(0).token(), "IJ_K");
  EXPECT_EQ(TripleType::from_code(11).notation(), "(k,(j,i))");
  EXPECT_EQ(TripleType::from_code(11).token(), "K_JI");
  EXPECT_THROW(TripleType::parse("IJK"), DidendriticError);
  EXPECT_THROW(TripleType::from_code(12), DidendriticError);
}

TEST(TripleTypeTest, ReslotIsAnAction) {
  const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int c = 0; c < TripleType::kCount; ++c) {
    const auto t = TripleType::from_code(c);
    EXPECT_EQ(t.reslot({0, 1, 2}), t);
    for (const auto& p : perms)
      for (const auto& q : perms) {
        std::array<int, 3> pq{p[q[0]], p[q[1]], p[q[2]]};
        EXPECT_EQ(t.reslot(p).reslot(q), t.reslot(pq));
      }
  }
}

TEST(TripleTypeOp, Example) {
  const LabeledBinaryTree lt(decode("((()())())"), {1, 2, 3});
  EXPECT_EQ(triple_type(lt, 1, 2, 3).notation(), "((i,j),k)");
  EXPECT_EQ(triple_type(lt, 2, 1, 3).notation(), "((j,i),k)");
  EXPECT_EQ(triple_type(lt, 3, 1, 2).notation(), "((j,k),i)");
  EXPECT_THROW(triple_type(lt, 1, 1, 2), DidendriticError);
  EXPECT_THROW(triple_type(lt, 1, 2, 4), DidendriticError);
}

TEST(TripleTypeOp, SwapEquivariance) {
  for (const auto& lt : labeled_up_to(4)) {
    const auto t = triple_type(lt, 1, 2, 3);
    EXPECT_EQ(triple_type(lt, 2, 1, 3), t.reslot({1, 0, 2}));
  }
}

TEST(TripleTypeOp, MatchesSpannedSubtreeOracle) {
  for (const auto& lt : labeled_up_to(5)) {
    const int n = static_cast<int>(lt.leaf_count());
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          if (i == j || i == k || j == k) continue;
          ASSERT_EQ(triple_type(lt, i, j, k), oracle_type(lt, i, j, k)) << encode_labeled(lt);
        }
  }
}

TEST(Encode, ThreeLeafOrbit) {
  for (const auto& lt : enumerate_labeled_trees(2)) {
    const auto arr = encode(lt);
    EXPECT_EQ(arr.label_count(), 3);
    EXPECT_TRUE(arr.complete());
    EXPECT_EQ(arr.type(1, 2, 3), triple_type(lt, 1, 2, 3));
  }
  EXPECT_THROW(encode(labeled("(1,2)")), DidendriticError);
}

TEST(Encode, InjectiveUpToFiveLeaves) {
  std::set<std::string> seen;
  std::size_t count = 0;
  for (const auto& lt : labeled_up_to(5)) {
    if (lt.leaf_count() < 3) continue;
    seen.insert(to_text(encode(lt)));
    ++count;
  }
  EXPECT_EQ(seen.size(), count);
}

TEST(Encode, PermutationEquivariance) {
  const std::vector<int> sigma{0, 3, 1, 4, 2};
  for (const auto& lt : enumerate_labeled_trees(3))
    EXPECT_EQ(encode(relabel(lt, sigma)), permute(encode(lt), inverse_perm(sigma)));
}

TEST(LeftOf, MatchesOrderQuery) {
  for (const auto& lt : labeled_up_to(5)) {
    if (lt.leaf_count() < 3) continue;
    const auto arr = encode(lt);
    const auto& t = lt.tree();
    const int n = static_cast<int>(lt.leaf_count());
    auto word = [&](int a) { return t.word(lt.node_of_label(a)); };
    for (int h = 1; h <= n; ++h)
      for (int i = 1; i <= n; ++i) {
        if (h == i) continue;
        const Vertex u = mrca(t, word(h), word(i));
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k) {
            const Vertex v = j == k ? word(j) : mrca(t, word(j), word(k));
            const auto o = order_query(t, u, v);
            ASSERT_EQ(left_of(arr, h, i, j, k), o == Order::u_left_above_v);
            ASSERT_EQ(right_of(arr, h, i, j, k), o == Order::u_right_above_v);
          }
        EXPECT_NE(left_of(arr, h, i, h, h), right_of(arr, h, i, h, h));
      }
  }
}

TEST(Decode, RoundTripUpToSixLeaves) {
  for (const auto& lt : labeled_up_to(6)) {
    if (lt.leaf_count() < 3) continue;
    ASSERT_EQ(decode(encode(lt)), lt) << encode_labeled(lt);
  }
}

TEST(Decode, LargeChainTree) {
  Rng rng(17);
  LabeledBinaryTree lt = labeled("(1,2)");
  for (int i = 0; i < 60; ++i) lt = labeled_forward_step(lt, rng);
  EXPECT_EQ(decode(encode(lt)), lt);
}

TEST(Decode, InconsistentTripleIsReported) {
  // ((1,2),3) plus a fourth label; flipping one entry breaks the pair order.
  auto arr = encode(labeled("(((1,2),3),4)"));
  arr.set(1, 2, 4, TripleType::parse("((j,i),k)"));
  try {
    decode(arr);
    FAIL() << "expected DidendriticError";
  } catch (const DidendriticError& e) {
    EXPECT_NE(std::string(e.what()).find("triple"), std::string::npos) << e.what();
  }
  const auto text = "labels 3\n1 2 3 ((i,j),k)\n2 1 3 ((i,j),k)\n";
  EXPECT_THROW(parse_array(text), DidendriticError);
  DidendriticArray missing(4);
  missing.set(1, 2, 3, TripleType::from_code(0));
  EXPECT_THROW(decode(missing), DidendriticError);
}

TEST(Restrict, IdentityAndSpannedSubtree) {
  for (const auto& lt : labeled_up_to(5)) {
    const int n = static_cast<int>(lt.leaf_count());
    if (n < 3) continue;
    const auto arr = encode(lt);
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    EXPECT_EQ(restrict(arr, all), arr);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) < 3) continue;
      std::vector<int> s;
      for (int x = 1; x <= n; ++x)
        if (mask >> (x - 1) & 1) s.push_back(x);
      const auto sub = spanned_labeled_subtree(lt, s);
      ASSERT_EQ(restrict(arr, s), encode(sub));
      EXPECT_EQ(decode(restrict(arr, s)), sub);
    }
  }
}

TEST(Restrict, Iterated) {
  const auto arr = encode(labeled("(((1,5),(3,6)),(2,4))"));
  const std::vector<int> outer{1, 2, 4, 5, 6};
  const std::vector<int> inner{1, 3, 4};  // positions within `outer`
  const std::vector<int> direct{1, 4, 5};
  EXPECT_EQ(restrict(restrict(arr, outer), inner), restrict(arr, direct));
  const std::vector<int> two{1, 2};
  EXPECT_THROW(restrict(arr, two), DidendriticError);
}

TEST(Permute, GroupAction) {
  const auto arr = encode(labeled("(((1,5),(3,6)),(2,4))"));
  const std::vector<int> id{0, 1, 2, 3, 4, 5, 6};
  const std::vector<int> s{0, 2, 3, 1, 6, 4, 5};
  const std::vector<int> t{0, 6, 5, 4, 3, 2, 1};
  EXPECT_EQ(permute(arr, id), arr);
  EXPECT_EQ(permute(permute(arr, s), inverse_perm(s)), arr);
  std::vector<int> st(7);
  for (int x = 1; x <= 6; ++x) st[static_cast<std::size_t>(x)] = s[static_cast<std::size_t>(t[static_cast<std::size_t>(x)])];
  EXPECT_EQ(permute(permute(arr, s), t), permute(arr, st));
  const std::vector<int> bad{0, 1, 1, 3, 4, 5, 6};
  EXPECT_THROW(permute(arr, bad), DidendriticError);
}

TEST(Permute, DecodeRelabels) {
  const std::vector<int> sigma{0, 4, 2, 5, 1, 3};
  for (const auto& lt : enumerate_labeled_trees(4))
    EXPECT_EQ(decode(permute(encode(lt), sigma)), relabel(lt, inverse_perm(sigma)));
}

TEST(Axioms, EncodedArraysPass) {
  for (const auto& lt : labeled_up_to(5)) {
    if (lt.leaf_count() < 3) continue;
    const auto v = axioms_check(encode(lt));
    ASSERT_TRUE(v.empty()) << encode_labeled(lt) << ": " << v.front().axiom << " " << v.front().detail;
  }
  for (int c = 0; c < TripleType::kCount; ++c) {
    DidendriticArray arr(3);
    arr.set(1, 2, 3, TripleType::from_code(c));
    EXPECT_TRUE(axioms_check(arr).empty());
  }
}

TEST(Axioms, CorruptedEntriesAreCaught) {
  Rng rng(5);
  int coherence_hits = 0, orientation_changes = 0, still_valid = 0;
  for (const auto& lt : enumerate_labeled_trees(4)) {
    auto arr = encode(lt);
    const int a = 1 + static_cast<int>(rng.below(3));
    const int b = a + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(4 - a)));
    const int c = b + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(5 - b)));
    const auto old = arr.type(a, b, c);
    auto fresh = TripleType::from_code(static_cast<int>(rng.below(TripleType::kCount)));
    while (fresh == old) fresh = TripleType::from_code(static_cast<int>(rng.below(TripleType::kCount)));
    arr.set(a, b, c, fresh);
    const auto v = axioms_check(arr);
    if (v.empty()) {
      // A single changed entry can be the code of another tree.
      const auto other = decode(arr);
      EXPECT_NE(other, lt);
      EXPECT_EQ(encode(other), arr);
      ++still_valid;
      continue;
    }
    bool realizability = false, coherence = false;
    for (const auto& x : v) {
      realizability |= x.axiom == "realizability";
      coherence |= x.axiom == "coherence";
    }
    EXPECT_TRUE(realizability);
    if (fresh.order() != old.order()) {
      ++orientation_changes;
      coherence_hits += coherence;
    }
  }
  EXPECT_GT(orientation_changes, 0);
  EXPECT_EQ(coherence_hits, orientation_changes);
  EXPECT_LT(still_valid * 4, 120);
}

TEST(Axioms, ReportsMissingEntry) {
  DidendriticArray arr(4);
  const auto v = axioms_check(arr);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().axiom, "completeness");
}

TEST(Exchangeability, LabeledChainArrays) {
  for (unsigned n = 2; n <= 3; ++n) {
    LabeledLaw law{{labeled("(1,2)"), Rational(1, 2)}, {labeled("(2,1)"), Rational(1, 2)}};
    for (unsigned s = 1; s < n; ++s) {
      LabeledLaw next;
      for (const auto& [lt, p] : law)
        for (const auto& [nt, q] : labeled_forward_step_law(lt)) next[nt] += p * q;
      law = next;
    }
    std::map<std::string, Rational> arrays;
    for (const auto& [lt, p] : law) arrays[to_text(encode(lt))] += p;
    std::vector<int> sigma(n + 2);
    std::iota(sigma.begin(), sigma.end(), 0);
    while (std::next_permutation(sigma.begin() + 1, sigma.end())) {
      std::map<std::string, Rational> moved;
      for (const auto& [text, p] : arrays) moved[to_text(permute(parse_array(text), sigma))] += p;
      EXPECT_EQ(moved, arrays);
    }
  }
}

TEST(Text, RoundTrip) {
  const auto arr = encode(labeled("(((1,5),(3,6)),(2,4))"));
  EXPECT_EQ(parse_array(to_text(arr)), arr);
  EXPECT_EQ(to_text(encode(labeled("((1,2),3)"))), "labels 3\n1 2 3 IJ_K\n");
  EXPECT_EQ(parse_array("# comment\nlabels 3\n3 1 2 ((j,k),i)\n"), encode(labeled("((1,2),3)")));
  EXPECT_THROW(parse_array("1 2 3 IJ_K\n"), DidendriticError);
  EXPECT_THROW(parse_array("labels 3\n1 2 3 IJ_K extra\n"), DidendriticError);
}

}  // namespace
}  // namespace remy

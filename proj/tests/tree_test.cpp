#include <gtest/gtest.h>

#include <set>

#include "remy/tree.hpp"

namespace remy {
namespace {

BinaryTree from_words(std::initializer_list<const char*> ws) {
  std::set<Vertex> s;
  for (auto w : ws) s.insert(Vertex::parse(w));
  return validate_tree(s);
}

// Independent count: Dyck paths of length 2m by brute force over all
// 2^(2m) step sequences.
long brute_force_dyck_count(unsigned m) {
  long count = 0;
  for (unsigned long mask = 0; mask < (1ul << (2 * m)); ++mask) {
    int h = 0;
    bool ok = true;
    for (unsigned i = 0; i < 2 * m && ok; ++i) {
      h += (mask >> i) & 1 ? 1 : -1;
      ok = h >= 0;
    }
    if (ok && h == 0) ++count;
  }
  return count;
}

TEST(ValidateTree, AcceptsSmallestTrees) {
  EXPECT_EQ(from_words({"e"}).vertex_count(), 1u);
  const auto aleph = from_words({"e", "0", "1"});
  EXPECT_EQ(aleph, BinaryTree::aleph());
  EXPECT_EQ(aleph.leaf_count(), 2u);
  EXPECT_EQ(aleph.internal_count(), 1u);
}

TEST(ValidateTree, ReportsMissingSibling) {
  try {
    from_words({"e", "0"});
    FAIL() << "expected TreeError";
  } catch (const TreeError& e) {
    EXPECT_NE(std::string(e.what()).find("missing sibling 1"), std::string::npos) << e.what();
  }
}

TEST(ValidateTree, ReportsMissingPrefix) {
  try {
    from_words({"e", "0", "1", "000", "001"});
    FAIL() << "expected TreeError";
  } catch (const TreeError& e) {
    EXPECT_NE(std::string(e.what()).find("missing prefix 00"), std::string::npos) << e.what();
  }
}

TEST(Catalan, SmallValues) {
  EXPECT_EQ(catalan(0), 1);
  EXPECT_EQ(catalan(1), 1);
  EXPECT_EQ(catalan(5), 42);
  EXPECT_EQ(enumerate_trees(5).size(), 42u);
}

TEST(Catalan, MatchesBruteForceDyckCount) {
  for (unsigned m = 0; m <= 8; ++m) EXPECT_EQ(catalan(m), brute_force_dyck_count(m)) << m;
}

TEST(EnumerateTrees, ExplicitSmallCases) {
  const auto one = enumerate_trees(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], BinaryTree::aleph());

  const auto two = enumerate_trees(2);
  ASSERT_EQ(two.size(), 2u);
  std::set<BinaryTree> got(two.begin(), two.end());
  std::set<BinaryTree> want{from_words({"e", "0", "1", "00", "01"}),
                            from_words({"e", "0", "1", "10", "11"})};
  EXPECT_EQ(got, want);
  EXPECT_EQ(enumerate_trees(6).size(), 132u);
}

TEST(EnumerateTrees, CountsValidityAndDistinctEncodings) {
  for (unsigned m = 0; m <= 8; ++m) {
    const auto trees = enumerate_trees(m);
    EXPECT_EQ(trees.size(), catalan(m)) << m;
    std::set<std::string> codes;
    for (const auto& t : trees) {
      EXPECT_EQ(t.internal_count(), m);
      EXPECT_EQ(validate_tree(t.words()), t);
      codes.insert(encode(t));
    }
    EXPECT_EQ(codes.size(), trees.size());
    EXPECT_TRUE(std::is_sorted(trees.begin(), trees.end()));
  }
}

TEST(EnumerateTrees, Guard) { EXPECT_THROW(enumerate_trees(kMaxEnumerateInternal + 1), TreeError); }

TEST(CountLabeledTrees, SmallValues) {
  EXPECT_EQ(count_labeled_trees(1), 2);
  EXPECT_EQ(count_labeled_trees(2), 12);
  EXPECT_EQ(count_labeled_trees(3), 120);
  EXPECT_EQ(enumerate_labeled_trees(3).size(), 120u);
}

TEST(CountLabeledTrees, EqualsCatalanTimesFactorial) {
  for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(count_labeled_trees(n), catalan(n) * factorial(n + 1));
}

TEST(Mrca, Examples) {
  const auto aleph = BinaryTree::aleph();
  EXPECT_EQ(mrca(aleph, Vertex("0"), Vertex("1")), Vertex::root());
  const auto t = from_words({"e", "0", "1", "00", "01"});
  EXPECT_EQ(mrca(t, Vertex("00"), Vertex("01")), Vertex("0"));
  EXPECT_EQ(mrca(t, Vertex("01"), Vertex("01")), Vertex("01"));
  EXPECT_THROW(mrca(t, Vertex("10"), Vertex("0")), TreeError);
}

TEST(OrderQuery, Examples) {
  const auto aleph = BinaryTree::aleph();
  EXPECT_EQ(order_query(aleph, Vertex::root(), Vertex("0")), Order::u_left_above_v);
  EXPECT_EQ(order_query(aleph, Vertex::root(), Vertex("1")), Order::u_right_above_v);
  EXPECT_EQ(order_query(aleph, Vertex("0"), Vertex("1")), Order::incomparable);
  EXPECT_EQ(order_query(aleph, Vertex("1"), Vertex::root()), Order::v_right_above_u);
  EXPECT_THROW(order_query(aleph, Vertex("00"), Vertex("1")), TreeError);
}

TEST(OrderQuery, ConsistentWithMrcaOnAllSmallTrees) {
  for (unsigned m = 0; m <= 6; ++m) {
    for (const auto& t : enumerate_trees(m)) {
      const auto ws = t.words();
      for (const auto& u : ws) {
        EXPECT_EQ(mrca(t, u, u), u);
        for (const auto& v : ws) {
          const auto w = mrca(t, u, v);
          EXPECT_EQ(w, mrca(t, v, u));
          const auto a = order_query(t, u, v);
          const auto b = order_query(t, v, u);
          const bool u_above = a == Order::u_left_above_v || a == Order::u_right_above_v;
          const bool v_above = a == Order::v_left_above_u || a == Order::v_right_above_u;
          EXPECT_EQ(u_above, w == u && u != v);
          EXPECT_EQ(v_above, w == v && u != v);
          // Antisymmetry: swapping arguments swaps roles.
          switch (a) {
            case Order::u_left_above_v: EXPECT_EQ(b, Order::v_left_above_u); break;
            case Order::u_right_above_v: EXPECT_EQ(b, Order::v_right_above_u); break;
            case Order::v_left_above_u: EXPECT_EQ(b, Order::u_left_above_v); break;
            case Order::v_right_above_u: EXPECT_EQ(b, Order::u_right_above_v); break;
            default: EXPECT_EQ(a, b);
          }
        }
      }
    }
  }
}

TEST(LeavesLex, Examples) {
  EXPECT_EQ(leaves_lex(BinaryTree::aleph()), (std::vector<Vertex>{Vertex("0"), Vertex("1")}));
  EXPECT_EQ(leaves_lex(from_words({"e", "0", "1", "10", "11"})),
            (std::vector<Vertex>{Vertex("0"), Vertex("10"), Vertex("11")}));
  EXPECT_EQ(leaves_lex(BinaryTree()), std::vector<Vertex>{Vertex::root()});
}

TEST(HarrisPath, SmallTrees) {
  EXPECT_EQ(harris_path(BinaryTree()).heights, std::vector<int>{0});
  EXPECT_EQ(harris_path(BinaryTree::aleph()).heights, (std::vector<int>{0, 1, 0, 1, 0}));
  const auto t = from_words({"e", "0", "1", "00", "01"});
  EXPECT_EQ(harris_path(t).heights, (std::vector<int>{0, 1, 2, 1, 2, 1, 0, 1, 0}));
  EXPECT_EQ(harris_leaf_steps(t), (std::vector<std::size_t>{2, 4, 7}));
}

TEST(HarrisPath, RoundTripOnAllSmallTrees) {
  for (unsigned m = 0; m <= 6; ++m) {
    for (const auto& t : enumerate_trees(m)) {
      const auto p = harris_path(t);
      EXPECT_EQ(p.heights.size(), 4 * m + 1);
      EXPECT_EQ(harris_tree(p), t);
    }
  }
}

TEST(HarrisPath, RejectsMalformedPaths) {
  EXPECT_THROW(harris_tree({{}}), TreeError);
  EXPECT_THROW(harris_tree({{0, 1}}), TreeError);
  EXPECT_THROW(harris_tree({{0, 2, 0}}), TreeError);
  EXPECT_THROW(harris_tree({{0, 1, 0}}), TreeError);              // one child
  EXPECT_THROW(harris_tree({{0, 1, 0, 1, 0, 1, 0}}), TreeError);  // three children
}

TEST(Codec, Examples) {
  EXPECT_EQ(encode(BinaryTree::aleph()), "(()())");
  EXPECT_EQ(encode(BinaryTree()), "()");
  EXPECT_EQ(decode("(()())"), BinaryTree::aleph());
}

TEST(Codec, RoundTrip) {
  for (const auto& t : enumerate_trees(6)) EXPECT_EQ(decode(encode(t)), t);
}

TEST(Codec, ParseErrorsCarryPosition) {
  try {
    decode("(()x)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(decode("(())"), ParseError);
  EXPECT_THROW(decode("(()())()"), ParseError);
  EXPECT_THROW(decode("(()()"), ParseError);
  EXPECT_THROW(decode("((()())()())"), ParseError);
}

TEST(Codec, WordSetForm) {
  const auto t = parse_tree("e,0,1,00,01");
  EXPECT_EQ(format_word_set(t), "e,0,00,01,1");
  EXPECT_EQ(parse_tree(format_word_set(t)), t);
  EXPECT_EQ(parse_tree("(()())"), BinaryTree::aleph());
  EXPECT_THROW(parse_tree("e,0,2"), ParseError);
}

TEST(Codec, DotExportMentionsEveryVertex) {
  const auto dot = to_dot(BinaryTree::aleph());
  EXPECT_NE(dot.find("n2 [label=\"1\""), std::string::npos);
  EXPECT_NE(dot.find("n0 -> n1"), std::string::npos);
}

TEST(Surgery, GraftAndPrune) {
  const auto aleph = BinaryTree::aleph();
  const auto g = graft(aleph, 1, true);  // clone leaf 0, subtree stays left
  EXPECT_EQ(g.tree, from_words({"e", "0", "1", "00", "01"}));
  EXPECT_EQ(g.tree.word(g.new_leaf), Vertex("01"));
  const auto r = graft(aleph, 0, false);  // clone root, old tree moves right
  EXPECT_EQ(r.tree, from_words({"e", "0", "1", "10", "11"}));
  EXPECT_EQ(r.tree.word(r.new_leaf), Vertex("0"));
  EXPECT_EQ(prune(g.tree, g.new_leaf).tree, aleph);
  EXPECT_EQ(prune(aleph, 1).tree, BinaryTree());
  EXPECT_THROW(prune(BinaryTree(), 0), TreeError);
}

TEST(Labeled, CodecAndRelabel) {
  const auto lt = decode_labeled("((1,2),3)");
  EXPECT_EQ(lt.tree(), from_words({"e", "0", "1", "00", "01"}));
  EXPECT_EQ(lt.leaf_labels(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(encode_labeled(lt), "((1,2),3)");
  const std::vector<int> sigma{0, 3, 1, 2};
  EXPECT_EQ(encode_labeled(relabel(lt, sigma)), "((3,1),2)");
  EXPECT_THROW(decode_labeled("((1,1),3)"), ParseError);
  EXPECT_THROW(decode_labeled("((1,2),4)"), ParseError);
  EXPECT_EQ(encode_labeled(decode_labeled("1")), "1");
  for (const auto& t : enumerate_labeled_trees(3)) EXPECT_EQ(decode_labeled(encode_labeled(t)), t);
}

TEST(Labeled, SpannedSubtreeRenamesOrderPreservingly) {
  const auto lt = decode_labeled("((4,(1,3)),(2,5))");
  const std::vector<int> keep{5, 3, 1};
  EXPECT_EQ(encode_labeled(spanned_labeled_subtree(lt, keep)), "((1,2),3)");
}

}  // namespace
}  // namespace remy

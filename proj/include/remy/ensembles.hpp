#pragma once

// Boundary-point ensembles (S, theta, mu, W): a sampling measure on a rooted
// real tree together with a left/right rule. Points sampled from an ensemble
// generate a didendritic array, hence an exchangeable labeled tree.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "remy/didendritic.hpp"
#include "remy/rng.hpp"
#include "remy/tree.hpp"

namespace remy {

class EnsembleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relation of [theta, x_a] ∩ [theta, x_b] to [theta, x_c] ∩ [theta, x_d].
enum class Relation { equal, contains, contained, incomparable };

template <typename E>
concept Ensemble = requires(const E& e, Rng& rng, const typename E::Point& p) {
  { e.sample_point(rng) } -> std::same_as<typename E::Point>;
  { e.compare(p, p, p, p) } -> std::same_as<Relation>;
  // W(x_a, U_a, x_b, U_b): true when a goes left of b below <a,b>.
  { e.left_value(p, p) } -> std::same_as<bool>;
  // Points at distance zero, a probability-zero event for a diffuse mu.
  { e.same_point(p, p) } -> std::same_as<bool>;
};

// S = [0,1], theta = 0, Lebesgue mu. With x < y the coin U of the point
// nearer the root decides: W = 1 iff (x < y and u < 1/2) or (y < x and v > 1/2).
struct IntervalEnsemble {
  struct Point {
    double x;
    double u;
  };
  Point sample_point(Rng& rng) const { return {rng.uniform01(), rng.uniform01()}; }
  Relation compare(const Point& a, const Point& b, const Point& c, const Point& d) const;
  bool left_value(const Point& a, const Point& b) const;
  bool same_point(const Point& a, const Point& b) const { return a.x == b.x; }
};

// Fair-coin sequences in {0,1}^N, truncated to 64 bits read from the most
// significant end; segments are common prefixes. W does not use U.
struct DyadicEnsemble {
  struct Point {
    std::uint64_t bits;
    double u;
  };
  Point sample_point(Rng& rng) const { return {rng.next_u64(), rng.uniform01()}; }
  Relation compare(const Point& a, const Point& b, const Point& c, const Point& d) const;
  bool left_value(const Point& a, const Point& b) const;
  bool same_point(const Point& a, const Point& b) const { return a.bits == b.bits; }
};

// Nonnegative heights f(0..2N) with f(0) = f(2N) = 0.
struct ExcursionGrid {
  std::vector<double> heights;
  std::size_t half_length() const { return heights.size() / 2; }
  bool is_dyck() const;
};

// Throws std::invalid_argument: odd length, nonzero ends, negative values, or
// all zeros with N > 0.
void validate_grid(const ExcursionGrid& g);
ExcursionGrid parse_grid(std::string_view text);
std::string format_grid(const ExcursionGrid& g);

ExcursionGrid harris_grid(const BinaryTree& t);
ExcursionGrid random_dyck_path(unsigned n, Rng& rng);

// Real tree coded by the grid: d(s,t) = f(s) + f(t) - 2 min_[s,t] f. Points
// are uniform over `support` (default: every index). Of two points the one
// whose vertex the contour reaches first goes left.
class ExcursionEnsemble {
 public:
  struct Point {
    std::size_t index;
    double u;
  };

  explicit ExcursionEnsemble(ExcursionGrid g, std::vector<std::size_t> support = {});

  Point sample_point(Rng& rng) const {
    return {support_[rng.below(support_.size())], rng.uniform01()};
  }
  Relation compare(const Point& a, const Point& b, const Point& c, const Point& d) const;
  bool left_value(const Point& a, const Point& b) const;
  bool same_point(const Point& a, const Point& b) const { return distance(a.index, b.index) == 0; }

  const ExcursionGrid& grid() const { return grid_; }
  const std::vector<std::size_t>& support() const { return support_; }
  double distance(std::size_t s, std::size_t t) const;
  // Leftmost index of the minimum of f over [min(s,t), max(s,t)].
  std::size_t argmin(std::size_t s, std::size_t t) const;

 private:
  bool ancestor_or_equal(std::size_t x, std::size_t y) const;

  ExcursionGrid grid_;
  std::vector<std::size_t> support_;
  std::vector<std::vector<std::uint32_t>> sparse_;  // sparse_[k][i]: argmin over [i, i + 2^k)
  std::vector<std::size_t> first_visit_;
};

static_assert(Ensemble<IntervalEnsemble>);
static_assert(Ensemble<DyadicEnsemble>);
static_assert(Ensemble<ExcursionEnsemble>);

inline constexpr unsigned kEnsembleRetryCap = 100;

// Index in {0,1,2} of the point outside the cherry of (a,b,c), or -1 when the
// three segments fail the two-equal-inside-the-third trichotomy.
template <Ensemble E>
int triple_outlier(const E& e, const typename E::Point& a, const typename E::Point& b,
                   const typename E::Point& c) {
  const auto ab_ac = e.compare(a, b, a, c);
  const auto ab_bc = e.compare(a, b, b, c);
  const auto ac_bc = e.compare(a, c, b, c);
  if (ab_ac == Relation::equal && ab_bc == Relation::contained) return 0;  // cherry {b,c}
  if (ab_bc == Relation::equal && ab_ac == Relation::contained) return 1;  // cherry {a,c}
  if (ac_bc == Relation::equal && ab_ac == Relation::contains) return 2;   // cherry {a,b}
  return -1;
}

// Triple type of points in slots 0, 1, 2; requires a valid trichotomy.
template <Ensemble E>
TripleType point_triple_type(const E& e, const std::array<const typename E::Point*, 3>& p) {
  const int z = triple_outlier(e, *p[0], *p[1], *p[2]);
  if (z < 0) throw EnsembleError("point triple violates the segment trichotomy");
  const int x = z == 0 ? 1 : 0;
  const int y = z == 2 ? 1 : 2;
  const bool x_first = e.left_value(*p[static_cast<std::size_t>(x)], *p[static_cast<std::size_t>(y)]);
  const int l = x_first ? x : y, r = x_first ? y : x;
  if (e.left_value(*p[static_cast<std::size_t>(z)], *p[static_cast<std::size_t>(x)]))
    return TripleType::from_layout({z, l, r}, false);
  return TripleType::from_layout({l, r, z}, true);
}

// Lazily evaluated array of a fixed sample: point i carries label i + 1.
template <Ensemble E>
class EnsembleSample {
 public:
  EnsembleSample(const E& e, std::vector<typename E::Point> points)
      : e_(&e), points_(std::move(points)) {}
  int label_count() const { return static_cast<int>(points_.size()); }
  TripleType type(int i, int j, int k) const {
    return point_triple_type(*e_, {&point(i), &point(j), &point(k)});
  }
  const typename E::Point& point(int label) const {
    if (label < 1 || label > label_count()) throw DidendriticError("label " + std::to_string(label) + " is absent");
    return points_[static_cast<std::size_t>(label - 1)];
  }
  const std::vector<typename E::Point>& points() const { return points_; }

 private:
  const E* e_;
  std::vector<typename E::Point> points_;
};

// All pairs distinct and every triple satisfies the trichotomy.
template <Ensemble E>
bool points_in_general_position(const E& e, std::span<const typename E::Point> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (e.same_point(pts[i], pts[j])) return false;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        if (triple_outlier(e, pts[i], pts[j], pts[k]) < 0) return false;
  return true;
}

// Labeled tree generated by the given points (label i+1 for pts[i]); at
// least 2 points in general position.
template <Ensemble E>
LabeledBinaryTree tree_from_points(const E& e, std::span<const typename E::Point> pts) {
  if (pts.size() < 2) throw std::invalid_argument("tree_from_points: needs at least 2 points");
  if (!points_in_general_position(e, pts)) throw EnsembleError("tree_from_points: degenerate points");
  if (pts.size() == 2)
    return LabeledBinaryTree(BinaryTree::aleph(), e.left_value(pts[0], pts[1]) ? std::vector<int>{1, 2}
                                                                               : std::vector<int>{2, 1});
  const EnsembleSample<E> src(e, {pts.begin(), pts.end()});
  DidendriticArray arr(src.label_count());
  for (int c = 3; c <= src.label_count(); ++c)
    for (int b = 2; b < c; ++b)
      for (int a = 1; a < b; ++a) arr.set(a, b, c, src.type(a, b, c));
  return decode(arr);
}

// m+1 points in general position; whole draws are redrawn up to
// kEnsembleRetryCap times.
template <Ensemble E>
std::vector<typename E::Point> sample_general_points(const E& e, unsigned count, Rng& rng) {
  std::vector<typename E::Point> pts(count);
  for (unsigned attempt = 0; attempt <= kEnsembleRetryCap; ++attempt) {
    for (auto& p : pts) p = e.sample_point(rng);
    if (points_in_general_position(e, std::span<const typename E::Point>(pts))) return pts;
  }
  throw EnsembleError("ensemble draw stayed degenerate after " + std::to_string(kEnsembleRetryCap) +
                      " redraws; the sampling measure may have atoms");
}

template <Ensemble E>
LabeledBinaryTree sample_didendritic(const E& e, unsigned m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("sample_didendritic: m must be at least 1");
  const auto pts = sample_general_points(e, m + 1, rng);
  return tree_from_points(e, std::span<const typename E::Point>(pts));
}

// (1/(n-1)) #{p not in {i,j} : p lies below <i,j>} over labels 1..n+1.
template <TripleSource S>
double estimate_distance(const S& src, int i, int j) {
  const int n1 = src.label_count();
  if (i == j) throw std::invalid_argument("estimate_distance: i and j must differ");
  if (i < 1 || j < 1 || i > n1 || j > n1) throw DidendriticError("estimate_distance: label absent");
  if (n1 < 3) throw std::invalid_argument("estimate_distance: needs at least 3 labels");
  long below = 0;
  for (int p = 1; p <= n1; ++p)
    if (p != i && p != j && src.type(i, j, p).outlier() != 2) ++below;
  return static_cast<double>(below) / static_cast<double>(n1 - 2);
}

struct DistanceMatrix {
  std::vector<int> labels;
  std::vector<double> values;  // row-major, labels.size() squared
  std::size_t size() const { return labels.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * labels.size() + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * labels.size() + c]; }
};

template <TripleSource S>
DistanceMatrix estimate_distances(const S& src) {
  DistanceMatrix d;
  const int n = src.label_count();
  for (int i = 1; i <= n; ++i) d.labels.push_back(i);
  d.values.assign(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      d.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) =
          d.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) = estimate_distance(src, i, j);
  return d;
}

// TSV: a header row "\t<label>..." then one row "<label>\t<values>..." each.
DistanceMatrix parse_distance_tsv(std::string_view text);
std::string format_distance_tsv(const DistanceMatrix& d);

inline constexpr double kUltrametricTolerance = 1e-9;

// Single-linkage hierarchy. Leaves carry labels and height 0; merges at
// heights within the tolerance of a child's height extend that child.
struct Hierarchy {
  struct Node {
    int label = 0;  // leaves only
    double height = 0;
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  int root = -1;
};

// Throws std::invalid_argument when D is not symmetric with zero diagonal
// or violates d(i,k) <= max(d(i,j), d(j,k)) by more than tau.
Hierarchy ultrametric_tree(const DistanceMatrix& d, double tau = kUltrametricTolerance);

// Newick with branch length half the height difference.
std::string to_newick(const Hierarchy& h);

// Nested label sets with children sorted by smallest label, e.g. "((1,2),3)";
// ignores heights and left/right.
std::string unordered_shape(const Hierarchy& h);
std::string unordered_shape(const LabeledBinaryTree& lt);

// (1/2) min over j != i of D(i,j).
double attachment_distance(const DistanceMatrix& d, int label);

}  // namespace remy

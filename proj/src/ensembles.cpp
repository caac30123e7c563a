#include "remy/ensembles.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace remy {

namespace {

Relation from_inclusions(bool ab_in_cd, bool cd_in_ab) {
  if (ab_in_cd && cd_in_ab) return Relation::equal;
  if (ab_in_cd) return Relation::contained;
  if (cd_in_ab) return Relation::contains;
  return Relation::incomparable;
}

int common_prefix(std::uint64_t a, std::uint64_t b) { return std::countl_zero(a ^ b); }

}  // namespace

Relation IntervalEnsemble::compare(const Point& a, const Point& b, const Point& c, const Point& d) const {
  const double ab = std::min(a.x, b.x), cd = std::min(c.x, d.x);
  return from_inclusions(ab <= cd, cd <= ab);
}

bool IntervalEnsemble::left_value(const Point& a, const Point& b) const {
  if (a.x < b.x) return a.u < 0.5;
  if (b.x < a.x) return b.u > 0.5;
  return false;
}

Relation DyadicEnsemble::compare(const Point& a, const Point& b, const Point& c, const Point& d) const {
  const int ab = common_prefix(a.bits, b.bits), cd = common_prefix(c.bits, d.bits);
  const int shared = common_prefix(a.bits, c.bits);
  return from_inclusions(ab <= cd && shared >= ab, cd <= ab && shared >= cd);
}

bool DyadicEnsemble::left_value(const Point& a, const Point& b) const { return a.bits < b.bits; }

bool ExcursionGrid::is_dyck() const {
  for (double h : heights)
    if (h != std::floor(h)) return false;
  for (std::size_t i = 1; i < heights.size(); ++i)
    if (std::abs(heights[i] - heights[i - 1]) != 1) return false;
  return true;
}

void validate_grid(const ExcursionGrid& g) {
  const auto& f = g.heights;
  if (f.size() % 2 == 0) throw std::invalid_argument("excursion grid needs 2N+1 heights");
  if (f.front() != 0 || f.back() != 0) throw std::invalid_argument("excursion grid must start and end at 0");
  bool positive = false;
  for (double h : f) {
    if (!(h >= 0) || !std::isfinite(h)) throw std::invalid_argument("excursion grid heights must be nonnegative");
    positive |= h > 0;
  }
  if (f.size() > 1 && !positive) throw std::invalid_argument("degenerate excursion grid: all heights are zero");
}

ExcursionGrid parse_grid(std::string_view text) {
  std::istringstream is{std::string(text)};
  ExcursionGrid g;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw std::invalid_argument("excursion grid: bad height '" + tok + "'");
    g.heights.push_back(v);
  }
  if (g.heights.empty()) throw std::invalid_argument("excursion grid: no heights");
  validate_grid(g);
  return g;
}

std::string format_grid(const ExcursionGrid& g) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < g.heights.size(); ++i) {
    if (i) os << ' ';
    const double h = g.heights[i];
    if (h == std::floor(h) && std::abs(h) < 1e15)
      os << static_cast<long long>(h);
    else
      os << h;
  }
  return os.str();
}

ExcursionGrid harris_grid(const BinaryTree& t) {
  ExcursionGrid g;
  for (int h : harris_path(t).heights) g.heights.push_back(h);
  return g;
}

ExcursionGrid random_dyck_path(unsigned n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_dyck_path: N must be at least 1");
  // Cycle lemma: of the 2N+1 rotations of a sequence with N up-steps and
  // N+1 down-steps exactly one stays nonnegative until its final step.
  std::vector<int> steps(2 * n + 1, -1);
  std::fill(steps.begin(), steps.begin() + n, 1);
  for (std::size_t i = steps.size() - 1; i > 0; --i) std::swap(steps[i], steps[rng.below(i + 1)]);
  int h = 0, low = 0;
  std::size_t at_low = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    h += steps[i];
    if (h < low) {
      low = h;
      at_low = i;
    }
  }
  std::rotate(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(at_low + 1), steps.end());
  ExcursionGrid g;
  g.heights.reserve(2 * n + 1);
  h = 0;
  g.heights.push_back(0);
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    h += steps[i];
    g.heights.push_back(h);
  }
  return g;
}

ExcursionEnsemble::ExcursionEnsemble(ExcursionGrid g, std::vector<std::size_t> support)
    : grid_(std::move(g)), support_(std::move(support)) {
  validate_grid(grid_);
  const auto& f = grid_.heights;
  const std::size_t n = f.size();
  if (support_.empty()) {
    support_.resize(n);
    std::iota(support_.begin(), support_.end(), std::size_t{0});
  }
  for (auto s : support_)
    if (s >= n) throw std::invalid_argument("excursion support index out of range");
  auto better = [&](std::uint32_t a, std::uint32_t b) { return f[b] < f[a] ? b : a; };
  sparse_.emplace_back(n);
  std::iota(sparse_[0].begin(), sparse_[0].end(), std::uint32_t{0});
  for (std::size_t k = 1; (std::size_t{1} << k) <= n; ++k) {
    const std::size_t half = std::size_t{1} << (k - 1);
    std::vector<std::uint32_t> row(n - (std::size_t{1} << k) + 1);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = better(sparse_[k - 1][i], sparse_[k - 1][i + half]);
    sparse_.push_back(std::move(row));
  }
  // The contour first reaches the vertex at index s right after the last
  // earlier index below f(s).
  first_visit_.resize(n);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    while (!stack.empty() && f[stack.back()] >= f[s]) stack.pop_back();
    first_visit_[s] = stack.empty() ? 0 : stack.back() + 1;
    stack.push_back(s);
  }
}

std::size_t ExcursionEnsemble::argmin(std::size_t s, std::size_t t) const {
  if (s > t) std::swap(s, t);
  const std::size_t len = t - s + 1;
  const auto k = static_cast<std::size_t>(std::bit_width(len) - 1);
  const auto a = sparse_[k][s], b = sparse_[k][t + 1 - (std::size_t{1} << k)];
  return grid_.heights[b] < grid_.heights[a] ? b : a;
}

double ExcursionEnsemble::distance(std::size_t s, std::size_t t) const {
  const auto& f = grid_.heights;
  return f[s] + f[t] - 2 * f[argmin(s, t)];
}

bool ExcursionEnsemble::ancestor_or_equal(std::size_t x, std::size_t y) const {
  return grid_.heights[argmin(x, y)] == grid_.heights[x];
}

Relation ExcursionEnsemble::compare(const Point& a, const Point& b, const Point& c, const Point& d) const {
  const auto x = argmin(a.index, b.index), y = argmin(c.index, d.index);
  return from_inclusions(ancestor_or_equal(x, y), ancestor_or_equal(y, x));
}

bool ExcursionEnsemble::left_value(const Point& a, const Point& b) const {
  const auto& f = grid_.heights;
  const auto ka = std::make_pair(first_visit_[a.index], f[a.index]);
  const auto kb = std::make_pair(first_visit_[b.index], f[b.index]);
  return ka < kb;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) return out;
    start = tab + 1;
  }
}

}  // namespace

DistanceMatrix parse_distance_tsv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  DistanceMatrix d;
  bool header = true;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_tabs(line);
    try {
      if (header) {
        for (std::size_t c = 1; c < cells.size(); ++c) d.labels.push_back(std::stoi(cells[c]));
        d.values.assign(d.labels.size() * d.labels.size(), 0.0);
        header = false;
        continue;
      }
      if (row >= d.labels.size() || cells.size() != d.labels.size() + 1 || std::stoi(cells[0]) != d.labels[row])
        throw std::invalid_argument("rows must follow the header labels");
      for (std::size_t c = 1; c < cells.size(); ++c) d.at(row, c - 1) = std::stod(cells[c]);
      ++row;
    } catch (const std::logic_error& e) {
      throw std::invalid_argument(std::string("distance matrix: ") + e.what());
    }
  }
  if (header || row != d.labels.size()) throw std::invalid_argument("distance matrix: incomplete table");
  return d;
}

std::string format_distance_tsv(const DistanceMatrix& d) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (int l : d.labels) os << '\t' << l;
  os << '\n';
  for (std::size_t r = 0; r < d.size(); ++r) {
    os << d.labels[r];
    for (std::size_t c = 0; c < d.size(); ++c) os << '\t' << d.at(r, c);
    os << '\n';
  }
  return os.str();
}

Hierarchy ultrametric_tree(const DistanceMatrix& d, double tau) {
  const std::size_t n = d.size();
  if (n == 0) throw std::invalid_argument("ultrametric_tree: empty matrix");
  if (d.values.size() != n * n) throw std::invalid_argument("ultrametric_tree: matrix is not square");
  auto name = [&](std::size_t i) { return std::to_string(d.labels[i]); };
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d.at(i, i)) > tau) throw std::invalid_argument("ultrametric_tree: nonzero diagonal at " + name(i));
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(d.at(i, j) - d.at(j, i)) > tau)
        throw std::invalid_argument("ultrametric_tree: asymmetric entry " + name(i) + "," + name(j));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d.at(i, k) > std::max(d.at(i, j), d.at(j, k)) + tau)
          throw std::invalid_argument("ultrametric_tree: d(" + name(i) + "," + name(k) + ") exceeds max(d(" +
                                      name(i) + "," + name(j) + "), d(" + name(j) + "," + name(k) + "))");

  Hierarchy h;
  for (std::size_t i = 0; i < n; ++i) h.nodes.push_back({d.labels[i], 0.0, {}});
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::vector<int> top(n);
  std::iota(top.begin(), top.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  std::stable_sort(edges.begin(), edges.end(),
                   [&](const auto& a, const auto& b) { return d.at(a.first, a.second) < d.at(b.first, b.second); });
  auto extendable = [&](int node, double height) {
    const auto& nd = h.nodes[static_cast<std::size_t>(node)];
    return !nd.children.empty() && height - nd.height <= tau;
  };
  for (const auto& [i, j] : edges) {
    const auto a = find(i), b = find(j);
    if (a == b) continue;
    const double height = d.at(i, j);
    const int na = top[a], nb = top[b];
    int merged;
    if (extendable(na, height)) {
      merged = na;
      auto& kids = h.nodes[static_cast<std::size_t>(na)].children;
      if (extendable(nb, height)) {
        const auto moved = h.nodes[static_cast<std::size_t>(nb)].children;
        kids.insert(kids.end(), moved.begin(), moved.end());
      } else {
        kids.push_back(nb);
      }
    } else if (extendable(nb, height)) {
      merged = nb;
      h.nodes[static_cast<std::size_t>(nb)].children.push_back(na);
    } else {
      merged = static_cast<int>(h.nodes.size());
      h.nodes.push_back({0, height, {na, nb}});
    }
    parent[b] = a;
    top[a] = merged;
  }
  h.root = top[find(0)];
  return h;
}

namespace {

struct Shape {
  int min_label;
  std::string text;
};

Shape shape_of(const Hierarchy& h, int v) {
  const auto& nd = h.nodes[static_cast<std::size_t>(v)];
  if (nd.children.empty()) return {nd.label, std::to_string(nd.label)};
  std::vector<Shape> kids;
  for (int c : nd.children) kids.push_back(shape_of(h, c));
  std::sort(kids.begin(), kids.end(), [](const Shape& a, const Shape& b) { return a.min_label < b.min_label; });
  std::string s = "(";
  for (std::size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + kids[i].text;
  return {kids.front().min_label, s + ")"};
}

void newick(const Hierarchy& h, int v, double parent_height, bool is_root, std::ostringstream& os) {
  const auto& nd = h.nodes[static_cast<std::size_t>(v)];
  if (nd.children.empty()) {
    os << nd.label;
  } else {
    os << '(';
    for (std::size_t i = 0; i < nd.children.size(); ++i) {
      if (i) os << ',';
      newick(h, nd.children[i], nd.height, false, os);
    }
    os << ')';
  }
  if (!is_root) os << ':' << (parent_height - nd.height) / 2;
}

}  // namespace

std::string to_newick(const Hierarchy& h) {
  std::ostringstream os;
  os << std::setprecision(12);
  newick(h, h.root, 0, true, os);
  os << ';';
  return os.str();
}

std::string unordered_shape(const Hierarchy& h) { return shape_of(h, h.root).text; }

std::string unordered_shape(const LabeledBinaryTree& lt) {
  Hierarchy h;
  const auto& t = lt.tree();
  for (int v = 0; v < static_cast<int>(t.vertex_count()); ++v) {
    Hierarchy::Node nd;
    if (t.is_leaf(v))
      nd.label = lt.label(v);
    else
      nd.children = {t.node(v).left, t.node(v).right};
    h.nodes.push_back(nd);
  }
  h.root = 0;
  return unordered_shape(h);
}

double attachment_distance(const DistanceMatrix& d, int label) {
  if (d.size() < 2) throw std::invalid_argument("attachment_distance: needs at least 2 labels");
  const auto it = std::find(d.labels.begin(), d.labels.end(), label);
  if (it == d.labels.end()) throw std::invalid_argument("attachment_distance: label absent");
  const auto r = static_cast<std::size_t>(it - d.labels.begin());
  double best = INFINITY;
  for (std::size_t c = 0; c < d.size(); ++c)
    if (c != r) best = std::min(best, d.at(r, c));
  return best / 2;
}

}  // namespace remy

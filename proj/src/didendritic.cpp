#include "remy/didendritic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace remy {

namespace {

constexpr std::uint8_t kUnset = 0xFF;

struct Layout {
  std::array<int, 3> order;
  bool cherry_left;
};

constexpr std::array<Layout, TripleType::kCount> kLayouts{{
    {{0, 1, 2}, true},  {{1, 0, 2}, true},  {{0, 2, 1}, true},  {{2, 0, 1}, true},
    {{1, 2, 0}, true},  {{2, 1, 0}, true},  {{0, 1, 2}, false}, {{0, 2, 1}, false},
    {{1, 0, 2}, false}, {{1, 2, 0}, false}, {{2, 0, 1}, false}, {{2, 1, 0}, false},
}};

std::string triple_name(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

std::array<int, 3> sorted3(int i, int j, int k) {
  std::array<int, 3> v{i, j, k};
  std::sort(v.begin(), v.end());
  return v;
}

// from[s] = slot of (i,j,k) holding the s-th smallest label.
std::array<int, 3> sorting_slots(int i, int j, int k) {
  const std::array<int, 3> q{i, j, k};
  std::array<int, 3> from{0, 1, 2};
  std::sort(from.begin(), from.end(), [&](int x, int y) { return q[x] < q[y]; });
  return from;
}

std::array<int, 3> inverse(std::array<int, 3> p) {
  std::array<int, 3> inv{};
  for (int s = 0; s < 3; ++s) inv[p[s]] = s;
  return inv;
}

std::size_t choose(std::size_t n, std::size_t k) {
  if (n < k) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class Visit>
void for_each_triple(int n, Visit&& visit) {
  for (int c = 3; c <= n; ++c)
    for (int b = 2; b < c; ++b)
      for (int a = 1; a < b; ++a) visit(a, b, c);
}

}  // namespace

TripleType TripleType::from_code(int code) {
  if (code < 0 || code >= kCount) throw DidendriticError("triple type code out of range");
  return TripleType(code);
}

TripleType TripleType::from_layout(std::array<int, 3> order, bool cherry_left) {
  for (int c = 0; c < kCount; ++c)
    if (kLayouts[static_cast<std::size_t>(c)].order == order &&
        kLayouts[static_cast<std::size_t>(c)].cherry_left == cherry_left)
      return TripleType(c);
  throw DidendriticError("invalid triple layout");
}

std::array<int, 3> TripleType::order() const { return kLayouts[code_].order; }
bool TripleType::cherry_left() const { return kLayouts[code_].cherry_left; }

std::array<int, 2> TripleType::cherry() const {
  const auto o = order();
  return cherry_left() ? std::array<int, 2>{o[0], o[1]} : std::array<int, 2>{o[1], o[2]};
}

int TripleType::outlier() const { return cherry_left() ? order()[2] : order()[0]; }

int TripleType::position(int slot) const {
  const auto o = order();
  return static_cast<int>(std::find(o.begin(), o.end(), slot) - o.begin());
}

std::string TripleType::token() const {
  const auto o = order();
  auto L = [](int s) { return static_cast<char>('I' + s); };
  std::string t;
  if (cherry_left()) {
    t = {L(o[0]), L(o[1]), '_', L(o[2])};
  } else {
    t = {L(o[0]), '_', L(o[1]), L(o[2])};
  }
  return t;
}

std::string TripleType::notation() const {
  const auto o = order();
  auto l = [](int s) { return std::string(1, static_cast<char>('i' + s)); };
  if (cherry_left()) return "((" + l(o[0]) + "," + l(o[1]) + ")," + l(o[2]) + ")";
  return "(" + l(o[0]) + ",(" + l(o[1]) + "," + l(o[2]) + "))";
}

TripleType TripleType::parse(std::string_view text) {
  for (int c = 0; c < kCount; ++c) {
    const TripleType t(c);
    if (text == t.token() || text == t.notation()) return t;
  }
  throw DidendriticError("unknown triple type '" + std::string(text) + "'");
}

TripleType TripleType::reslot(std::array<int, 3> from) const {
  const auto inv = inverse(from);
  auto o = order();
  for (auto& s : o) s = inv[s];
  return from_layout(o, cherry_left());
}

DidendriticArray::DidendriticArray(int labels)
    : n_(labels), codes_(choose(static_cast<std::size_t>(std::max(labels, 0)), 3), kUnset) {
  if (labels < 0) throw DidendriticError("negative label count");
}

void DidendriticArray::check_labels(int i, int j, int k) const {
  for (int x : {i, j, k})
    if (x < 1 || x > n_) throw DidendriticError("label " + std::to_string(x) + " is absent");
  if (i == j || i == k || j == k) throw DidendriticError("repeated label in " + triple_name(i, j, k));
}

std::size_t DidendriticArray::index(int a, int b, int c) const {
  return choose(static_cast<std::size_t>(c - 1), 3) + choose(static_cast<std::size_t>(b - 1), 2) +
         static_cast<std::size_t>(a - 1);
}

bool DidendriticArray::has(int i, int j, int k) const {
  check_labels(i, j, k);
  const auto s = sorted3(i, j, k);
  return codes_[index(s[0], s[1], s[2])] != kUnset;
}

TripleType DidendriticArray::type(int i, int j, int k) const {
  check_labels(i, j, k);
  const auto s = sorted3(i, j, k);
  const auto code = codes_[index(s[0], s[1], s[2])];
  if (code == kUnset) throw DidendriticError("missing entry for triple " + triple_name(s[0], s[1], s[2]));
  // Query slot q holds the label sitting in sorted slot inv[q].
  return TripleType::from_code(code).reslot(inverse(sorting_slots(i, j, k)));
}

void DidendriticArray::set(int i, int j, int k, TripleType t) {
  check_labels(i, j, k);
  const auto s = sorted3(i, j, k);
  codes_[index(s[0], s[1], s[2])] =
      static_cast<std::uint8_t>(t.reslot(sorting_slots(i, j, k)).code());
}

bool DidendriticArray::complete() const {
  return std::find(codes_.begin(), codes_.end(), kUnset) == codes_.end();
}

namespace {

std::size_t lcp(const std::string& a, const std::string& b) {
  std::size_t d = 0;
  while (d < a.size() && d < b.size() && a[d] == b[d]) ++d;
  return d;
}

TripleType classify(const std::array<const std::string*, 3>& w) {
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int x, int y) { return *w[x] < *w[y]; });
  // The two lexicographic neighbours with the longer common prefix form the
  // cherry.
  const auto first = lcp(*w[order[0]], *w[order[1]]);
  const auto second = lcp(*w[order[1]], *w[order[2]]);
  return TripleType::from_layout(order, first > second);
}

std::vector<std::string> label_words(const LabeledBinaryTree& lt) {
  std::vector<std::string> words(lt.leaf_count() + 1);
  for (int l = 1; l <= static_cast<int>(lt.leaf_count()); ++l)
    words[static_cast<std::size_t>(l)] = lt.tree().word(lt.node_of_label(l)).bits();
  return words;
}

}  // namespace

TripleType triple_type(const LabeledBinaryTree& lt, int i, int j, int k) {
  const int n = static_cast<int>(lt.leaf_count());
  for (int x : {i, j, k})
    if (x < 1 || x > n) throw DidendriticError("label " + std::to_string(x) + " is absent");
  if (i == j || i == k || j == k) throw DidendriticError("repeated label in " + triple_name(i, j, k));
  const auto wi = lt.tree().word(lt.node_of_label(i)).bits();
  const auto wj = lt.tree().word(lt.node_of_label(j)).bits();
  const auto wk = lt.tree().word(lt.node_of_label(k)).bits();
  return classify({&wi, &wj, &wk});
}

DidendriticArray encode(const LabeledBinaryTree& lt) {
  const int n = static_cast<int>(lt.leaf_count());
  if (n < 3) throw DidendriticError("encode: needs at least 3 leaves");
  const auto words = label_words(lt);
  DidendriticArray arr(n);
  for_each_triple(n, [&](int a, int b, int c) {
    arr.set(a, b, c,
            classify({&words[static_cast<std::size_t>(a)], &words[static_cast<std::size_t>(b)],
                      &words[static_cast<std::size_t>(c)]}));
  });
  return arr;
}

LabeledBinaryTree decode(const DidendriticArray& arr) {
  const int n = arr.label_count();
  if (n < 3) throw DidendriticError("decode: needs at least 3 labels");
  std::vector<int> left, right, label;
  std::function<int(const std::vector<int>&)> build = [&](const std::vector<int>& s) -> int {
    const int id = static_cast<int>(left.size());
    left.push_back(-1);
    right.push_back(-1);
    label.push_back(s.size() == 1 ? s[0] : 0);
    if (s.size() == 1) return id;
    // <a,b> climbs to the highest class among the members of s.
    const int a = s[0];
    int b = s[1];
    for (std::size_t x = 2; x < s.size(); ++x)
      if (arr.type(a, b, s[x]).outlier() == 2) b = s[x];
    std::vector<int> ls, rs;
    for (int x : s) {
      const auto side = side_of(arr, a, b, x);
      if (side == Side::none)
        throw DidendriticError("decode: label " + std::to_string(x) + " is not below <" +
                               std::to_string(a) + "," + std::to_string(b) + "> in triple " +
                               triple_name(a, b, x) + " yet <" + std::to_string(a) + "," +
                               std::to_string(b) + "> was found to be the top class");
      (side == Side::left ? ls : rs).push_back(x);
    }
    if (ls.empty() || rs.empty()) throw DidendriticError("decode: inconsistent pair orientation");
    const int l = build(ls);
    const int r = build(rs);
    left[static_cast<std::size_t>(id)] = l;
    right[static_cast<std::size_t>(id)] = r;
    return id;
  };
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) all[static_cast<std::size_t>(x - 1)] = x;
  build(all);

  std::vector<int> remap;
  const auto tree = BinaryTree::from_children(0, left, right, &remap);
  std::vector<int> by_node(tree.vertex_count(), 0);
  for (std::size_t v = 0; v < remap.size(); ++v) by_node[static_cast<std::size_t>(remap[v])] = label[v];
  std::vector<int> labels;
  for (int leaf : tree.leaf_indices()) labels.push_back(by_node[static_cast<std::size_t>(leaf)]);
  LabeledBinaryTree lt(tree, labels);

  const auto words = label_words(lt);
  for_each_triple(n, [&](int a, int b, int c) {
    const auto want = arr.type(a, b, c);
    const auto got = classify({&words[static_cast<std::size_t>(a)], &words[static_cast<std::size_t>(b)],
                               &words[static_cast<std::size_t>(c)]});
    if (want != got)
      throw DidendriticError("decode: triple " + triple_name(a, b, c) + " has type " + want.token() +
                             " but the only candidate tree gives " + got.token());
  });
  return lt;
}

DidendriticArray restrict(const DidendriticArray& arr, std::span<const int> labels) {
  std::vector<int> s(labels.begin(), labels.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DidendriticError("restrict: repeated label");
  if (s.size() < 3) throw DidendriticError("restrict: needs at least 3 labels");
  if (s.front() < 1 || s.back() > arr.label_count()) throw DidendriticError("restrict: label absent");
  DidendriticArray out(static_cast<int>(s.size()));
  for_each_triple(out.label_count(), [&](int a, int b, int c) {
    out.set(a, b, c,
            arr.type(s[static_cast<std::size_t>(a - 1)], s[static_cast<std::size_t>(b - 1)],
                     s[static_cast<std::size_t>(c - 1)]));
  });
  return out;
}

DidendriticArray permute(const DidendriticArray& arr, std::span<const int> sigma) {
  const int n = arr.label_count();
  if (static_cast<int>(sigma.size()) != n + 1) throw DidendriticError("permute: sigma has the wrong size");
  std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
  for (int x = 1; x <= n; ++x) {
    const int y = sigma[static_cast<std::size_t>(x)];
    if (y < 1 || y > n || seen[static_cast<std::size_t>(y)]++) throw DidendriticError("permute: sigma is not a permutation");
  }
  DidendriticArray out(n);
  auto s = [&](int x) { return sigma[static_cast<std::size_t>(x)]; };
  for_each_triple(n, [&](int a, int b, int c) { out.set(a, b, c, arr.type(s(a), s(b), s(c))); });
  return out;
}

namespace {

enum class Rel { none, left, right };

class Checker {
 public:
  explicit Checker(const DidendriticArray& arr) : arr_(arr), n_(arr.label_count()) {}

  std::vector<AxiomViolation> run() {
    if (n_ < 3) {
      add("realizability", "an array needs at least 3 labels");
      return out_;
    }
    bool missing = false;
    for_each_triple(n_, [&](int a, int b, int c) {
      if (!missing && !arr_.has(a, b, c)) {
        add("completeness", "missing entry for triple " + triple_name(a, b, c));
        missing = true;
      }
    });
    if (missing) return out_;
    coherence();
    classes();
    pair_axioms();
    order_axioms();
    try {
      decode(arr_);
    } catch (const DidendriticError& e) {
      add("realizability", e.what());
    }
    return out_;
  }

 private:
  void add(std::string axiom, std::string detail) { out_.push_back({std::move(axiom), std::move(detail)}); }

  Side side(int h, int i, int x) const { return side_of(arr_, h, i, x); }

  // Two labels keep the same left/right order in every triple containing them.
  void coherence() {
    for (int a = 1; a <= n_; ++a)
      for (int b = a + 1; b <= n_; ++b) {
        int ref = -1;
        for (int c = 1; c <= n_; ++c) {
          if (c == a || c == b) continue;
          const auto t = arr_.type(a, b, c);
          const int a_first = t.position(0) < t.position(1);
          if (ref < 0) {
            ref = a_first;
          } else if (ref != a_first) {
            add("coherence", "labels " + std::to_string(a) + " and " + std::to_string(b) +
                                 " swap sides in triple " + triple_name(a, b, c));
            break;
          }
        }
      }
  }

  bool same_class(int h, int i, int j, int k) const {
    const auto sj = side(h, i, j), sk = side(h, i, k);
    return (sj == Side::left && sk == Side::right) || (sj == Side::right && sk == Side::left);
  }

  std::string pair(int h, int i) const { return "<" + std::to_string(h) + "," + std::to_string(i) + ">"; }

  // Classes 0..n-1 are the leaves; later classes hold pairs of distinct labels.
  void classes() {
    reps_.clear();
    for (int x = 1; x <= n_; ++x) reps_.push_back({x, x});
    cls_.assign(static_cast<std::size_t>((n_ + 1) * (n_ + 1)), -1);
    for (int x = 1; x <= n_; ++x) cls_[at(x, x)] = x - 1;
    for (int h = 1; h <= n_; ++h)
      for (int i = 1; i <= n_; ++i) {
        if (h == i) continue;
        int found = -1;
        for (std::size_t c = static_cast<std::size_t>(n_); c < reps_.size() && found < 0; ++c) {
          const auto [j, k] = reps_[c];
          const bool fwd = same_class(h, i, j, k), back = same_class(j, k, h, i);
          if (fwd != back)
            add("equivalence", pair(h, i) + " and " + pair(j, k) + " disagree on being equal");
          if (fwd && back) found = static_cast<int>(c);
        }
        if (found < 0) {
          found = static_cast<int>(reps_.size());
          reps_.push_back({h, i});
        }
        cls_[at(h, i)] = found;
      }
  }

  std::size_t at(int h, int i) const { return static_cast<std::size_t>(h * (n_ + 1) + i); }

  void pair_axioms() {
    for (int h = 1; h <= n_; ++h)
      for (int i = h + 1; i <= n_; ++i) {
        if (cls_[at(h, i)] != cls_[at(i, h)])
          add("symmetry", pair(h, i) + " and " + pair(i, h) + " are different classes");
        const auto sh = side(h, i, h), si = side(h, i, i);
        if (sh == Side::none || si == Side::none)
          add("pair is not a leaf", pair(h, i) + " coincides with a leaf class");
        else if (sh == si)
          add("split", pair(h, i) + " has " + std::to_string(h) + " and " + std::to_string(i) +
                           " on the same side");
      }
  }

  Rel rel_pairs(int h, int i, int j, int k) const {
    if (h == i) return Rel::none;
    const auto sj = side(h, i, j), sk = side(h, i, k);
    if (sj == Side::left && sk == Side::left) return Rel::left;
    if (sj == Side::right && sk == Side::right) return Rel::right;
    return Rel::none;
  }

  void order_axioms() {
    const std::size_t c = reps_.size();
    std::vector<Rel> rel(c * c, Rel::none);
    for (std::size_t x = 0; x < c; ++x)
      for (std::size_t y = 0; y < c; ++y) {
        const auto [h, i] = reps_[x];
        const auto [j, k] = reps_[y];
        rel[x * c + y] = rel_pairs(h, i, j, k);
        if (h != i && left_of(arr_, h, i, j, k) && right_of(arr_, h, i, j, k))
          add("exclusive orders", pair(h, i) + " has " + pair(j, k) + " both left and right below it");
      }
    // The orders do not depend on the representative chosen for a class.
    for (int h = 1; h <= n_; ++h)
      for (int i = 1; i <= n_; ++i) {
        if (h == i) continue;
        const auto x = static_cast<std::size_t>(cls_[at(h, i)]);
        for (std::size_t y = 0; y < c; ++y) {
          const auto [j, k] = reps_[y];
          if (rel_pairs(h, i, j, k) != rel[x * c + y] || rel_pairs(j, k, h, i) != rel[y * c + x]) {
            add("well defined", "the order between " + pair(h, i) + " and " + pair(j, k) +
                                    " depends on the representative");
            return;
          }
        }
      }
    for (std::size_t x = 0; x < c; ++x) {
      if (rel[x * c + x] != Rel::none) add("irreflexive", pair(reps_[x].first, reps_[x].second) + " lies below itself");
      for (std::size_t y = 0; y < c; ++y) {
        const Rel xy = rel[x * c + y];
        if (xy == Rel::none) continue;
        for (std::size_t z = 0; z < c; ++z) {
          const Rel yz = rel[y * c + z];
          if (yz == Rel::none) continue;
          // Anything below a vertex on one side stays on that side.
          if (rel[x * c + z] != xy) {
            add(xy == yz ? "transitivity" : (xy == Rel::left ? "left then right" : "right then left"),
                pair(reps_[x].first, reps_[x].second) + ", " + pair(reps_[y].first, reps_[y].second) +
                    ", " + pair(reps_[z].first, reps_[z].second));
            return;
          }
        }
      }
    }
  }

  const DidendriticArray& arr_;
  int n_;
  std::vector<std::pair<int, int>> reps_;
  std::vector<int> cls_;
  std::vector<AxiomViolation> out_;
};

}  // namespace

std::vector<AxiomViolation> axioms_check(const DidendriticArray& arr) { return Checker(arr).run(); }

std::string to_text(const DidendriticArray& arr) {
  std::ostringstream os;
  os << "labels " << arr.label_count() << '\n';
  for_each_triple(arr.label_count(), [&](int a, int b, int c) {
    if (arr.has(a, b, c)) os << a << ' ' << b << ' ' << c << ' ' << arr.type(a, b, c).token() << '\n';
  });
  return os.str();
}

DidendriticArray parse_array(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::optional<DidendriticArray> arr;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto fail = [&](const std::string& why) {
      throw DidendriticError("line " + std::to_string(lineno) + ": " + why);
    };
    if (!arr) {
      int n = 0;
      if (first != "labels" || !(ls >> n) || n < 0) fail("expected 'labels N'");
      arr.emplace(n);
      continue;
    }
    int i = 0, j = 0, k = 0;
    std::string tok, extra;
    try {
      i = std::stoi(first);
    } catch (const std::exception&) {
      fail("expected 'i j k TYPE'");
    }
    if (!(ls >> j >> k >> tok) || (ls >> extra)) fail("expected 'i j k TYPE'");
    const auto t = TripleType::parse(tok);
    if (arr->has(i, j, k) && arr->type(i, j, k) != t)
      fail("conflicting entries for the labels {" + std::to_string(i) + "," + std::to_string(j) + "," +
           std::to_string(k) + "}");
    arr->set(i, j, k, t);
  }
  if (!arr) throw DidendriticError("empty array text");
  return *arr;
}

}  // namespace remy

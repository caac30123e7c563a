// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "remy/didendritic.hpp"
#include "remy/dynamics.hpp"
#include "remy/embedding.hpp"
#include "remy/ensembles.hpp"
#include "remy/stats.hpp"

namespace remy {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;  // keep the first counterexample
    pass = false;
  }
};

template <typename T>
std::string fmt(T v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::vector<BinaryTree> trees_with_leaves(unsigned lo, unsigned hi) {
  std::vector<BinaryTree> out;
  for (unsigned l = lo; l <= hi; ++l)
    for (auto& t : enumerate_trees(l - 1)) out.push_back(t);
  return out;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  Outcome o;
  std::size_t cells = 0;
  for (unsigned n = 1; n <= 6; ++n) {
    const auto law = chain_law(n);
    const Rational u = Rational(1) / Rational(catalan(n));
    if (law.size() != static_cast<std::size_t>(catalan(n))) o.fail("support size at n=" + fmt(n));
    for (const auto& [s, p] : law)
      if (p != u) o.fail("n=" + fmt(n) + " shape " + encode(s) + " has " + to_fraction_string(p));
    cells += law.size();
  }
  const double dt = seconds_since(t0);
  if (dt >= 10) o.fail("runtime " + fmt(dt) + " s");
  if (o.pass) o.detail = fmt(cells) + " shapes at 1/C_n, n<=6, " + fmt(dt) + " s (< 10 s)";
  return o;
}

Outcome criterion2() {
  Outcome o;
  long checked = 0;
  for (const auto& t : trees_with_leaves(2, 6)) {
    const unsigned m = static_cast<unsigned>(t.leaf_count()) - 1;
    for (unsigned k = 1; k <= m; ++k) {
      const auto law = bridge_marginal(t, k);
      const Rational ck(catalan(k));
      for (const auto& s : enumerate_trees(k)) {
        const auto it = law.find(s);
        const Rational got = it == law.end() ? Rational(0) : it->second;
        if (got != martin_kernel(s, t) / ck) o.fail("t=" + encode(t) + " k=" + fmt(k) + " s=" + encode(s));
        ++checked;
      }
      if (total_mass(law) != 1) o.fail("mass of marginal t=" + encode(t));
    }
  }
  if (o.pass) o.detail = fmt(checked) + " (t,k,s) cells exact, leaves(t)<=6";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto all = trees_with_leaves(1, 7);
  // Oracle: histogram over every non-empty leaf subset of t of the shape it
  // spans, computed on words with no dynamic programming.
  std::map<BinaryTree, std::map<std::string, long>> hist;
  for (const auto& t : all) {
    const auto leaves = oracle::leaf_words(t);
    auto& h = hist[t];
    for (std::uint32_t mask = 1; mask < (1u << leaves.size()); ++mask) {
      std::vector<std::string> chosen;
      for (std::size_t i = 0; i < leaves.size(); ++i)
        if (mask >> i & 1) chosen.push_back(leaves[i]);
      ++h[oracle::shape_of_words(chosen)];
    }
  }
  const auto t0 = Clock::now();
  long pairs = 0;
  for (const auto& t : all) {
    const auto& h = hist[t];
    for (const auto& s : all) {
      const auto it = h.find(encode(s));
      const long expected = it == h.end() ? 0 : it->second;
      if (count_embeddings(s, t) != expected) o.fail("s=" + encode(s) + " t=" + encode(t));
      ++pairs;
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 30) o.fail("runtime " + fmt(dt) + " s");
  if (o.pass) o.detail = fmt(pairs) + " pairs, leaves<=7, " + fmt(dt) + " s (< 30 s)";
  return o;
}

Outcome criterion4() {
  Outcome o;
  long n = 0;
  for (const auto& s : trees_with_leaves(2, 7)) {
    if (!check_harmonic(harmonic_h_complete, s)) o.fail("not harmonic at " + encode(s));
    if (total_mass(h_transform_step_law(s)) != 1) o.fail("h-transform law mass at " + encode(s));
    Rational row = 0;
    for (const auto& [t, _] : forward_step_law(s)) row += h_transform_transition_prob(s, t);
    if (row != 1) o.fail("h-transform row sum at " + encode(s) + " is " + to_fraction_string(row));
    ++n;
  }
  if (o.pass) o.detail = fmt(n) + " trees, 2..7 leaves, harmonic and rows sum to 1 exactly";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const unsigned ks[] = {4, 6, 8, 10, 12};
  double worst = 0;
  int exact = 0, trending = 0;
  for (const auto& s : trees_with_leaves(2, 4)) {
    const Rational limit = kernel_limit_complete(s);
    if (limit != Rational(catalan(static_cast<unsigned>(s.leaf_count()) - 1)) * kappa_shape_prob(s))
      o.fail("limit constant at " + encode(s));
    std::vector<Rational> err;
    for (unsigned k : ks) {
      Rational e = martin_kernel(s, complete_tree(k)) - limit;
      err.push_back(e < 0 ? Rational(-e) : e);
    }
    // By left-right symmetry some shapes have K identically equal to the
    // limit; for them there is no error to decrease.
    bool all_zero = true;
    for (const auto& e : err) all_zero = all_zero && e == 0;
    if (all_zero) {
      ++exact;
      continue;
    }
    ++trending;
    for (std::size_t i = 1; i < err.size(); ++i)
      if (!(err[i] < err[i - 1])) o.fail("error not strictly decreasing for " + encode(s) + " at k=" + fmt(ks[i]));
    const double rel = to_double(err.back() / limit);
    worst = std::max(worst, rel);
    if (rel >= 1e-2) o.fail("relative error " + fmt(rel) + " at k=12 for " + encode(s));
  }
  if (o.pass)
    o.detail = fmt(trending) + " shapes strictly decreasing, " + fmt(exact) +
               " exact at every k, max rel error at k=12 " + fmt(worst) + " (< 1e-2)";
  return o;
}

Outcome criterion6() {
  Outcome o;
  long n = 0;
  for (unsigned m = 2; m <= 5; ++m) {
    const auto all = enumerate_labeled_trees(m);
    if (static_cast<long>(all.size()) != static_cast<long>(count_labeled_trees(m))) o.fail("count at m=" + fmt(m));
    for (const auto& lt : all) {
      if (decode(encode(lt)) != lt) o.fail("round trip " + encode_labeled(lt));
      ++n;
    }
  }
  if (o.pass) o.detail = fmt(n) + " labeled trees with 3..6 leaves round-trip";
  return o;
}

Outcome criterion7() {
  Outcome o;
  long laws = 0;
  for (const auto& t : trees_with_leaves(2, 7)) {
    for (unsigned m = 1; m <= 3 && m + 1 <= t.leaf_count(); ++m) {
      const auto law = spanned_subtree_law(t, m);
      const Rational cm(catalan(m));
      for (const auto& s : enumerate_trees(m)) {
        const auto it = law.find(s);
        const Rational got = it == law.end() ? Rational(0) : it->second;
        if (got != martin_kernel(s, t) / cm) o.fail("t=" + encode(t) + " m=" + fmt(m) + " s=" + encode(s));
      }
      ++laws;
    }
  }
  const unsigned m = 2;
  for (unsigned n = 0; n <= 3; ++n) {
    const auto ts = enumerate_trees(m + n);
    TreeLaw avg;
    const Rational w = Rational(1) / Rational(static_cast<long>(ts.size()));
    for (const auto& t : ts)
      for (const auto& [s, p] : spanned_subtree_law(t, m)) avg[s] += w * p;
    if (avg != uniform_law(enumerate_trees(m))) o.fail("uniform average fails at n=" + fmt(n));
  }
  if (o.pass) o.detail = fmt(laws) + " subset laws equal K/C_m; uniform average exact for m=2, n<=3";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const long samples = 100000;
  const unsigned m = 3;
  Rng rng(20240801);

  std::map<BinaryTree, long> interval, spine, dyadic;
  for (long i = 0; i < samples; ++i) {
    ++interval[sample_didendritic(IntervalEnsemble{}, m, rng).tree()];
    ++spine[spine_tree(spine_bridge(m, rng))];
    ++dyadic[sample_didendritic(DyadicEnsemble{}, m, rng).tree()];
  }
  const double tv = tv_distance(frequencies(interval), frequencies(spine));
  if (!(tv < 0.02)) o.fail("(a) TV " + fmt(tv));

  double zmax = 0;
  for (const auto& s : enumerate_trees(m)) {
    const double z = binomial_z(dyadic[s], samples, to_double(kappa_shape_prob(s)));
    zmax = std::max(zmax, z);
    if (!(z < 3)) o.fail("(b) shape " + encode(s) + " z=" + fmt(z));
  }

  long cases = 0;
  for (const auto& t : trees_with_leaves(2, 6)) {
    const auto steps = harris_leaf_steps(t);
    const ExcursionEnsemble e(harris_grid(t), steps);
    for (unsigned k = 1; k + 1 <= t.leaf_count(); ++k) {
      TreeLaw law;
      const Rational w = Rational(1) / Rational(binomial(static_cast<unsigned>(steps.size()), k + 1));
      for (std::uint32_t mask = 0; mask < (1u << steps.size()); ++mask) {
        if (static_cast<unsigned>(__builtin_popcount(mask)) != k + 1) continue;
        std::vector<ExcursionEnsemble::Point> pts;
        for (std::size_t i = 0; i < steps.size(); ++i)
          if (mask >> i & 1) pts.push_back({steps[i], 0.5});
        law[tree_from_points(e, std::span<const ExcursionEnsemble::Point>(pts)).tree()] += w;
      }
      if (law != spanned_subtree_law(t, k)) o.fail("(c) t=" + encode(t) + " m=" + fmt(k));
      ++cases;
    }
  }
  if (o.pass)
    o.detail = "(a) TV " + fmt(tv) + " < 0.02; (b) max |z| " + fmt(zmax) + " < 3; (c) " + fmt(cases) +
               " exact laws, leaves<=6";
  return o;
}

Outcome criterion9() {
  Outcome o;
  Rng rng(77);
  const IntervalEnsemble e;
  std::vector<double> mae;
  for (std::size_t n : {100u, 1000u, 10000u}) {
    double sum = 0;
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<IntervalEnsemble::Point> pts(n);
      for (auto& p : pts) p = e.sample_point(rng);
      const EnsembleSample<IntervalEnsemble> src(e, pts);
      const double truth = std::max(1 - pts[0].x, 1 - pts[1].x);
      sum += std::abs(estimate_distance(src, 1, 2) - truth);
    }
    mae.push_back(sum / 100);
  }
  for (std::size_t i = 1; i < mae.size(); ++i)
    if (!(mae[i] < mae[i - 1])) o.fail("MAE not decreasing: " + fmt(mae[i - 1]) + " -> " + fmt(mae[i]));
  o.detail = (o.pass ? "" : o.detail + "; ") + "MAE " + fmt(mae[0]) + ", " + fmt(mae[1]) + ", " + fmt(mae[2]) +
             " at n=1e2,1e3,1e4";
  return o;
}

}  // namespace
}  // namespace remy

int main() {
  using remy::Outcome;
  const std::vector<std::function<Outcome()>> criteria = {
      remy::criterion1, remy::criterion2, remy::criterion3, remy::criterion4, remy::criterion5,
      remy::criterion6, remy::criterion7, remy::criterion8, remy::criterion9};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "CRITERION " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}

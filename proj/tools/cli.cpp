#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "remy/didendritic.hpp"
#include "remy/dynamics.hpp"
#include "remy/embedding.hpp"
#include "remy/ensembles.hpp"
#include "remy/stats.hpp"

namespace remy::cli {
namespace {

using json = nlohmann::ordered_json;

struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StatisticalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageFailure : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Emitter {
 public:
  Emitter(std::ostream& out, bool pretty) : out_(out), pretty_(pretty) {}

  // `human` is printed instead of the JSON record under --pretty.
  void record(const json& j, const std::string& human) {
    if (pretty_)
      out_ << human << '\n';
    else
      out_ << j.dump() << '\n';
  }

 private:
  std::ostream& out_;
  bool pretty_;
};

struct Context {
  std::optional<std::uint64_t> seed_flag;
  bool pretty = false;
  bool timing = false;
  std::uint64_t seed = 0;

  // Replica r draws from its own generator so records do not depend on the
  // order in which replicas are produced.
  Rng replica_rng(long r) const {
    return Rng(Rng::mix(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1)));
  }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnv)) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageFailure(std::string(kSeedEnv) + " is not an unsigned integer: " + env);
  }
  return 0;
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageFailure("cannot open " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

json base(const std::string& command, json params, const Context& ctx, bool seeded) {
  json j;
  j["command"] = command;
  j["params"] = std::move(params);
  j["seed"] = seeded ? json(ctx.seed) : json(nullptr);
  return j;
}

template <typename T>
json law_json(const Law<T>& law, const std::function<std::string(const T&)>& key) {
  json j = json::object();
  for (const auto& [k, p] : law) j[key(k)] = to_fraction_string(p);
  return j;
}

std::string law_text(const TreeLaw& law) {
  std::string s;
  for (const auto& [t, p] : law) s += encode(t) + "\t" + to_fraction_string(p) + "\n";
  if (!s.empty()) s.pop_back();
  return s;
}

std::string join_words(const std::vector<Vertex>& ws) {
  std::string s;
  for (const auto& w : ws) s += (s.empty() ? "" : ",") + w.to_string();
  return s;
}

// Dispatches over the three ensemble kinds with a generic callback.
template <typename F>
void with_ensemble(const std::string& kind, const std::string& grid_path, unsigned dyck_n,
                   const Context& ctx, F&& f) {
  if (kind == "interval") {
    f(IntervalEnsemble{});
  } else if (kind == "dyadic") {
    f(DyadicEnsemble{});
  } else if (kind == "excursion") {
    ExcursionGrid g;
    if (!grid_path.empty()) {
      g = parse_grid(read_input(grid_path));
    } else {
      Rng rng(Rng::mix(ctx.seed ^ 0xd1b54a32d192ed03ULL));
      g = random_dyck_path(dyck_n, rng);
    }
    f(ExcursionEnsemble(std::move(g)));
  } else {
    throw UsageFailure("unknown ensemble kind: " + kind);
  }
}

json report_json(const StatReport& r, double alpha) {
  json j;
  j["name"] = r.name;
  j["statistic"] = r.statistic;
  j["threshold"] = r.threshold;
  j["alpha"] = alpha;
  j["dof"] = r.dof;
  j["sample_size"] = r.sample_size;
  j["pass"] = r.pass;
  return j;
}

std::string report_text(const StatReport& r) {
  std::ostringstream s;
  s << r.name << ": statistic " << r.statistic << " threshold " << r.threshold << " dof " << r.dof
    << " n " << r.sample_size << (r.pass ? " PASS" : " FAIL");
  return s.str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Remy tree growth, Doob-Martin kernel and didendritic toolkit", "remy");
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_option("--seed", ctx.seed_flag, std::string("RNG seed (default from ") + kSeedEnv + ", else 0)");
  app.add_flag("--pretty", ctx.pretty, "Human-readable output instead of JSON lines");
  app.add_flag("--timing", ctx.timing, "Report wall time per command on standard error");

  std::function<void(Emitter&)> run;
  auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  // chain
  unsigned n = 0;
  long reps = 1;
  auto* chain = sub("chain", "Sample T_n of the Remy chain (n+1 leaves)");
  chain->add_option("--n", n, "Chain index, >= 1")->required();
  chain->add_option("--reps", reps, "Number of replicas")->check(CLI::PositiveNumber);
  chain->callback([&] {
    run = [&](Emitter& em) {
      if (n < 1) throw UsageFailure("--n must be at least 1");
      for (long r = 0; r < reps; ++r) {
        Rng rng = ctx.replica_rng(r);
        const auto t = remy_chain(n, rng);
        json j = base("chain", {{"n", n}, {"reps", reps}}, ctx, true);
        j["replica"] = r;
        j["output"] = {{"tree", encode(t)}, {"leaves", t.leaf_count()}};
        em.record(j, encode(t));
      }
    };
  });

  // bridge
  std::string target;
  unsigned law_k = 0;
  auto* bridge = sub("bridge", "Sample the finite bridge to a target tree, or its exact marginal");
  bridge->add_option("--target", target, "Target tree")->required();
  bridge->add_option("--reps", reps, "Number of replicas")->check(CLI::PositiveNumber);
  bridge->add_option("--marginal", law_k, "Print the exact law of T_k instead of sampling");
  bridge->callback([&] {
    run = [&](Emitter& em) {
      const auto t = parse_tree(target);
      if (law_k > 0) {
        const auto law = bridge_marginal(t, law_k);
        json j = base("bridge", {{"target", encode(t)}, {"marginal", law_k}}, ctx, false);
        j["output"] = {{"law", law_json<BinaryTree>(law, [](const BinaryTree& s) { return encode(s); })}};
        em.record(j, law_text(law));
        return;
      }
      for (long r = 0; r < reps; ++r) {
        Rng rng = ctx.replica_rng(r);
        const auto path = finite_bridge(t, rng);
        json p = json::array();
        std::string human;
        for (const auto& s : path) {
          p.push_back(encode(s));
          human += (human.empty() ? "" : " ") + encode(s);
        }
        json j = base("bridge", {{"target", encode(t)}, {"reps", reps}}, ctx, true);
        j["replica"] = r;
        j["output"] = {{"path", p}};
        em.record(j, human);
      }
    };
  });

  // spine
  auto* spine = sub("spine", "Sample the spine bridge after n steps");
  spine->add_option("--n", n, "Number of steps")->required();
  spine->add_option("--reps", reps, "Number of replicas")->check(CLI::PositiveNumber);
  spine->callback([&] {
    run = [&](Emitter& em) {
      for (long r = 0; r < reps; ++r) {
        Rng rng = ctx.replica_rng(r);
        const auto st = spine_bridge(n, rng);
        std::string tosses;
        for (auto b : st.tosses) tosses += b ? '1' : '0';
        const auto t = spine_tree(st);
        json j = base("spine", {{"n", n}, {"reps", reps}}, ctx, true);
        j["replica"] = r;
        j["output"] = {{"tosses", tosses}, {"tree", encode(t)}};
        em.record(j, encode(t));
      }
    };
  });

  // dyadic
  unsigned bits = kStreamBitCap;
  auto* dyadic = sub("dyadic", "Tree induced by n+1 fair bit streams");
  dyadic->add_option("--n", n, "Number of internal vertices")->required();
  dyadic->add_option("--bits", bits, "Stream length in bits")->check(CLI::Range(1u, kStreamBitCap));
  dyadic->add_option("--reps", reps, "Number of replicas")->check(CLI::PositiveNumber);
  dyadic->callback([&] {
    run = [&](Emitter& em) {
      for (long r = 0; r < reps; ++r) {
        Rng rng = ctx.replica_rng(r);
        const auto t = dyadic_bridge_sample(n, rng, bits);
        json j = base("dyadic", {{"n", n}, {"bits", bits}, {"reps", reps}}, ctx, true);
        j["replica"] = r;
        j["output"] = {{"tree", encode(t)}};
        em.record(j, encode(t));
      }
    };
  });

  // kernel
  std::string s_text, t_text;
  auto* kernel = sub("kernel", "Exact Doob-Martin kernel K(s,t)");
  kernel->add_option("--s", s_text, "Smaller tree")->required();
  kernel->add_option("--t", t_text, "Larger tree")->required();
  kernel->callback([&] {
    run = [&](Emitter& em) {
      const auto s = parse_tree(s_text), t = parse_tree(t_text);
      if (s.leaf_count() > t.leaf_count()) throw UsageFailure("--s must not have more leaves than --t");
      const auto k = martin_kernel(s, t);
      json j = base("kernel", {{"s", encode(s)}, {"t", encode(t)}}, ctx, false);
      j["output"] = {{"kernel", to_fraction_string(k)},
                     {"embeddings", count_embeddings(s, t).str()},
                     {"transition_prob", to_fraction_string(transition_prob(s, t))}};
      em.record(j, to_fraction_string(k));
    };
  });

  // embeddings
  bool list = false;
  auto* emb = sub("embeddings", "Count (and optionally list) embeddings of s into t");
  emb->add_option("--s", s_text, "Smaller tree")->required();
  emb->add_option("--t", t_text, "Larger tree")->required();
  emb->add_flag("--list", list, "List the leaf sets of all embeddings");
  emb->callback([&] {
    run = [&](Emitter& em) {
      const auto s = parse_tree(s_text), t = parse_tree(t_text);
      const auto count = count_embeddings(s, t);
      json j = base("embeddings", {{"s", encode(s)}, {"t", encode(t)}}, ctx, false);
      j["output"] = {{"count", count.str()}};
      std::string human = count.str();
      if (list) {
        json all = json::array();
        for (const auto& e : enumerate_embeddings(s, t)) {
          std::vector<Vertex> ws;
          for (int u = 0; u < static_cast<int>(s.vertex_count()); ++u)
            if (s.is_leaf(u)) ws.push_back(t.word(e.image[static_cast<std::size_t>(u)]));
          all.push_back(join_words(ws));
          human += "\n" + join_words(ws);
        }
        j["output"]["leaf_sets"] = all;
      }
      em.record(j, human);
    };
  });

  // check-harmonic
  unsigned max_leaves = 0;
  auto* harm = sub("check-harmonic", "Check harmonicity of the complete-tree h and its h-transform rows");
  harm->add_option("--max-leaves", max_leaves, "Largest tree size")
      ->required()
      ->check(CLI::Range(2u, kMaxEnumerateInternal + 1));
  harm->callback([&] {
    run = [&](Emitter& em) {
      long checked = 0, failed = 0;
      for (unsigned leaves = 2; leaves <= max_leaves; ++leaves) {
        for (const auto& s : enumerate_trees(leaves - 1)) {
          const bool harmonic = check_harmonic(harmonic_h_complete, s);
          const bool row_ok = total_mass(h_transform_step_law(s)) == 1;
          ++checked;
          if (!harmonic || !row_ok) ++failed;
          json j = base("check-harmonic", {{"max_leaves", max_leaves}}, ctx, false);
          j["output"] = {{"tree", encode(s)},
                         {"h", to_fraction_string(harmonic_h_complete(s))},
                         {"harmonic", harmonic},
                         {"row_sum_one", row_ok}};
          em.record(j, encode(s) + "\t" + to_fraction_string(harmonic_h_complete(s)) +
                           (harmonic && row_ok ? "\tok" : "\tFAIL"));
        }
      }
      json j = base("check-harmonic", {{"max_leaves", max_leaves}}, ctx, false);
      j["output"] = {{"checked", checked}, {"failed", failed}, {"pass", failed == 0}};
      em.record(j, std::to_string(checked) + " trees, " + std::to_string(failed) + " failures");
      if (failed) throw InvariantFailure("harmonicity failed for " + std::to_string(failed) + " trees");
    };
  });

  // kernel-limit
  unsigned kmax = 0;
  auto* klim = sub("kernel-limit", "K(s, complete tree of height k) against its limit");
  klim->add_option("--s", s_text, "Tree")->required();
  klim->add_option("--kmax", kmax, "Largest height")->required()->check(CLI::Range(1u, kMaxCompleteDepth));
  klim->callback([&] {
    run = [&](Emitter& em) {
      const auto s = parse_tree(s_text);
      const auto limit = kernel_limit_complete(s);
      for (unsigned k = 1; k <= kmax; ++k) {
        const auto t = complete_tree(k);
        if (t.leaf_count() < s.leaf_count()) continue;
        const auto kv = martin_kernel(s, t);
        Rational gap = kv - limit;
        if (gap < 0) gap = -gap;
        json j = base("kernel-limit", {{"s", encode(s)}, {"kmax", kmax}}, ctx, false);
        j["output"] = {{"k", k},
                       {"kernel", to_fraction_string(kv)},
                       {"limit", to_fraction_string(limit)},
                       {"abs_error", to_fraction_string(gap)},
                       {"rel_error", to_fraction_string(gap / limit)}};
        std::ostringstream h;
        h << k << "\t" << to_double(kv) << "\t" << to_double(limit) << "\t" << to_double(gap / limit);
        em.record(j, h.str());
      }
    };
  });

  // encode
  std::string tree_text;
  auto* enc = sub("encode", "Didendritic array of a labeled tree");
  enc->add_option("--tree", tree_text, "Labeled tree such as ((1,3),2)")->required();
  enc->callback([&] {
    run = [&](Emitter& em) {
      const auto lt = decode_labeled(tree_text);
      if (lt.leaf_count() < 3) throw UsageFailure("encode needs at least 3 leaves");
      const auto text = to_text(encode(lt));
      json j = base("encode", {{"tree", encode_labeled(lt)}}, ctx, false);
      j["output"] = {{"array", text}};
      em.record(j, text.back() == '\n' ? text.substr(0, text.size() - 1) : text);
    };
  });

  // decode
  std::string in_path;
  auto* dec = sub("decode", "Labeled tree from a didendritic array");
  dec->add_option("--in", in_path, "Array file, - for standard input")->required();
  dec->callback([&] {
    run = [&](Emitter& em) {
      const auto arr = parse_array(read_input(in_path));
      LabeledBinaryTree lt;
      try {
        lt = decode(arr);
      } catch (const DidendriticError& e) {
        throw InvariantFailure(e.what());
      }
      json j = base("decode", {{"in", in_path}}, ctx, false);
      j["output"] = {{"tree", encode_labeled(lt)}};
      em.record(j, encode_labeled(lt));
    };
  });

  // check
  auto* chk = sub("check", "Axiom check of a didendritic array");
  chk->add_option("--in", in_path, "Array file, - for standard input")->required();
  chk->callback([&] {
    run = [&](Emitter& em) {
      const auto arr = parse_array(read_input(in_path));
      const auto v = axioms_check(arr);
      json list = json::array();
      std::string human = v.empty() ? "valid" : "";
      for (const auto& x : v) {
        list.push_back({{"axiom", x.axiom}, {"detail", x.detail}});
        human += (human.empty() ? "" : "\n") + x.axiom + ": " + x.detail;
      }
      json j = base("check", {{"in", in_path}}, ctx, false);
      j["output"] = {{"valid", v.empty()}, {"violations", list}};
      em.record(j, human);
      if (!v.empty()) throw InvariantFailure(std::to_string(v.size()) + " axiom violations");
    };
  });

  // ensemble-sample
  std::string kind, grid_path;
  unsigned m = 0, dyck_n = 1000;
  auto* ens = sub("ensemble-sample", "Labeled trees from a boundary ensemble");
  ens->add_option("--kind", kind, "interval, dyadic or excursion")
      ->required()
      ->check(CLI::IsMember({"interval", "dyadic", "excursion"}));
  ens->add_option("--m", m, "Tree has m+1 leaves")->required()->check(CLI::PositiveNumber);
  ens->add_option("--reps", reps, "Number of replicas")->check(CLI::PositiveNumber);
  ens->add_option("--grid", grid_path, "Excursion grid file (default: a random Dyck path)");
  ens->add_option("--dyck-n", dyck_n, "Half length of the default Dyck path")->check(CLI::PositiveNumber);
  ens->callback([&] {
    run = [&](Emitter& em) {
      with_ensemble(kind, grid_path, dyck_n, ctx, [&](const auto& e) {
        for (long r = 0; r < reps; ++r) {
          Rng rng = ctx.replica_rng(r);
          const auto lt = sample_didendritic(e, m, rng);
          json j = base("ensemble-sample", {{"kind", kind}, {"m", m}, {"reps", reps}}, ctx, true);
          j["replica"] = r;
          j["output"] = {{"tree", encode_labeled(lt)}, {"shape", encode(lt.tree())}};
          em.record(j, encode_labeled(lt));
        }
      });
    };
  });

  // dyck
  auto* dyck = sub("dyck", "Uniform Dyck path of length 2n");
  dyck->add_option("--n", n, "Half length")->required()->check(CLI::PositiveNumber);
  dyck->callback([&] {
    run = [&](Emitter& em) {
      Rng rng(ctx.seed);
      const auto g = random_dyck_path(n, rng);
      json j = base("dyck", {{"n", n}}, ctx, true);
      j["output"] = {{"heights", format_grid(g)}};
      em.record(j, format_grid(g));
    };
  });

  // ultrametric
  double tol = kUltrametricTolerance;
  auto* ultra = sub("ultrametric", "Hierarchy of an ultrametric distance matrix");
  ultra->add_option("--in", in_path, "TSV matrix, - for standard input")->required();
  ultra->add_option("--tol", tol, "Merge tolerance")->check(CLI::NonNegativeNumber);
  ultra->callback([&] {
    run = [&](Emitter& em) {
      const auto d = parse_distance_tsv(read_input(in_path));
      Hierarchy h;
      try {
        h = ultrametric_tree(d, tol);
      } catch (const std::invalid_argument& e) {
        throw InvariantFailure(e.what());
      }
      json j = base("ultrametric", {{"in", in_path}, {"tol", tol}}, ctx, false);
      j["output"] = {{"newick", to_newick(h)}, {"shape", unordered_shape(h)}};
      em.record(j, to_newick(h));
    };
  });

  // stats
  std::string test;
  long samples = 100000;
  double alpha = 0.01, tv_max = 0.02, bias = 0;
  auto* st = sub("stats", "Goodness-of-fit checks of the samplers");
  st->add_option("--test", test, "chain, dyadic, interval-spine or exchangeable")
      ->required()
      ->check(CLI::IsMember({"chain", "dyadic", "interval-spine", "exchangeable"}));
  st->add_option("--n", n, "Internal vertices of the sampled trees")->required()->check(CLI::PositiveNumber);
  st->add_option("--samples", samples, "Sample size")->check(CLI::PositiveNumber);
  st->add_option("--alpha", alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  st->add_option("--tv-max", tv_max, "TV threshold for interval-spine");
  st->add_option("--kind", kind, "Ensemble for exchangeable")
      ->check(CLI::IsMember({"interval", "dyadic", "excursion"}));
  st->add_option("--bias", bias, "chain only: probability of grafting at the root instead (negative control)")
      ->check(CLI::Range(0.0, 1.0));
  st->callback([&] {
    run = [&](Emitter& em) {
      Rng rng(ctx.seed);
      json params = {{"test", test}, {"n", n}, {"samples", samples}, {"alpha", alpha}};
      StatReport rep;
      if (test == "chain") {
        params["bias"] = bias;
        std::map<BinaryTree, long> counts;
        for (long i = 0; i < samples; ++i) {
          BinaryTree t = BinaryTree::aleph();
          for (unsigned k = 1; k < n; ++k)
            t = rng.uniform01() < bias ? graft(t, t.root(), rng.coin()).tree : remy_forward_step(t, rng);
          ++counts[t];
        }
        rep = chi_square(counts, uniform_law(enumerate_trees(n)), alpha, "chain uniformity");
      } else if (test == "dyadic") {
        std::map<BinaryTree, long> counts;
        for (long i = 0; i < samples; ++i) ++counts[dyadic_bridge_sample(n, rng)];
        TreeLaw kappa;
        for (const auto& s : enumerate_trees(n)) kappa[s] = kappa_shape_prob(s);
        rep = chi_square(counts, kappa, alpha, "dyadic shapes vs kappa");
      } else if (test == "interval-spine") {
        params["tv_max"] = tv_max;
        std::map<BinaryTree, long> a, b;
        for (long i = 0; i < samples; ++i) {
          ++a[sample_didendritic(IntervalEnsemble{}, n, rng).tree()];
          ++b[spine_tree(spine_bridge(n, rng))];
        }
        rep.name = "interval vs spine TV";
        rep.statistic = tv_distance(frequencies(a), frequencies(b));
        rep.threshold = tv_max;
        rep.pass = rep.statistic < tv_max;
        rep.sample_size = static_cast<std::size_t>(samples);
      } else {
        if (kind.empty()) throw UsageFailure("--kind is required for exchangeable");
        if (n > kMaxEnumerateLabeled) throw UsageFailure("--n too large for labeled enumeration");
        params["kind"] = kind;
        with_ensemble(kind, "", dyck_n, ctx, [&](const auto& e) {
          std::map<LabeledBinaryTree, long> counts;
          std::map<BinaryTree, long> shapes;
          for (long i = 0; i < samples; ++i) {
            const auto lt = sample_didendritic(e, n, rng);
            ++counts[lt];
            ++shapes[lt.tree()];
          }
          // Conditional on the shape, labels should be uniform.
          const Integer perms = factorial(n + 1);
          LabeledLaw expected;
          for (const auto& lt : enumerate_labeled_trees(n)) {
            const auto it = shapes.find(lt.tree());
            const long c = it == shapes.end() ? 0 : it->second;
            expected[lt] = Rational(c) / (Rational(samples) * Rational(perms));
          }
          rep = chi_square(counts, expected, alpha, "label exchangeability");
        });
      }
      json j = base("stats", params, ctx, true);
      j["output"] = report_json(rep, alpha);
      em.record(j, report_text(rep));
      if (!rep.pass) throw StatisticalFailure(rep.name + " failed");
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "remy: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    ctx.seed = resolve_seed(ctx.seed_flag);
    Emitter em(out, ctx.pretty);
    run(em);
  } catch (const InvariantFailure& e) {
    err << "remy: invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const StatisticalFailure& e) {
    err << "remy: statistical test failed: " << e.what() << "\n";
    return kExitStatistical;
  } catch (const EnsembleError& e) {
    err << "remy: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "remy: " << e.what() << "\n";
    return kExitUsage;
  }
  if (ctx.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    err << "wall_time_s " << dt.count() << "\n";
  }
  return kExitOk;
}

}  // namespace remy::cli

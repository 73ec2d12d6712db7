// Acceptance suite: one PASS/FAIL line per criterion; exit status is nonzero
// when any gated criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mvph/core/chain.hpp"
#include "mvph/core/error.hpp"
#include "mvph/core/homology_solver.hpp"
#include "mvph/engine/engine.hpp"
#include "mvph/io/json_report.hpp"
#include "mvph/reduction/leaf_solver.hpp"
#include "mvph/reduction/persistence.hpp"
#include "../oracles.hpp"

using namespace mvph;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  bool pass() const { return failures == 0 && checks > 0; }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void print_line(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("criterion %d %-28s %s  %s\n", id, title, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string describe(const Tally& t) {
  std::string s = fmt("%zu checks, %zu failures", t.checks, t.failures);
  if (t.failures) s += "; first: " + t.first_failure;
  return s;
}

struct Instance {
  std::uint64_t seed;
  PointCloud cloud;
  double epsilon;
  int n_max;
  std::vector<std::size_t> grid;
};

double percentile_distance(const PointCloud& c, double q) {
  std::vector<double> d;
  for (Vertex i = 0; i < c.size(); ++i)
    for (Vertex j = i + 1; j < c.size(); ++j) d.push_back(c.distance(i, j));
  std::sort(d.begin(), d.end());
  return d[static_cast<std::size_t>(q * static_cast<double>(d.size() - 1))];
}

std::vector<Instance> make_instances() {
  std::vector<Instance> out;
  std::mt19937_64 rng(20240601);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t d = 1 + i % 3;
    const std::size_t n = 20 + rng() % 41;
    PointCloud c = oracle::uniform_cloud(1000 + i, n, d);
    const double eps = percentile_distance(c, 0.30);
    // as many cells as the scale allows, capped per dimension to keep the
    // leaf count moderate; two cells are always admissible
    const std::size_t target = d == 1 ? 4 : (d == 2 ? 3 : 2);
    const std::size_t k_eps = choose_k(1000000, 1, bounding_cube(c).range, eps).k_epsilon;
    const std::size_t k = std::max<std::size_t>(2, std::min(target, k_eps));
    out.push_back({1000 + i, c, eps, d == 1 ? 1 : 2, std::vector<std::size_t>(d, k)});
  }
  return out;
}

EngineConfig config_for(const Instance& in, Coeff p, std::size_t workers) {
  EngineConfig c;
  c.epsilon = in.epsilon;
  c.scales = even_scales(in.epsilon, 8);
  c.n_max = in.n_max;
  c.field = p;
  c.workers = workers;
  c.grid = in.grid;
  return c;
}

std::string canonical(const BettiReport& r) {
  return report_to_json(r, {.include_timings = false}).dump(2);
}

std::vector<Coeff> unit(std::size_t size, std::size_t i) {
  std::vector<Coeff> u(size, 0);
  u[i] = 1;
  return u;
}

struct FieldOutcome {
  Tally oracle, identity, contracts, determinism;
};

void check_solver_reps(const HomologySolver& s, int n_max, Tally& t, const std::string& where) {
  for (int n = 0; n <= n_max; ++n)
    for (std::size_t i = 0; i < s.betti(n); ++i) {
      bool ok = false;
      try {
        ok = s.coords(s.representative(n, i)) == unit(s.betti(n), i);
      } catch (const Error&) {
      }
      t.record(ok, where + fmt(" H_%d rep %zu", n, i));
    }
}

FieldOutcome run_field(const std::vector<Instance>& instances, Coeff p) {
  FieldOutcome out;
  std::mt19937_64 rng(p);
  const Field field(p);
  for (const Instance& in : instances) {
    const std::string tag = fmt("seed %llu p=%u", static_cast<unsigned long long>(in.seed), p);
    RunResult r;
    try {
      r = run_detailed(in.cloud, config_for(in, p, 1));
    } catch (const Error& e) {
      out.oracle.record(false, tag + ": " + e.what());
      continue;
    }

    // 1: oracle equivalence
    const VerifyResult v = compare_with_oracle(in.cloud, config_for(in, p, 1), r.report);
    out.oracle.record(v.feasible && v.pass,
                      tag + (v.feasible ? fmt(": %zu mismatches", v.mismatches.size())
                                        : ": " + v.reason));

    // 2: splitting identity on every node, and node betti against a leaf
    // over the node's own point set
    for (const auto& rec : r.nodes) {
      const auto& dg = rec.solver->diagnostics();
      const double s = r.report.scales[rec.scale_index].scale;
      const auto& pts = r.tree.nodes[rec.tree_node].points;
      auto direct = build_leaf(in.cloud, pts, s, in.n_max, field);
      const std::string where = tag + " box " + r.tree.nodes[rec.tree_node].box.label();
      for (int n = 0; n <= in.n_max; ++n) {
        std::size_t rhs = dg.piece_betti_sum[n] - dg.rank_f[n];
        if (n >= 1) rhs += dg.intersection_betti_sum[n - 1] - dg.rank_f[n - 1];
        out.identity.record(dg.betti[n] == rhs && rec.solver->betti(n) == direct->betti(n),
                            where + fmt(" n=%d", n));
      }
      // 4: unit coordinates of every stored representative
      check_solver_reps(*rec.solver, in.n_max, out.contracts, where);
    }
    // 4: bound on random boundaries at the root, largest scale
    const auto& root = r.roots.back();
    auto whole = build_leaf(in.cloud, oracle::all_points(in.cloud), r.report.scales.back().scale,
                            in.n_max, field);
    for (int n = 0; n <= in.n_max; ++n) {
      Chain w(field, n + 1);
      for (const Simplex& sx : whole->complex().simplices(n + 1))
        if (rng() % 4 == 0) w.add_term(sx, 1 + static_cast<Coeff>(rng() % (p - 1)));
      Chain z(field, n);
      z += boundary(w);
      bool ok = false;
      try {
        auto b = root->bound(z);
        ok = b && boundary(*b) == z && is_zero_vector(root->coords(z));
      } catch (const Error&) {
      }
      out.contracts.record(ok, tag + fmt(" root bound n=%d", n));
    }

    // 6: byte-identical reports with four workers
    try {
      const BettiReport again = run(in.cloud, config_for(in, p, 4));
      out.determinism.record(canonical(again) == canonical(r.report), tag);
    } catch (const Error& e) {
      out.determinism.record(false, tag + ": " + e.what());
    }
  }
  return out;
}

// 3: Lebesgue property on the boxes of the test coverings.
Tally lebesgue_samples(const std::vector<Instance>& instances, std::size_t total) {
  Tally t;
  std::mt19937_64 rng(77);
  std::vector<std::pair<const Instance*, Covering>> covers;
  for (const Instance& in : instances) {
    EngineConfig c = config_for(in, 2, 1);
    covers.emplace_back(&in, covering_for(in.cloud, c));
  }
  std::vector<BoxTree> trees;
  for (auto& [in, cov] : covers) trees.push_back(build_box_tree(in->cloud, cov));
  std::size_t drawn = 0;
  while (drawn < total) {
    const std::size_t ci = rng() % covers.size();
    const auto& [in, cov] = covers[ci];
    const BoxTree& tree = trees[ci];
    const auto& node = tree.nodes[rng() % tree.nodes.size()];
    if (node.is_leaf() || node.points.empty()) continue;
    // a random clique of diameter <= eps inside the box
    std::vector<Vertex> simplex{node.points[rng() % node.points.size()]};
    const std::size_t size = 1 + rng() % 4;
    for (int tries = 0; tries < 20 && simplex.size() < size; ++tries) {
      const Vertex v = node.points[rng() % node.points.size()];
      bool ok = std::find(simplex.begin(), simplex.end(), v) == simplex.end();
      for (Vertex u : simplex) ok = ok && in->cloud.distance(u, v) <= in->epsilon;
      if (ok) simplex.push_back(v);
    }
    ++drawn;
    const auto j = assign_simplex(cov, *node.axis, in->cloud, simplex);
    bool ok = j.has_value();
    if (ok) {
      const BoxTree::Node& piece = tree.nodes[node.pieces[*j]];
      for (Vertex v : simplex)
        ok = ok && std::binary_search(piece.points.begin(), piece.points.end(), v);
    }
    t.record(ok, fmt("seed %llu box %s", static_cast<unsigned long long>(in->seed),
                     node.box.label().c_str()));
  }
  return t;
}

// 5: hexagon against the golden report and the oracle values.
Tally hexagon() {
  Tally t;
  const PointCloud hex = oracle::regular_hexagon();
  EngineConfig c;
  c.epsilon = 1.0;
  c.scales = {0.5, 1.0};
  c.n_max = 1;
  c.grid = std::vector<std::size_t>{2, 2};
  const BettiReport r = verify(hex, c);
  t.record(r.scales.size() == 2 && r.scales[0].betti == std::vector<std::size_t>{6, 0},
           "betti at 0.5");
  t.record(r.scales.size() == 2 && r.scales[1].betti == std::vector<std::size_t>{1, 1},
           "betti at 1");
  t.record(r.verify && r.verify->pass, "oracle");
  std::ifstream in(std::filesystem::path(MVPH_GOLDEN_DIR) / "hexagon.json");
  std::stringstream golden;
  golden << in.rdbuf();
  t.record(canonical(r) + "\n" == golden.str(), "golden file");
  return t;
}

// 8: leaf time against leaf size on uniform planar data. The scale shrinks
// with the point count so the expected neighbourhood size stays fixed.
double leaf_slope(std::string& detail) {
  const std::size_t sizes[] = {50, 100, 200};
  std::vector<double> xs, ys;
  for (std::size_t l : sizes) {
    const PointCloud c = oracle::uniform_cloud(500 + l, l, 2);
    const double eps = 0.4 * std::sqrt(50.0 / static_cast<double>(l));
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      auto leaf = build_leaf(c, oracle::all_points(c), eps, 1, Field(2));
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      best = std::min(best, ms);
      (void)leaf;
    }
    xs.push_back(std::log(static_cast<double>(l)));
    ys.push_back(std::log(std::max(best, 1e-6)));
    detail += fmt("l=%zu %.3fms, ", l, best);
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
  double num = 0, den = 0;
  for (int i = 0; i < 3; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Instance> instances = make_instances();
  std::size_t per_dim[4] = {0, 0, 0, 0};
  for (const auto& in : instances) ++per_dim[in.cloud.dim()];
  std::size_t leaves_min = SIZE_MAX, leaves_max = 0;
  for (const auto& in : instances) {
    std::size_t leaves = 1;
    for (std::size_t k : in.grid) leaves *= 2 * k - 1;
    leaves_min = std::min(leaves_min, leaves);
    leaves_max = std::max(leaves_max, leaves);
  }
  std::printf("instances: %zu (d=1: %zu, d=2: %zu, d=3: %zu), 8 scales each, %zu-%zu leaves\n",
              instances.size(), per_dim[1], per_dim[2], per_dim[3], leaves_min, leaves_max);

  const std::uint64_t results_before = contract_counters().bound_results.load();
  const std::uint64_t verified_before = contract_counters().bound_verified.load();

  std::vector<std::pair<Coeff, FieldOutcome>> fields;
  for (Coeff p : {2u, 3u, 5u}) {
    fields.emplace_back(p, run_field(instances, p));
    const auto& o = fields.back().second;
    std::printf("  p=%u: oracle %zu/%zu, identity %zu/%zu, contracts %zu/%zu, determinism %zu/%zu\n",
                p, o.oracle.checks - o.oracle.failures, o.oracle.checks,
                o.identity.checks - o.identity.failures, o.identity.checks,
                o.contracts.checks - o.contracts.failures, o.contracts.checks,
                o.determinism.checks - o.determinism.failures, o.determinism.checks);
    std::fflush(stdout);
  }
  const std::uint64_t bound_results = contract_counters().bound_results.load() - results_before;
  const std::uint64_t bound_verified = contract_counters().bound_verified.load() - verified_before;

  auto merged = [&](Tally FieldOutcome::*member) {
    Tally t;
    for (auto& [p, o] : fields) {
      const Tally& x = o.*member;
      t.checks += x.checks;
      if (x.failures && !t.failures) t.first_failure = x.first_failure;
      t.failures += x.failures;
    }
    return t;
  };

  bool ok = true;
  const Tally c1 = merged(&FieldOutcome::oracle);
  print_line(1, "oracle equivalence", c1.pass(), describe(c1));
  ok &= c1.pass();

  const Tally c2 = merged(&FieldOutcome::identity);
  print_line(2, "splitting identity", c2.pass(), describe(c2));
  ok &= c2.pass();

  const Tally c3 = lebesgue_samples(instances, 100000);
  print_line(3, "covering assignment", c3.pass(), describe(c3));
  ok &= c3.pass();

  Tally c4 = merged(&FieldOutcome::contracts);
  c4.record(bound_results == bound_verified && bound_results > 0,
            fmt("bound results %llu, verified %llu",
                static_cast<unsigned long long>(bound_results),
                static_cast<unsigned long long>(bound_verified)));
  print_line(4, "chain contracts", c4.pass(),
             describe(c4) + fmt("; %llu bound() results, all with boundary(w) == z",
                                static_cast<unsigned long long>(bound_verified)));
  ok &= c4.pass();

  const Tally c5 = hexagon();
  print_line(5, "hexagon regression", c5.pass(), describe(c5));
  ok &= c5.pass();

  const Tally c6 = merged(&FieldOutcome::determinism);
  print_line(6, "determinism (1 vs 4 workers)", c6.pass(), describe(c6));
  ok &= c6.pass();

  bool c7 = true;
  std::string c7_detail;
  for (auto& [p, o] : fields) {
    const bool fp = o.oracle.pass() && o.identity.pass() && o.contracts.pass();
    c7 = c7 && fp;
    if (!c7_detail.empty()) c7_detail += "; ";
    c7_detail += fmt("p=%u %s", p, fp ? "ok" : "failed");
  }
  c7 = c7 && c3.pass() && bound_results == bound_verified;
  print_line(7, "field generality", c7, c7_detail);
  ok &= c7;

  std::string c8_detail;
  const double slope = leaf_slope(c8_detail);
  c8_detail += fmt("log-log slope %.2f (threshold 3.5, informational)", slope);
  print_line(8, "leaf complexity", slope <= 3.5, c8_detail);

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total %.1fs\n", secs);
  return ok ? 0 : 1;
}

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mvph/complex/rips_complex.hpp"
#include "mvph/core/field.hpp"
#include "mvph/core/point_cloud.hpp"
#include "mvph/covering/covering.hpp"
#include "mvph/mv/mv_node.hpp"

namespace mvph {

struct EngineConfig {
  double epsilon = 0.0;
  std::vector<double> scales;  // each in (0, epsilon]; sorted on use
  int n_max = 1;
  Coeff field = 2;
  std::size_t workers = 1;           // concurrent jobs; 0 = hardware threads
  std::size_t grid_parallelism = 1;  // p in choose_k
  std::optional<std::vector<std::size_t>> grid;  // cells per axis, overrides choose_k
  std::size_t budget = kDefaultSimplexBudget;
  double slack = 0.0;  // added to every distance threshold
  bool clearing = false;
  MVOptions mv;
};

// The recursive decomposition of the root box, built once per run. Index 0
// is the root. A split along an axis with a single cell is collapsed.
struct BoxTree {
  struct Node {
    Box box;
    std::vector<Vertex> points;
    std::optional<std::size_t> axis;  // split axis; nullopt for leaves
    std::vector<std::size_t> pieces;
    std::vector<std::size_t> intersections;

    bool is_leaf() const { return !axis.has_value(); }
  };
  std::vector<Node> nodes;

  std::size_t leaf_count() const;
};
BoxTree build_box_tree(const PointCloud& cloud, const Covering& covering);

// Solver for one box at scale s (<= covering epsilon), built sequentially.
SolverPtr build_solver(const Box& box, const PointCloud& cloud, const Covering& covering,
                       double scale, int n_max, Coeff field, const EngineConfig& options = {});

struct ScaleBetti {
  double scale = 0.0;
  std::vector<std::size_t> betti;
};

struct Mismatch {
  double scale = 0.0;
  int dim = 0;
  std::size_t expected = 0;  // oracle
  std::size_t actual = 0;    // assembled
};

struct VerifyResult {
  bool feasible = true;
  bool pass = false;
  std::string reason;
  std::vector<Mismatch> mismatches;
};

struct RanksRecord {
  std::string box;
  std::vector<std::vector<std::size_t>> per_scale;  // rank f_n, n = 0..n_max
};

struct Timings {
  double leaf_ms = 0.0;
  double assembly_ms = 0.0;
  double wall_ms = 0.0;
};

struct BettiReport {
  double epsilon = 0.0;
  Coeff field = 2;
  int n_max = 0;
  std::vector<std::size_t> grid;
  std::vector<ScaleBetti> scales;

  std::size_t leaf_count = 0;
  std::size_t max_leaf_points = 0;
  std::size_t max_leaf_simplices = 0;
  std::vector<RanksRecord> ranks_f;
  Timings timings;
  std::vector<std::string> warnings;

  std::optional<VerifyResult> verify;
};

// Everything a run produced, including the solver trees for inspection.
struct RunResult {
  BettiReport report;
  Covering covering;
  BoxTree tree;
  std::vector<SolverPtr> roots;  // one per scale
  struct NodeRecord {
    std::size_t tree_node = 0;
    std::size_t scale_index = 0;
    std::shared_ptr<const MVNodeSolver> solver;
  };
  std::vector<NodeRecord> nodes;
  std::size_t jobs_executed = 0;
  std::size_t leaf_jobs = 0;
  std::size_t peak_concurrency = 0;
};

Covering covering_for(const PointCloud& cloud, const EngineConfig& config);

RunResult run_detailed(const PointCloud& cloud, const EngineConfig& config);
BettiReport run(const PointCloud& cloud, const EngineConfig& config);

// Betti numbers from the global persistence barcode, diffed against report.
VerifyResult compare_with_oracle(const PointCloud& cloud, const EngineConfig& config,
                                 const BettiReport& report);
// run() followed by compare_with_oracle(); the result is attached to the report.
BettiReport verify(const PointCloud& cloud, const EngineConfig& config);

// m evenly spaced scales eps * i / m, i = 1..m.
std::vector<double> even_scales(double epsilon, std::size_t steps);

}  // namespace mvph

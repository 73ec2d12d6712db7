#include "mvph/engine/engine.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <sstream>

#include "mvph/core/error.hpp"
#include "mvph/engine/task_graph.hpp"
#include "mvph/reduction/leaf_solver.hpp"
#include "mvph/reduction/persistence.hpp"

namespace mvph {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string describe_scale(double s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

// Rethrows the active library error with the box and scale prepended,
// keeping its type so callers can still map it to an exit status.
[[noreturn]] void rethrow_with_context(const std::string& box, double scale) {
  const std::string where = "box " + box + " at scale " + describe_scale(scale) + ": ";
  try {
    throw;
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(where + e.what());
  } catch (const InternalConsistencyError& e) {
    throw InternalConsistencyError(where + e.what());
  } catch (const DataError& e) {
    throw DataError(where + e.what());
  }
}

void expand(BoxTree& tree, std::size_t index, const Covering& covering, const PointCloud& cloud) {
  for (;;) {
    const auto split = split_axis(tree.nodes[index].box, covering);
    if (!split) return;
    if (split->pieces.size() == 1) {
      tree.nodes[index].box = split->pieces.front();
      tree.nodes[index].points =
          tree.nodes[index].box.filter(covering, cloud, tree.nodes[index].points);
      continue;
    }
    tree.nodes[index].axis = split->axis;
    auto add_child = [&](const Box& b) {
      BoxTree::Node child;
      child.box = b;
      child.points = b.filter(covering, cloud, tree.nodes[index].points);
      tree.nodes.push_back(std::move(child));
      return tree.nodes.size() - 1;
    };
    std::vector<std::size_t> pieces, inters;
    for (const Box& b : split->pieces) pieces.push_back(add_child(b));
    for (const Box& b : split->intersections) inters.push_back(add_child(b));
    tree.nodes[index].pieces = pieces;
    tree.nodes[index].intersections = inters;
    for (std::size_t c : pieces) expand(tree, c, covering, cloud);
    for (std::size_t c : inters) expand(tree, c, covering, cloud);
    return;
  }
}

BoxTree build_box_tree_from(const Box& root, const PointCloud& cloud, const Covering& covering) {
  BoxTree tree;
  BoxTree::Node node;
  node.box = root;
  std::vector<Vertex> all(cloud.size());
  for (Vertex v = 0; v < cloud.size(); ++v) all[v] = v;
  node.points = root.filter(covering, cloud, all);
  tree.nodes.push_back(std::move(node));
  expand(tree, 0, covering, cloud);
  return tree;
}

PieceAssigner axis_assigner(std::shared_ptr<const Covering> covering,
                            std::shared_ptr<const PointCloud> cloud, std::size_t axis) {
  return [covering = std::move(covering), cloud = std::move(cloud),
          axis](std::span<const Vertex> vs) { return assign_simplex(*covering, axis, *cloud, vs); };
}

void validate(const PointCloud& cloud, const EngineConfig& config) {
  if (cloud.empty()) throw DataError("the point cloud is empty");
  if (!(config.epsilon > 0.0)) throw DataError("epsilon must be positive");
  if (config.n_max < 0) throw DataError("maximum homology dimension must be nonnegative");
  if (config.slack < 0.0) throw DataError("slack must be nonnegative");
  for (double s : config.scales)
    if (!(s > 0.0 && s <= config.epsilon))
      throw DataError("scale " + describe_scale(s) + " is outside (0, epsilon]");
  Field check(config.field);
  (void)check;
}

struct SolveContext {
  std::shared_ptr<const PointCloud> cloud;
  std::shared_ptr<const Covering> covering;
  const BoxTree* tree;
  Field field;
  int n_max;
  LeafOptions leaf;
  MVOptions mv;
};

SolverPtr solve_sequential(const SolveContext& ctx, std::size_t index, double threshold,
                           bool is_root) {
  const BoxTree::Node& node = ctx.tree->nodes[index];
  std::vector<SolverPtr> pieces, inters;
  for (std::size_t c : node.pieces) pieces.push_back(solve_sequential(ctx, c, threshold, false));
  for (std::size_t c : node.intersections)
    inters.push_back(solve_sequential(ctx, c, threshold, false));
  try {
    if (node.is_leaf()) {
      NeighborGraph graph(*ctx.cloud, node.points, threshold);
      return build_leaf(graph, threshold, ctx.n_max, ctx.field, ctx.leaf);
    }
    MVOptions mv = ctx.mv;
    mv.corrupt_top_f = mv.corrupt_top_f && is_root;
    return MVNodeSolver::assemble(std::move(pieces), std::move(inters),
                                  axis_assigner(ctx.covering, ctx.cloud, *node.axis), mv);
  } catch (const Error&) {
    rethrow_with_context(node.box.label(), threshold);
  }
}

}  // namespace

std::size_t BoxTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.is_leaf(); }));
}

BoxTree build_box_tree(const PointCloud& cloud, const Covering& covering) {
  return build_box_tree_from(Box::whole(cloud.dim()), cloud, covering);
}

SolverPtr build_solver(const Box& box, const PointCloud& cloud, const Covering& covering,
                       double scale, int n_max, Coeff field, const EngineConfig& options) {
  if (scale > covering.epsilon)
    throw DataError("scale exceeds the epsilon the covering was built for");
  const BoxTree tree = build_box_tree_from(box, cloud, covering);
  SolveContext ctx{std::make_shared<const PointCloud>(cloud),
                   std::make_shared<const Covering>(covering),
                   &tree,
                   Field(field),
                   n_max,
                   {options.budget, options.clearing},
                   options.mv};
  return solve_sequential(ctx, 0, scale, true);
}

Covering covering_for(const PointCloud& cloud, const EngineConfig& config) {
  const double width = config.epsilon + config.slack;
  if (config.grid) return build_covering(cloud, width, *config.grid);
  return build_covering_for_parallelism(cloud, width, std::max<std::size_t>(1, config.grid_parallelism));
}

std::vector<double> even_scales(double epsilon, std::size_t steps) {
  std::vector<double> out;
  for (std::size_t i = 1; i <= steps; ++i)
    out.push_back(i == steps ? epsilon
                             : std::min(epsilon, epsilon * static_cast<double>(i) /
                                                     static_cast<double>(steps)));
  return out;
}

RunResult run_detailed(const PointCloud& cloud, const EngineConfig& config) {
  validate(cloud, config);
  const auto wall_start = Clock::now();

  RunResult result;
  auto shared_cloud = std::make_shared<const PointCloud>(cloud);
  result.covering = covering_for(cloud, config);
  auto shared_cov = std::make_shared<const Covering>(result.covering);
  result.tree = build_box_tree(cloud, result.covering);
  const BoxTree& tree = result.tree;

  std::vector<double> scales = config.scales;
  std::sort(scales.begin(), scales.end());

  const Field field(config.field);
  const double top = config.epsilon + config.slack;
  const LeafOptions leaf_opts{config.budget, config.clearing};
  const std::size_t nodes = tree.nodes.size();

  std::vector<std::shared_ptr<const NeighborGraph>> graphs(nodes);
  std::vector<std::vector<SolverPtr>> slots(scales.size(), std::vector<SolverPtr>(nodes));
  std::vector<std::vector<double>> leaf_ms(scales.size(), std::vector<double>(nodes, 0.0));
  std::vector<std::vector<std::size_t>> leaf_simplices(scales.size(),
                                                       std::vector<std::size_t>(nodes, 0));
  std::vector<std::vector<double>> node_ms(scales.size(), std::vector<double>(nodes, 0.0));

  TaskGraph graph;
  std::vector<TaskGraph::TaskId> graph_task(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    if (!tree.nodes[i].is_leaf()) continue;
    graph_task[i] = graph.add([&, i] {
      graphs[i] = std::make_shared<const NeighborGraph>(*shared_cloud, tree.nodes[i].points, top);
    });
  }

  for (std::size_t si = 0; si < scales.size(); ++si) {
    const double threshold = scales[si] + config.slack;
    std::vector<TaskGraph::TaskId> task_of(nodes);
    // Children always have larger indices than their parent.
    for (std::size_t i = nodes; i-- > 0;) {
      const BoxTree::Node& node = tree.nodes[i];
      if (node.is_leaf()) {
        task_of[i] = graph.add(
            [&, i, si, threshold] {
              const auto start = Clock::now();
              try {
                auto leaf = build_leaf(*graphs[i], threshold, config.n_max, field, leaf_opts);
                leaf_simplices[si][i] = leaf->complex().total_count();
                slots[si][i] = std::move(leaf);
              } catch (const Error&) {
                rethrow_with_context(tree.nodes[i].box.label(), scales[si]);
              }
              leaf_ms[si][i] = elapsed_ms(start);
            },
            {graph_task[i]});
        ++result.leaf_jobs;
        continue;
      }
      std::vector<TaskGraph::TaskId> deps;
      for (std::size_t c : node.pieces) deps.push_back(task_of[c]);
      for (std::size_t c : node.intersections) deps.push_back(task_of[c]);
      task_of[i] = graph.add(
          [&, i, si] {
            const auto start = Clock::now();
            const BoxTree::Node& nd = tree.nodes[i];
            std::vector<SolverPtr> pieces, inters;
            for (std::size_t c : nd.pieces) pieces.push_back(slots[si][c]);
            for (std::size_t c : nd.intersections) inters.push_back(slots[si][c]);
            MVOptions mv = config.mv;
            mv.corrupt_top_f = mv.corrupt_top_f && i == 0;
            try {
              slots[si][i] = MVNodeSolver::assemble(std::move(pieces), std::move(inters),
                                                    axis_assigner(shared_cov, shared_cloud, *nd.axis),
                                                    mv);
            } catch (const Error&) {
              rethrow_with_context(nd.box.label(), scales[si]);
            }
            node_ms[si][i] = elapsed_ms(start);
          },
          deps);
    }
  }

  graph.run(config.workers);
  result.jobs_executed = graph.executed();
  result.peak_concurrency = graph.peak_concurrency();

  BettiReport& report = result.report;
  report.epsilon = config.epsilon;
  report.field = config.field;
  report.n_max = config.n_max;
  report.grid = result.covering.grid();
  report.warnings = result.covering.warnings;
  report.leaf_count = tree.leaf_count();
  for (const auto& node : tree.nodes)
    if (node.is_leaf()) report.max_leaf_points = std::max(report.max_leaf_points, node.points.size());

  for (std::size_t si = 0; si < scales.size(); ++si) {
    ScaleBetti sb{scales[si], {}};
    for (int n = 0; n <= config.n_max; ++n) sb.betti.push_back(slots[si][0]->betti(n));
    report.scales.push_back(std::move(sb));
    result.roots.push_back(slots[si][0]);
    for (std::size_t i = 0; i < nodes; ++i) {
      report.timings.leaf_ms += leaf_ms[si][i];
      report.timings.assembly_ms += node_ms[si][i];
      report.max_leaf_simplices = std::max(report.max_leaf_simplices, leaf_simplices[si][i]);
    }
  }
  for (std::size_t i = 0; i < nodes; ++i) {
    if (tree.nodes[i].is_leaf()) continue;
    RanksRecord rec{tree.nodes[i].box.label(), {}};
    for (std::size_t si = 0; si < scales.size(); ++si) {
      auto mv = std::dynamic_pointer_cast<const MVNodeSolver>(slots[si][i]);
      rec.per_scale.push_back(mv->diagnostics().rank_f);
      result.nodes.push_back({i, si, mv});
    }
    report.ranks_f.push_back(std::move(rec));
  }
  if (report.max_leaf_simplices * 2 > config.budget) {
    std::ostringstream os;
    os << "largest leaf complex uses " << report.max_leaf_simplices << " of the "
       << config.budget << " simplex budget";
    report.warnings.push_back(os.str());
  }
  report.timings.wall_ms = elapsed_ms(wall_start);
  return result;
}

BettiReport run(const PointCloud& cloud, const EngineConfig& config) {
  return run_detailed(cloud, config).report;
}

VerifyResult compare_with_oracle(const PointCloud& cloud, const EngineConfig& config,
                                 const BettiReport& report) {
  VerifyResult out;
  std::vector<Vertex> all(cloud.size());
  for (Vertex v = 0; v < cloud.size(); ++v) all[v] = v;
  std::vector<Bar> bars;
  try {
    bars = persistence_barcode(cloud, all, config.epsilon + config.slack, config.n_max,
                               Field(config.field), config.budget);
  } catch (const BudgetExceeded& e) {
    out.feasible = false;
    out.pass = false;
    out.reason = std::string("oracle infeasible: ") + e.what();
    return out;
  }
  for (const ScaleBetti& sb : report.scales) {
    const auto expected = betti_at(bars, sb.scale + config.slack, config.n_max);
    for (int n = 0; n <= config.n_max; ++n) {
      const std::size_t got = n < static_cast<int>(sb.betti.size()) ? sb.betti[n] : 0;
      if (expected[n] != got) out.mismatches.push_back({sb.scale, n, expected[n], got});
    }
  }
  out.pass = out.mismatches.empty();
  return out;
}

BettiReport verify(const PointCloud& cloud, const EngineConfig& config) {
  BettiReport report = run(cloud, config);
  report.verify = compare_with_oracle(cloud, config, report);
  return report;
}

}  // namespace mvph

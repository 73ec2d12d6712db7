#include "mvph/complex/rips_complex.hpp"

#include <algorithm>
#include <string>

#include "mvph/core/error.hpp"

namespace mvph {

NeighborGraph::NeighborGraph(const PointCloud& cloud, std::vector<Vertex> points,
                             double threshold)
    : points_(std::move(points)), threshold_(threshold) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  if (!points_.empty() && points_.back() >= cloud.size())
    throw DataError("region references point " + std::to_string(points_.back()) +
                    " outside a cloud of " + std::to_string(cloud.size()));
  adjacency_.resize(points_.size());
  for (std::uint32_t a = 0; a < points_.size(); ++a)
    for (std::uint32_t b = a + 1; b < points_.size(); ++b) {
      const double len = cloud.distance_unchecked(points_[a], points_[b]);
      if (len <= threshold_) adjacency_[a].push_back({b, len});
    }
}

std::size_t NeighborGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : adjacency_) n += adj.size();
  return n;
}

std::size_t RipsComplex::count(int dim) const {
  if (dim < 0 || dim > max_dim_) return 0;
  return by_dim_[dim].size();
}

std::size_t RipsComplex::total_count() const {
  std::size_t n = 0;
  for (const auto& v : by_dim_) n += v.size();
  return n;
}

std::span<const Simplex> RipsComplex::simplices(int dim) const {
  if (dim < 0 || dim > max_dim_) return {};
  return by_dim_[dim];
}

std::optional<std::uint32_t> RipsComplex::index_of(const Simplex& s) const {
  const auto list = simplices(s.dim());
  auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it == list.end() || !(*it == s)) return std::nullopt;
  return static_cast<std::uint32_t>(it - list.begin());
}

namespace {

// Depth-first expansion; each clique is extended only by common neighbours
// with a larger local index, which emits every simplex once. Points are
// sorted, so local order is global order and the preorder walk is already
// lexicographic within each dimension.
struct Expander {
  const NeighborGraph& graph;
  double scale;
  int max_dim;
  std::size_t budget;
  std::vector<std::vector<Simplex>>& out;
  std::size_t emitted = 0;

  void emit(std::vector<Vertex>& clique_globals) {
    if (++emitted > budget)
      throw BudgetExceeded("Rips complex exceeds the simplex budget of " +
                           std::to_string(budget));
    out[clique_globals.size() - 1].emplace_back(clique_globals);
  }

  void expand(std::vector<Vertex>& clique_globals, const std::vector<std::uint32_t>& candidates) {
    emit(clique_globals);
    if (static_cast<int>(clique_globals.size()) > max_dim) return;
    std::vector<std::uint32_t> next;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const std::uint32_t v = candidates[c];
      next.clear();
      // candidates after v that are also neighbours of v
      const auto edges = graph.upper_edges(v);
      auto e = edges.begin();
      for (std::size_t d = c + 1; d < candidates.size(); ++d) {
        const std::uint32_t w = candidates[d];
        while (e != edges.end() && e->to < w) ++e;
        if (e != edges.end() && e->to == w && e->length <= scale) next.push_back(w);
      }
      clique_globals.push_back(graph.points()[v]);
      expand(clique_globals, next);
      clique_globals.pop_back();
    }
  }
};

}  // namespace

RipsComplex enumerate(const NeighborGraph& graph, double scale, int max_dim,
                      std::size_t budget) {
  if (max_dim < 0) throw DataError("maximum simplex dimension must be nonnegative");
  if (scale > graph.threshold())
    throw DataError("scale exceeds the neighbour graph threshold");
  RipsComplex cx;
  cx.points_.assign(graph.points().begin(), graph.points().end());
  cx.scale_ = scale;
  cx.max_dim_ = max_dim;
  cx.by_dim_.resize(static_cast<std::size_t>(max_dim) + 1);

  Expander ex{graph, scale, max_dim, budget, cx.by_dim_};
  std::vector<Vertex> clique;
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t v = 0; v < graph.points().size(); ++v) {
    candidates.clear();
    for (const auto& e : graph.upper_edges(v))
      if (e.length <= scale) candidates.push_back(e.to);
    clique.assign(1, graph.points()[v]);
    ex.expand(clique, candidates);
  }
  return cx;
}

RipsComplex enumerate(const PointCloud& cloud, std::vector<Vertex> points, double scale,
                      int max_dim, std::size_t budget) {
  return enumerate(NeighborGraph(cloud, std::move(points), scale), scale, max_dim, budget);
}

SparseMatrix boundary_matrix(const RipsComplex& complex, int n, const Field& field) {
  if (n < 1 || n > complex.max_dim())
    throw DataError("boundary matrix dimension " + std::to_string(n) + " outside [1, " +
                    std::to_string(complex.max_dim()) + "]");
  SparseMatrix m;
  m.rows = complex.count(n - 1);
  const auto cols = complex.simplices(n);
  m.columns.resize(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    SparseColumn& col = m.columns[j];
    for (std::size_t i = 0; i < cols[j].size(); ++i) {
      const auto row = complex.index_of(cols[j].face(i));
      if (!row) throw InternalConsistencyError("Rips complex is not closed under faces");
      col.push_back({*row, field.sign(i)});
    }
    std::sort(col.begin(), col.end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
  }
  return m;
}

}  // namespace mvph

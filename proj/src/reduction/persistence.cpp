#include "mvph/reduction/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <limits>
#include <tuple>

#include "mvph/core/chain.hpp"
#include "mvph/reduction/reduce.hpp"

namespace mvph {

namespace {

struct FiltrationEntry {
  double value;
  int dim;
  const Simplex* simplex;
};

}  // namespace

std::vector<Bar> persistence_barcode(const PointCloud& cloud, std::vector<Vertex> points,
                                     double eps_max, int n_max, Field field,
                                     std::size_t budget) {
  const RipsComplex cx = enumerate(cloud, std::move(points), eps_max, n_max + 1, budget);

  std::vector<FiltrationEntry> order;
  order.reserve(cx.total_count());
  for (int d = 0; d <= cx.max_dim(); ++d)
    for (const Simplex& s : cx.simplices(d))
      order.push_back({diameter(cloud, s.vertices()), d, &s});
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return std::tie(a.value, a.dim) < std::tie(b.value, b.dim);
  });

  // position of each (dim, lexicographic index) in filtration order
  std::vector<std::vector<std::uint32_t>> position(cx.max_dim() + 1);
  for (int d = 0; d <= cx.max_dim(); ++d) position[d].resize(cx.count(d));
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    const auto idx = cx.index_of(*order[i].simplex);
    position[order[i].dim][*idx] = i;
  }

  SparseMatrix d;
  d.rows = order.size();
  d.columns.resize(order.size());
  for (std::uint32_t j = 0; j < order.size(); ++j) {
    const Simplex& s = *order[j].simplex;
    if (s.dim() == 0) continue;
    SparseColumn& col = d.columns[j];
    for (std::size_t i = 0; i < s.size(); ++i)
      col.push_back({position[s.dim() - 1][*cx.index_of(s.face(i))], field.sign(i)});
    std::sort(col.begin(), col.end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
  }

  const ReducedPair rp = reduce(d, field, {.track_transform = false});
  std::vector<Bar> bars;
  std::vector<bool> paired(order.size(), false);
  for (std::uint32_t j = 0; j < order.size(); ++j) {
    const auto lo = low(rp.reduced.columns[j]);
    if (!lo) continue;
    paired[*lo] = paired[j] = true;
    bars.push_back({order[*lo].dim, order[*lo].value, order[j].value});
  }
  for (std::uint32_t i = 0; i < order.size(); ++i)
    if (!paired[i] && order[i].dim <= n_max) bars.push_back({order[i].dim, order[i].value, {}});
  std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
    const double da = a.death.value_or(std::numeric_limits<double>::infinity());
    const double db = b.death.value_or(std::numeric_limits<double>::infinity());
    return std::tie(a.dim, a.birth, da) < std::tie(b.dim, b.birth, db);
  });
  return bars;
}

std::vector<std::size_t> betti_at(const std::vector<Bar>& bars, double s, int n_max) {
  std::vector<std::size_t> out(static_cast<std::size_t>(n_max) + 1, 0);
  for (const Bar& b : bars)
    if (b.dim <= n_max && b.alive_at(s)) ++out[b.dim];
  return out;
}

}  // namespace mvph

#include <doctest.h>

#include <algorithm>
#include <random>

#include "mvph/core/error.hpp"
#include "mvph/covering/covering.hpp"
#include "oracles.hpp"

using namespace mvph;

namespace {

Covering line_covering(double a, double r, std::size_t k, double eps) {
  PointCloud c(1, {a, a + r});
  std::vector<std::size_t> grid{k};
  return build_covering(c, eps, grid);
}

}  // namespace

TEST_CASE("choose_k") {
  KChoice c = choose_k(9, 2, 1000.0, 0.001);
  CHECK(c.k_parallel == 2);
  CHECK(c.k == 2);
  CHECK_FALSE(c.epsilon_capped);

  c = choose_k(10, 1, 100.0, 1.0);
  CHECK(c.k_parallel == 9);
  CHECK(c.k_epsilon == 99);
  CHECK(c.k == 9);

  c = choose_k(64, 3, 4.0, 1.0);
  CHECK(c.k_parallel == 3);
  CHECK(c.k_epsilon == 3);
  CHECK(c.k == 3);
  CHECK(4.0 / 3 > 1.0);

  c = choose_k(100, 1, 2.0, 1.0);
  CHECK(c.k_epsilon == 1);
  CHECK(c.k == 1);
  CHECK(c.epsilon_capped);

  CHECK(choose_k(1, 3, 10.0, 0.1).k == 1);
  CHECK(choose_k(2, 1, 10.0, 0.1).k == 1);
}

TEST_CASE("cell and overlap intervals") {
  Covering cov = line_covering(0.0, 10.0, 5, 1.0);
  const AxisIntervals& ax = cov.axes[0];
  const double cells[5][2] = {{0, 3}, {2, 5}, {4, 7}, {6, 9}, {8, 11}};
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(ax.cell(j).lo == cells[j][0]);
    CHECK(ax.cell(j).hi == cells[j][1]);
  }
  REQUIRE(ax.overlap_count() == 4);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(ax.overlap(j).lo == 2.0 * (j + 1));
    CHECK(ax.overlap(j).hi == 2.0 * (j + 1) + 1);
    CHECK(ax.overlap(j).width() == 1.0);
  }

  Covering single = line_covering(0.0, 10.0, 1, 1.0);
  CHECK(single.axes[0].cell(0).lo == 0.0);
  CHECK(single.axes[0].cell(0).hi == 11.0);
  CHECK(single.axes[0].overlap_count() == 0);
}

TEST_CASE("cells two apart must be disjoint") {
  CHECK_THROWS_AS(AxisIntervals(0, 0.0, 3.0, 3, 1.0), DataError);
  CHECK_NOTHROW(AxisIntervals(0, 0.0, 3.1, 3, 1.0));
  CHECK_NOTHROW(AxisIntervals(0, 0.0, 1.0, 2, 1.0));
  CHECK_THROWS_AS(AxisIntervals(0, 0.0, 1.0, 0, 1.0), DataError);
  CHECK_THROWS_AS(AxisIntervals(0, 0.0, 1.0, 1, 0.0), DataError);
}

TEST_CASE("coincident points give a one-cell covering") {
  PointCloud c(2, {1, 1, 1, 1});
  std::vector<std::size_t> grid{3, 3};
  Covering cov = build_covering(c, 0.5, grid);
  CHECK(cov.grid() == std::vector<std::size_t>{1, 1});
  CHECK_FALSE(cov.warnings.empty());
  CHECK(build_covering_for_parallelism(c, 0.5, 16).grid() == std::vector<std::size_t>{1, 1});
}

TEST_CASE("parallelism-driven covering warns when epsilon caps k") {
  PointCloud c(1, {0.0, 2.0});
  Covering cov = build_covering_for_parallelism(c, 1.0, 8);
  CHECK(cov.grid() == std::vector<std::size_t>{1});
  CHECK(cov.warnings.size() == 1);
}

TEST_CASE("assign_simplex examples") {
  {
    PointCloud pts(1, {0.0, 4.0, 2.5, 2.9});
    std::vector<std::size_t> grid{2};
    Covering cov = build_covering(pts, 1.0, grid);
    REQUIRE(cov.axes[0].cell(0).hi == 3.0);
    REQUIRE(cov.axes[0].cell(1).lo == 2.0);
    std::vector<Vertex> edge{2, 3};
    CHECK(assign_simplex(cov, 0, pts, edge) == 0u);
    std::vector<Vertex> vert{1};
    CHECK(assign_simplex(cov, 0, pts, vert) == 1u);
    std::vector<Vertex> wide{0, 1};
    CHECK_FALSE(assign_simplex(cov, 0, pts, wide).has_value());
  }
  {
    PointCloud pts(1, {0.0, 6.0, 4.1, 4.5, 5.0});
    std::vector<std::size_t> grid{3};
    Covering cov = build_covering(pts, 1.0, grid);
    std::vector<Vertex> tri{2, 3, 4};
    CHECK(assign_simplex(cov, 0, pts, tri) == 1u);
    std::vector<Vertex> rev{4, 3, 2};
    CHECK(assign_simplex(cov, 0, pts, rev) == 1u);
  }
}

TEST_CASE("split_axis") {
  PointCloud line(1, {0.0, 10.0});
  std::vector<std::size_t> g3{3};
  Covering c1 = build_covering(line, 1.0, g3);
  auto s = split_axis(Box::whole(1), c1);
  REQUIRE(s);
  CHECK(s->pieces.size() == 3);
  CHECK(s->intersections.size() == 2);

  Box leaf({AxisSelector::cell(0), AxisSelector::overlap(1)});
  CHECK(leaf.is_leaf());
  CHECK_FALSE(split_axis(leaf, c1).has_value());

  PointCloud sq(2, {0, 0, 10, 10});
  std::vector<std::size_t> g2{2, 2};
  Covering c2 = build_covering(sq, 1.0, g2);
  Box b({AxisSelector::full(), AxisSelector::overlap(0)});
  auto s2 = split_axis(b, c2);
  REQUIRE(s2);
  CHECK(s2->axis == 0);
  REQUIRE(s2->pieces.size() == 2);
  CHECK(s2->pieces[0] == Box({AxisSelector::cell(0), AxisSelector::overlap(0)}));
  CHECK(s2->pieces[1] == Box({AxisSelector::cell(1), AxisSelector::overlap(0)}));
  REQUIRE(s2->intersections.size() == 1);
  CHECK(s2->intersections[0] == Box({AxisSelector::overlap(0), AxisSelector::overlap(0)}));
  CHECK(s2->intersections[0].label() == "o0,o0");
}

TEST_CASE("non-adjacent pieces are disjoint and cubes cover the cloud") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t d = 1 + seed % 3;
    PointCloud cloud = oracle::uniform_cloud(seed, 80, d);
    const double eps = 0.08;
    std::vector<std::size_t> grid(d, 2 + seed % 4);
    Covering cov = build_covering(cloud, eps, grid);
    auto all = oracle::all_points(cloud);
    for (std::size_t axis = 0; axis < d; ++axis) {
      const auto& ax = cov.axes[axis];
      for (std::size_t j = 0; j < ax.cell_count(); ++j)
        for (std::size_t l = j + 2; l < ax.cell_count(); ++l)
          for (Vertex v : all)
            CHECK_FALSE((ax.in_cell(j, cloud.coord(v, axis)) && ax.in_cell(l, cloud.coord(v, axis))));
    }
    for (Vertex v : all) {
      bool in_some_cube = true;
      for (std::size_t axis = 0; axis < d; ++axis) {
        bool hit = false;
        for (std::size_t j = 0; j < cov.axes[axis].cell_count(); ++j)
          hit = hit || cov.axes[axis].in_cell(j, cloud.coord(v, axis));
        in_some_cube = in_some_cube && hit;
      }
      CHECK(in_some_cube);
    }
  }
}

TEST_CASE("every small simplex is assignable (Lebesgue property)") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t d = 3;
  const double eps = 0.1;
  PointCloud frame(d, {0, 0, 0, 1, 1, 1});
  std::vector<std::size_t> grid{4, 5, 6};
  Covering cov = build_covering(frame, eps, grid);
  std::size_t failures = 0, samples = 0;
  while (samples < 100000) {
    const std::size_t m = 1 + rng() % 4;
    std::vector<double> coords;
    std::vector<double> centre(d);
    for (auto& x : centre) x = unit(rng);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t a = 0; a < d; ++a) {
        double x = centre[a] + (unit(rng) - 0.5) * eps;
        // pin some coordinates onto cell boundaries
        if (rng() % 8 == 0) x = cov.axes[a].cell(rng() % grid[a]).lo;
        coords.push_back(std::clamp(x, 0.0, 1.0));
      }
    PointCloud s(d, coords);
    auto verts = oracle::all_points(s);
    if (diameter(s, verts) > eps) continue;
    ++samples;
    for (std::size_t a = 0; a < d; ++a) {
      auto j = assign_simplex(cov, a, s, verts);
      if (!j) {
        ++failures;
        continue;
      }
      for (Vertex v : verts) failures += !cov.axes[a].in_cell(*j, s.coord(v, a));
      if (*j > 0)  // lowest cell
        for (Vertex v : verts)
          if (!cov.axes[a].in_cell(*j - 1, s.coord(v, a))) goto lowest_ok;
      if (*j > 0) ++failures;
    lowest_ok:;
    }
  }
  CHECK(failures == 0);
}

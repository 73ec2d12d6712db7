#include <doctest.h>

#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mvph/engine/task_graph.hpp"

using mvph::TaskGraph;

TEST_CASE("single worker runs jobs in insertion order") {
  TaskGraph g;
  std::vector<int> order;
  for (int i = 0; i < 5; ++i) g.add([&order, i] { order.push_back(i); });
  g.run(1);
  CHECK(order == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(g.executed() == 5);
}

TEST_CASE("dependencies complete before dependents") {
  for (std::size_t workers : {1u, 2u, 4u, 8u}) {
    TaskGraph g;
    std::mutex mu;
    std::vector<std::size_t> finish;
    auto job = [&](std::size_t id) {
      return [&, id] {
        std::this_thread::sleep_for(std::chrono::microseconds(50 * (id % 3)));
        std::lock_guard lock(mu);
        finish.push_back(id);
      };
    };
    // a binary tree, leaves first
    std::vector<TaskGraph::TaskId> level;
    for (std::size_t i = 0; i < 16; ++i) level.push_back(g.add(job(i)));
    std::vector<std::pair<TaskGraph::TaskId, std::vector<TaskGraph::TaskId>>> edges;
    while (level.size() > 1) {
      std::vector<TaskGraph::TaskId> next;
      for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
        std::vector<TaskGraph::TaskId> deps{level[i], level[i + 1]};
        const auto id = g.add(job(g.size()), deps);
        edges.push_back({id, deps});
        next.push_back(id);
      }
      level = next;
    }
    g.run(workers);
    REQUIRE(finish.size() == g.size());
    std::vector<std::size_t> pos(g.size());
    for (std::size_t i = 0; i < finish.size(); ++i) pos[finish[i]] = i;
    for (const auto& [id, deps] : edges)
      for (auto d : deps) CHECK(pos[d] < pos[id]);
    CHECK(g.peak_concurrency() <= workers);
    CHECK(g.executed() == g.size());
  }
}

TEST_CASE("concurrency is bounded") {
  TaskGraph g;
  std::atomic<int> live{0}, peak{0};
  for (int i = 0; i < 24; ++i)
    g.add([&] {
      const int now = ++live;
      int seen = peak.load();
      while (now > seen && !peak.compare_exchange_weak(seen, now)) {}
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
      --live;
    });
  g.run(3);
  CHECK(peak.load() <= 3);
  CHECK(g.peak_concurrency() <= 3);
}

TEST_CASE("failures skip dependents and the lowest failure is rethrown") {
  TaskGraph g;
  std::atomic<int> ran{0};
  const auto a = g.add([&] { ++ran; });
  const auto bad = g.add([] { throw std::runtime_error("first"); });
  const auto bad2 = g.add([] { throw std::runtime_error("second"); });
  const auto child = g.add([&] { ++ran; }, {a, bad});
  const auto grandchild = g.add([&] { ++ran; }, {child});
  const auto fine = g.add([&] { ++ran; }, {a});
  try {
    g.run(2);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "first");
  }
  CHECK(g.status(a) == TaskGraph::Status::Done);
  CHECK(g.status(bad) == TaskGraph::Status::Failed);
  CHECK(g.status(bad2) == TaskGraph::Status::Failed);
  CHECK(g.status(child) == TaskGraph::Status::Skipped);
  CHECK(g.status(grandchild) == TaskGraph::Status::Skipped);
  CHECK(g.status(fine) == TaskGraph::Status::Done);
  CHECK(ran.load() == 2);
}

TEST_CASE("dependencies must already exist") {
  TaskGraph g;
  g.add([] {});
  CHECK_THROWS_AS(g.add([] {}, {1}), std::invalid_argument);
  TaskGraph empty;
  CHECK_NOTHROW(empty.run(4));
}

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace mvph {

// A dependency DAG of jobs executed by a bounded pool of worker threads.
// A job becomes ready once every dependency has finished; jobs downstream of
// a failure are skipped. Jobs only communicate through their own output
// slots, and completion is the only synchronisation point.
class TaskGraph {
 public:
  using TaskId = std::size_t;
  enum class Status { Pending, Done, Failed, Skipped };

  // Dependencies must already exist, so the graph is acyclic by construction.
  TaskId add(std::function<void()> job, std::vector<TaskId> dependencies = {});

  // Runs everything with at most `workers` jobs in flight (0 means one per
  // hardware thread). Rethrows the failure of the lowest-numbered failed job.
  void run(std::size_t workers);

  std::size_t size() const { return tasks_.size(); }
  Status status(TaskId id) const { return tasks_.at(id).status; }
  std::size_t executed() const { return executed_; }
  std::size_t peak_concurrency() const { return peak_; }

 private:
  struct Task {
    std::function<void()> job;
    std::vector<TaskId> dependents;
    std::size_t waiting_on = 0;
    bool blocked = false;
    Status status = Status::Pending;
    std::exception_ptr error;
  };

  std::vector<Task> tasks_;
  std::size_t executed_ = 0;
  std::size_t peak_ = 0;
};

}  // namespace mvph

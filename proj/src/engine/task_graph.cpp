#include "mvph/engine/task_graph.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>

namespace mvph {

TaskGraph::TaskId TaskGraph::add(std::function<void()> job, std::vector<TaskId> dependencies) {
  const TaskId id = tasks_.size();
  std::sort(dependencies.begin(), dependencies.end());
  dependencies.erase(std::unique(dependencies.begin(), dependencies.end()), dependencies.end());
  for (TaskId d : dependencies) {
    if (d >= id) throw std::invalid_argument("task dependency on a job that does not exist yet");
    tasks_[d].dependents.push_back(id);
  }
  Task t;
  t.job = std::move(job);
  t.waiting_on = dependencies.size();
  tasks_.push_back(std::move(t));
  return id;
}

void TaskGraph::run(std::size_t workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

  std::mutex mu;
  std::condition_variable cv;
  // Lowest id first, so a single worker runs jobs in insertion order.
  std::priority_queue<TaskId, std::vector<TaskId>, std::greater<>> ready;
  std::size_t finished = 0, running = 0;
  executed_ = 0;
  peak_ = 0;

  for (TaskId id = 0; id < tasks_.size(); ++id)
    if (tasks_[id].status == Status::Pending && tasks_[id].waiting_on == 0) ready.push(id);

  // Called with `mu` held.
  auto complete = [&](TaskId id) {
    std::vector<TaskId> stack{id};
    while (!stack.empty()) {
      const TaskId cur = stack.back();
      stack.pop_back();
      ++finished;
      const bool failed = tasks_[cur].status != Status::Done;
      for (TaskId dep : tasks_[cur].dependents) {
        Task& d = tasks_[dep];
        d.blocked |= failed;
        if (--d.waiting_on > 0) continue;
        if (d.blocked) {
          d.status = Status::Skipped;
          stack.push_back(dep);
        } else {
          ready.push(dep);
        }
      }
    }
  };

  auto worker = [&] {
    std::unique_lock lock(mu);
    for (;;) {
      cv.wait(lock, [&] { return !ready.empty() || finished == tasks_.size(); });
      if (ready.empty()) return;
      const TaskId id = ready.top();
      ready.pop();
      ++running;
      peak_ = std::max(peak_, running);
      lock.unlock();

      std::exception_ptr error;
      try {
        tasks_[id].job();
      } catch (...) {
        error = std::current_exception();
      }

      lock.lock();
      --running;
      ++executed_;
      tasks_[id].status = error ? Status::Failed : Status::Done;
      tasks_[id].error = error;
      complete(id);
      cv.notify_all();
    }
  };

  const std::size_t n = std::min(workers, std::max<std::size_t>(tasks_.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }

  for (const Task& t : tasks_)
    if (t.error) std::rethrow_exception(t.error);
}

}  // namespace mvph

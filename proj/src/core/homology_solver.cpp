#include "mvph/core/homology_solver.hpp"

#include <algorithm>
#include <string>

#include "mvph/core/error.hpp"

namespace mvph {

bool HomologySolver::contains(std::span<const Vertex> vertices) const {
  const auto region = points();
  return std::all_of(vertices.begin(), vertices.end(), [&](Vertex v) {
    return std::binary_search(region.begin(), region.end(), v);
  });
}

ContractCounters& contract_counters() {
  static ContractCounters counters;
  return counters;
}

void verify_bounds(const Chain& w, const Chain& z, const char* where) {
  contract_counters().bound_results.fetch_add(1, std::memory_order_relaxed);
  if (!(boundary(w) == z))
    throw InternalConsistencyError(std::string(where) + ": returned chain does not bound the input");
  contract_counters().bound_verified.fetch_add(1, std::memory_order_relaxed);
}

bool is_zero_vector(std::span<const Coeff> v) {
  return std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; });
}

}  // namespace mvph

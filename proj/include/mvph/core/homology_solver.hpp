#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mvph/core/chain.hpp"
#include "mvph/core/field.hpp"
#include "mvph/core/point_cloud.hpp"

namespace mvph {

// Homology of one region's Rips complex at a fixed scale, in dimensions
// 0..max_dim(). Chains use global point indices, so the inclusion of a
// sub-region is the identity on chains.
class HomologySolver {
 public:
  virtual ~HomologySolver() = default;

  virtual const Field& field() const = 0;
  virtual double scale() const = 0;
  virtual int max_dim() const = 0;
  // Sorted global indices of the region.
  virtual std::span<const Vertex> points() const = 0;

  virtual std::size_t betti(int n) const = 0;
  // Cycle representing the i-th basis class of H_n.
  virtual const Chain& representative(int n, std::size_t i) const = 0;
  // Coordinates of the class of cycle z in the representative basis.
  // Throws DataError if z is not a cycle or leaves the region's complex.
  virtual std::vector<Coeff> coords(const Chain& z) const = 0;
  // Some w with boundary(w) == z, or nullopt when [z] != 0.
  virtual std::optional<Chain> bound(const Chain& z) const = 0;

  // Every vertex lies in the region.
  bool contains(std::span<const Vertex> vertices) const;
};

// Process-wide tallies of the chain-level contract checks. Every bound()
// result is checked; these only count.
struct ContractCounters {
  std::atomic<std::uint64_t> bound_results{0};
  std::atomic<std::uint64_t> bound_verified{0};
  std::atomic<std::uint64_t> coords_verified{0};
};
ContractCounters& contract_counters();

// Throws InternalConsistencyError unless boundary(w) == z.
void verify_bounds(const Chain& w, const Chain& z, const char* where);

bool is_zero_vector(std::span<const Coeff> v);

}  // namespace mvph

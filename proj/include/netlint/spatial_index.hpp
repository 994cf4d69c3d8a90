#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netlint/geometry.hpp"
#include "netlint/network.hpp"

namespace netlint {

// Static R-tree over 2D points, bulk-loaded with sort-tile-recursive
// packing. Read-only after build; queries are safe to run concurrently.
class RTree {
 public:
  RTree() = default;

  static RTree bulk_build(std::span<const Vertex> points,
                          int node_capacity = 16);

  // Indices of all points inside the closed box, ascending.
  std::vector<std::uint32_t> query_box(const Vertex& lo,
                                       const Vertex& hi) const;

  std::size_t size() const { return points_.size(); }

 private:
  struct Box {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  };
  struct Node {
    Box box;
    std::uint32_t first = 0;  // child node or point slot
    std::uint32_t count = 0;
    bool leaf = true;
  };

  std::vector<Vertex> points_;
  std::vector<std::uint32_t> slots_;  // permutation of point indices
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
};

// A point produced by the line -> endpoint reduction; the unit of the
// spatial join.
struct EndpointRecord {
  std::uint32_t feature = 0;  // ordinal of the parent feature
  EndRole role = EndRole::start;
  std::uint32_t node = 0;
  Vertex coord;
  int weight = 1;

  friend bool operator==(const EndpointRecord& a, const EndpointRecord& b) {
    return a.feature == b.feature && a.role == b.role && a.node == b.node &&
           a.coord == b.coord && a.weight == b.weight;
  }
};

// Endpoint records under an R-tree for box queries plus a quantized-grid
// hash for exact-equality joins, so join semantics never depend on
// floating-point box epsilons.
class EndpointIndex {
 public:
  EndpointIndex() = default;

  // Throws ConfigError when two records share feature, role and grid cell.
  static EndpointIndex bulk_build(std::vector<EndpointRecord> records,
                                  double quantum, int node_capacity = 16);

  const std::vector<EndpointRecord>& records() const { return records_; }
  double quantum() const { return quantum_; }

  // All records whose quantized coordinate equals the query's.
  std::vector<EndpointRecord> query_point(const Vertex& v) const;

  // All records with coordinates inside the closed box.
  std::vector<EndpointRecord> query_box(const Vertex& lo,
                                        const Vertex& hi) const;

  // Record indices co-located with the cell; empty span when none.
  std::span<const std::uint32_t> cell(const GridKey& key) const;

  // True when some record in the cell belongs to a different feature.
  bool has_other_feature(const GridKey& key, std::uint32_t feature) const;

 private:
  std::vector<EndpointRecord> records_;
  double quantum_ = 1e-9;
  RTree tree_;
  std::unordered_map<GridKey, std::vector<std::uint32_t>, GridKeyHash> grid_;
};

// All pairs of records at equal quantized coordinates, as (left record
// index, right record index), sorted. Both indexes must share a quantum.
std::vector<std::pair<std::uint32_t, std::uint32_t>> spatial_join(
    const EndpointIndex& left, const EndpointIndex& right);

}  // namespace netlint

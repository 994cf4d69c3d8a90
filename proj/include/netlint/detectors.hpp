#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netlint/network.hpp"
#include "netlint/spatial_index.hpp"
#include "netlint/validation.hpp"

namespace netlint {

// The common attribute-table layout: one row per feature with identifier,
// start node, end node and weight. The exhaustive detector works on this
// table alone; tables derived from a network share its node assignment.
struct AttributeTable {
  struct Row {
    std::string id;
    std::int64_t start_node = 0;
    std::int64_t end_node = 0;
    int weight = 1;
    std::vector<std::pair<std::string, std::string>> extras;
  };
  std::vector<Row> rows;

  static AttributeTable from_network(const Network& net);
};

// Exhaustive-search detector: every feature compared against every other
// through the table. Quadratic by construction; the comparison baseline.
std::vector<ValidationError> detect_exhaustive(const AttributeTable& table,
                                               const RuleConfig& cfg);

// Line -> endpoint reduction, one dataset layout per category: rule-1
// categories keep start and end points apart (both ends are checked
// separately), rule-3 categories pool both ends.
struct ReducedCategory {
  int weight = 1;
  Rule rule = Rule::rule1;
  std::vector<EndpointRecord> starts;    // rule 1
  std::vector<EndpointRecord> ends;      // rule 1
  std::vector<EndpointRecord> combined;  // rule 3
};

std::vector<ReducedCategory> reduce_features(const Network& net,
                                             const RuleConfig& cfg);

// Spatial-join detector over the reduced endpoint datasets. Observationally
// equivalent to detect_exhaustive on the same network and config.
std::vector<ValidationError> detect_spatialjoin(const Network& net,
                                                const RuleConfig& cfg);

// Blocked-flow nodes of a directed network: zero in-degree or zero
// out-degree. Callers normalize direction codes with
// apply_direction_weights first. `exempt_terminals` skips degree-1 nodes.
std::vector<ValidationError> detect_point_no_flow(
    const Network& net, bool exempt_terminals = false);

enum class SelfIntersectMode : unsigned char { paper, full };

// paper: flag features whose two endpoints land in one grid cell.
// full: additionally flag interior crossings and end-on-edge contacts.
std::vector<ValidationError> detect_self_intersection(
    const Network& net, SelfIntersectMode mode = SelfIntersectMode::paper);

// Unordered node pairs with Euclidean distance in (0, epsilon]; epsilon must
// exceed the network quantum.
std::vector<ValidationError> detect_near_nodes(const Network& net,
                                               double epsilon);

// Fill each error's component field from its first feature (or node).
void label_components(std::vector<ValidationError>& errors,
                      const Network& net);

// Component id per table row, by shared-node reachability.
std::vector<std::uint32_t> component_labels(const AttributeTable& table);

void label_components(std::vector<ValidationError>& errors,
                      const AttributeTable& table);

}  // namespace netlint

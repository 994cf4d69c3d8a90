#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netlint/geometry.hpp"
#include "netlint/validation.hpp"

namespace netlint {

enum class Rule : unsigned char { rule1, rule3 };
enum class EndRole : unsigned char { start, end };

const char* to_string(EndRole r);

// The hierarchical connection specification: k categories with weights
// 1..k, smaller weight = higher category. Categories in `rule3_weights`
// need a qualifying neighbor at one end only; all others at both ends.
// The prohibited pair's categories must never touch.
struct RuleConfig {
  int k = 1;
  std::set<int> rule3_weights;
  std::pair<int, int> prohibited_pair{1, 1};
  double quantum = 1e-9;

  // Threshold form: weights >= a follow rule 3, weights < a rule 1.
  static RuleConfig with_threshold(int k, int a, double quantum = 1e-9);
  static RuleConfig with_rule3_set(int k, std::set<int> weights,
                                   double quantum = 1e-9);
};

Rule rule_of(int weight, const RuleConfig& cfg);

struct IncidenceRecord {
  std::uint32_t feature;
  EndRole role;
};

// Immutable after build. Nodes are formed by quantized-coordinate identity
// of feature endpoints; interior vertices never form nodes. Node ids are
// assigned in sorted grid-cell order, so they do not depend on feature
// insertion order.
struct Network {
  std::vector<LineFeature> features;
  double quantum = 1e-9;
  std::vector<Vertex> node_coords;  // node id -> cell center
  std::unordered_map<GridKey, std::uint32_t, GridKeyHash> node_of_cell;
  std::vector<std::vector<IncidenceRecord>> incidence;  // per node
  std::vector<std::array<std::uint32_t, 2>> feature_nodes;  // [start, end]

  std::size_t node_count() const { return node_coords.size(); }
  std::uint32_t node_of(std::uint32_t feature, EndRole role) const {
    return feature_nodes[feature][role == EndRole::start ? 0 : 1];
  }
};

Network build_network(std::vector<LineFeature> features,
                      const RuleConfig& cfg);

// Component id per feature, in order of first appearance (0-based).
std::vector<std::uint32_t> component_labels(const Network& net);

// Each connected part as an independent network; concatenating the parts in
// order restores the original feature sequence.
std::vector<Network> connected_components(const Network& net,
                                          const RuleConfig& cfg);

// Special case 2: two categorizations of k and g categories combine into one
// of k*g categories via the bijection (w1 - 1) * g + w2.
std::vector<LineFeature> combine_attributes(
    std::vector<LineFeature> features,
    std::span<const std::optional<int>> attr1, int k,
    std::span<const std::optional<int>> attr2, int g);

// Special case 4: rewrite features for flow analysis. Direction code -1
// reverses the vertex sequence, 0 contributes both orientations (the feature
// is emitted twice), 1 passes through.
std::vector<LineFeature> apply_direction_weights(
    std::vector<LineFeature> features);

// Special case 5: distinct connection specifications at feature starts and
// ends. An end qualifies when some other feature with an allowed weight
// touches its node.
struct EndSpec {
  std::set<int> allowed_weights;
};

struct EndCheckTask {
  EndRole role;
  EndSpec spec;
};

std::array<EndCheckTask, 2> split_per_end_specs(const EndSpec& start_spec,
                                                const EndSpec& end_spec);

std::vector<ValidationError> run_end_check(const Network& net,
                                           const EndCheckTask& task);

// Both ends of every feature; undirected features (direction code 0) are
// checked against the union of the two specs at both ends.
std::vector<ValidationError> check_end_specs(const Network& net,
                                             const EndSpec& start_spec,
                                             const EndSpec& end_spec);

}  // namespace netlint

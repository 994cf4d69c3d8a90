#pragma once

#include <cstdint>
#include <vector>

#include "netlint/geometry.hpp"
#include "netlint/network.hpp"
#include "netlint/validation.hpp"

namespace netlint {

// Synthetic hierarchical-network recipe. With zero injection rates the
// result validates clean; injected defects are isolated by construction so
// the ground truth lists exactly what the detectors will find.
struct GenSpec {
  int n = 1;              // total feature count, defects included
  int k = 1;              // category count
  int a = 0;              // rule-3 threshold; 0 derives k / 2 + 1
  double inject_rule1 = 0.0;  // each rate: defects per feature
  double inject_rule2 = 0.0;
  double inject_rule3 = 0.0;
  std::uint64_t seed = 0;
};

struct GeneratedNetwork {
  std::vector<LineFeature> features;
  RuleConfig cfg;
  std::vector<ValidationError> injected;  // ground truth
};

GeneratedNetwork generate_network(const GenSpec& spec);

}  // namespace netlint

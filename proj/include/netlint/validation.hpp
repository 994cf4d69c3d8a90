#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "netlint/geometry.hpp"

namespace netlint {

enum class ErrorKind : unsigned char {
  rule1,
  rule2,
  rule3,
  no_flow,
  self_intersection,
  near_node,
};

const char* to_string(ErrorKind k);

// One validation finding. Findings are data, not faults: detectors return
// them, they are never thrown.
//
// Cardinality: rule1/rule3/self_intersection carry one feature id, rule2 two
// (offender plus partner), no_flow the ids incident to the blocked node, and
// near_node two node coordinates instead of feature ids.
struct ValidationError {
  ErrorKind kind = ErrorKind::rule1;
  std::vector<std::string> feature_ids;
  std::optional<std::uint32_t> node;
  std::optional<std::uint32_t> node2;
  std::optional<Vertex> location;
  std::optional<Vertex> location2;
  std::uint32_t component = 0;
  std::string detail;
};

// Detector-equivalence identity: kind plus the sorted feature ids (node pair
// for near_node errors).
std::string identity_key(const ValidationError& e);

// Stable total order used by reports; byte-identical output depends on it.
bool report_less(const ValidationError& a, const ValidationError& b);

void sort_for_report(std::vector<ValidationError>& errors);

}  // namespace netlint

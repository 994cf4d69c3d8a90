#include "netlint/validation.hpp"

#include <algorithm>

namespace netlint {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::rule1: return "rule1";
    case ErrorKind::rule2: return "rule2";
    case ErrorKind::rule3: return "rule3";
    case ErrorKind::no_flow: return "no_flow";
    case ErrorKind::self_intersection: return "self_intersection";
    case ErrorKind::near_node: return "near_node";
  }
  return "unknown";
}

std::string identity_key(const ValidationError& e) {
  std::string key = to_string(e.kind);
  std::vector<std::string> ids = e.feature_ids;
  std::sort(ids.begin(), ids.end());
  for (const auto& id : ids) {
    key += '|';
    key += id;
  }
  if (e.kind == ErrorKind::near_node || e.kind == ErrorKind::no_flow) {
    if (e.node) key += "|n" + std::to_string(*e.node);
    if (e.node2) key += "|n" + std::to_string(*e.node2);
  }
  return key;
}

bool report_less(const ValidationError& a, const ValidationError& b) {
  auto key = [](const ValidationError& e) {
    return std::tuple<int, std::string, std::uint64_t, std::uint64_t,
                      std::string>(
        static_cast<int>(e.kind),
        e.feature_ids.empty() ? std::string() : e.feature_ids.front(),
        e.node ? *e.node : ~0ull, e.node2 ? *e.node2 : ~0ull, e.detail);
  };
  return key(a) < key(b);
}

void sort_for_report(std::vector<ValidationError>& errors) {
  std::stable_sort(errors.begin(), errors.end(), report_less);
}

}  // namespace netlint

#include "netlint/network.hpp"

#include <algorithm>
#include <numeric>

namespace netlint {

const char* to_string(EndRole r) {
  return r == EndRole::start ? "start" : "end";
}

RuleConfig RuleConfig::with_threshold(int k, int a, double quantum) {
  if (k < 1) throw ConfigError("category count k must be >= 1");
  if (a < 1 || a > k) throw ConfigError("variable a must satisfy 1 <= a <= k");
  RuleConfig cfg;
  cfg.k = k;
  for (int w = a; w <= k; ++w) cfg.rule3_weights.insert(w);
  cfg.prohibited_pair = {1, k};
  cfg.quantum = quantum;
  return cfg;
}

RuleConfig RuleConfig::with_rule3_set(int k, std::set<int> weights,
                                      double quantum) {
  if (k < 1) throw ConfigError("category count k must be >= 1");
  for (int w : weights) {
    if (w < 1 || w > k)
      throw ConfigError("rule-3 weight " + std::to_string(w) +
                        " outside [1, k]");
  }
  RuleConfig cfg;
  cfg.k = k;
  cfg.rule3_weights = std::move(weights);
  cfg.prohibited_pair = {1, k};
  cfg.quantum = quantum;
  return cfg;
}

Rule rule_of(int weight, const RuleConfig& cfg) {
  return cfg.rule3_weights.count(weight) ? Rule::rule3 : Rule::rule1;
}

Network build_network(std::vector<LineFeature> features,
                      const RuleConfig& cfg) {
  for (const LineFeature& f : features) {
    if (f.weight < 1 || f.weight > cfg.k) {
      throw ConfigError("feature '" + f.id + "': weight " +
                        std::to_string(f.weight) + " outside [1, " +
                        std::to_string(cfg.k) + "]");
    }
  }

  Network net;
  net.quantum = cfg.quantum;
  net.features = std::move(features);

  std::vector<GridKey> cells;
  cells.reserve(net.features.size() * 2);
  for (const LineFeature& f : net.features) {
    cells.push_back(quantize(f.vertices.front(), net.quantum));
    cells.push_back(quantize(f.vertices.back(), net.quantum));
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  net.node_coords.reserve(cells.size());
  net.node_of_cell.reserve(cells.size());
  for (const GridKey& c : cells) {
    net.node_of_cell.emplace(c, static_cast<std::uint32_t>(net.node_coords.size()));
    net.node_coords.push_back(cell_center(c, net.quantum));
  }

  net.incidence.resize(net.node_coords.size());
  net.feature_nodes.reserve(net.features.size());
  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    const LineFeature& f = net.features[i];
    std::uint32_t s = net.node_of_cell.at(quantize(f.vertices.front(), net.quantum));
    std::uint32_t e = net.node_of_cell.at(quantize(f.vertices.back(), net.quantum));
    net.feature_nodes.push_back({s, e});
    net.incidence[s].push_back({i, EndRole::start});
    net.incidence[e].push_back({i, EndRole::end});
  }
  return net;
}

std::vector<std::uint32_t> component_labels(const Network& net) {
  // Union-find over nodes; each feature merges its two end nodes.
  std::vector<std::uint32_t> parent(net.node_count());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&parent](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [s, e] : net.feature_nodes) parent[find(s)] = find(e);

  std::vector<std::uint32_t> labels(net.features.size());
  std::unordered_map<std::uint32_t, std::uint32_t> seen;
  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    std::uint32_t root = find(net.feature_nodes[i][0]);
    auto [it, inserted] = seen.emplace(root, static_cast<std::uint32_t>(seen.size()));
    labels[i] = it->second;
  }
  return labels;
}

std::vector<Network> connected_components(const Network& net,
                                          const RuleConfig& cfg) {
  std::vector<std::uint32_t> labels = component_labels(net);
  std::uint32_t count = labels.empty()
                            ? 0
                            : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<LineFeature>> groups(count);
  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    groups[labels[i]].push_back(net.features[i]);
  }
  std::vector<Network> parts;
  parts.reserve(count);
  for (auto& g : groups) parts.push_back(build_network(std::move(g), cfg));
  return parts;
}

std::vector<LineFeature> combine_attributes(
    std::vector<LineFeature> features,
    std::span<const std::optional<int>> attr1, int k,
    std::span<const std::optional<int>> attr2, int g) {
  if (k < 1 || g < 1) throw ConfigError("attribute ranges must be >= 1");
  if (attr1.size() != features.size() || attr2.size() != features.size()) {
    throw ConfigError("attribute column length does not match feature count");
  }
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (!attr1[i] || !attr2[i]) {
      throw ConfigError("feature '" + features[i].id +
                        "': missing attribute value");
    }
    int w1 = *attr1[i], w2 = *attr2[i];
    if (w1 < 1 || w1 > k || w2 < 1 || w2 > g) {
      throw ConfigError("feature '" + features[i].id +
                        "': attribute value out of range");
    }
    features[i].weight = (w1 - 1) * g + w2;
  }
  return features;
}

std::vector<LineFeature> apply_direction_weights(
    std::vector<LineFeature> features) {
  std::vector<LineFeature> out;
  out.reserve(features.size());
  for (LineFeature& f : features) {
    switch (f.direction_code) {
      case 1:
        out.push_back(std::move(f));
        break;
      case -1: {
        std::reverse(f.vertices.begin(), f.vertices.end());
        f.direction_code = 1;
        out.push_back(std::move(f));
        break;
      }
      case 0: {
        LineFeature back = f;
        std::reverse(back.vertices.begin(), back.vertices.end());
        f.direction_code = 1;
        back.direction_code = 1;
        out.push_back(std::move(f));
        out.push_back(std::move(back));
        break;
      }
      default:
        throw ParseError("feature '" + f.id + "': direction code " +
                         std::to_string(f.direction_code) +
                         " must be -1, 0 or 1");
    }
  }
  return out;
}

std::array<EndCheckTask, 2> split_per_end_specs(const EndSpec& start_spec,
                                                const EndSpec& end_spec) {
  return {EndCheckTask{EndRole::start, start_spec},
          EndCheckTask{EndRole::end, end_spec}};
}

namespace {

bool end_qualifies(const Network& net, std::uint32_t feature, EndRole role,
                   const EndSpec& spec) {
  std::uint32_t node = net.node_of(feature, role);
  for (const IncidenceRecord& rec : net.incidence[node]) {
    if (rec.feature == feature) continue;  // never its own neighbor
    if (spec.allowed_weights.count(net.features[rec.feature].weight)) {
      return true;
    }
  }
  return false;
}

ValidationError end_spec_error(const Network& net, std::uint32_t feature,
                               EndRole role) {
  ValidationError e;
  e.kind = ErrorKind::rule1;
  e.feature_ids = {net.features[feature].id};
  e.node = net.node_of(feature, role);
  e.location = net.node_coords[*e.node];
  e.detail = std::string("no neighbor of an allowed category at ") +
             to_string(role);
  return e;
}

}  // namespace

std::vector<ValidationError> run_end_check(const Network& net,
                                           const EndCheckTask& task) {
  std::vector<ValidationError> errors;
  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    if (!end_qualifies(net, i, task.role, task.spec)) {
      errors.push_back(end_spec_error(net, i, task.role));
    }
  }
  return errors;
}

std::vector<ValidationError> check_end_specs(const Network& net,
                                             const EndSpec& start_spec,
                                             const EndSpec& end_spec) {
  EndSpec merged;
  std::set_union(start_spec.allowed_weights.begin(),
                 start_spec.allowed_weights.end(),
                 end_spec.allowed_weights.begin(),
                 end_spec.allowed_weights.end(),
                 std::inserter(merged.allowed_weights,
                               merged.allowed_weights.begin()));

  std::vector<ValidationError> errors;
  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    bool undirected = net.features[i].direction_code == 0;
    const EndSpec& at_start = undirected ? merged : start_spec;
    const EndSpec& at_end = undirected ? merged : end_spec;
    if (!end_qualifies(net, i, EndRole::start, at_start)) {
      errors.push_back(end_spec_error(net, i, EndRole::start));
    }
    if (!end_qualifies(net, i, EndRole::end, at_end)) {
      errors.push_back(end_spec_error(net, i, EndRole::end));
    }
  }
  return errors;
}

}  // namespace netlint

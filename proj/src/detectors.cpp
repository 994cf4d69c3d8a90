#include "netlint/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "netlint/intersection.hpp"

namespace netlint {

AttributeTable AttributeTable::from_network(const Network& net) {
  AttributeTable table;
  table.rows.reserve(net.features.size());
  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    AttributeTable::Row row;
    row.id = net.features[i].id;
    row.start_node = net.feature_nodes[i][0];
    row.end_node = net.feature_nodes[i][1];
    row.weight = net.features[i].weight;
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

bool rows_connected(const AttributeTable::Row& a, const AttributeTable::Row& b) {
  return a.start_node == b.start_node || a.start_node == b.end_node ||
         a.end_node == b.start_node || a.end_node == b.end_node;
}

std::string node_list(bool start_failed, bool end_failed,
                      const AttributeTable::Row& row) {
  std::string s;
  if (start_failed) s += "start@" + std::to_string(row.start_node);
  if (end_failed) {
    if (!s.empty()) s += ", ";
    s += "end@" + std::to_string(row.end_node);
  }
  return s;
}

}  // namespace

std::vector<ValidationError> detect_exhaustive(const AttributeTable& table,
                                               const RuleConfig& cfg) {
  const auto& rows = table.rows;
  const std::size_t n = rows.size();
  const auto [lo, hi] = std::minmax(cfg.prohibited_pair.first,
                                    cfg.prohibited_pair.second);
  std::vector<ValidationError> errors;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& fi = rows[i];

    // Rule 2: categories of the prohibited pair must not touch. Vacuous
    // when the pair collapses (k == 1). The reported partner is the
    // smallest qualifying id, so both detectors name the same one.
    if (lo != hi && (fi.weight == lo || fi.weight == hi)) {
      int other = fi.weight == lo ? hi : lo;
      const std::string* partner = nullptr;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (rows[j].weight == other && rows_connected(fi, rows[j])) {
          if (!partner || rows[j].id < *partner) partner = &rows[j].id;
        }
      }
      if (partner) {
        ValidationError e;
        e.kind = ErrorKind::rule2;
        e.feature_ids = {fi.id, *partner};
        e.detail = "prohibited contact between categories " +
                   std::to_string(lo) + " and " + std::to_string(hi);
        errors.push_back(std::move(e));
      }
    }

    if (rule_of(fi.weight, cfg) == Rule::rule1) {
      // Rule 1: a qualifying neighbor at both ends.
      bool start = false, end = false;
      for (std::size_t j = 0; j < n && !(start && end); ++j) {
        if (i == j || rows[j].weight > fi.weight) continue;
        if (fi.start_node == rows[j].start_node ||
            fi.start_node == rows[j].end_node) {
          start = true;
        }
        if (fi.end_node == rows[j].start_node ||
            fi.end_node == rows[j].end_node) {
          end = true;
        }
      }
      if (!(start && end)) {
        ValidationError e;
        e.kind = ErrorKind::rule1;
        e.feature_ids = {fi.id};
        e.detail = "no same-or-higher-category neighbor: " +
                   node_list(!start, !end, fi);
        errors.push_back(std::move(e));
      }
    } else {
      // Rule 3: a qualifying neighbor at one end suffices.
      bool connected = false;
      for (std::size_t j = 0; j < n && !connected; ++j) {
        if (i == j || rows[j].weight > fi.weight) continue;
        connected = rows_connected(fi, rows[j]);
      }
      if (!connected) {
        ValidationError e;
        e.kind = ErrorKind::rule3;
        e.feature_ids = {fi.id};
        e.detail = "no same-or-higher-category neighbor at either end";
        errors.push_back(std::move(e));
      }
    }
  }
  return errors;
}

std::vector<ReducedCategory> reduce_features(const Network& net,
                                             const RuleConfig& cfg) {
  std::vector<ReducedCategory> cats(cfg.k);
  for (int w = 1; w <= cfg.k; ++w) {
    cats[w - 1].weight = w;
    cats[w - 1].rule = rule_of(w, cfg);
  }
  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    const LineFeature& f = net.features[i];
    ReducedCategory& cat = cats[f.weight - 1];
    EndpointRecord start{i, EndRole::start, net.feature_nodes[i][0],
                         net.features[i].vertices.front(), f.weight};
    EndpointRecord end{i, EndRole::end, net.feature_nodes[i][1],
                       net.features[i].vertices.back(), f.weight};
    if (cat.rule == Rule::rule1) {
      cat.starts.push_back(start);
      cat.ends.push_back(end);
    } else {
      cat.combined.push_back(start);
      cat.combined.push_back(end);
    }
  }
  return cats;
}

namespace {

// Marks each record that joins some record of a same-or-higher category
// belonging to a different feature (the CHECK column of the join detector).
bool record_checked(const EndpointRecord& rec,
                    const std::vector<EndpointIndex>& targets, int upto,
                    double quantum) {
  GridKey key = quantize(rec.coord, quantum);
  for (int j = 0; j < upto; ++j) {
    if (targets[j].has_other_feature(key, rec.feature)) return true;
  }
  return false;
}

}  // namespace

std::vector<ValidationError> detect_spatialjoin(const Network& net,
                                                const RuleConfig& cfg) {
  const double quantum = net.quantum;
  std::vector<ReducedCategory> cats = reduce_features(net, cfg);

  // One index per category over all of its endpoint records; joins probe
  // the quantized grid of each target category in turn.
  std::vector<EndpointIndex> targets;
  targets.reserve(cats.size());
  for (const ReducedCategory& cat : cats) {
    std::vector<EndpointRecord> recs;
    recs.reserve(cat.starts.size() + cat.ends.size() + cat.combined.size());
    recs.insert(recs.end(), cat.starts.begin(), cat.starts.end());
    recs.insert(recs.end(), cat.ends.begin(), cat.ends.end());
    recs.insert(recs.end(), cat.combined.begin(), cat.combined.end());
    targets.push_back(EndpointIndex::bulk_build(std::move(recs), quantum));
  }

  std::vector<ValidationError> errors;
  for (int w = 1; w <= cfg.k; ++w) {
    const ReducedCategory& cat = cats[w - 1];
    if (cat.rule == Rule::rule1) {
      // Start and end datasets are checked separately; a feature errs when
      // either of its records stays unmarked.
      std::unordered_map<std::uint32_t, std::pair<bool, bool>> per_feature;
      for (const EndpointRecord& rec : cat.starts) {
        per_feature[rec.feature].first =
            record_checked(rec, targets, w, quantum);
      }
      for (const EndpointRecord& rec : cat.ends) {
        per_feature[rec.feature].second =
            record_checked(rec, targets, w, quantum);
      }
      std::vector<std::uint32_t> offenders;
      for (const auto& [feature, ok] : per_feature) {
        if (!(ok.first && ok.second)) offenders.push_back(feature);
      }
      std::sort(offenders.begin(), offenders.end());
      for (std::uint32_t feature : offenders) {
        auto [start_ok, end_ok] = per_feature[feature];
        AttributeTable::Row row;
        row.start_node = net.feature_nodes[feature][0];
        row.end_node = net.feature_nodes[feature][1];
        ValidationError e;
        e.kind = ErrorKind::rule1;
        e.feature_ids = {net.features[feature].id};
        e.detail = "no same-or-higher-category neighbor: " +
                   node_list(!start_ok, !end_ok, row);
        errors.push_back(std::move(e));
      }
    } else {
      // Pooled records; a feature errs when both of its records stay
      // unmarked.
      std::unordered_map<std::uint32_t, bool> per_feature;
      for (const EndpointRecord& rec : cat.combined) {
        bool ok = record_checked(rec, targets, w, quantum);
        auto [it, inserted] = per_feature.emplace(rec.feature, ok);
        if (!inserted) it->second = it->second || ok;
      }
      std::vector<std::uint32_t> offenders;
      for (const auto& [feature, ok] : per_feature) {
        if (!ok) offenders.push_back(feature);
      }
      std::sort(offenders.begin(), offenders.end());
      for (std::uint32_t feature : offenders) {
        ValidationError e;
        e.kind = ErrorKind::rule3;
        e.feature_ids = {net.features[feature].id};
        e.detail = "no same-or-higher-category neighbor at either end";
        errors.push_back(std::move(e));
      }
    }
  }

  // Rule 2: every join hit between the prohibited categories.
  const auto [lo, hi] = std::minmax(cfg.prohibited_pair.first,
                                    cfg.prohibited_pair.second);
  if (lo != hi && lo >= 1 && hi <= cfg.k) {
    auto flag_contacts = [&](int own, int other) {
      const EndpointIndex& own_idx = targets[own - 1];
      const EndpointIndex& other_idx = targets[other - 1];
      // Offender -> smallest partner id across both of its endpoint cells,
      // matching the exhaustive detector's choice.
      std::map<std::uint32_t, std::string> best;
      for (const EndpointRecord& rec : own_idx.records()) {
        GridKey key = quantize(rec.coord, quantum);
        for (std::uint32_t hit : other_idx.cell(key)) {
          const std::string& pid =
              net.features[other_idx.records()[hit].feature].id;
          auto [it, inserted] = best.emplace(rec.feature, pid);
          if (!inserted && pid < it->second) it->second = pid;
        }
      }
      for (const auto& [offender, partner] : best) {
        ValidationError e;
        e.kind = ErrorKind::rule2;
        e.feature_ids = {net.features[offender].id, partner};
        e.detail = "prohibited contact between categories " +
                   std::to_string(lo) + " and " + std::to_string(hi);
        errors.push_back(std::move(e));
      }
    };
    flag_contacts(lo, hi);
    flag_contacts(hi, lo);
  }
  return errors;
}

std::vector<ValidationError> detect_point_no_flow(const Network& net,
                                                  bool exempt_terminals) {
  std::vector<ValidationError> errors;
  for (std::uint32_t node = 0; node < net.node_count(); ++node) {
    const auto& recs = net.incidence[node];
    if (exempt_terminals && recs.size() == 1) continue;
    std::size_t inflow = 0, outflow = 0;
    for (const IncidenceRecord& r : recs) {
      (r.role == EndRole::end ? inflow : outflow) += 1;
    }
    if (inflow > 0 && outflow > 0) continue;

    ValidationError e;
    e.kind = ErrorKind::no_flow;
    e.node = node;
    e.location = net.node_coords[node];
    for (const IncidenceRecord& r : recs) {
      e.feature_ids.push_back(net.features[r.feature].id);
    }
    std::sort(e.feature_ids.begin(), e.feature_ids.end());
    e.feature_ids.erase(
        std::unique(e.feature_ids.begin(), e.feature_ids.end()),
        e.feature_ids.end());
    e.detail = outflow == 0 ? "flow enters but never leaves"
                            : "flow leaves but never enters";
    errors.push_back(std::move(e));
  }
  return errors;
}

std::vector<ValidationError> detect_self_intersection(const Network& net,
                                                      SelfIntersectMode mode) {
  std::vector<ValidationError> errors;
  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    bool closed = net.feature_nodes[i][0] == net.feature_nodes[i][1];
    std::string why;
    if (closed) {
      why = "endpoints intersect";
    } else if (mode == SelfIntersectMode::full) {
      SelfIntersectionTriple t = classify_self_intersection(net.features[i]);
      if (t.interior_cross) {
        why = "non-adjacent edges cross";
      } else if (t.boundary_on_interior) {
        why = "an end vertex lies on another edge";
      }
    }
    if (why.empty()) continue;
    ValidationError e;
    e.kind = ErrorKind::self_intersection;
    e.feature_ids = {net.features[i].id};
    e.node = net.feature_nodes[i][0];
    e.location = net.node_coords[net.feature_nodes[i][0]];
    e.detail = why;
    errors.push_back(std::move(e));
  }
  return errors;
}

std::vector<ValidationError> detect_near_nodes(const Network& net,
                                               double epsilon) {
  if (!(epsilon > net.quantum)) {
    throw ConfigError("epsilon must exceed the coordinate quantum");
  }
  RTree tree = RTree::bulk_build(net.node_coords);
  std::vector<ValidationError> errors;
  for (std::uint32_t u = 0; u < net.node_count(); ++u) {
    const Vertex& cu = net.node_coords[u];
    auto hits = tree.query_box(Vertex{cu.x - epsilon, cu.y - epsilon},
                               Vertex{cu.x + epsilon, cu.y + epsilon});
    for (std::uint32_t v : hits) {
      if (v <= u) continue;  // one error per unordered pair
      const Vertex& cv = net.node_coords[v];
      double d = std::hypot(cv.x - cu.x, cv.y - cu.y);
      if (d <= 0.0 || d > epsilon) continue;
      ValidationError e;
      e.kind = ErrorKind::near_node;
      e.node = u;
      e.node2 = v;
      e.location = cu;
      e.location2 = cv;
      e.detail = "nodes within " + std::to_string(epsilon) +
                 " map units (distance " + std::to_string(d) + ")";
      errors.push_back(std::move(e));
    }
  }
  return errors;
}

std::vector<std::uint32_t> component_labels(const AttributeTable& table) {
  std::unordered_map<std::int64_t, std::uint32_t> node_slot;
  auto slot_of = [&](std::int64_t node) {
    return node_slot.emplace(node, static_cast<std::uint32_t>(node_slot.size()))
        .first->second;
  };
  std::vector<std::uint32_t> parent;
  auto find = [&parent](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::array<std::uint32_t, 2>> ends;
  ends.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    std::uint32_t s = slot_of(row.start_node);
    std::uint32_t e = slot_of(row.end_node);
    while (parent.size() < node_slot.size()) {
      parent.push_back(static_cast<std::uint32_t>(parent.size()));
    }
    parent[find(s)] = find(e);
    ends.push_back({s, e});
  }
  std::vector<std::uint32_t> labels(table.rows.size());
  std::unordered_map<std::uint32_t, std::uint32_t> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    std::uint32_t root = find(ends[i][0]);
    labels[i] = seen.emplace(root, static_cast<std::uint32_t>(seen.size()))
                    .first->second;
  }
  return labels;
}

void label_components(std::vector<ValidationError>& errors,
                      const AttributeTable& table) {
  std::vector<std::uint32_t> labels = component_labels(table);
  std::unordered_map<std::string, std::uint32_t> by_id;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    by_id.emplace(table.rows[i].id, labels[i]);
  }
  for (ValidationError& e : errors) {
    if (e.feature_ids.empty()) continue;
    auto it = by_id.find(e.feature_ids.front());
    if (it != by_id.end()) e.component = it->second;
  }
}

void label_components(std::vector<ValidationError>& errors,
                      const Network& net) {
  std::vector<std::uint32_t> labels = component_labels(net);
  std::unordered_map<std::string, std::uint32_t> by_id;
  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    by_id.emplace(net.features[i].id, labels[i]);
  }
  // Node -> component through any incident feature.
  auto node_component = [&](std::uint32_t node) -> std::uint32_t {
    if (node < net.incidence.size() && !net.incidence[node].empty()) {
      return labels[net.incidence[node].front().feature];
    }
    return 0;
  };
  for (ValidationError& e : errors) {
    if (!e.feature_ids.empty()) {
      auto it = by_id.find(e.feature_ids.front());
      if (it != by_id.end()) {
        e.component = it->second;
        continue;
      }
    }
    if (e.node) e.component = node_component(*e.node);
  }
}

}  // namespace netlint

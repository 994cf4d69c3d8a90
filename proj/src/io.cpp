#include "netlint/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace netlint {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void reject(std::size_t index, const std::string& id,
                         const std::string& why) {
  std::string name = id.empty() ? "#" + std::to_string(index)
                                : "#" + std::to_string(index) + " (id '" +
                                      id + "')";
  throw ParseError("feature " + name + ": " + why);
}

int require_int(const ordered_json& j, std::size_t index,
                const std::string& id, const std::string& what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    reject(index, id, what + " must be an integer");
  }
  return j.get<int>();
}

}  // namespace

std::vector<LineFeature> parse_geojson(std::string_view text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed JSON: ") + ex.what());
  }
  if (!root.is_object() || root.value("type", "") != "FeatureCollection") {
    throw ParseError("root must be a FeatureCollection");
  }
  if (!root.contains("features") || !root["features"].is_array()) {
    throw ParseError("FeatureCollection needs a 'features' array");
  }

  std::vector<LineFeature> features;
  features.reserve(root["features"].size());
  std::size_t index = 0;
  for (const auto& jf : root["features"]) {
    LineFeature f;
    if (!jf.is_object() || jf.value("type", "") != "Feature") {
      reject(index, "", "entry must be a Feature object");
    }
    const auto props = jf.contains("properties") && jf["properties"].is_object()
                           ? jf["properties"]
                           : ordered_json::object();
    if (props.contains("id")) {
      if (!props["id"].is_string()) reject(index, "", "'id' must be a string");
      f.id = props["id"].get<std::string>();
    } else {
      f.id = "f" + std::to_string(index);
    }

    if (!jf.contains("geometry") || !jf["geometry"].is_object()) {
      reject(index, f.id, "missing geometry");
    }
    const auto& geom = jf["geometry"];
    std::string gtype = geom.value("type", "");
    if (gtype != "LineString") {
      reject(index, f.id, "geometry type " +
                              (gtype.empty() ? "(missing)" : gtype) +
                              " not supported; only LineString");
    }
    if (!geom.contains("coordinates") || !geom["coordinates"].is_array() ||
        geom["coordinates"].size() < 2) {
      reject(index, f.id, "LineString needs at least 2 positions");
    }
    for (const auto& pos : geom["coordinates"]) {
      if (!pos.is_array() || pos.size() != 2 || !pos[0].is_number() ||
          !pos[1].is_number()) {
        reject(index, f.id, "positions must be [x, y] number pairs");
      }
      f.vertices.push_back(
          Vertex{pos[0].get<double>(), pos[1].get<double>()});
    }

    if (!props.contains("weight")) reject(index, f.id, "missing 'weight'");
    f.weight = require_int(props["weight"], index, f.id, "'weight'");
    if (props.contains("direction")) {
      f.direction_code =
          require_int(props["direction"], index, f.id, "'direction'");
    }

    try {
      validate_feature(f);
    } catch (const ParseError& ex) {
      reject(index, f.id, ex.what());
    }
    features.push_back(std::move(f));
    ++index;
  }

  std::unordered_set<std::string> ids;
  for (const LineFeature& f : features) {
    if (!ids.insert(f.id).second) {
      throw ParseError("duplicate feature id '" + f.id + "'");
    }
  }
  return features;
}

std::string serialize_geojson(const std::vector<LineFeature>& features) {
  ordered_json root;
  root["type"] = "FeatureCollection";
  auto& arr = root["features"] = ordered_json::array();
  for (const LineFeature& f : features) {
    ordered_json jf;
    jf["type"] = "Feature";
    jf["properties"] = {{"id", f.id},
                        {"weight", f.weight},
                        {"direction", f.direction_code}};
    ordered_json coords = ordered_json::array();
    for (const Vertex& v : f.vertices) coords.push_back({v.x, v.y});
    jf["geometry"] = {{"type", "LineString"}, {"coordinates", coords}};
    arr.push_back(std::move(jf));
  }
  return root.dump();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
      cell.pop_back();
    }
    std::size_t i = 0;
    while (i < cell.size() && cell[i] == ' ') ++i;
    out.push_back(cell.substr(i));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& s, const std::string& what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(what + " '" + s + "' is not an integer");
  }
  return value;
}

}  // namespace

AttributeTable parse_attribute_table(std::string_view text) {
  std::stringstream ss{std::string(text)};
  std::string line;
  if (!std::getline(ss, line)) throw ParseError("empty attribute table");
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "id" || header[1] != "start_node" ||
      header[2] != "end_node" || header[3] != "weight") {
    throw ParseError("header must start with id,start_node,end_node,weight");
  }

  AttributeTable table;
  std::unordered_set<std::string> ids;
  std::size_t lineno = 1;
  while (std::getline(ss, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(cells.size()));
    }
    AttributeTable::Row row;
    row.id = cells[0];
    if (row.id.empty()) {
      throw ParseError("line " + std::to_string(lineno) + ": empty id");
    }
    if (!ids.insert(row.id).second) {
      throw ParseError("duplicate id '" + row.id + "'");
    }
    row.start_node =
        parse_number<std::int64_t>(cells[1], "start_node");
    row.end_node = parse_number<std::int64_t>(cells[2], "end_node");
    row.weight = parse_number<int>(cells[3], "weight");
    for (std::size_t c = 4; c < cells.size(); ++c) {
      row.extras.emplace_back(header[c], cells[c]);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

ordered_json error_to_json(const ValidationError& e) {
  ordered_json j;
  j["kind"] = to_string(e.kind);
  j["feature_ids"] = e.feature_ids;
  if (e.node) j["node"] = *e.node;
  if (e.node2) j["node2"] = *e.node2;
  if (e.location) j["location"] = {e.location->x, e.location->y};
  if (e.location2) j["location2"] = {e.location2->x, e.location2->y};
  j["component"] = e.component;
  j["detail"] = e.detail;
  return j;
}

ordered_json summary_of(const std::vector<ValidationError>& errors) {
  ordered_json s;
  for (ErrorKind k :
       {ErrorKind::rule1, ErrorKind::rule2, ErrorKind::rule3,
        ErrorKind::no_flow, ErrorKind::self_intersection,
        ErrorKind::near_node}) {
    s[to_string(k)] = 0;
  }
  for (const ValidationError& e : errors) {
    s[to_string(e.kind)] = s[to_string(e.kind)].get<int>() + 1;
  }
  s["total"] = errors.size();
  return s;
}

ordered_json provenance_to_json(const Provenance& p) {
  ordered_json j;
  j["input_hash"] = p.input_hash;
  j["config"] = p.config;
  j["detector"] = p.detector;
  if (p.timing_ms) j["timing_ms"] = *p.timing_ms;
  return j;
}

}  // namespace

std::string emit_report_json(const ErrorReport& report) {
  std::vector<ValidationError> errors = report.errors;
  sort_for_report(errors);
  ordered_json root;
  root["summary"] = summary_of(errors);
  auto& arr = root["errors"] = ordered_json::array();
  for (const ValidationError& e : errors) arr.push_back(error_to_json(e));
  root["provenance"] = provenance_to_json(report.provenance);
  return root.dump(2) + "\n";
}

std::string emit_report_geojson(const ErrorReport& report,
                                const std::vector<LineFeature>& features) {
  std::unordered_map<std::string, const LineFeature*> by_id;
  for (const LineFeature& f : features) by_id.emplace(f.id, &f);

  std::vector<ValidationError> errors = report.errors;
  sort_for_report(errors);

  ordered_json root;
  root["type"] = "FeatureCollection";
  auto& arr = root["features"] = ordered_json::array();
  for (const ValidationError& e : errors) {
    ordered_json jf;
    jf["type"] = "Feature";
    ordered_json props = error_to_json(e);
    props.erase("location");
    props.erase("location2");
    jf["properties"] = std::move(props);

    const LineFeature* f = nullptr;
    if (!e.feature_ids.empty()) {
      auto it = by_id.find(e.feature_ids.front());
      if (it != by_id.end()) f = it->second;
    }
    bool node_level =
        e.kind == ErrorKind::no_flow || e.kind == ErrorKind::near_node;
    if (!node_level && f) {
      ordered_json coords = ordered_json::array();
      for (const Vertex& v : f->vertices) coords.push_back({v.x, v.y});
      jf["geometry"] = {{"type", "LineString"}, {"coordinates", coords}};
    } else if (e.location) {
      jf["geometry"] = {{"type", "Point"},
                        {"coordinates", {e.location->x, e.location->y}}};
    } else {
      jf["geometry"] = nullptr;
    }
    arr.push_back(std::move(jf));
  }
  root["summary"] = summary_of(errors);
  root["provenance"] = provenance_to_json(report.provenance);
  return root.dump(2) + "\n";
}

void cross_check_table(const Network& net, const AttributeTable& table) {
  std::vector<std::string> problems;
  auto complain = [&problems](std::string msg) {
    if (problems.size() < 10) problems.push_back(std::move(msg));
  };

  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    row_of.emplace(table.rows[i].id, i);
  }
  std::unordered_set<std::string> seen;
  std::unordered_map<std::int64_t, std::uint32_t> table_to_net;
  std::unordered_map<std::uint32_t, std::int64_t> net_to_table;

  auto bind = [&](const std::string& id, const char* which,
                  std::int64_t table_node, std::uint32_t net_node) {
    auto [it, inserted] = table_to_net.emplace(table_node, net_node);
    if (!inserted && it->second != net_node) {
      complain("feature '" + id + "': " + which + " node " +
               std::to_string(table_node) +
               " maps to two different geometric nodes");
      return;
    }
    auto [rit, rinserted] = net_to_table.emplace(net_node, table_node);
    if (!rinserted && rit->second != table_node) {
      complain("feature '" + id + "': " + which +
               " geometric node already bound to table node " +
               std::to_string(rit->second));
    }
  };

  for (std::uint32_t i = 0; i < net.features.size(); ++i) {
    const std::string& id = net.features[i].id;
    auto it = row_of.find(id);
    if (it == row_of.end()) {
      complain("feature '" + id + "' has no table row");
      continue;
    }
    seen.insert(id);
    const AttributeTable::Row& row = table.rows[it->second];
    if (row.weight != net.features[i].weight) {
      complain("feature '" + id + "': table weight " +
               std::to_string(row.weight) + " != geometry weight " +
               std::to_string(net.features[i].weight));
    }
    bind(id, "start", row.start_node, net.feature_nodes[i][0]);
    bind(id, "end", row.end_node, net.feature_nodes[i][1]);
  }
  for (const auto& row : table.rows) {
    if (!seen.count(row.id)) {
      complain("table row '" + row.id + "' has no geometry feature");
    }
  }

  if (!problems.empty()) {
    std::string msg = "attribute table does not match geometry:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw ParseError(msg);
  }
}

std::string input_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace netlint

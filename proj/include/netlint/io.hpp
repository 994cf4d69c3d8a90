#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netlint/detectors.hpp"
#include "netlint/geometry.hpp"
#include "netlint/validation.hpp"

namespace netlint {

// Strict GeoJSON reader: a FeatureCollection of LineStrings with an integer
// "weight" property, optional integer "direction" in {-1,0,1} and optional
// string "id" (generated as f<index> when absent). Anything else is
// rejected with a diagnostic naming the feature.
std::vector<LineFeature> parse_geojson(std::string_view text);

std::string serialize_geojson(const std::vector<LineFeature>& features);

// CSV attribute table, header id,start_node,end_node,weight. Extra columns
// are preserved verbatim on each row.
AttributeTable parse_attribute_table(std::string_view text);

struct Provenance {
  std::string input_hash;
  std::string config;
  std::string detector;
  std::optional<double> timing_ms;  // set only on request; reports stay
                                    // byte-stable without it
};

struct ErrorReport {
  std::vector<ValidationError> errors;
  Provenance provenance;
};

// JSON report: per-kind summary, the sorted error list and provenance.
// Byte-identical for identical inputs.
std::string emit_report_json(const ErrorReport& report);

// GeoJSON report: one feature per error, LineString geometry for errors
// naming a feature, Point geometry for node-level errors.
std::string emit_report_geojson(const ErrorReport& report,
                                const std::vector<LineFeature>& features);

// Verifies that an attribute table and a built network describe the same
// topology: identical feature id sets and a one-to-one correspondence
// between table node ids and geometric nodes. Throws ParseError listing the
// first mismatches otherwise.
void cross_check_table(const Network& net, const AttributeTable& table);

// FNV-1a over the raw input bytes, as "fnv1a64:<hex>".
std::string input_hash(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace netlint

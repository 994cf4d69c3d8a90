#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netlint {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Malformed input data (files, records, geometries).
struct ParseError : Error {
  using Error::Error;
};
// Invalid configuration (flags, rule setup, preconditions).
struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

struct Vertex {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vertex& a, const Vertex& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
};

inline bool is_finite(const Vertex& v) {
  return std::isfinite(v.x) && std::isfinite(v.y);
}

// Lexicographic order, used to canonicalize unordered vertex pairs.
inline bool vertex_less(const Vertex& a, const Vertex& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

struct Edge {
  Vertex a;
  Vertex b;

  friend bool operator==(const Edge& l, const Edge& r) {
    return l.a == r.a && l.b == r.b;
  }
  // Equality as an unordered vertex pair.
  bool same_unordered(const Edge& o) const {
    return (a == o.a && b == o.b) || (a == o.b && b == o.a);
  }
};

// A directed polyline with a category weight. The network element.
struct LineFeature {
  std::string id;
  std::vector<Vertex> vertices;  // length m >= 2
  int weight = 1;
  int direction_code = 1;  // -1 reversed flow, 0 both directions, 1 forward

  std::size_t edge_count() const { return vertices.size() - 1; }
  Edge edge(std::size_t i) const { return Edge{vertices[i], vertices[i + 1]}; }
};

struct PointFeature {
  std::string id;
  Vertex v;
};

// Checks all structural invariants of a feature; throws ParseError with a
// message naming the feature on the first violation.
void validate_feature(const LineFeature& f);

struct IntersectionResult {
  enum class Kind { none, point, overlap };
  Kind kind = Kind::none;
  Vertex point{};  // set when kind == point
  Edge overlap{};  // set when kind == overlap; endpoints in lexicographic order

  static IntersectionResult none() { return {}; }
  static IntersectionResult at(Vertex p) {
    return IntersectionResult{Kind::point, p, {}};
  }
  static IntersectionResult over(Edge e) {
    if (vertex_less(e.b, e.a)) std::swap(e.a, e.b);
    return IntersectionResult{Kind::overlap, {}, e};
  }

  friend bool operator==(const IntersectionResult& l,
                         const IntersectionResult& r) {
    if (l.kind != r.kind) return false;
    switch (l.kind) {
      case Kind::none: return true;
      case Kind::point: return l.point == r.point;
      case Kind::overlap: return l.overlap == r.overlap;
    }
    return false;
  }
};

// Exact solution set of two segments, restricted to the segments. Total:
// collinear overlap is reported with its extent, symmetric in its arguments.
IntersectionResult segment_intersection(const Edge& e1, const Edge& e2);

inline std::pair<Vertex, Vertex> endpoints(const LineFeature& f) {
  return {f.vertices.front(), f.vertices.back()};
}

// Grid cell at a fixed quantum. Node identity everywhere is cell identity.
struct GridKey {
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  friend bool operator==(const GridKey& a, const GridKey& b) {
    return a.ix == b.ix && a.iy == b.iy;
  }
  friend bool operator<(const GridKey& a, const GridKey& b) {
    return a.ix < b.ix || (a.ix == b.ix && a.iy < b.iy);
  }
};

struct GridKeyHash {
  std::size_t operator()(const GridKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(k.ix));
    mix(static_cast<std::uint64_t>(k.iy));
    return static_cast<std::size_t>(h);
  }
};

inline GridKey quantize(const Vertex& v, double quantum) {
  return GridKey{std::llround(v.x / quantum), std::llround(v.y / quantum)};
}

// Cell center; the canonical coordinate reported for a grid cell.
inline Vertex cell_center(const GridKey& k, double quantum) {
  return Vertex{static_cast<double>(k.ix) * quantum,
                static_cast<double>(k.iy) * quantum};
}

inline bool vertices_equal(const Vertex& a, const Vertex& b, double quantum) {
  return quantize(a, quantum) == quantize(b, quantum);
}

}  // namespace netlint

#include "netlint/geometry.hpp"

#include <algorithm>
#include <array>

namespace netlint {

namespace {

double cross(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

Edge canonical(Edge e) {
  if (vertex_less(e.b, e.a)) std::swap(e.a, e.b);
  return e;
}

bool edge_less(const Edge& l, const Edge& r) {
  if (l.a != r.a) return vertex_less(l.a, r.a);
  return vertex_less(l.b, r.b);
}

// Scalar position of v along the dominant axis of direction (dx, dy).
double axis_pos(const Vertex& v, double dx, double dy) {
  return std::abs(dx) >= std::abs(dy) ? v.x : v.y;
}

bool in_closed_box(const Vertex& p, const Edge& e) {
  return p.x >= std::min(e.a.x, e.b.x) && p.x <= std::max(e.a.x, e.b.x) &&
         p.y >= std::min(e.a.y, e.b.y) && p.y <= std::max(e.a.y, e.b.y);
}

IntersectionResult point_on_segment(const Vertex& p, const Edge& e) {
  double c = cross(e.b.x - e.a.x, e.b.y - e.a.y, p.x - e.a.x, p.y - e.a.y);
  if (c == 0.0 && in_closed_box(p, e)) return IntersectionResult::at(p);
  return IntersectionResult::none();
}

// Intersection of two collinear segments via their extent on the dominant
// axis. Overlap endpoints are selected from the four input vertices, so no
// coordinates are recomputed.
IntersectionResult collinear_overlap(const Edge& e1, const Edge& e2) {
  double dx = e1.b.x - e1.a.x;
  double dy = e1.b.y - e1.a.y;
  std::array<Vertex, 4> cand = {e1.a, e1.b, e2.a, e2.b};
  auto pos = [&](const Vertex& v) { return axis_pos(v, dx, dy); };

  double lo1 = std::min(pos(e1.a), pos(e1.b));
  double hi1 = std::max(pos(e1.a), pos(e1.b));
  double lo2 = std::min(pos(e2.a), pos(e2.b));
  double hi2 = std::max(pos(e2.a), pos(e2.b));
  double lo = std::max(lo1, lo2);
  double hi = std::min(hi1, hi2);
  if (lo > hi) return IntersectionResult::none();

  auto vertex_at = [&](double s) {
    for (const Vertex& v : cand) {
      if (pos(v) == s) return v;
    }
    return cand[0];  // unreachable: lo/hi are positions of input vertices
  };
  if (lo == hi) return IntersectionResult::at(vertex_at(lo));
  return IntersectionResult::over(Edge{vertex_at(lo), vertex_at(hi)});
}

}  // namespace

IntersectionResult segment_intersection(const Edge& e1_in, const Edge& e2_in) {
  // Canonicalize so the result is exactly symmetric in the two arguments.
  Edge e1 = canonical(e1_in);
  Edge e2 = canonical(e2_in);
  if (edge_less(e2, e1)) std::swap(e1, e2);

  // Degenerate edges are rejected at parse; keep the function total anyway.
  if (e1.a == e1.b && e2.a == e2.b) {
    return e1.a == e2.a ? IntersectionResult::at(e1.a)
                        : IntersectionResult::none();
  }
  if (e1.a == e1.b) return point_on_segment(e1.a, e2);
  if (e2.a == e2.b) return point_on_segment(e2.a, e1);

  double rx = e1.b.x - e1.a.x;
  double ry = e1.b.y - e1.a.y;
  double sx = e2.b.x - e2.a.x;
  double sy = e2.b.y - e2.a.y;
  double qpx = e2.a.x - e1.a.x;
  double qpy = e2.a.y - e1.a.y;

  double denom = cross(rx, ry, sx, sy);
  double qp_r = cross(qpx, qpy, rx, ry);

  if (denom == 0.0) {
    if (qp_r != 0.0) return IntersectionResult::none();  // parallel, apart
    return collinear_overlap(e1, e2);
  }

  // t = tn/denom along e1, u = un/denom along e2. Bounds are tested on the
  // numerators so that endpoint touches stay exact for exact inputs.
  double tn = cross(qpx, qpy, sx, sy);
  double un = qp_r;
  bool t_ok = denom > 0.0 ? (tn >= 0.0 && tn <= denom)
                          : (tn <= 0.0 && tn >= denom);
  bool u_ok = denom > 0.0 ? (un >= 0.0 && un <= denom)
                          : (un <= 0.0 && un >= denom);
  if (!t_ok || !u_ok) return IntersectionResult::none();

  double t = tn / denom;
  return IntersectionResult::at(Vertex{e1.a.x + t * rx, e1.a.y + t * ry});
}

void validate_feature(const LineFeature& f) {
  auto fail = [&](const std::string& why) {
    throw ParseError("feature '" + f.id + "': " + why);
  };
  if (f.vertices.size() < 2) fail("needs at least 2 vertices");
  for (const Vertex& v : f.vertices) {
    if (!is_finite(v)) fail("non-finite coordinate");
  }
  for (std::size_t i = 0; i + 1 < f.vertices.size(); ++i) {
    if (f.vertices[i] == f.vertices[i + 1]) {
      fail("zero-length edge at vertex " + std::to_string(i));
    }
  }
  // Edges must be pairwise distinct as unordered vertex pairs.
  std::vector<Edge> edges;
  edges.reserve(f.edge_count());
  for (std::size_t i = 0; i < f.edge_count(); ++i) {
    Edge e = f.edge(i);
    if (vertex_less(e.b, e.a)) std::swap(e.a, e.b);
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end(), edge_less);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i] == edges[i + 1]) fail("duplicate edge");
  }
  if (f.weight < 1) fail("weight must be >= 1");
  if (f.direction_code < -1 || f.direction_code > 1) {
    fail("direction code must be -1, 0 or 1");
  }
}

}  // namespace netlint

#include "netlint/intersection.hpp"

#include <algorithm>
#include <vector>

namespace netlint {

namespace {

using Kind = IntersectionResult::Kind;

char cell_char(MatrixCell c) {
  switch (c) {
    case MatrixCell::empty: return '0';
    case MatrixCell::nonempty: return '1';
    case MatrixCell::undefined: return '-';
  }
  return '?';
}

MatrixCell as_cell(bool b) {
  return b ? MatrixCell::nonempty : MatrixCell::empty;
}

double axis_pos(const Vertex& v, double dx, double dy) {
  return std::abs(dx) >= std::abs(dy) ? v.x : v.y;
}

// True when the trace of `a` is fully covered by the union of `b`'s edges.
// Cover intervals are measured along each edge's dominant axis; their
// endpoints are exact input coordinates, so the sweep needs no epsilon.
bool trace_covered(const LineFeature& a, const LineFeature& b) {
  for (std::size_t i = 0; i < a.edge_count(); ++i) {
    Edge ea = a.edge(i);
    double dx = ea.b.x - ea.a.x;
    double dy = ea.b.y - ea.a.y;
    double lo = std::min(axis_pos(ea.a, dx, dy), axis_pos(ea.b, dx, dy));
    double hi = std::max(axis_pos(ea.a, dx, dy), axis_pos(ea.b, dx, dy));

    std::vector<std::pair<double, double>> spans;
    for (std::size_t j = 0; j < b.edge_count(); ++j) {
      IntersectionResult r = segment_intersection(ea, b.edge(j));
      if (r.kind != Kind::overlap) continue;
      double s0 = axis_pos(r.overlap.a, dx, dy);
      double s1 = axis_pos(r.overlap.b, dx, dy);
      spans.emplace_back(std::min(s0, s1), std::max(s0, s1));
    }
    std::sort(spans.begin(), spans.end());
    double reach = lo;
    for (const auto& [s0, s1] : spans) {
      if (s0 > reach) return false;  // gap
      reach = std::max(reach, s1);
    }
    if (reach < hi) return false;
  }
  return true;
}

}  // namespace

std::string to_string(const IntersectionMatrix& m) {
  std::string s(9, '0');
  for (int i = 0; i < 9; ++i) s[i] = cell_char(m.cells[i]);
  return s;
}

IntersectionMatrix matrix_from_string(const std::string& s) {
  if (s.size() != 9) throw ParseError("matrix string must have 9 characters");
  IntersectionMatrix m;
  for (int i = 0; i < 9; ++i) {
    switch (s[i]) {
      case '0': m.cells[i] = MatrixCell::empty; break;
      case '1': m.cells[i] = MatrixCell::nonempty; break;
      case '-': m.cells[i] = MatrixCell::undefined; break;
      default: throw ParseError("matrix character must be one of 0, 1, -");
    }
  }
  return m;
}

bool point_on_trace(const Vertex& p, const LineFeature& l) {
  for (std::size_t i = 0; i < l.edge_count(); ++i) {
    IntersectionResult r = segment_intersection(Edge{p, p}, l.edge(i));
    if (r.kind != Kind::none) return true;
  }
  return false;
}

bool point_on_boundary(const Vertex& p, const LineFeature& l) {
  return p == l.vertices.front() || p == l.vertices.back();
}

bool point_in_interior(const Vertex& p, const LineFeature& l) {
  return !point_on_boundary(p, l) && point_on_trace(p, l);
}

IntersectionMatrix nine_intersection_point_line(const PointFeature& p,
                                                const LineFeature& l) {
  IntersectionMatrix m;
  // A point has no interior; the whole first row is inapplicable.
  for (int c = 0; c < 3; ++c) m.at(0, c) = MatrixCell::undefined;

  const Vertex& v = p.v;
  bool on_trace = point_on_trace(v, l);
  bool on_boundary = point_on_boundary(v, l);
  m.at(1, 0) = as_cell(on_trace && !on_boundary);
  m.at(1, 1) = as_cell(on_boundary);
  m.at(1, 2) = as_cell(!on_trace);

  // Line interior always has points besides v; boundary escapes the point
  // unless the line closes onto it.
  m.at(2, 0) = MatrixCell::nonempty;
  m.at(2, 1) = as_cell(l.vertices.front() != v || l.vertices.back() != v);
  m.at(2, 2) = MatrixCell::nonempty;
  return m;
}

IntersectionMatrix nine_intersection_line_point(const LineFeature& l,
                                                const PointFeature& p) {
  return nine_intersection_point_line(p, l).transpose();
}

IntersectionMatrix nine_intersection_lines(const LineFeature& a,
                                           const LineFeature& b) {
  IntersectionMatrix m;

  // interior(a) x interior(b): some edge pair shares a point that is no
  // boundary vertex of either line, or overlaps with positive extent.
  bool ii = false;
  for (std::size_t i = 0; i < a.edge_count() && !ii; ++i) {
    for (std::size_t j = 0; j < b.edge_count() && !ii; ++j) {
      IntersectionResult r = segment_intersection(a.edge(i), b.edge(j));
      if (r.kind == Kind::point) {
        ii = !point_on_boundary(r.point, a) && !point_on_boundary(r.point, b);
      } else if (r.kind == Kind::overlap) {
        ii = true;  // infinitely many common points, at most 4 on boundaries
      }
    }
  }
  m.at(0, 0) = as_cell(ii);

  auto ends = [](const LineFeature& l) {
    return std::array<Vertex, 2>{l.vertices.front(), l.vertices.back()};
  };
  bool a_int_b_bnd = false, b_bnd_off_a = false;
  for (const Vertex& v : ends(b)) {
    if (point_in_interior(v, a)) a_int_b_bnd = true;
    if (!point_on_trace(v, a)) b_bnd_off_a = true;
  }
  bool b_int_a_bnd = false, a_bnd_off_b = false;
  for (const Vertex& v : ends(a)) {
    if (point_in_interior(v, b)) b_int_a_bnd = true;
    if (!point_on_trace(v, b)) a_bnd_off_b = true;
  }
  bool shared_end = false;
  for (const Vertex& va : ends(a))
    for (const Vertex& vb : ends(b))
      if (va == vb) shared_end = true;

  m.at(0, 1) = as_cell(a_int_b_bnd);
  m.at(0, 2) = as_cell(!trace_covered(a, b));
  m.at(1, 0) = as_cell(b_int_a_bnd);
  m.at(1, 1) = as_cell(shared_end);
  m.at(1, 2) = as_cell(a_bnd_off_b);
  m.at(2, 0) = as_cell(!trace_covered(b, a));
  m.at(2, 1) = as_cell(b_bnd_off_a);
  m.at(2, 2) = MatrixCell::nonempty;  // two bounded objects in the plane
  return m;
}

SelfIntersectionTriple classify_self_intersection(const LineFeature& l) {
  SelfIntersectionTriple t;
  std::size_t m = l.vertices.size();
  if (m <= 3) return t;  // too few vertices to self-intersect

  const Vertex& v1 = l.vertices.front();
  const Vertex& vm = l.vertices.back();
  std::size_t ne = l.edge_count();

  // SI(boundary): first and last edges meet in exactly one point that is
  // both end vertices.
  {
    IntersectionResult r = segment_intersection(l.edge(0), l.edge(ne - 1));
    t.boundary_loop = r.kind == IntersectionResult::Kind::point &&
                      r.point == v1 && r.point == vm;
  }

  // SI(interior): a pair of non-adjacent edges shares a point off the
  // boundary, or overlaps collinearly.
  for (std::size_t i = 0; i < ne && !t.interior_cross; ++i) {
    for (std::size_t j = i + 2; j < ne && !t.interior_cross; ++j) {
      IntersectionResult r = segment_intersection(l.edge(i), l.edge(j));
      if (r.kind == IntersectionResult::Kind::point) {
        t.interior_cross = r.point != v1 && r.point != vm;
      } else if (r.kind == IntersectionResult::Kind::overlap) {
        t.interior_cross = true;
      }
    }
  }

  // SI(boundary, interior): an end vertex lies strictly inside an edge not
  // incident to it.
  auto in_relative_interior = [](const Vertex& p, const Edge& e) {
    if (p == e.a || p == e.b) return false;
    IntersectionResult r = segment_intersection(Edge{p, p}, e);
    return r.kind == IntersectionResult::Kind::point;
  };
  for (std::size_t j = 1; j < ne && !t.boundary_on_interior; ++j) {
    if (in_relative_interior(v1, l.edge(j))) t.boundary_on_interior = true;
  }
  for (std::size_t j = 0; j + 1 < ne && !t.boundary_on_interior; ++j) {
    if (in_relative_interior(vm, l.edge(j))) t.boundary_on_interior = true;
  }
  return t;
}

bool assert_no_self_intersection(const LineFeature& l) {
  SelfIntersectionTriple t = classify_self_intersection(l);
  return !(t.boundary_loop || t.interior_cross || t.boundary_on_interior);
}

}  // namespace netlint

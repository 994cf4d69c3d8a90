#pragma once

#include <array>
#include <string>

#include "netlint/geometry.hpp"

namespace netlint {

// Tri-state matrix cell; `undefined` renders as '-' and marks cells the
// model leaves dimension-inapplicable (a point has no interior).
enum class MatrixCell : unsigned char { empty = 0, nonempty = 1, undefined = 2 };

// 3x3 matrix of emptiness tests between the parts of two objects.
// Rows are the first object's {interior, boundary, exterior}, columns the
// second's, row-major.
struct IntersectionMatrix {
  std::array<MatrixCell, 9> cells{};

  MatrixCell& at(int row, int col) { return cells[row * 3 + col]; }
  MatrixCell at(int row, int col) const { return cells[row * 3 + col]; }

  IntersectionMatrix transpose() const {
    IntersectionMatrix t;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  friend bool operator==(const IntersectionMatrix& a,
                         const IntersectionMatrix& b) {
    return a.cells == b.cells;
  }
};

// Report form: 9 characters row-major from {0,1,-}, e.g. "001011111".
std::string to_string(const IntersectionMatrix& m);
IntersectionMatrix matrix_from_string(const std::string& s);

IntersectionMatrix nine_intersection_point_line(const PointFeature& p,
                                                const LineFeature& l);
IntersectionMatrix nine_intersection_line_point(const LineFeature& l,
                                                const PointFeature& p);
IntersectionMatrix nine_intersection_lines(const LineFeature& l1,
                                           const LineFeature& l2);

// {SI(boundary), SI(interior), SI(boundary, interior)} for one line.
struct SelfIntersectionTriple {
  bool boundary_loop = false;        // first and last edges close at v1 == vm
  bool interior_cross = false;       // non-adjacent edges meet off-boundary
  bool boundary_on_interior = false;  // an end vertex sits inside another edge

  friend bool operator==(const SelfIntersectionTriple& a,
                         const SelfIntersectionTriple& b) {
    return a.boundary_loop == b.boundary_loop &&
           a.interior_cross == b.interior_cross &&
           a.boundary_on_interior == b.boundary_on_interior;
  }
};

SelfIntersectionTriple classify_self_intersection(const LineFeature& l);

// True iff the line satisfies the all-zero self-intersection requirement.
bool assert_no_self_intersection(const LineFeature& l);

// Point-set helpers shared with detectors and tests.
bool point_on_trace(const Vertex& p, const LineFeature& l);
bool point_in_interior(const Vertex& p, const LineFeature& l);
bool point_on_boundary(const Vertex& p, const LineFeature& l);

}  // namespace netlint

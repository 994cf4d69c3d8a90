#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "netlint/geometry.hpp"

using namespace netlint;

namespace {

// Independent reference solver for integer-coordinate segments: orientation
// classification in 64-bit integers, intersection point from the orientation
// ratio along the second segment. Kept apart from the library's parametric
// route on purpose.
struct IVec {
  long long x, y;
};

long long orient(IVec a, IVec b, IVec c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool lex_less(IVec a, IVec b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

bool in_box(IVec p, IVec a, IVec b) {
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
         p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

struct OracleResult {
  enum { none, point, overlap } kind = none;
  double px = 0, py = 0;
  IVec o1{}, o2{};  // overlap extent, lexicographic
};

OracleResult oracle_intersect(IVec a1, IVec b1, IVec a2, IVec b2) {
  OracleResult res;
  long long d1 = orient(a2, b2, a1);
  long long d2 = orient(a2, b2, b1);
  long long d3 = orient(a1, b1, a2);
  long long d4 = orient(a1, b1, b2);

  if (d1 == 0 && d2 == 0) {  // collinear
    IVec lo1 = lex_less(a1, b1) ? a1 : b1, hi1 = lex_less(a1, b1) ? b1 : a1;
    IVec lo2 = lex_less(a2, b2) ? a2 : b2, hi2 = lex_less(a2, b2) ? b2 : a2;
    IVec lo = lex_less(lo1, lo2) ? lo2 : lo1;
    IVec hi = lex_less(hi1, hi2) ? hi1 : hi2;
    if (lex_less(hi, lo)) return res;
    if (hi.x == lo.x && hi.y == lo.y) {
      res.kind = OracleResult::point;
      res.px = double(lo.x);
      res.py = double(lo.y);
      return res;
    }
    res.kind = OracleResult::overlap;
    res.o1 = lo;
    res.o2 = hi;
    return res;
  }

  bool proper = ((d1 < 0 && d2 > 0) || (d1 > 0 && d2 < 0)) &&
                ((d3 < 0 && d4 > 0) || (d3 > 0 && d4 < 0));
  if (proper) {
    double s = double(d3) / (double(d3) - double(d4));
    res.kind = OracleResult::point;
    res.px = double(a2.x) + s * double(b2.x - a2.x);
    res.py = double(a2.y) + s * double(b2.y - a2.y);
    return res;
  }
  // Touching: an endpoint of one segment on the other.
  auto touch = [&](IVec p, long long d, IVec u, IVec v) {
    return d == 0 && in_box(p, u, v);
  };
  for (auto [p, d] : {std::pair{a1, d1}, {b1, d2}}) {
    if (touch(p, d, a2, b2)) {
      res.kind = OracleResult::point;
      res.px = double(p.x);
      res.py = double(p.y);
      return res;
    }
  }
  for (auto [p, d] : {std::pair{a2, d3}, {b2, d4}}) {
    if (touch(p, d, a1, b1)) {
      res.kind = OracleResult::point;
      res.px = double(p.x);
      res.py = double(p.y);
      return res;
    }
  }
  return res;
}

Edge edge(double ax, double ay, double bx, double by) {
  return Edge{Vertex{ax, ay}, Vertex{bx, by}};
}

}  // namespace

TEST_CASE("segment intersection on the anchor fixtures") {
  auto x = segment_intersection(edge(0, 0, 2, 2), edge(2, 0, 0, 2));
  REQUIRE(x.kind == IntersectionResult::Kind::point);
  CHECK(x.point == Vertex{1, 1});

  auto none = segment_intersection(edge(0, 0, 1, 0), edge(2, 0, 3, 0));
  CHECK(none.kind == IntersectionResult::Kind::none);

  auto over = segment_intersection(edge(0, 0, 2, 0), edge(1, 0, 3, 0));
  REQUIRE(over.kind == IntersectionResult::Kind::overlap);
  CHECK(over.overlap == (Edge{Vertex{1, 0}, Vertex{2, 0}}));
}

TEST_CASE("touching and degenerate layouts") {
  // Endpoint touch.
  auto touch = segment_intersection(edge(0, 0, 1, 0), edge(1, 0, 1, 5));
  REQUIRE(touch.kind == IntersectionResult::Kind::point);
  CHECK(touch.point == Vertex{1, 0});

  // Collinear meeting in exactly one point.
  auto meet = segment_intersection(edge(0, 0, 1, 0), edge(1, 0, 3, 0));
  REQUIRE(meet.kind == IntersectionResult::Kind::point);
  CHECK(meet.point == Vertex{1, 0});

  // Parallel, apart.
  CHECK(segment_intersection(edge(0, 0, 1, 0), edge(0, 1, 1, 1)).kind ==
        IntersectionResult::Kind::none);

  // T contact in the middle of an edge.
  auto t = segment_intersection(edge(0, 0, 2, 0), edge(1, 0, 1, 3));
  REQUIRE(t.kind == IntersectionResult::Kind::point);
  CHECK(t.point == Vertex{1, 0});
}

TEST_CASE("a segment against itself overlaps with its own extent") {
  Edge e = edge(3, -1, 0, 2);
  auto r = segment_intersection(e, e);
  REQUIRE(r.kind == IntersectionResult::Kind::overlap);
  CHECK(r.overlap.same_unordered(e));
}

TEST_CASE("intersection is symmetric in its arguments") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-8, 8);
  for (int trial = 0; trial < 20000; ++trial) {
    Edge e1 = edge(coord(rng), coord(rng), coord(rng), coord(rng));
    Edge e2 = edge(coord(rng), coord(rng), coord(rng), coord(rng));
    if (e1.a == e1.b || e2.a == e2.b) continue;
    CHECK(segment_intersection(e1, e2) == segment_intersection(e2, e1));
  }
}

TEST_CASE("agrees with the integer reference solver on random pairs") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> coord(-100, 100);
  int points = 0, overlaps = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    // Mix wide-range pairs with cramped ones so touches and overlaps occur.
    std::uniform_int_distribution<int> tight(-4, 4);
    auto next = [&] {
      return trial % 3 == 0 ? tight(rng) : coord(rng);
    };
    IVec a1{next(), next()}, b1{next(), next()};
    IVec a2{next(), next()}, b2{next(), next()};
    if ((a1.x == b1.x && a1.y == b1.y) || (a2.x == b2.x && a2.y == b2.y)) {
      continue;
    }
    Edge e1 = edge(double(a1.x), double(a1.y), double(b1.x), double(b1.y));
    Edge e2 = edge(double(a2.x), double(a2.y), double(b2.x), double(b2.y));

    OracleResult expect = oracle_intersect(a1, b1, a2, b2);
    IntersectionResult got = segment_intersection(e1, e2);
    switch (expect.kind) {
      case OracleResult::none:
        CHECK(got.kind == IntersectionResult::Kind::none);
        break;
      case OracleResult::point:
        REQUIRE(got.kind == IntersectionResult::Kind::point);
        CHECK(std::abs(got.point.x - expect.px) < 1e-9);
        CHECK(std::abs(got.point.y - expect.py) < 1e-9);
        ++points;
        break;
      case OracleResult::overlap:
        REQUIRE(got.kind == IntersectionResult::Kind::overlap);
        CHECK(got.overlap.a == (Vertex{double(expect.o1.x), double(expect.o1.y)}));
        CHECK(got.overlap.b == (Vertex{double(expect.o2.x), double(expect.o2.y)}));
        ++overlaps;
        break;
    }
  }
  // The sample must actually exercise the interesting branches.
  CHECK(points > 1000);
  CHECK(overlaps > 10);
}

TEST_CASE("endpoints") {
  LineFeature f;
  f.vertices = {Vertex{0, 0}, Vertex{1, 1}, Vertex{2, 0}};
  auto [s, e] = endpoints(f);
  CHECK(s == Vertex{0, 0});
  CHECK(e == Vertex{2, 0});

  LineFeature ring;
  ring.vertices = {Vertex{0, 0}, Vertex{1, 0}, Vertex{0, 1}, Vertex{0, 0}};
  auto [rs, re] = endpoints(ring);
  CHECK(rs == re);

  LineFeature seg;
  seg.vertices = {Vertex{5, 5}, Vertex{5, 6}};
  CHECK(endpoints(seg).first == Vertex{5, 5});
  CHECK(endpoints(seg).second == Vertex{5, 6});
}

TEST_CASE("vertices_equal quantizes to a shared grid") {
  CHECK(vertices_equal(Vertex{1.0, 1.0}, Vertex{1.0, 1.0}, 1e-9));
  CHECK(vertices_equal(Vertex{1.0, 1.0}, Vertex{1.0 + 1e-12, 1.0}, 1e-9));
  CHECK_FALSE(vertices_equal(Vertex{1.0, 1.0}, Vertex{1.1, 1.0}, 1e-9));
}

TEST_CASE("vertices_equal is an equivalence relation at fixed quantum") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> base(-5.0, 5.0);
  std::uniform_real_distribution<double> wiggle(-2e-9, 2e-9);
  for (int trial = 0; trial < 20000; ++trial) {
    Vertex a{base(rng), base(rng)};
    Vertex b{a.x + wiggle(rng), a.y + wiggle(rng)};
    Vertex c{a.x + wiggle(rng), a.y + wiggle(rng)};
    CHECK(vertices_equal(a, a, 1e-9));
    CHECK(vertices_equal(a, b, 1e-9) == vertices_equal(b, a, 1e-9));
    if (vertices_equal(a, b, 1e-9) && vertices_equal(b, c, 1e-9)) {
      CHECK(vertices_equal(a, c, 1e-9));
    }
  }
}

TEST_CASE("feature validation rejects degenerate input") {
  LineFeature ok;
  ok.id = "ok";
  ok.vertices = {Vertex{0, 0}, Vertex{1, 0}};
  CHECK_NOTHROW(validate_feature(ok));

  LineFeature dup = ok;
  dup.id = "dup";
  dup.vertices = {Vertex{0, 0}, Vertex{0, 0}};
  CHECK_THROWS_AS(validate_feature(dup), ParseError);

  LineFeature repeat;
  repeat.id = "repeat";
  repeat.vertices = {Vertex{0, 0}, Vertex{1, 0}, Vertex{0, 0}, Vertex{1, 0}};
  CHECK_THROWS_AS(validate_feature(repeat), ParseError);

  LineFeature nan;
  nan.id = "nan";
  nan.vertices = {Vertex{0, 0},
                  Vertex{std::numeric_limits<double>::quiet_NaN(), 1}};
  CHECK_THROWS_AS(validate_feature(nan), ParseError);

  LineFeature w = ok;
  w.id = "weight";
  w.weight = 0;
  CHECK_THROWS_AS(validate_feature(w), ParseError);

  LineFeature d = ok;
  d.id = "direction";
  d.direction_code = 2;
  CHECK_THROWS_AS(validate_feature(d), ParseError);

  LineFeature one;
  one.id = "one";
  one.vertices = {Vertex{0, 0}};
  CHECK_THROWS_AS(validate_feature(one), ParseError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "../src/models/affine.hpp"

using namespace bfp;

TEST_CASE("affine elements compose like the maps they are") {
  AffineModel m;
  // t1 f1 acts x -> t x + 1 (left letter outermost)
  AffineElement e = m.element(m.parse("t1 f1"));
  FieldVal t = FieldVal::t(), one(1);
  CHECK(e.apply_x(FieldVal(0)) == one);
  CHECK(e.apply_x(one) == t + one);
  // inverse really inverts
  AffineElement inv = e.inverse();
  CHECK(inv.compose(e).is_identity());
  CHECK(e.compose(inv).is_identity());
  // translations commute, scalings and translations do not
  CHECK(m.element(m.parse("t1 t2")).key() == m.element(m.parse("t2 t1")).key());
  CHECK(m.element(m.parse("f1 t1")).key() != m.element(m.parse("t1 f1")).key());
}

TEST_CASE("fixed coordinates solve exactly") {
  AffineModel m;
  AffineElement e = m.element(m.parse("t1 f1"));  // x -> t x + 1
  auto [x, y] = m.fixed_coords(e);
  CHECK(e.apply_x(x) == x);
  CHECK(e.apply_y(y) == y);
  // x* = -1/(t-1)
  CHECK(x == FieldVal(-1) / (FieldVal::t() - FieldVal(1)));
}

TEST_CASE("spectrum membership is the linear part") {
  AffineModel m;
  CHECK(m.membership(m.parse("f1")) == Membership::In);
  CHECK(m.membership(m.parse("f2 F1")) == Membership::In);
  CHECK(m.membership(m.parse("t1")) == Membership::Out);
  CHECK(m.membership(m.parse("t1 t2 T1 t2")) == Membership::Out);
  CHECK(m.membership({}) == Membership::Out);
  // scaling conjugate of a translation is a translation
  CHECK(m.membership(m.parse("f1 t1 F1")) == Membership::Out);
}

TEST_CASE("fixed set signs") {
  AffineModel m;
  auto fs = m.fixed_set(m.parse("f1"));
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].sign == FixSign::Positive);
  CHECK(fs[0].corner == CornerStatus::NonCorner);
  auto fsi = m.fixed_set(m.parse("F1"));
  REQUIRE(fsi.size() == 1);
  CHECK(fsi[0].sign == FixSign::Negative);
  CHECK(fsi[0].point == fs[0].point);  // the origin both times
  CHECK(m.fixed_set(m.parse("t1")).empty());
}

TEST_CASE("action respects composition on points") {
  AffineModel m;
  PlanePtId p = m.point_at(FieldVal(1), FieldVal(-2));
  Letters u = m.parse("f1 t2");
  Letters v = m.parse("T1 f2");
  CHECK(m.apply(concat(u, v), p) == m.apply(u, m.apply(v, p)));
  // leaves map to leaves of the same sign
  LeafId h = m.horizontal(FieldVal(3));
  CHECK(m.plane().leaf(m.apply_leaf(u, h)).sign == Sign::Plus);
}

TEST_CASE("normal forms merge equal elements") {
  AffineModel m;
  const Rewriter& rw = m.rewriter();
  CHECK(rw.normalize(m.parse("t1 t2")) == rw.normalize(m.parse("t2 t1")));
  CHECK(rw.normalize(m.parse("f1 t1 F1 f1 T1 F1")).empty());
  // oracle: the number of distinct elements of length <= 2 equals the
  // number of distinct exact element keys over all freely reduced words
  std::set<std::string> keys;
  std::vector<Letters> words = {{}};
  keys.insert(m.element({}).key());
  for (int a = -4; a <= 4; ++a) {
    if (a == 0) continue;
    keys.insert(m.element({a}).key());
    for (int b = -4; b <= 4; ++b) {
      if (b == 0 || b == -a) continue;
      keys.insert(m.element({a, b}).key());
    }
  }
  auto enumerated = enumerate_words(4, 2, rw);
  CHECK(enumerated.size() == keys.size());
  CHECK(enumerated.size() < 73);  // strictly fewer than the free count
}

TEST_CASE("boundary action and dynamics") {
  AffineModel m;
  // f1 fixes the E-arc point at y=0 and attracts there (y contracts)
  PointId e0 = -1;
  for (PointId i = 0; i < m.plane().point_count(); ++i) {
    const Position& p = m.plane().pos(i);
    if (!p.is_circle() && p.affine().slot == 0 && p.affine().key == FieldVal(0)) e0 = i;
  }
  REQUIRE(e0 >= 0);
  Letters f1 = m.parse("f1");
  CHECK(m.boundary_fixes(f1, e0));
  auto [l, r] = m.boundary_side_dynamics(f1, e0);
  CHECK(l == 1);
  CHECK(r == -1);  // attracting
  // the four special points are fixed by every generator
  for (PointId c : m.special_boundary_points())
    for (const char* g : {"t1", "t2", "f1", "f2"})
      CHECK(m.boundary_fixes(m.parse(g), c));
  // a leaf end is translated off itself
  PointId moved = m.apply_boundary(m.parse("t2"), e0);
  CHECK(moved != e0);
}

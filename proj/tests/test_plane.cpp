#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../src/core/plane.hpp"

using namespace bfp;

namespace {

PointId pt(PlaneData& pd, long num, long den) {
  return pd.intern_point(Position::circle(rat(num, den)));
}

LeafId chord(PlaneData& pd, Sign s, std::pair<long, long> a, std::pair<long, long> b) {
  return pd.intern_leaf(s, {pt(pd, a.first, a.second), pt(pd, b.first, b.second)});
}

// endpoints given in degrees
LeafId chord_deg(PlaneData& pd, Sign s, long a, long b) {
  return pd.intern_leaf(s, {pt(pd, a, 360), pt(pd, b, 360)});
}

}  // namespace

TEST_CASE("chord intersections") {
  PlaneData pd;
  LeafId p = chord(pd, Sign::Plus, {0, 1}, {1, 2});
  LeafId m = chord(pd, Sign::Minus, {1, 4}, {3, 4});
  auto x = leaves_intersect(pd, p, m);
  REQUIRE(x.has_value());
  CHECK(pd.pt(*x).kind == PlanePt::Kind::Intersection);
  // canonical identity on repeated calls
  CHECK(*leaves_intersect(pd, p, m) == *x);
  CHECK(*leaves_intersect(pd, m, p) == *x);

  LeafId nested = chord(pd, Sign::Minus, {1, 10}, {2, 5});
  CHECK(!leaves_intersect(pd, p, nested).has_value());

  // same-sign crossing is a model violation
  LeafId bad = chord(pd, Sign::Plus, {1, 4}, {3, 4});
  CHECK_THROWS_AS((void)leaves_intersect(pd, p, bad), Error);
  // same-sign disjoint is fine
  LeafId ok = chord(pd, Sign::Plus, {1, 16}, {2, 16});
  CHECK(!leaves_intersect(pd, p, ok).has_value());
}

TEST_CASE("prong leaf intersections") {
  PlaneData pd;
  LeafId prong = pd.intern_leaf(
      Sign::Plus, {pt(pd, 0, 1), pt(pd, 1, 4), pt(pd, 1, 2), pt(pd, 3, 4)});
  LeafId m = chord(pd, Sign::Minus, {1, 8}, {5, 8});
  CHECK(leaves_intersect(pd, prong, m).has_value());
  LeafId inside = chord(pd, Sign::Minus, {1, 16}, {3, 16});
  CHECK(!leaves_intersect(pd, prong, inside).has_value());
}

TEST_CASE("linking classification") {
  PlaneData pd;
  LeafId ap = chord_deg(pd, Sign::Plus, 0, 180);
  LeafId am = chord_deg(pd, Sign::Minus, 90, 270);
  PlanePtId a = *leaves_intersect(pd, ap, am);

  SUBCASE("totally linked: three components met") {
    LeafId bp = chord_deg(pd, Sign::Plus, 80, 100);
    LeafId bm = chord_deg(pd, Sign::Minus, 95, 185);
    PlanePtId b = *leaves_intersect(pd, bp, bm);
    CHECK(classify_linking(pd, a, b) == Linking::TotallyLinked);
    CHECK(classify_linking(pd, b, a) == Linking::TotallyLinked);
  }
  SUBCASE("unlinked: one component") {
    LeafId bp = chord_deg(pd, Sign::Plus, 20, 40);
    LeafId bm = chord_deg(pd, Sign::Minus, 30, 70);
    PlanePtId b = *leaves_intersect(pd, bp, bm);
    CHECK(classify_linking(pd, a, b) == Linking::Unlinked);
    CHECK(classify_linking(pd, b, a) == Linking::Unlinked);
  }
  SUBCASE("partially linked: two components") {
    LeafId bp = chord_deg(pd, Sign::Plus, 85, 95);
    LeafId bm = chord_deg(pd, Sign::Minus, 92, 150);
    PlanePtId b = *leaves_intersect(pd, bp, bm);
    CHECK(classify_linking(pd, a, b) == Linking::PartiallyLinked);
    CHECK(classify_linking(pd, b, a) == Linking::PartiallyLinked);
  }
  SUBCASE("shared leaf") {
    LeafId bm = chord_deg(pd, Sign::Minus, 100, 260);
    PlanePtId b = *leaves_intersect(pd, ap, bm);
    CHECK(classify_linking(pd, a, b) == Linking::SharedLeaf);
  }
  SUBCASE("shared endpoint without shared leaf is ambiguous") {
    LeafId bp = chord_deg(pd, Sign::Plus, 80, 100);
    LeafId bm = chord_deg(pd, Sign::Minus, 90, 110);  // ends at a's 90
    PlanePtId b = *leaves_intersect(pd, bp, bm);
    CHECK_THROWS_AS((void)classify_linking(pd, a, b), Error);
  }
}

TEST_CASE("perfect fits are shared endpoints of disjoint leaves") {
  PlaneData pd;
  LeafId p = chord_deg(pd, Sign::Plus, 10, 50);
  LeafId m = chord_deg(pd, Sign::Minus, 50, 120);
  LeafId far = chord_deg(pd, Sign::Minus, 200, 300);
  HalfLeaf hp{p, pt(pd, 50, 360), -1};
  HalfLeaf hm{m, pt(pd, 50, 360), -1};
  HalfLeaf hf{far, pt(pd, 200, 360), -1};
  CHECK(perfect_fit(pd, hp, hm));
  CHECK(!perfect_fit(pd, hp, hf));

  // interleaved endpoint sets sharing a point: invariant violation
  LeafId prong_p = pd.intern_leaf(Sign::Plus,
      {pt(pd, 0, 360), pt(pd, 120, 360), pt(pd, 240, 360)});
  LeafId prong_m = pd.intern_leaf(Sign::Minus,
      {pt(pd, 60, 360), pt(pd, 120, 360), pt(pd, 180, 360)});
  HalfLeaf h1{prong_p, pt(pd, 120, 360), -1};
  HalfLeaf h2{prong_m, pt(pd, 120, 360), -1};
  CHECK_THROWS_AS((void)perfect_fit(pd, h1, h2), Error);
}

TEST_CASE("quadrants") {
  PlaneData pd;
  SUBCASE("regular point has 4") {
    LeafId p = chord_deg(pd, Sign::Plus, 0, 180);
    LeafId m = chord_deg(pd, Sign::Minus, 90, 270);
    PlanePtId x = *leaves_intersect(pd, p, m);
    auto ql = quadrants_of(pd, x);
    CHECK(ql.quads.size() == 4);
    CHECK(ql.closures_cover);
    for (auto& q : ql.quads) {
      CHECK(pd.leaf(q.plus_ray.leaf).sign == Sign::Plus);
      CHECK(pd.leaf(q.minus_ray.leaf).sign == Sign::Minus);
    }
  }
  SUBCASE("3-prong center has 6") {
    LeafId p = pd.intern_leaf(Sign::Plus,
        {pt(pd, 0, 3), pt(pd, 1, 3), pt(pd, 2, 3)});
    LeafId m = pd.intern_leaf(Sign::Minus,
        {pt(pd, 1, 6), pt(pd, 3, 6), pt(pd, 5, 6)});
    PlanePtId c = pd.intern_center(p, m);
    auto ql = quadrants_of(pd, c);
    CHECK(ql.quads.size() == 6);
    CHECK(ql.closures_cover);
  }
  SUBCASE("regular point on a singular leaf: 4 plus flag") {
    LeafId p = pd.intern_leaf(Sign::Plus,
        {pt(pd, 0, 3), pt(pd, 1, 3), pt(pd, 2, 3)});
    LeafId m = chord(pd, Sign::Minus, {1, 4}, {5, 12});
    PlanePtId x = *leaves_intersect(pd, p, m);
    auto ql = quadrants_of(pd, x);
    CHECK(ql.quads.size() == 4);
    CHECK(!ql.closures_cover);
  }
}

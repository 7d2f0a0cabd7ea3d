#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../src/models/skew.hpp"

using namespace bfp;

namespace {
Mat2 T() { return {1, 1, 0, 1}; }
Mat2 U() { return {1, 0, 1, 1}; }
SkewModel make() { return SkewModel({T(), U()}); }
}  // namespace

TEST_CASE("lifted action is a homomorphism") {
  SkewModel m = make();
  // apply respects composition on boundary points for random-ish words
  std::vector<Letters> words = {m.parse("g1"), m.parse("g2 G1"), m.parse("g1 g2 g1"),
                                m.parse("G2 G2 g1"), m.parse("g2 g2 g2")};
  std::vector<PointId> pts = m.stored_boundary_points();
  for (const Letters& u : words)
    for (const Letters& v : words) {
      Letters uv = concat(u, v);
      for (PointId p : {pts[2], pts[7], pts[11]}) {
        CHECK(m.apply_boundary(uv, p) == m.apply_boundary(u, m.apply_boundary(v, p)));
      }
    }
  // element-level: inverse composes to the trivial lift
  SkewEl e = m.element(m.parse("g1 g2 G1 g2"));
  SkewEl ei = SkewModel::inverse_el(e);
  SkewEl id = SkewModel::compose(e, ei);
  CHECK(id.m.is_proj_identity());
  CHECK(id.k == 0);
}

TEST_CASE("golden-ratio fixed coordinates for trace three") {
  SkewModel m = make();
  // g1 g2 has matrix [2,1;1,1], trace 3: boundary fixed coordinates are
  // the roots of x^2 - x - 1
  SkewEl e = m.element(m.parse("g1 g2"));
  CHECK(e.m.trace() == 3);
  auto lifts = SkewModel::fixed_lifts(e, 0, 0);
  REQUIRE(lifts.size() == 2);
  for (const LiftPt& p : lifts) {
    REQUIRE(!p.inf);
    QuadVal x = p.v;
    CHECK(x * x - x - QuadVal::rational(rat(1)) == QuadVal::rational(rat(0)));
  }
  CHECK(m.membership(m.parse("g1 g2")) == Membership::In);
}

TEST_CASE("parabolic and elliptic words are not members") {
  SkewModel m = make();
  CHECK(m.membership(m.parse("g1")) == Membership::Out);      // trace 2
  CHECK(m.membership(m.parse("g2")) == Membership::Out);      // trace 2
  CHECK(m.membership(m.parse("g1 G2")) == Membership::Out);   // trace 1
  CHECK(m.membership({}) == Membership::Out);
}

TEST_CASE("membership is exactly |trace| > 2 at low budgets") {
  SkewModel m = make();
  auto words = enumerate_words(2, 2, m.rewriter());
  CHECK(words.size() == 17);
  for (const GroupWord& w : words) {
    if (w.letters.empty()) continue;
    SkewEl e = m.element(w.letters);
    Int tr = e.m.trace();
    bool hyperbolic = tr * tr > 4;
    CHECK((m.membership(w.letters) == Membership::In) == hyperbolic);
  }
}

TEST_CASE("interior fixed points form an alternating corner chain") {
  SkewModel m = make();
  Letters w = m.parse("g1 g2");
  auto fs = m.fixed_set(w);
  REQUIRE(fs.size() >= 3);
  for (auto& r : fs) CHECK(r.corner == CornerStatus::Corner);
  // alternating signs along the chain
  for (size_t i = 0; i + 1 < fs.size(); ++i) CHECK(fs[i].sign != fs[i + 1].sign);
  // inverse swaps signs pointwise
  auto fsi = m.fixed_set(inverse(w));
  REQUIRE(fsi.size() == fs.size());
  for (size_t i = 0; i < fs.size(); ++i) {
    CHECK(fsi[i].point == fs[i].point);
    CHECK(fsi[i].sign != fs[i].sign);
  }
}

TEST_CASE("strip incidence: V(u) meets H(v) iff u < v < deck(u)") {
  SkewModel m = make();
  LeafId v0 = m.vleaf(LiftPt::at(rat(0)));
  LeafId h_half = m.hleaf(LiftPt::at(rat(1, 2)));        // inside the window
  LeafId h_far = m.hleaf(LiftPt::at(rat(17)));           // still winding 0: inside
  LeafId h_deck = m.hleaf(LiftPt::at(rat(0), 1));        // v = deck(u): perfect fit
  LeafId h_beyond = m.hleaf(LiftPt::at(rat(1, 2), 1));   // beyond one turn
  LeafId h_self = m.hleaf(LiftPt::at(rat(0)));           // v = u: perfect fit
  PlaneData& pd = m.plane();
  CHECK(leaves_intersect(pd, v0, h_half).has_value());
  CHECK(leaves_intersect(pd, v0, h_far).has_value());
  CHECK(!leaves_intersect(pd, v0, h_beyond).has_value());
  CHECK(!leaves_intersect(pd, v0, h_deck).has_value());
  CHECK(!leaves_intersect(pd, v0, h_self).has_value());
  HalfLeaf a{v0, m.upper_pt(LiftPt::at(rat(0))), -1};
  HalfLeaf b{h_deck, m.upper_pt(LiftPt::at(rat(0))), -1};
  CHECK(perfect_fit(pd, a, b));
  HalfLeaf c{h_self, m.lower_pt(LiftPt::at(rat(0))), -1};
  HalfLeaf d{v0, m.lower_pt(LiftPt::at(rat(0))), -1};
  CHECK(perfect_fit(pd, c, d));
}

TEST_CASE("boundary dynamics at hyperbolic fixed points alternate") {
  SkewModel m = make();
  Letters w = m.parse("g1 g2");
  SkewEl e = m.element(w);
  auto lifts = SkewModel::fixed_lifts(e, 0, 0);
  REQUIRE(lifts.size() == 2);
  PointId att_or_rep = m.lower_pt(lifts[0]);
  auto [l, r] = m.boundary_side_dynamics(w, att_or_rep);
  CHECK(l != 0);
  CHECK(r != 0);
  // one of the two roots attracts, the other repels
  PointId other = m.lower_pt(lifts[1]);
  auto [l2, r2] = m.boundary_side_dynamics(w, other);
  bool first_attracts = (l == 1 && r == -1);
  bool second_attracts = (l2 == 1 && r2 == -1);
  CHECK(first_attracts != second_attracts);
}

TEST_CASE("ends are the only finite-orbit candidates") {
  SkewModel m = make();
  for (PointId e : m.special_boundary_points())
    for (const char* g : {"g1", "g2", "G1", "G2"})
      CHECK(m.boundary_fixes(m.parse(g), e));
  PointId p = m.lower_pt(LiftPt::at(rat(1, 4)));
  CHECK(m.apply_boundary(m.parse("g1"), p) != p);
}

#pragma once

// The skewed plane: the diagonal strip {x < y < x+1} with vertical and
// horizontal foliations. Both leaf spaces are the lifted projective line
// (projective coordinate plus an integer winding); the group acts by
// lifts of integer Moebius transformations. Composition carries the
// winding cocycle of a fixed canonical section, so apply() is a genuine
// homomorphism. Fixed boundary coordinates of hyperbolic words are exact
// quadratic irrationals.
//
// Conventions: F+ leaves are the verticals V(u) with ideal ends Lower(u),
// Upper(u); horizontals H(v) have ends Lower(v), Upper(v-1). V(u) meets
// H(v) iff u < v < u+1; shared ends are the perfect fits V(u)~H(u) and
// V(u)~H(u+1).

#include "../core/model.hpp"

namespace bfp {

struct Mat2 {
  Int a, b, c, d;
  Int trace() const { return a + d; }
  Int det() const { return a * d - b * c; }
  Mat2 mul(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 inv() const { return {d, -b, -c, a}; }  // det 1
  bool is_proj_identity() const { return b == 0 && c == 0 && a == d; }
  // representative with c > 0, or c == 0 and d > 0
  Mat2 canonical() const {
    if (c > 0 || (c == 0 && d > 0)) return *this;
    return {-a, -b, -c, -d};
  }
  std::string str() const {
    return "[" + a.get_str() + "," + b.get_str() + ";" + c.get_str() + "," + d.get_str() + "]";
  }
};

// A point of the lifted projective line: winding + finite coordinate or
// the infinity marker topping each winding.
struct LiftPt {
  bool inf = false;
  QuadVal v;
  int wind = 0;

  static LiftPt at(const Rat& r, int w = 0) { return {false, QuadVal::rational(r), w}; }
  static LiftPt infinity(int w = 0) { return {true, QuadVal(), w}; }
  LiftPt deck(int n) const { return {inf, v, wind + n}; }

  static int cmp(const LiftPt& x, const LiftPt& y) {
    if (x.wind != y.wind) return x.wind < y.wind ? -1 : 1;
    if (x.inf != y.inf) return x.inf ? 1 : -1;
    if (x.inf) return 0;
    return QuadVal::cmp(x.v, y.v);
  }
  bool operator<(const LiftPt& o) const { return cmp(*this, o) < 0; }
  bool operator==(const LiftPt& o) const { return cmp(*this, o) == 0; }
  std::string str() const {
    return (inf ? "inf" : v.str()) + "@" + std::to_string(wind);
  }
};

// Lifted group element: canonical matrix plus extra deck power over the
// canonical section.
struct SkewEl {
  Mat2 m;
  int k = 0;
};

class SkewModel : public Model {
 public:
  // Builds the model from generator matrices (det 1). Each generator is
  // lifted with the fixed-point section when |trace| >= 2 plus the given
  // extra offset. Requires a hyperbolic word within a short probe budget.
  explicit SkewModel(std::vector<Mat2> matrices, std::vector<int> lift_offsets = {});

  std::string type() const override { return "skewed"; }

  SkewEl element(const Letters& w) const;
  static SkewEl compose(const SkewEl& x, const SkewEl& y);
  static SkewEl inverse_el(const SkewEl& x);
  static LiftPt act(const SkewEl& e, const LiftPt& p);
  static int cocycle(const Mat2& m1, const Mat2& m2);

  // lifted fixed points of e in windings [wlo, whi], sorted
  static std::vector<LiftPt> fixed_lifts(const SkewEl& e, int wlo, int whi);

  Membership membership(const Letters& w) override;
  std::vector<FixedPointRecord> fixed_set(const Letters& w) override;
  PlanePtId apply(const Letters& w, PlanePtId p) override;
  LeafId apply_leaf(const Letters& w, LeafId l) override;
  PointId apply_boundary(const Letters& w, PointId xi) override;
  std::pair<int, int> boundary_side_dynamics(const Letters& w, PointId xi) override;

  std::vector<LeafId> stored_leaves() override;
  std::vector<PointId> stored_boundary_points() override;
  std::vector<PointId> special_boundary_points() override;

  LeafId vleaf(const LiftPt& u);   // F+
  LeafId hleaf(const LiftPt& v);   // F-
  PointId lower_pt(const LiftPt& u);
  PointId upper_pt(const LiftPt& u);
  PlanePtId strip_point(const LiftPt& u, const LiftPt& v);
  LiftPt leaf_coord(LeafId l) const;

  const std::vector<SkewEl>& generator_elements() const { return gen_els_; }

  // exact rational samples flanking a lifted fixed point, avoiding all
  // other lifted fixed points of e
  static std::pair<LiftPt, LiftPt> line_side_samples(const SkewEl& e, const LiftPt& p);
  static bool boundary_line_repels(const SkewEl& e, const LiftPt& p);
  static Rat rational_below(const QuadVal& q);
  static Rat rational_above(const QuadVal& q);
  static Rat rational_between(const QuadVal& a, const QuadVal& b);
  static Rat rational_floorish(const QuadVal& q);

 private:
  std::vector<SkewEl> gen_els_;
  std::vector<PointId> ends_;
};

}  // namespace bfp

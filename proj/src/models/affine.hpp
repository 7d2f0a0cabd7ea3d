#pragma once

// The trivial bifoliated plane R^2 with horizontal/vertical foliations and
// the affine action generated by unit translations and two reciprocal
// scaling maps with formally independent multipliers. Multipliers live in
// the ordered field Q(t,s) with t, s positive and infinitely large, so
// t^m s^n = 1 forces (m,n) = (0,0) and every fixed point solves exactly.
//
// Conventions: F+ leaves are horizontal lines (scalings expand along
// them), F- leaves are vertical. An element acts by
//   (x, y) -> (L x + p, L^-1 y + q),  L = t^m s^n,
// composing as functions (word u v acts by u after v).

#include "../core/model.hpp"

namespace bfp {

struct AffineElement {
  long m = 0, n = 0;
  FieldVal p, q;

  static AffineElement identity() { return {}; }
  bool is_identity() const { return m == 0 && n == 0 && p.is_zero() && q.is_zero(); }
  bool linear_trivial() const { return m == 0 && n == 0; }

  FieldVal multiplier() const;           // t^m s^n
  AffineElement compose(const AffineElement& other) const;  // this after other
  AffineElement inverse() const;
  FieldVal apply_x(const FieldVal& x) const;
  FieldVal apply_y(const FieldVal& y) const;
  std::string key() const;
};

class AffineModel : public Model {
 public:
  // multiplier_names: e.g. {"lambda1","lambda2"}; purely a label
  // distinguishing which formal multipliers the two scaling generators
  // carry (used by conjugacy certificates).
  explicit AffineModel(std::vector<std::string> multiplier_names = {"lambda1", "lambda2"});

  std::string type() const override { return "affine"; }
  const std::vector<std::string>& multiplier_names() const { return multiplier_names_; }

  AffineElement element(const Letters& w) const;

  Membership membership(const Letters& w) override;
  std::vector<FixedPointRecord> fixed_set(const Letters& w) override;
  PlanePtId apply(const Letters& w, PlanePtId p) override;
  LeafId apply_leaf(const Letters& w, LeafId l) override;
  PointId apply_boundary(const Letters& w, PointId xi) override;
  std::pair<int, int> boundary_side_dynamics(const Letters& w, PointId xi) override;

  std::vector<LeafId> stored_leaves() override;
  std::vector<PointId> stored_boundary_points() override;
  std::vector<PointId> special_boundary_points() override;

  // exact fixed point of a member word: (x*, y*)
  std::pair<FieldVal, FieldVal> fixed_coords(const AffineElement& e) const;

  LeafId horizontal(const FieldVal& y);  // F+
  LeafId vertical(const FieldVal& x);    // F-
  PlanePtId point_at(const FieldVal& x, const FieldVal& y);

 private:
  PointId arc_point(int slot, const FieldVal& key);
  std::vector<std::string> multiplier_names_;
  std::vector<PointId> corners_;
};

}  // namespace bfp

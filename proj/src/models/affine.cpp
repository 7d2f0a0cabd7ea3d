#include "affine.hpp"

namespace bfp {

FieldVal AffineElement::multiplier() const {
  return FieldVal::from_poly(LaurentPoly::monomial(1, m, n));
}

AffineElement AffineElement::compose(const AffineElement& o) const {
  // (this ∘ o)(x) = L_t (L_o x + p_o) + p_t
  AffineElement r;
  r.m = m + o.m;
  r.n = n + o.n;
  r.p = multiplier() * o.p + p;
  FieldVal inv_mul = FieldVal(1) / multiplier();
  r.q = inv_mul * o.q + q;
  return r;
}

AffineElement AffineElement::inverse() const {
  AffineElement r;
  r.m = -m;
  r.n = -n;
  FieldVal inv_mul = FieldVal(1) / multiplier();
  r.p = -(inv_mul * p);
  r.q = -(multiplier() * q);
  return r;
}

FieldVal AffineElement::apply_x(const FieldVal& x) const { return multiplier() * x + p; }
FieldVal AffineElement::apply_y(const FieldVal& y) const {
  return (FieldVal(1) / multiplier()) * y + q;
}

std::string AffineElement::key() const {
  return std::to_string(m) + ";" + std::to_string(n) + ";" + p.str() + ";" + q.str();
}

AffineModel::AffineModel(std::vector<std::string> multiplier_names)
    : multiplier_names_(std::move(multiplier_names)) {
  gens_ = {{"t1", "T1"}, {"t2", "T2"}, {"f1", "F1"}, {"f2", "F2"}};
  rewriter_ = std::make_unique<FunctionRewriter>(
      [this](const Letters& w) { return element(w).key(); });
  for (int slot : {1, 3, 5, 7})
    corners_.push_back(pd_.intern_point(Position(AffinePos{slot, FieldVal(0)})));
  // a seed grid of leaves so window-based detectors have material
  for (long c = -2; c <= 2; ++c) {
    horizontal(FieldVal(c));
    vertical(FieldVal(c));
  }
}

AffineElement AffineModel::element(const Letters& w) const {
  static const AffineElement tau1{0, 0, FieldVal(1), FieldVal(0)};
  static const AffineElement tau2{0, 0, FieldVal(0), FieldVal(1)};
  static const AffineElement f1{1, 0, FieldVal(0), FieldVal(0)};
  static const AffineElement f2{0, 1, FieldVal(0), FieldVal(0)};
  static const AffineElement gens[4] = {tau1, tau2, f1, f2};
  AffineElement acc = AffineElement::identity();
  for (int x : w) {
    const AffineElement& g = gens[std::abs(x) - 1];
    acc = acc.compose(x > 0 ? g : g.inverse());
  }
  return acc;
}

Membership AffineModel::membership(const Letters& w) {
  AffineElement e = element(w);
  if (e.is_identity()) return Membership::Out;
  return e.linear_trivial() ? Membership::Out : Membership::In;
}

std::pair<FieldVal, FieldVal> AffineModel::fixed_coords(const AffineElement& e) const {
  // x = L x + p  =>  x = p / (1 - L);   y = L^-1 y + q  =>  y = q / (1 - L^-1)
  FieldVal one(1);
  FieldVal L = e.multiplier();
  FieldVal x = e.p / (one - L);
  FieldVal y = e.q / (one - one / L);
  return {x, y};
}

LeafId AffineModel::horizontal(const FieldVal& y) {
  PointId e = arc_point(0, y);
  PointId w = arc_point(4, -y);
  return pd_.intern_leaf(Sign::Plus, {e, w});
}

LeafId AffineModel::vertical(const FieldVal& x) {
  PointId n = arc_point(2, -x);
  PointId s = arc_point(6, x);
  return pd_.intern_leaf(Sign::Minus, {n, s});
}

PlanePtId AffineModel::point_at(const FieldVal& x, const FieldVal& y) {
  return pd_.intern_intersection(horizontal(y), vertical(x));
}

PointId AffineModel::arc_point(int slot, const FieldVal& key) {
  return pd_.intern_point(Position(AffinePos{slot, key}));
}

std::vector<FixedPointRecord> AffineModel::fixed_set(const Letters& w) {
  std::vector<FixedPointRecord> out;
  AffineElement e = element(w);
  if (e.is_identity() || e.linear_trivial()) return out;
  auto [x, y] = fixed_coords(e);
  FixedPointRecord rec;
  rec.word = w;
  rec.point = point_at(x, y);
  // positive iff expanding along the horizontal leaf: L > 1
  rec.sign = e.multiplier() > FieldVal(1) ? FixSign::Positive : FixSign::Negative;
  rec.corner = CornerStatus::NonCorner;  // trivial plane has no perfect fits
  out.push_back(rec);
  return out;
}

PlanePtId AffineModel::apply(const Letters& w, PlanePtId p) {
  const PlanePt& pt = pd_.pt(p);
  if (pt.kind != PlanePt::Kind::Intersection)
    throw Error(Errc::invalid_spec, "affine points are leaf intersections");
  AffineElement e = element(w);
  // recover coordinates from leaf keys
  const Leaf& h = pd_.leaf(pt.plus);
  const Leaf& v = pd_.leaf(pt.minus);
  FieldVal y = pd_.pos(h.ends[0]).affine().slot == 0 ? pd_.pos(h.ends[0]).affine().key
                                                     : pd_.pos(h.ends[1]).affine().key;
  FieldVal x;
  for (PointId end : v.ends)
    if (pd_.pos(end).affine().slot == 6) x = pd_.pos(end).affine().key;
  return point_at(e.apply_x(x), e.apply_y(y));
}

LeafId AffineModel::apply_leaf(const Letters& w, LeafId l) {
  AffineElement e = element(w);
  const Leaf& lf = pd_.leaf(l);
  if (lf.sign == Sign::Plus) {
    FieldVal y = pd_.pos(lf.ends[0]).affine().slot == 0
                     ? pd_.pos(lf.ends[0]).affine().key
                     : pd_.pos(lf.ends[1]).affine().key;
    return horizontal(e.apply_y(y));
  }
  FieldVal x;
  for (PointId end : lf.ends)
    if (pd_.pos(end).affine().slot == 6) x = pd_.pos(end).affine().key;
  return vertical(e.apply_x(x));
}

PointId AffineModel::apply_boundary(const Letters& w, PointId xi) {
  const AffinePos& a = pd_.pos(xi).affine();
  if (a.slot % 2 == 1) return xi;  // the four ends are preserved
  AffineElement e = element(w);
  FieldVal key;
  switch (a.slot) {
    case 0: key = e.apply_y(a.key); break;           // E: key = y
    case 2: key = -e.apply_x(-a.key); break;         // N: key = -x
    case 4: key = -e.apply_y(-a.key); break;         // W: key = -y
    default: key = e.apply_x(a.key); break;          // S: key = x
  }
  return arc_point(a.slot, key);
}

std::pair<int, int> AffineModel::boundary_side_dynamics(const Letters& w, PointId xi) {
  AffineElement e = element(w);
  const AffinePos& a = pd_.pos(xi).affine();
  FieldVal one(1);
  FieldVal L = e.multiplier();
  FieldVal Linv = one / L;
  // per-arc key action is key -> A key + B
  auto arc_action = [&](int slot) -> std::pair<FieldVal, FieldVal> {
    switch (slot) {
      case 0: return {Linv, e.q};
      case 2: return {L, -e.p};
      case 4: return {Linv, -e.q};
      default: return {L, e.p};
    }
  };
  auto cmp_sign = [&](const FieldVal& v) { return v.sign(); };
  if (a.slot % 2 == 0) {
    auto [A, B] = arc_action(a.slot);
    int s = cmp_sign(A - one);
    if (s == 0) {
      int t = cmp_sign(B);
      return {t, t};  // pure key translation
    }
    // displacement (A-1)(k - k0) on each side of the fixed key
    return {-s, s};
  }
  // corner: left side is the top of the previous arc, right side the
  // bottom of the next; displacement at the infinite ends is governed by
  // the leading coefficient.
  int prev = (a.slot + 7) % 8, next = (a.slot + 1) % 8;
  auto [Ap, Bp] = arc_action(prev);
  auto [An, Bn] = arc_action(next);
  int left = cmp_sign(Ap - one);           // key -> +inf end of prev arc
  if (left == 0) left = cmp_sign(Bp);
  int right = -cmp_sign(An - one);         // key -> -inf end of next arc
  if (right == 0) right = cmp_sign(Bn);
  return {left, right};
}

std::vector<LeafId> AffineModel::stored_leaves() {
  std::vector<LeafId> out;
  for (LeafId i = 0; i < pd_.leaf_count(); ++i) out.push_back(i);
  return out;
}

std::vector<PointId> AffineModel::stored_boundary_points() {
  std::vector<PointId> out;
  for (PointId i = 0; i < pd_.point_count(); ++i) out.push_back(i);
  return out;
}

std::vector<PointId> AffineModel::special_boundary_points() { return corners_; }

}  // namespace bfp

#include "skew.hpp"

namespace bfp {

namespace {

QuadVal moebius_value(const Mat2& m, const QuadVal& v) {
  QuadVal num = QuadVal(m.a, 0, 0, 1) * v + QuadVal(m.b, 0, 0, 1);
  QuadVal den = QuadVal(m.c, 0, 0, 1) * v + QuadVal(m.d, 0, 0, 1);
  return num / den;
}

// fixed projective points of a canonical matrix, sorted; empty if elliptic
// or projectively trivial. For |tr| >= 2 and c != 0 these are
// ((a-d) +- sqrt(tr^2-4)) / (2c).
std::vector<QuadVal> finite_fixed_points(const Mat2& m, bool& fixes_infinity) {
  fixes_infinity = false;
  std::vector<QuadVal> out;
  if (m.is_proj_identity()) return out;
  if (m.c == 0) {
    fixes_infinity = true;
    if (m.a != m.d) {
      Rat t(m.b, m.d - m.a);
      t.canonicalize();
      out.push_back(QuadVal::rational(t));
    }
    return out;
  }
  Int tr = m.trace();
  Int D = tr * tr - 4;
  if (D < 0) return out;
  QuadVal r1(m.a - m.d, -1, D, 2 * m.c);
  QuadVal r2(m.a - m.d, 1, D, 2 * m.c);
  if (r2 < r1) std::swap(r1, r2);
  out.push_back(r1);
  if (D > 0) out.push_back(r2);
  return out;
}

}  // namespace

LiftPt SkewModel::act(const SkewEl& e, const LiftPt& p) {
  const Mat2& m = e.m;
  int w = p.wind + e.k;
  if (m.c == 0) {
    // affine chart map, fixes the infinity markers
    if (p.inf) return LiftPt{true, QuadVal(), w};
    return LiftPt{false, moebius_value(m, p.v), w};
  }
  if (p.inf) {
    Rat ac(m.a, m.c);
    ac.canonicalize();
    return LiftPt{false, QuadVal::rational(ac), w + 1};
  }
  QuadVal pole = QuadVal::rational([&] {
    Rat r(-m.d, m.c);
    r.canonicalize();
    return r;
  }());
  int cmp = QuadVal::cmp(p.v, pole);
  if (cmp == 0) return LiftPt{true, QuadVal(), w};
  return LiftPt{false, moebius_value(m, p.v), cmp > 0 ? w + 1 : w};
}

int SkewModel::cocycle(const Mat2& m1, const Mat2& m2) {
  LiftPt x = LiftPt::infinity(0);
  LiftPt y = act(SkewEl{m1, 0}, act(SkewEl{m2, 0}, x));
  LiftPt z = act(SkewEl{m1.mul(m2).canonical(), 0}, x);
  if (y.inf != z.inf || (!y.inf && QuadVal::cmp(y.v, z.v) != 0))
    throw Error(Errc::internal, "cocycle: projective mismatch");
  return y.wind - z.wind;
}

SkewEl SkewModel::compose(const SkewEl& x, const SkewEl& y) {
  return SkewEl{x.m.mul(y.m).canonical(), x.k + y.k + cocycle(x.m, y.m)};
}

SkewEl SkewModel::inverse_el(const SkewEl& x) {
  Mat2 mi = x.m.inv().canonical();
  return SkewEl{mi, -x.k - cocycle(mi, x.m)};
}

std::vector<LiftPt> SkewModel::fixed_lifts(const SkewEl& e, int wlo, int whi) {
  std::vector<LiftPt> out;
  bool fix_inf = false;
  std::vector<QuadVal> pts = finite_fixed_points(e.m, fix_inf);
  if (e.m.is_proj_identity()) return out;  // deck powers act freely
  for (int w = wlo; w <= whi; ++w) {
    for (const QuadVal& t : pts) {
      LiftPt p{false, t, w};
      LiftPt q = act(e, p);
      if (q == p) out.push_back(p);
    }
    if (fix_inf) {
      LiftPt p = LiftPt::infinity(w);
      if (act(e, p) == p) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SkewModel::SkewModel(std::vector<Mat2> matrices, std::vector<int> lift_offsets) {
  if (matrices.empty()) throw Error(Errc::invalid_spec, "skewed model needs generators");
  rewriter_ = std::make_unique<Rewriter>();
  for (size_t i = 0; i < matrices.size(); ++i) {
    Mat2 m = matrices[i];
    if (m.det() != 1) throw Error(Errc::invalid_spec, "generator determinant must be 1");
    m = m.canonical();
    // fixed-point section: when the projective map has fixed points,
    // choose the lift that fixes their lifts
    int k = 0;
    bool fix_inf = false;
    std::vector<QuadVal> pts = finite_fixed_points(m, fix_inf);
    if (!pts.empty()) {
      LiftPt p{false, pts.front(), 0};
      k = -(act(SkewEl{m, 0}, p).wind);
    } else if (fix_inf) {
      k = -(act(SkewEl{m, 0}, LiftPt::infinity(0)).wind);
    }
    if (i < lift_offsets.size()) k += lift_offsets[i];
    gen_els_.push_back(SkewEl{m, k});
    std::string nm = "g" + std::to_string(i + 1);
    std::string inv = "G" + std::to_string(i + 1);
    gens_.push_back({nm, inv});
  }
  // probe for a hyperbolic word; the action must contain one
  bool found = false;
  for (const GroupWord& w : enumerate_words(static_cast<int>(gens_.size()), 3, *rewriter_)) {
    if (w.letters.empty()) continue;
    SkewEl e = element(w.letters);
    Int tr = e.m.trace();
    if (tr * tr > 4) { found = true; break; }
  }
  if (!found)
    throw Error(Errc::all_elliptic, "no hyperbolic word within probe budget");

  ends_.push_back(pd_.intern_point(Position(SkewPos{0, 0, false, QuadVal()})));
  ends_.push_back(pd_.intern_point(Position(SkewPos{2, 0, false, QuadVal()})));
  // seed window of leaves
  for (int w = -1; w <= 1; ++w)
    for (long num = 0; num < 4; ++num) {
      vleaf(LiftPt::at(rat(num, 4), w));
      hleaf(LiftPt::at(rat(num, 4), w));
    }
}

SkewEl SkewModel::element(const Letters& w) const {
  SkewEl acc{Mat2{1, 0, 0, 1}, 0};
  for (int x : w) {
    const SkewEl& g = gen_els_.at(std::abs(x) - 1);
    acc = compose(acc, x > 0 ? g : inverse_el(g));
  }
  return acc;
}

Membership SkewModel::membership(const Letters& w) {
  if (w.empty()) return Membership::Out;
  SkewEl e = element(w);
  Int tr = e.m.trace();
  if (tr * tr <= 4) return Membership::Out;  // elliptic, parabolic, or deck
  return fixed_lifts(e, 0, 0).empty() ? Membership::Out : Membership::In;
}

std::vector<FixedPointRecord> SkewModel::fixed_set(const Letters& w) {
  std::vector<FixedPointRecord> out;
  if (membership(w) != Membership::In) return out;
  SkewEl e = element(w);
  std::vector<LiftPt> lifts = fixed_lifts(e, -1, 1);
  // consecutive lifted fixed points are the corners of the invariant
  // chain: (u, v) with u < v < deck(u)
  for (size_t i = 0; i + 1 < lifts.size(); ++i) {
    const LiftPt &u = lifts[i], &v = lifts[i + 1];
    if (!(u < v) || !(v < u.deck(1))) continue;
    FixedPointRecord rec;
    rec.word = w;
    rec.point = strip_point(u, v);
    // positive iff expanding along V(u): the transverse coordinate v is
    // repelled there
    rec.sign = boundary_line_repels(e, v) ? FixSign::Positive : FixSign::Negative;
    rec.corner = CornerStatus::Corner;
    out.push_back(rec);
  }
  return out;
}

PlanePtId SkewModel::apply(const Letters& w, PlanePtId p) {
  const PlanePt& pt = pd_.pt(p);
  if (pt.kind != PlanePt::Kind::Intersection)
    throw Error(Errc::invalid_spec, "skewed points are leaf intersections");
  SkewEl e = element(w);
  LiftPt u = leaf_coord(pt.plus);
  LiftPt v = leaf_coord(pt.minus);
  return strip_point(act(e, u), act(e, v));
}

LeafId SkewModel::apply_leaf(const Letters& w, LeafId l) {
  SkewEl e = element(w);
  LiftPt c = leaf_coord(l);
  return pd_.leaf(l).sign == Sign::Plus ? vleaf(act(e, c)) : hleaf(act(e, c));
}

PointId SkewModel::apply_boundary(const Letters& w, PointId xi) {
  const SkewPos& s = pd_.pos(xi).skew();
  if (s.slot == 0 || s.slot == 2) return xi;
  SkewEl e = element(w);
  LiftPt p{s.inf, s.proj, s.wind};
  LiftPt q = act(e, p);
  return pd_.intern_point(Position(SkewPos{s.slot, q.wind, q.inf, q.v}));
}

// displacement sign of the lifted action strictly between consecutive
// fixed points, sampled at an exact rational inside the gap
namespace {
int lift_displacement_sign(const SkewEl& e, const LiftPt& sample) {
  LiftPt img = SkewModel::act(e, sample);
  return LiftPt::cmp(img, sample);
}
}  // namespace

bool SkewModel::boundary_line_repels(const SkewEl& e, const LiftPt& p) {
  // repelling iff displacement just below p is negative and just above
  // positive
  auto [below, above] = line_side_samples(e, p);
  return lift_displacement_sign(e, below) < 0 && lift_displacement_sign(e, above) > 0;
}

std::pair<LiftPt, LiftPt> SkewModel::line_side_samples(const SkewEl& e, const LiftPt& p) {
  // rational samples adjacent to p avoiding every lifted fixed point:
  // fixed projective values repeat once per winding, so a rational
  // strictly between consecutive fixed projective values works in the
  // winding where it lands.
  bool fix_inf = false;
  std::vector<QuadVal> pts = finite_fixed_points(e.m, fix_inf);
  // rational separators strictly between and beyond the projective fixed values
  std::vector<Rat> seps;
  if (pts.empty()) {
    seps = {rat(0)};
  } else if (pts.size() == 1) {
    Rat lo = rational_below(pts[0]), hi = rational_above(pts[0]);
    seps = {lo, hi};
  } else {
    seps = {rational_below(pts[0]), rational_between(pts[0], pts[1]), rational_above(pts[1])};
  }
  // candidate sample points on both sides of p
  std::vector<LiftPt> cands;
  for (const Rat& r : seps)
    for (int w = p.wind - 1; w <= p.wind + 1; ++w) cands.push_back(LiftPt::at(r, w));
  LiftPt below = cands.front(), above = cands.back();
  bool have_b = false, have_a = false;
  std::sort(cands.begin(), cands.end());
  for (const LiftPt& c : cands) {
    if (c < p) { below = c; have_b = true; }
    if (p < c && !have_a) { above = c; have_a = true; }
  }
  if (!have_b || !have_a)
    throw Error(Errc::internal, "no rational sample adjacent to fixed lift");
  return {below, above};
}

std::pair<int, int> SkewModel::boundary_side_dynamics(const Letters& w, PointId xi) {
  const SkewPos& s = pd_.pos(xi).skew();
  SkewEl e = element(w);
  if (s.slot == 0 || s.slot == 2) {
    // strip ends: indifferent when fixed points accumulate there,
    // otherwise governed by the global translation direction
    bool fix_inf = false;
    bool has_fixed = !finite_fixed_points(e.m, fix_inf).empty() || fix_inf;
    if (has_fixed && !fixed_lifts(e, 0, 0).empty()) return {0, 0};
    int d = lift_displacement_sign(e, LiftPt::at(rat(0), 0));
    // W end (slot 0): ccw-after is the lower line going up; E end (slot 2):
    // ccw-after is the upper line going down
    if (s.slot == 0) return {-d, d};
    return {d, -d};
  }
  LiftPt p{s.inf, s.proj, s.wind};
  auto [below, above] = line_side_samples(e, p);
  int db = lift_displacement_sign(e, below);
  int da = lift_displacement_sign(e, above);
  // lower line (slot 1) runs ccw with the line order; upper (slot 3) reversed
  if (s.slot == 1) return {db, da};
  return {-da, -db};
}

Rat SkewModel::rational_below(const QuadVal& q) {
  if (q.is_rational()) return q.as_rational() - 1;
  // (p - (isqrt(|q|^2 d)+1)|q|-ish) / r: use floor of the value minus 1
  return rational_floorish(q) - 1;
}
Rat SkewModel::rational_above(const QuadVal& q) {
  if (q.is_rational()) return q.as_rational() + 1;
  return rational_floorish(q) + 2;
}
Rat SkewModel::rational_between(const QuadVal& a, const QuadVal& b) {
  // binary search on dyadics between a and b
  Rat lo = rational_floorish(a) - 1, hi = rational_floorish(b) + 2;
  for (int i = 0; i < 256; ++i) {
    Rat mid = (lo + hi) / 2;
    QuadVal m = QuadVal::rational(mid);
    if (QuadVal::cmp(m, a) <= 0) { lo = mid; continue; }
    if (QuadVal::cmp(m, b) >= 0) { hi = mid; continue; }
    return mid;
  }
  throw Error(Errc::internal, "no rational between fixed values");
}
Rat SkewModel::rational_floorish(const QuadVal& q) {
  // integer floor via exact comparisons with a doubling then binary search
  Int lo = -2, hi = 2;
  while (QuadVal::cmp(QuadVal::rational(Rat(lo)), q) > 0) lo *= 2;
  while (QuadVal::cmp(QuadVal::rational(Rat(hi)), q) < 0) hi *= 2;
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (QuadVal::cmp(QuadVal::rational(Rat(mid)), q) <= 0) lo = mid;
    else hi = mid;
  }
  return Rat(lo);
}

LeafId SkewModel::vleaf(const LiftPt& u) {
  return pd_.intern_leaf(Sign::Plus, {lower_pt(u), upper_pt(u)});
}
LeafId SkewModel::hleaf(const LiftPt& v) {
  return pd_.intern_leaf(Sign::Minus, {lower_pt(v), upper_pt(v.deck(-1))});
}
PointId SkewModel::lower_pt(const LiftPt& u) {
  return pd_.intern_point(Position(SkewPos{1, u.wind, u.inf, u.v}));
}
PointId SkewModel::upper_pt(const LiftPt& u) {
  return pd_.intern_point(Position(SkewPos{3, u.wind, u.inf, u.v}));
}
PlanePtId SkewModel::strip_point(const LiftPt& u, const LiftPt& v) {
  if (!(u < v) || !(v < u.deck(1)))
    throw Error(Errc::invalid_spec, "strip point needs u < v < u+1");
  return pd_.intern_intersection(vleaf(u), hleaf(v));
}

LiftPt SkewModel::leaf_coord(LeafId l) const {
  const Leaf& lf = pd_.leaf(l);
  for (PointId e : lf.ends) {
    const SkewPos& s = pd_.pos(e).skew();
    if (s.slot == 1) {
      // lower endpoint carries the coordinate for both leaf kinds
      return LiftPt{s.inf, s.proj, s.wind};
    }
  }
  throw Error(Errc::internal, "leaf without lower endpoint");
}

std::vector<LeafId> SkewModel::stored_leaves() {
  std::vector<LeafId> out;
  for (LeafId i = 0; i < pd_.leaf_count(); ++i) out.push_back(i);
  return out;
}
std::vector<PointId> SkewModel::stored_boundary_points() {
  std::vector<PointId> out;
  for (PointId i = 0; i < pd_.point_count(); ++i) out.push_back(i);
  return out;
}
std::vector<PointId> SkewModel::special_boundary_points() { return ends_; }

}  // namespace bfp

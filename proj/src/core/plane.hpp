#pragma once

// Combinatorial bifoliated plane: leaves are tuples of ideal-circle
// endpoints, intersections are chord linkings, perfect fits are shared
// endpoints. Leaves and plane points are interned so identity is stable
// across repeated queries.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "circle.hpp"
#include "error.hpp"

namespace bfp {

enum class Sign : int { Plus = 0, Minus = 1 };
inline Sign opposite(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline const char* sign_str(Sign s) { return s == Sign::Plus ? "+" : "-"; }

using PointId = int;    // ideal circle point
using LeafId = int;
using PlanePtId = int;

struct Leaf {
  Sign sign = Sign::Plus;
  std::vector<PointId> ends;            // cut-order sorted, distinct
  std::optional<PlanePtId> center;      // set for prong leaves (>= 3 ends)
  bool regular() const { return ends.size() == 2; }
};

struct PlanePt {
  enum class Kind { Intersection, OnLeaf, SingularCenter };
  Kind kind = Kind::Intersection;
  LeafId plus = -1;    // Intersection / SingularCenter
  LeafId minus = -1;
  LeafId host = -1;    // OnLeaf
  Rat param;           // OnLeaf: exact leaf-local coordinate
};

enum class Linking { TotallyLinked, PartiallyLinked, Unlinked, SharedLeaf };
inline const char* linking_str(Linking l) {
  switch (l) {
    case Linking::TotallyLinked: return "totally-linked";
    case Linking::PartiallyLinked: return "partially-linked";
    case Linking::Unlinked: return "unlinked";
    default: return "shared-leaf";
  }
}

struct HalfLeaf {
  LeafId leaf = -1;
  PointId endpoint = -1;
  PlanePtId base = -1;
};

struct Quadrant {
  PlanePtId base = -1;
  HalfLeaf plus_ray;
  HalfLeaf minus_ray;
};

class PlaneData {
 public:
  PointId intern_point(const Position& p) {
    auto it = point_index_.find(p);
    if (it != point_index_.end()) return it->second;
    PointId id = static_cast<PointId>(points_.size());
    points_.push_back(p);
    point_index_.emplace(p, id);
    return id;
  }
  const Position& pos(PointId id) const { return points_.at(id); }
  int point_count() const { return static_cast<int>(points_.size()); }

  LeafId intern_leaf(Sign sign, std::vector<PointId> ends) {
    if (ends.size() < 2) throw Error(Errc::invalid_spec, "leaf needs >= 2 endpoints");
    std::sort(ends.begin(), ends.end(),
              [&](PointId a, PointId b) { return pos(a) < pos(b); });
    for (size_t i = 0; i + 1 < ends.size(); ++i)
      if (pos(ends[i]) == pos(ends[i + 1]))
        throw Error(Errc::invalid_spec, "leaf with repeated endpoint");
    auto key = std::make_pair(sign, ends);
    auto it = leaf_index_.find(key);
    if (it != leaf_index_.end()) return it->second;
    LeafId id = static_cast<LeafId>(leaves_.size());
    leaves_.push_back(Leaf{sign, std::move(ends), std::nullopt});
    leaf_index_.emplace(std::move(key), id);
    return id;
  }
  const Leaf& leaf(LeafId id) const { return leaves_.at(id); }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  std::optional<LeafId> find_leaf(Sign sign, std::vector<PointId> ends) const {
    std::sort(ends.begin(), ends.end(),
              [&](PointId a, PointId b) { return pos(a) < pos(b); });
    auto it = leaf_index_.find(std::make_pair(sign, std::move(ends)));
    if (it == leaf_index_.end()) return std::nullopt;
    return it->second;
  }

  PlanePtId intern_intersection(LeafId plus, LeafId minus) {
    auto key = std::make_tuple(PlanePt::Kind::Intersection, plus, minus, Rat(0));
    auto it = pt_index_.find(key);
    if (it != pt_index_.end()) return it->second;
    PlanePtId id = static_cast<PlanePtId>(pts_.size());
    pts_.push_back(PlanePt{PlanePt::Kind::Intersection, plus, minus, -1, Rat(0)});
    pt_index_.emplace(std::move(key), id);
    return id;
  }

  // The shared center of a +prong and a -prong; marks both leaves.
  PlanePtId intern_center(LeafId plus, LeafId minus) {
    auto key = std::make_tuple(PlanePt::Kind::SingularCenter, plus, minus, Rat(0));
    auto it = pt_index_.find(key);
    if (it != pt_index_.end()) return it->second;
    PlanePtId id = static_cast<PlanePtId>(pts_.size());
    pts_.push_back(PlanePt{PlanePt::Kind::SingularCenter, plus, minus, -1, Rat(0)});
    pt_index_.emplace(std::move(key), id);
    leaves_.at(plus).center = id;
    leaves_.at(minus).center = id;
    return id;
  }

  PlanePtId intern_on_leaf(LeafId host, const Rat& param) {
    auto key = std::make_tuple(PlanePt::Kind::OnLeaf, host, LeafId(-1), param);
    auto it = pt_index_.find(key);
    if (it != pt_index_.end()) return it->second;
    PlanePtId id = static_cast<PlanePtId>(pts_.size());
    pts_.push_back(PlanePt{PlanePt::Kind::OnLeaf, -1, -1, host, param});
    pt_index_.emplace(std::move(key), id);
    return id;
  }

  const PlanePt& pt(PlanePtId id) const { return pts_.at(id); }
  int pt_count() const { return static_cast<int>(pts_.size()); }

  // Leaf of the given sign through a point (OnLeaf points know one side).
  std::optional<LeafId> leaf_of(PlanePtId id, Sign s) const {
    const PlanePt& p = pt(id);
    switch (p.kind) {
      case PlanePt::Kind::Intersection:
      case PlanePt::Kind::SingularCenter:
        return s == Sign::Plus ? p.plus : p.minus;
      default:
        if (leaf(p.host).sign == s) return p.host;
        return std::nullopt;
    }
  }

  std::vector<PointId> ideal_pts(PlanePtId id) const {
    std::vector<PointId> out;
    for (Sign s : {Sign::Plus, Sign::Minus})
      if (auto l = leaf_of(id, s))
        for (PointId e : leaf(*l).ends) out.push_back(e);
    std::sort(out.begin(), out.end(),
              [&](PointId a, PointId b) { return pos(a) < pos(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::vector<Position> points_;
  std::map<Position, PointId> point_index_;
  std::vector<Leaf> leaves_;
  std::map<std::pair<Sign, std::vector<PointId>>, LeafId> leaf_index_;
  std::vector<PlanePt> pts_;
  std::map<std::tuple<PlanePt::Kind, LeafId, LeafId, Rat>, PlanePtId> pt_index_;
};

// Index of the arc of circle-minus-S containing q, where S is sorted by
// cut order and q is not in S. Arc i runs ccw from S[i] to S[(i+1)%k].
inline int arc_index(const PlaneData& pd, const std::vector<PointId>& s, const Position& q) {
  int k = static_cast<int>(s.size());
  int lo = 0, hi = k;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (pd.pos(s[mid]).cmp(q) < 0) lo = mid + 1;
    else hi = mid;
  }
  return (lo - 1 + k) % k;
}

// Do the endpoint sets of two leaves interleave on the circle (i.e. each
// leaf has endpoints in at least two complementary components of the
// other's endpoint set)?
inline bool chords_link(const PlaneData& pd, const Leaf& a, const Leaf& b) {
  auto spread = [&](const Leaf& x, const Leaf& y) {
    int first = -1;
    for (PointId e : y.ends) {
      int arc = arc_index(pd, x.ends, pd.pos(e));
      if (first == -1) first = arc;
      else if (arc != first) return true;
    }
    return false;
  };
  return spread(a, b) && spread(b, a);
}

inline bool share_endpoint(const PlaneData& pd, const Leaf& a, const Leaf& b) {
  for (PointId ea : a.ends)
    for (PointId eb : b.ends)
      if (pd.pos(ea) == pd.pos(eb)) return true;
  return false;
}

// Intersection point of two leaves, if they cross. Canonical: repeated
// calls return the same PlanePtId. Same-sign crossings are a model
// invariant violation.
inline std::optional<PlanePtId> leaves_intersect(PlaneData& pd, LeafId l1, LeafId l2) {
  if (l1 == l2) return std::nullopt;
  const Leaf &a = pd.leaf(l1), &b = pd.leaf(l2);
  if (a.sign == b.sign) {
    if (chords_link(pd, a, b))
      throw Error(Errc::same_sign_cross, "same-sign leaves cross");
    return std::nullopt;  // shared endpoints encode non-separation
  }
  if (a.center && b.center && *a.center == *b.center) return *a.center;
  if (share_endpoint(pd, a, b)) {
    if (chords_link(pd, a, b))
      throw Error(Errc::model_violation,
                  "leaves share an ideal endpoint yet interleave");
    return std::nullopt;  // perfect fit
  }
  if (!chords_link(pd, a, b)) return std::nullopt;
  LeafId plus = a.sign == Sign::Plus ? l1 : l2;
  LeafId minus = a.sign == Sign::Plus ? l2 : l1;
  return pd.intern_intersection(plus, minus);
}

// Number of components of circle-minus-idealpts(b) met by idealpts(a).
inline int components_met(const PlaneData& pd, const std::vector<PointId>& apts,
                          const std::vector<PointId>& bpts) {
  std::set<int> arcs;
  for (PointId e : apts) arcs.insert(arc_index(pd, bpts, pd.pos(e)));
  return static_cast<int>(arcs.size());
}

inline Linking classify_linking(const PlaneData& pd, PlanePtId a, PlanePtId b) {
  if (a == b) return Linking::SharedLeaf;
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    auto la = pd.leaf_of(a, s), lb = pd.leaf_of(b, s);
    if (la && lb && *la == *lb) return Linking::SharedLeaf;
  }
  auto apts = pd.ideal_pts(a), bpts = pd.ideal_pts(b);
  for (PointId ea : apts)
    for (PointId eb : bpts)
      if (pd.pos(ea) == pd.pos(eb))
        throw Error(Errc::ambiguous_endpoints,
                    "points share an ideal endpoint but no leaf");
  int met = components_met(pd, apts, bpts);
  int met_sym = components_met(pd, bpts, apts);
  if (met != met_sym || met < 1 || met > 3)
    throw Error(Errc::model_violation, "linking count out of range");
  switch (met) {
    case 3: return Linking::TotallyLinked;
    case 2: return Linking::PartiallyLinked;
    default: return Linking::Unlinked;
  }
}

inline bool perfect_fit(PlaneData& pd, const HalfLeaf& h1, const HalfLeaf& h2) {
  const Leaf &a = pd.leaf(h1.leaf), &b = pd.leaf(h2.leaf);
  if (a.sign == b.sign)
    throw Error(Errc::invalid_spec, "perfect_fit needs opposite signs");
  if (pd.pos(h1.endpoint) != pd.pos(h2.endpoint)) return false;
  if (chords_link(pd, a, b))
    throw Error(Errc::model_violation,
                "leaves share an ideal endpoint yet interleave");
  return true;
}

struct QuadrantList {
  std::vector<Quadrant> quads;
  bool closures_cover = true;
};

// The two ends of `l` bounding the local line through a regular point
// where `other` crosses it. For a prong, `other` must isolate exactly one
// end of `l`; the centerward direction is represented by that end's
// cyclic successor among l's ends.
inline std::pair<PointId, PointId> local_ends(const PlaneData& pd, const Leaf& l,
                                              const Leaf& other) {
  if (l.regular()) return {l.ends[0], l.ends[1]};
  std::vector<int> arcs;
  for (PointId e : l.ends) arcs.push_back(arc_index(pd, other.ends, pd.pos(e)));
  for (size_t i = 0; i < l.ends.size(); ++i) {
    bool alone = true;
    for (size_t j = 0; j < l.ends.size(); ++j)
      if (j != i && arcs[j] == arcs[i]) alone = false;
    if (alone) {
      size_t succ = (i + 1) % l.ends.size();
      return {l.ends[i], l.ends[succ]};
    }
  }
  throw Error(Errc::model_violation, "transverse leaf crosses several prongs");
}

// Quadrants of x in circular order of their bounding-ray endpoints:
// 4 for a regular point, 2n for the center of n-prongs. closures_cover
// is false when x is a regular point on a singular leaf.
inline QuadrantList quadrants_of(PlaneData& pd, PlanePtId x) {
  auto lp = pd.leaf_of(x, Sign::Plus), lm = pd.leaf_of(x, Sign::Minus);
  if (!lp || !lm)
    throw Error(Errc::invalid_spec, "quadrants need a leaf of each sign");
  const Leaf &P = pd.leaf(*lp), &M = pd.leaf(*lm);
  bool center_pt = pd.pt(x).kind == PlanePt::Kind::SingularCenter;

  struct End { PointId e; LeafId l; Sign s; };
  std::vector<End> ends;
  if (center_pt) {
    for (PointId e : P.ends) ends.push_back({e, *lp, Sign::Plus});
    for (PointId e : M.ends) ends.push_back({e, *lm, Sign::Minus});
  } else {
    auto [p1, p2] = local_ends(pd, P, M);
    auto [m1, m2] = local_ends(pd, M, P);
    ends = {{p1, *lp, Sign::Plus}, {p2, *lp, Sign::Plus},
            {m1, *lm, Sign::Minus}, {m2, *lm, Sign::Minus}};
  }
  std::sort(ends.begin(), ends.end(),
            [&](const End& u, const End& v) { return pd.pos(u.e) < pd.pos(v.e); });
  QuadrantList out;
  int n = static_cast<int>(ends.size());
  for (int i = 0; i < n; ++i) {
    const End &u = ends[i], &v = ends[(i + 1) % n];
    if (u.s == v.s)
      throw Error(Errc::model_violation, "quadrant rays must alternate sign");
    const End &pu = u.s == Sign::Plus ? u : v;
    const End &mu = u.s == Sign::Plus ? v : u;
    out.quads.push_back(Quadrant{x, HalfLeaf{pu.l, pu.e, x}, HalfLeaf{mu.l, mu.e, x}});
  }
  if (!center_pt && (!P.regular() || !M.regular())) out.closures_cover = false;
  return out;
}

}  // namespace bfp

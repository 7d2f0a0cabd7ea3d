#pragma once

// Orientation-preserving piecewise-Moebius circle homeomorphisms with
// rational data. A map is stored lifted: strictly increasing
// F: [0,1) -> [F(0), F(0)+1) extended by F(x+1) = F(x)+1. Composition,
// inversion, evaluation and fixed-point queries are all exact.

#include <optional>
#include <vector>

#include "error.hpp"
#include "exact.hpp"

namespace bfp {

struct Mobius {
  Rat a, b, c, d;  // x -> (a x + b) / (c x + d)

  static Mobius identity() { return {Rat(1), Rat(0), Rat(0), Rat(1)}; }
  static Mobius shift(const Rat& k) { return {Rat(1), k, Rat(0), Rat(1)}; }
  static Mobius linear(const Rat& a, const Rat& b) { return {a, b, Rat(0), Rat(1)}; }

  Rat det() const { return a * d - b * c; }

  Rat eval(const Rat& x) const {
    Rat den = c * x + d;
    if (den == 0) throw ExactError("Mobius: pole hit");
    return (a * x + b) / den;
  }

  Mobius compose(const Mobius& g) const {  // this after g
    return {a * g.a + b * g.c, a * g.b + b * g.d,
            c * g.a + d * g.c, c * g.b + d * g.d};
  }

  Mobius inverse() const { return {d, -b, -c, a}; }

  // scale-canonical integer form with denominator positive at x0
  void canon(const Rat& x0) {
    Int l = 1;
    for (const Rat* r : {&a, &b, &c, &d}) {
      Int t;
      mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), r->get_den().get_mpz_t());
      l = t;
    }
    Rat m(l);
    a *= m; b *= m; c *= m; d *= m;
    Int g = 0;
    for (const Rat* r : {&a, &b, &c, &d}) {
      Int t;
      mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), r->get_num().get_mpz_t());
      g = t;
    }
    if (g > 1) {
      Rat gr(g);
      a /= gr; b /= gr; c /= gr; d /= gr;
    }
    if (c * x0 + d < 0) { a = -a; b = -b; c = -c; d = -d; }
  }

  bool same_as(const Mobius& o) const {
    return a * o.b == b * o.a && a * o.c == c * o.a && a * o.d == d * o.a &&
           b * o.c == c * o.b && b * o.d == d * o.b && c * o.d == d * o.c;
  }
};

class CircleMap {
 public:
  CircleMap() : bps_{Rat(0)}, pieces_{Mobius::identity()} {}

  static CircleMap identity() { return CircleMap(); }

  static CircleMap rotation(const Rat& r) {
    CircleMap m;
    m.bps_ = {Rat(0)};
    m.pieces_ = {Mobius::shift(mod1(r))};
    return m;
  }

  // Piecewise map from explicit pieces covering [0,1); the lifted images
  // must be increasing and span exactly one turn.
  static CircleMap from_pieces(std::vector<Rat> bps, std::vector<Mobius> pieces) {
    CircleMap m;
    m.bps_ = std::move(bps);
    m.pieces_ = std::move(pieces);
    m.validate();
    m.canonicalize();
    return m;
  }

  // Piecewise-linear interpolation through anchors (x_i -> y_i); x_0 must
  // be 0, x strictly increasing in [0,1), y strictly increasing lifted;
  // the final piece closes up to y_0 + 1.
  static CircleMap pl_interpolate(const std::vector<std::pair<Rat, Rat>>& anchors) {
    if (anchors.empty() || anchors[0].first != 0)
      throw ExactError("pl_interpolate: first anchor must be at 0");
    std::vector<Rat> bps;
    std::vector<Mobius> pieces;
    size_t n = anchors.size();
    for (size_t i = 0; i < n; ++i) {
      Rat x1 = anchors[i].first, y1 = anchors[i].second;
      Rat x2 = (i + 1 < n) ? anchors[i + 1].first : Rat(1);
      Rat y2 = (i + 1 < n) ? anchors[i + 1].second : anchors[0].second + 1;
      if (!(x1 < x2 && y1 < y2)) throw ExactError("pl_interpolate: not increasing");
      Rat a = (y2 - y1) / (x2 - x1);
      Rat b = y1 - a * x1;
      bps.push_back(x1);
      pieces.push_back(Mobius::linear(a, b));
    }
    return from_pieces(std::move(bps), std::move(pieces));
  }

  const std::vector<Rat>& breakpoints() const { return bps_; }

  Rat eval_lifted01(const Rat& x) const {  // x in [0,1)
    return pieces_[piece_at(x)].eval(x);
  }
  Rat eval_lifted(const Rat& x) const {
    Rat xm = mod1(x);
    Rat n = x - xm;  // integer part as Rat
    return eval_lifted01(xm) + n;
  }
  Rat eval(const Rat& x) const { return mod1(eval_lifted01(mod1(x))); }

  bool fixes(const Rat& x) const { return eval(x) == mod1(x); }

  CircleMap compose(const CircleMap& g) const {  // this ∘ g
    // breakpoints: g's own plus preimages through g of this map's
    // breakpoints (all integer translates meeting g's range)
    CircleMap ginv = g.inverse();
    std::vector<Rat> bps = g.bps_;
    Rat g0 = g.eval_lifted01(Rat(0));
    for (const Rat& b : bps_) {
      // b + k in [g0, g0+1)
      Rat y = b + Rat(ceil_int(g0 - b));
      if (y < g0) y += 1;
      bps.push_back(ginv.eval(mod1(y)));
    }
    // integer crossings of g
    {
      Rat z(ceil_int(g0));
      if (z < g0 + 1) bps.push_back(ginv.eval(mod1(z)));
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    if (bps.empty() || bps[0] != 0) bps.insert(bps.begin(), Rat(0));

    std::vector<Mobius> pieces;
    for (size_t i = 0; i < bps.size(); ++i) {
      Rat lo = bps[i];
      Rat hi = (i + 1 < bps.size()) ? bps[i + 1] : Rat(1);
      Rat mid = (lo + hi) / 2;
      Rat y = g.eval_lifted01(mid);
      Rat ym = mod1(y);
      Rat k = y - ym;
      const Mobius& fm = pieces_[piece_at(ym)];
      Mobius m = Mobius::shift(k).compose(fm).compose(Mobius::shift(-k)).compose(
          g.pieces_[g.piece_at(mid)]);
      pieces.push_back(m);
    }
    return from_pieces(std::move(bps), std::move(pieces));
  }

  CircleMap inverse() const {
    struct Seg { Rat lo, hi; Mobius m; };  // src in lifted image coords
    std::vector<Seg> segs;
    Rat f0 = eval_lifted01(Rat(0));
    for (size_t i = 0; i < bps_.size(); ++i) {
      Rat lo = pieces_[i].eval(bps_[i]);
      Rat hi = (i + 1 < bps_.size()) ? pieces_[i].eval(bps_[i + 1]) : f0 + 1;
      segs.push_back({lo, hi, pieces_[i].inverse()});
    }
    // split at integer points, then re-chart to [0,1)
    std::vector<Seg> flat;
    for (auto& s : segs) {
      Rat lo = s.lo, hi = s.hi;
      std::vector<Rat> cuts;
      for (Rat z{ceil_int(lo)}; z < hi; z += 1)
        if (z > lo) cuts.push_back(z);
      Rat prev = lo;
      for (const Rat& c : cuts) {
        flat.push_back({prev, c, s.m});
        prev = c;
      }
      flat.push_back({prev, hi, s.m});
    }
    std::vector<Seg> chart;
    for (auto& s : flat) {
      Rat lo_m = mod1(s.lo);
      Rat shift = s.lo - lo_m;
      // g(y) for y in [0,1): original y' = y + shift
      Mobius m = s.m.compose(Mobius::shift(shift));
      chart.push_back({lo_m, s.hi - shift, m});
    }
    std::sort(chart.begin(), chart.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
    // outputs must increase across [0,1): add +1 to outputs after the wrap
    std::vector<Rat> bps;
    std::vector<Mobius> pieces;
    std::optional<Rat> prev_end;
    Rat out_shift(0);
    for (auto& s : chart) {
      Mobius m = Mobius::shift(out_shift).compose(s.m);
      Rat start = m.eval(s.lo);
      if (prev_end && start != *prev_end) {
        // the single wrap seam: outputs drop by exactly one turn
        if (start + 1 != *prev_end)
          throw ExactError("CircleMap::inverse: discontinuous chart");
        out_shift += 1;
        m = Mobius::shift(Rat(1)).compose(m);
      }
      prev_end = m.eval(s.hi);
      bps.push_back(s.lo);
      pieces.push_back(m);
    }
    return from_pieces(std::move(bps), std::move(pieces));
  }

  // Equal as circle maps. Within a common refinement both restrictions
  // are Moebius, and a Moebius map is pinned by three points.
  bool operator==(const CircleMap& o) const {
    std::vector<Rat> bps = bps_;
    bps.insert(bps.end(), o.bps_.begin(), o.bps_.end());
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    for (size_t i = 0; i < bps.size(); ++i) {
      Rat lo = bps[i];
      Rat hi = (i + 1 < bps.size()) ? bps[i + 1] : Rat(1);
      Rat step = (hi - lo) / 4;
      for (int j = 0; j < 4; ++j) {
        Rat x = lo + step * j;
        if (eval(x) != o.eval(x)) return false;
      }
    }
    return true;
  }
  bool operator!=(const CircleMap& o) const { return !(*this == o); }

  bool is_identity() const { return *this == identity(); }

  // Does f have any fixed point on the circle? Exact, via per-piece
  // quadratic sign analysis of f(x) - x - k.
  bool has_fixed_point() const {
    Rat f0 = eval_lifted01(Rat(0));
    Int klo = floor_int(f0 - Rat(1)), khi = floor_int(f0 + Rat(1));
    for (Int k = klo; k <= khi; ++k) {
      for (size_t i = 0; i < bps_.size(); ++i) {
        Rat lo = bps_[i];
        Rat hi = (i + 1 < bps_.size()) ? bps_[i + 1] : Rat(1);
        if (piece_has_root(pieces_[i], Rat(k), lo, hi)) return true;
      }
    }
    return false;
  }

  // Sign of the relative displacement f(y) - y - (f(x) - x) for y
  // immediately on one side of x: +1 if nearby points on that side move
  // counterclockwise past their start relative to x's displacement,
  // -1 if clockwise, 0 if the piece is a translation there. Exact: the
  // relative displacement is a per-piece quadratic with a root at x, so
  // its non-x root is rational and the sample avoids it.
  int side_displacement(const Rat& x0, bool left) const {
    Rat x = mod1(x0);
    size_t i;
    Rat lo, hi, xeval = x;
    if (left) {
      if (x == 0) { xeval = Rat(1); }
      i = piece_at_left(xeval);
      lo = bps_[i];
      hi = xeval;
    } else {
      i = piece_at(x);
      lo = xeval;
      hi = (i + 1 < bps_.size()) ? bps_[i + 1] : Rat(1);
    }
    const Mobius& m = pieces_[i];
    Rat k = m.eval(xeval) - xeval;
    // q(y) = (a y + b) - (y + k)(c y + d), root at y = xeval, sign of
    // q = sign of relative displacement (denominator positive per canon)
    Rat A = -m.c;
    Rat B = m.a - m.d - k * m.c;
    Rat C = m.b - k * m.d;
    auto q = [&](const Rat& y) -> Rat { return A * y * y + B * y + C; };
    Rat bound = left ? lo : hi;
    if (A != 0) {
      Rat other = (-B / A) - xeval;  // Vieta: sum of roots
      if ((left && other > bound && other < xeval) ||
          (!left && other > xeval && other < bound))
        bound = other;
    } else if (B != 0) {
      // linear with root at xeval only
    } else {
      return 0;  // translation piece: constant displacement
    }
    Rat sample = (bound + xeval) / 2;
    Rat v = q(sample);
    if (v == 0) return 0;
    return v > 0 ? 1 : -1;
  }

  std::vector<Rat> rational_fixed_points_among(const std::vector<Rat>& candidates) const {
    std::vector<Rat> out;
    for (const Rat& c : candidates)
      if (fixes(c)) out.push_back(c);
    return out;
  }

 private:
  size_t piece_at(const Rat& x) const {
    size_t lo = 0, hi = bps_.size();
    while (lo + 1 < hi) {
      size_t mid = (lo + hi) / 2;
      if (bps_[mid] <= x) lo = mid;
      else hi = mid;
    }
    return lo;
  }

  static bool piece_has_root(const Mobius& m, const Rat& k, const Rat& lo, const Rat& hi) {
    // (a x + b)/(c x + d) = x + k  =>  q(x) = c x^2 + (d + k c - a) x + (k d - b) = 0
    Rat A = m.c;
    Rat B = m.d + k * m.c - m.a;
    Rat C = k * m.d - m.b;
    auto q = [&](const Rat& x) -> Rat { return A * x * x + B * x + C; };
    Rat qlo = q(lo), qhi = q(hi);
    if (qlo == 0 || qhi == 0) return true;
    if ((qlo < 0) != (qhi < 0)) return true;
    if (A == 0) return false;
    Rat vx = -B / (2 * A);
    if (vx <= lo || vx >= hi) return false;
    Rat qv = q(vx);
    if (qv == 0) return true;
    return (qv < 0) != (qlo < 0);
  }

  size_t piece_at_left(const Rat& x) const {
    // piece whose closed right end is x
    for (size_t i = 0; i < bps_.size(); ++i) {
      Rat hi = (i + 1 < bps_.size()) ? bps_[i + 1] : Rat(1);
      if (bps_[i] < x && x <= hi) return i;
    }
    return bps_.size() - 1;
  }

  void validate() const {
    if (bps_.empty() || bps_[0] != 0)
      throw ExactError("CircleMap: first breakpoint must be 0");
    for (size_t i = 0; i + 1 < bps_.size(); ++i)
      if (!(bps_[i] < bps_[i + 1]))
        throw ExactError("CircleMap: breakpoints not increasing");
    if (bps_.back() >= 1) throw ExactError("CircleMap: breakpoints exceed [0,1)");
    Rat f0 = pieces_[0].eval(Rat(0));
    Rat prev = f0;
    for (size_t i = 0; i < bps_.size(); ++i) {
      Rat lo = bps_[i];
      Rat hi = (i + 1 < bps_.size()) ? bps_[i + 1] : Rat(1);
      // no pole inside, increasing
      const Mobius& m = pieces_[i];
      if (m.c != 0) {
        Rat pole = -m.d / m.c;
        if (pole >= lo && pole <= hi)
          throw ExactError("CircleMap: pole inside piece");
      }
      if (m.det() <= 0) throw ExactError("CircleMap: decreasing piece");
      Rat vlo = m.eval(lo), vhi = m.eval(hi);
      if (!(vlo < vhi)) throw ExactError("CircleMap: piece not increasing");
      if (vlo != prev) throw ExactError("CircleMap: discontinuity");
      prev = vhi;
    }
    if (prev != f0 + 1) throw ExactError("CircleMap: image does not span one turn");
  }

  void canonicalize() {
    for (size_t i = 0; i < pieces_.size(); ++i) {
      Rat lo = bps_[i];
      Rat hi = (i + 1 < bps_.size()) ? bps_[i + 1] : Rat(1);
      pieces_[i].canon((lo + hi) / 2);
    }
    // merge adjacent pieces with identical maps
    std::vector<Rat> bps{bps_[0]};
    std::vector<Mobius> ps{pieces_[0]};
    for (size_t i = 1; i < pieces_.size(); ++i) {
      if (pieces_[i].same_as(ps.back())) continue;
      bps.push_back(bps_[i]);
      ps.push_back(pieces_[i]);
    }
    bps_ = std::move(bps);
    pieces_ = std::move(ps);
  }

  std::vector<Rat> bps_;
  std::vector<Mobius> pieces_;
};

}  // namespace bfp

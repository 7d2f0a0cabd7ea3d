#pragma once

// Ideal-circle positions. Every model describes its circle by exact
// positions with a decidable total "cut order" (the circle cut at a
// fixed basepoint); the cyclic betweenness relation is derived from it.
//
// Three position families:
//   - CirclePos: rational angle in [0,1), used by synthetic chord models;
//   - AffinePos: (slot, key) of the trivial-plane circle: four leaf-end
//     arcs separated by four special corner points, keys in Q(t,s);
//   - SkewPos: the two boundary lines of the diagonal strip (lifted-line
//     coordinates: winding + projective value) plus the two strip ends.

#include <variant>

#include "exact.hpp"

namespace bfp {

// slots, counterclockwise. Even slots are arcs, odd slots are single
// special points (the corner key is unused).
struct AffinePos {
  int slot = 0;       // 0:E-arc 1:NE 2:N-arc 3:NW 4:W-arc 5:SW 6:S-arc 7:SE
  FieldVal key;       // pre-oriented: ccw-increasing within the arc
};

struct SkewPos {
  int slot = 0;       // 0: W end, 1: lower line, 2: E end, 3: upper line
  int wind = 0;       // lifted-line winding (slots 1 and 3)
  bool inf = false;   // projective infinity marker within a winding
  QuadVal proj;       // finite projective coordinate
};

class Position {
 public:
  Position() : v_(Rat(0)) {}
  explicit Position(Rat angle) : v_(std::move(angle)) {}
  explicit Position(AffinePos p) : v_(std::move(p)) {}
  explicit Position(SkewPos p) : v_(std::move(p)) {}

  static Position circle(Rat angle) { return Position(mod1(std::move(angle))); }

  bool is_circle() const { return std::holds_alternative<Rat>(v_); }
  const Rat& angle() const { return std::get<Rat>(v_); }
  const AffinePos& affine() const { return std::get<AffinePos>(v_); }
  const SkewPos& skew() const { return std::get<SkewPos>(v_); }

  // Total order: the circle cut at a model-fixed basepoint.
  int cmp(const Position& o) const {
    if (v_.index() != o.v_.index())
      throw ExactError("Position: mixed model families");
    switch (v_.index()) {
      case 0: {
        const Rat &a = std::get<Rat>(v_), &b = std::get<Rat>(o.v_);
        return a < b ? -1 : (a == b ? 0 : 1);
      }
      case 1: {
        const AffinePos &a = std::get<AffinePos>(v_), &b = std::get<AffinePos>(o.v_);
        if (a.slot != b.slot) return a.slot < b.slot ? -1 : 1;
        if (a.slot % 2 == 1) return 0;  // corner slots are single points
        return FieldVal::cmp(a.key, b.key);
      }
      default: {
        const SkewPos &a = std::get<SkewPos>(v_), &b = std::get<SkewPos>(o.v_);
        if (a.slot != b.slot) return a.slot < b.slot ? -1 : 1;
        if (a.slot == 0 || a.slot == 2) return 0;
        int c = cmp_line(a, b);
        return a.slot == 1 ? c : -c;  // upper line runs clockwise in u
      }
    }
  }

  bool operator<(const Position& o) const { return cmp(o) < 0; }
  bool operator==(const Position& o) const { return cmp(o) == 0; }
  bool operator!=(const Position& o) const { return cmp(o) != 0; }

  // Rendering helper only; never used in order decisions.
  double angle_approx() const {
    switch (v_.index()) {
      case 0: return std::get<Rat>(v_).get_d();
      case 1: {
        const AffinePos& a = std::get<AffinePos>(v_);
        double base = a.slot / 8.0;
        if (a.slot % 2 == 1) return base;
        double k = approx_field(a.key);
        return base + squash(k) / 8.0;
      }
      default: {
        const SkewPos& a = std::get<SkewPos>(v_);
        double base = a.slot / 4.0;
        if (a.slot == 0 || a.slot == 2) return base;
        double u = a.wind + (a.inf ? 1.0 : 0.5 + std::atan(a.proj.approx()) / M_PI);
        double t = squash(u);
        return base + (a.slot == 1 ? t : 1.0 - t) / 4.0;
      }
    }
  }

  std::string str() const {
    switch (v_.index()) {
      case 0: return std::get<Rat>(v_).get_str();
      case 1: {
        const AffinePos& a = std::get<AffinePos>(v_);
        static const char* names[8] = {"E", "NE", "N", "NW", "W", "SW", "S", "SE"};
        std::string out = names[a.slot];
        if (a.slot % 2 == 0) out += "@" + a.key.str();
        return out;
      }
      default: {
        const SkewPos& a = std::get<SkewPos>(v_);
        static const char* names[4] = {"endW", "low", "endE", "up"};
        std::string out = names[a.slot];
        if (a.slot == 1 || a.slot == 3)
          out += "@" + std::to_string(a.wind) + (a.inf ? "+inf" : "+" + a.proj.str());
        return out;
      }
    }
  }

 private:
  static int cmp_line(const SkewPos& a, const SkewPos& b) {
    if (a.wind != b.wind) return a.wind < b.wind ? -1 : 1;
    if (a.inf != b.inf) return a.inf ? 1 : -1;  // infinity tops a winding
    if (a.inf) return 0;
    return QuadVal::cmp(a.proj, b.proj);
  }
  static double squash(double x) { return 0.5 + 0.5 * x / (1.0 + std::fabs(x)); }
  static double approx_field(const FieldVal& f) {
    // numeric stand-in t=8, s=3 for pictures
    auto ev = [](const LaurentPoly& p) {
      double acc = 0;
      for (auto& [k, c] : p.terms())
        acc += mpz_get_d(c.get_mpz_t()) * std::pow(8.0, k.first) * std::pow(3.0, k.second);
      return acc;
    };
    double d = ev(f.den());
    return d == 0 ? 0.0 : ev(f.num()) / d;
  }

  std::variant<Rat, AffinePos, SkewPos> v_;
};

// b strictly inside the counterclockwise arc (a, c), in cut order.
inline bool between(const Position& a, const Position& b, const Position& c) {
  int ac = a.cmp(c);
  if (ac == 0) return false;
  int ab = a.cmp(b), bc = b.cmp(c);
  if (ac < 0) return ab < 0 && bc < 0;
  return ab < 0 || bc < 0;
}

}  // namespace bfp

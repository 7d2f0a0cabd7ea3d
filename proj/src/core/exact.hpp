#pragma once

// Exact scalar types used throughout: arbitrary-precision rationals,
// Laurent-polynomial fractions in two ordered indeterminates, and real
// quadratic irrationals. No floating point is ever used in an order
// decision.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bfp {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_str(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

inline Int floor_int(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}
inline Int ceil_int(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

// Position on the unit circle: a rational in [0,1).
inline Rat mod1(Rat x) {
  Int q;
  // floor(num/den)
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  x -= Rat(q);
  return x;
}

// True if b lies strictly inside the counterclockwise arc from a to c.
// All three in [0,1). Degenerate coincidences return false.
inline bool ccw_between(const Rat& a, const Rat& b, const Rat& c) {
  if (a == c) return false;
  if (a < c) return a < b && b < c;
  return b > a || b < c;  // arc wraps through 0
}

struct ExactError : std::runtime_error {
  explicit ExactError(const std::string& m) : std::runtime_error(m) {}
};

// ---------------------------------------------------------------------------
// Laurent polynomials in (t, s) with integer coefficients.
// Exponent pairs may be negative. Zero = empty map.

class LaurentPoly {
 public:
  using Key = std::pair<long, long>;  // (deg_t, deg_s)

  LaurentPoly() = default;
  explicit LaurentPoly(long c) {
    if (c != 0) coeff_[{0, 0}] = Int(c);
  }
  explicit LaurentPoly(const Int& c) {
    if (c != 0) coeff_[{0, 0}] = c;
  }

  static LaurentPoly monomial(const Int& c, long dt, long ds) {
    LaurentPoly p;
    if (c != 0) p.coeff_[{dt, ds}] = c;
    return p;
  }

  bool is_zero() const { return coeff_.empty(); }

  bool operator==(const LaurentPoly& o) const { return coeff_ == o.coeff_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (auto& [k, v] : o.coeff_) {
      Int& c = r.coeff_[k];
      c += v;
      if (c == 0) r.coeff_.erase(k);
    }
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [k, v] : r.coeff_) v = -v;
    return r;
  }
  LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (auto& [ka, va] : coeff_)
      for (auto& [kb, vb] : o.coeff_) {
        Key k{ka.first + kb.first, ka.second + kb.second};
        Int& c = r.coeff_[k];
        c += va * vb;
        if (c == 0) r.coeff_.erase(k);
      }
    return r;
  }

  // Multiply by the monomial t^dt s^ds.
  LaurentPoly shifted(long dt, long ds) const {
    LaurentPoly r;
    for (auto& [k, v] : coeff_) r.coeff_[{k.first + dt, k.second + ds}] = v;
    return r;
  }

  // Sign in the ordered field where t and s are positive, t is
  // infinitely large relative to s, and s relative to Q: the sign of
  // the coefficient of the lexicographically largest (deg_t, deg_s).
  int sign() const {
    if (coeff_.empty()) return 0;
    auto it = coeff_.rbegin();  // map ordered by Key; rbegin = lex-max
    return sgn(it->second) > 0 ? 1 : -1;
  }

  const std::map<Key, Int>& terms() const { return coeff_; }

  std::string str() const {
    if (coeff_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) {
      const Int& c = it->second;
      if (!first) out += (c > 0) ? "+" : "";
      out += c.get_str();
      if (it->first.first != 0) out += "*t^" + std::to_string(it->first.first);
      if (it->first.second != 0) out += "*s^" + std::to_string(it->first.second);
      first = false;
    }
    return out;
  }

  bool operator<(const LaurentPoly& o) const { return coeff_ < o.coeff_; }

 private:
  std::map<Key, Int> coeff_;
};

// ---------------------------------------------------------------------------
// Elements of the fraction field Q(t,s), ordered via LaurentPoly::sign.
// Kept as num/den with den of positive sign; reduced only by integer
// content (full polynomial gcd is unnecessary at these sizes since
// comparisons cross-multiply).

class FieldVal {
 public:
  FieldVal() : num_(), den_(1) {}
  explicit FieldVal(long c) : num_(c), den_(1) {}
  FieldVal(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw ExactError("FieldVal: zero denominator");
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }
  static FieldVal from_poly(LaurentPoly p) { return FieldVal(std::move(p), LaurentPoly(1)); }
  static FieldVal t() { return from_poly(LaurentPoly::monomial(1, 1, 0)); }
  static FieldVal s() { return from_poly(LaurentPoly::monomial(1, 0, 1)); }

  bool is_zero() const { return num_.is_zero(); }

  FieldVal operator+(const FieldVal& o) const {
    return FieldVal(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  FieldVal operator-(const FieldVal& o) const {
    return FieldVal(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  FieldVal operator*(const FieldVal& o) const {
    return FieldVal(num_ * o.num_, den_ * o.den_);
  }
  FieldVal operator/(const FieldVal& o) const {
    if (o.is_zero()) throw ExactError("FieldVal: division by zero");
    return FieldVal(num_ * o.den_, den_ * o.num_);
  }
  FieldVal operator-() const { return FieldVal(-num_, den_); }

  int sign() const { return num_.sign(); }

  bool operator==(const FieldVal& o) const { return (*this - o).is_zero(); }
  bool operator!=(const FieldVal& o) const { return !(*this == o); }
  bool operator<(const FieldVal& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const FieldVal& o) const { return !(o < *this); }
  bool operator>(const FieldVal& o) const { return o < *this; }
  bool operator>=(const FieldVal& o) const { return !(*this < o); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  std::string str() const {
    if (den_ == LaurentPoly(1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

  // Deterministic structural key for interning. Two equal values may have
  // different keys (unreduced fractions), so interning must use cmp_eq.
  static int cmp(const FieldVal& a, const FieldVal& b) {
    FieldVal d = a - b;
    return d.sign();
  }

 private:
  LaurentPoly num_, den_;
};

// ---------------------------------------------------------------------------
// Real quadratic values (p + q*sqrt(d)) / r with integer p, q, r; d >= 0
// square-free not required (d = 0 or q = 0 encodes a rational). r > 0.
// Exact comparison across different radicands.

class QuadVal {
 public:
  QuadVal() : p_(0), q_(0), d_(0), r_(1) {}
  QuadVal(Int p, Int q, Int d, Int r) : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
    if (r_ == 0) throw ExactError("QuadVal: zero denominator");
    if (d_ < 0) throw ExactError("QuadVal: negative radicand");
    if (r_ < 0) {
      p_ = -p_;
      q_ = -q_;
      r_ = -r_;
    }
    normalize();
  }
  static QuadVal rational(const Rat& x) {
    return QuadVal(x.get_num(), 0, 0, x.get_den());
  }
  static QuadVal root(const Int& d) { return QuadVal(0, 1, d, 1); }

  bool is_rational() const { return q_ == 0 || d_ == 0; }
  Rat as_rational() const {
    if (!is_rational()) throw ExactError("QuadVal: not rational");
    Rat x(p_, r_);
    x.canonicalize();
    return x;
  }

  QuadVal operator+(const QuadVal& o) const {
    require_compatible(o);
    Int d = q_ == 0 ? o.d_ : d_;
    return QuadVal(p_ * o.r_ + o.p_ * r_, q_ * o.r_ + o.q_ * r_, d, r_ * o.r_);
  }
  QuadVal operator-(const QuadVal& o) const { return *this + (-o); }
  QuadVal operator-() const { return QuadVal(-p_, -q_, d_, r_); }
  QuadVal operator*(const QuadVal& o) const {
    require_compatible(o);
    Int d = q_ == 0 ? o.d_ : d_;
    // (p1 + q1 v)(p2 + q2 v) = p1 p2 + q1 q2 d + (p1 q2 + p2 q1) v
    return QuadVal(p_ * o.p_ + q_ * o.q_ * d, p_ * o.q_ + o.p_ * q_, d, r_ * o.r_);
  }
  QuadVal operator/(const QuadVal& o) const {
    require_compatible(o);
    // 1/((p + q v)/r) = r (p - q v) / (p^2 - q^2 d)
    Int d = q_ == 0 ? o.d_ : d_;
    Int nrm = o.p_ * o.p_ - o.q_ * o.q_ * d;
    if (nrm == 0) throw ExactError("QuadVal: division by zero");
    QuadVal inv(o.r_ * o.p_, -o.r_ * o.q_, d, nrm);
    return *this * inv;
  }

  // sign of p + q*sqrt(d) (r > 0 already)
  int sign() const {
    if (q_ == 0) return sgn(p_);
    if (p_ == 0) return sgn(q_) * (d_ > 0 ? 1 : 0);
    int sp = sgn(p_), sq = sgn(q_);
    if (sp == sq) return sp;
    // compare p^2 with q^2 d; sign decided by the larger magnitude side
    Int lhs = p_ * p_, rhs = q_ * q_ * d_;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sp : sq;
  }

  bool operator==(const QuadVal& o) const { return cmp(*this, o) == 0; }
  bool operator!=(const QuadVal& o) const { return cmp(*this, o) != 0; }
  bool operator<(const QuadVal& o) const { return cmp(*this, o) < 0; }
  bool operator>(const QuadVal& o) const { return cmp(*this, o) > 0; }
  bool operator<=(const QuadVal& o) const { return cmp(*this, o) <= 0; }
  bool operator>=(const QuadVal& o) const { return cmp(*this, o) >= 0; }

  // Sign of a - b, exact, radicands may differ:
  // a - b = (A + B sqrt(d1) + C sqrt(d2)) / (positive)
  static int cmp(const QuadVal& a, const QuadVal& b) {
    Int A = a.p_ * b.r_ - b.p_ * a.r_;
    Int B = a.q_ * b.r_;
    Int C = -b.q_ * a.r_;
    return sign_three_term(A, B, a.d_, C, b.d_);
  }

  double approx() const {
    double v = mpz_get_d(p_.get_mpz_t());
    if (q_ != 0) v += mpz_get_d(q_.get_mpz_t()) * std::sqrt(mpz_get_d(d_.get_mpz_t()));
    return v / mpz_get_d(r_.get_mpz_t());
  }

  std::string str() const {
    std::string out = "(" + p_.get_str();
    if (q_ != 0) out += (q_ > 0 ? "+" : "") + q_.get_str() + "*sqrt(" + d_.get_str() + ")";
    out += ")/" + r_.get_str();
    return out;
  }

  const Int& p() const { return p_; }
  const Int& q() const { return q_; }
  const Int& d() const { return d_; }
  const Int& r() const { return r_; }

 private:
  void normalize() {
    if (q_ == 0) d_ = 0;
    if (d_ == 0) q_ = 0;
    // perfect-square radicand folds into the rational part
    if (d_ > 0) {
      Int rt;
      mpz_sqrt(rt.get_mpz_t(), d_.get_mpz_t());
      if (rt * rt == d_) {
        p_ += q_ * rt;
        q_ = 0;
        d_ = 0;
      }
    }
    Int g = gcd3(p_, q_, r_);
    if (g > 1) {
      p_ /= g;
      q_ /= g;
      r_ /= g;
    }
  }

  static Int gcd3(const Int& a, const Int& b, const Int& c) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g == 0 ? Int(1) : g;
  }

  void require_compatible(const QuadVal& o) const {
    if (q_ != 0 && o.q_ != 0 && d_ != o.d_)
      throw ExactError("QuadVal arithmetic across different radicands");
  }

  // sign of A + B sqrt(d1) + C sqrt(d2) with d1, d2 >= 0
  static int sign_three_term(const Int& A, const Int& B, const Int& d1,
                             const Int& C, const Int& d2) {
    // S := B sqrt(d1) + C sqrt(d2)
    auto sqrt_sign = [](const Int& coef, const Int& rad) {
      return rad == 0 ? 0 : sgn(coef);
    };
    int sB = sqrt_sign(B, d1), sC = sqrt_sign(C, d2);
    int sS;
    if (sB == 0) sS = sC;
    else if (sC == 0) sS = sB;
    else if (sB == sC) sS = sB;
    else {
      Int lhs = B * B * d1, rhs = C * C * d2;
      sS = (lhs == rhs) ? 0 : ((lhs > rhs) ? sB : sC);
    }
    int sA = sgn(A);
    if (sS == 0) return sA;
    if (sA == 0) return sS;
    if (sA == sS) return sA;
    // compare A^2 with S^2 = B^2 d1 + C^2 d2 + 2 B C sqrt(d1 d2)
    Int U = A * A - B * B * d1 - C * C * d2;
    Int V = 2 * B * C;  // coefficient of sqrt(d1 d2)
    // sign of U - V sqrt(d1 d2) decides |A| vs |S|: A^2 - S^2 = U - V sqrt(..)
    Int d12 = d1 * d2;
    int sdiff;
    int sU = sgn(U);
    int sV = (d12 == 0) ? 0 : sgn(V);
    if (sV == 0) sdiff = sU;
    else if (sU == 0) sdiff = -sV;
    else if (sU != sV) sdiff = sU;
    else {
      Int l = U * U, r = V * V * d12;
      sdiff = (l == r) ? 0 : ((l > r) ? sU : -sV);
    }
    if (sdiff == 0) return 0;        // |A| = |S|, opposite signs
    return (sdiff > 0) ? sA : sS;    // larger magnitude wins
  }

  Int p_, q_, d_, r_;
};

}  // namespace bfp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../src/core/circlemap.hpp"
#include "../src/core/exact.hpp"

using namespace bfp;

TEST_CASE("rational circle positions") {
  CHECK(mod1(rat(7, 3)) == rat(1, 3));
  CHECK(mod1(rat(-1, 4)) == rat(3, 4));
  CHECK(ccw_between(rat(1, 8), rat(1, 4), rat(1, 2)));
  CHECK(ccw_between(rat(3, 4), rat(7, 8), rat(1, 8)));
  CHECK(ccw_between(rat(3, 4), rat(0), rat(1, 8)));
  CHECK(!ccw_between(rat(1, 8), rat(3, 4), rat(1, 2)));
  CHECK(!ccw_between(rat(1, 8), rat(1, 8), rat(1, 2)));
}

TEST_CASE("laurent order: t dominates s dominates constants") {
  FieldVal t = FieldVal::t(), s = FieldVal::s(), one(1);
  CHECK(t > one);
  CHECK(s > one);
  CHECK(t > s);
  CHECK(t > s * s * s);
  CHECK(s * s > s);
  CHECK(t * s > t);
  CHECK(one / t > FieldVal(0));
  CHECK(one / t < one);
  CHECK(one / s < one);
  CHECK(one / t < one / s);
  // lambda^m mu^n = 1 iff (m,n) = (0,0)
  CHECK(t * s != one);
  CHECK((t * s) / (s * t) == one);
  FieldVal x = (t * t - s) / (t + one);
  FieldVal y = (t * t - s) / (t + one);
  CHECK(x == y);
  CHECK(x > FieldVal(0));
}

TEST_CASE("field arithmetic solves fixed-point equations") {
  // x = lambda x + 1  =>  x = -1/(lambda - 1)
  FieldVal t = FieldVal::t(), one(1);
  FieldVal x = (-one) / (t - one);
  CHECK(t * x + one == x);
  CHECK(x < FieldVal(0));
}

TEST_CASE("quadratic values compare exactly") {
  QuadVal r2 = QuadVal::root(2);
  QuadVal r3 = QuadVal::root(3);
  CHECK(r2 < r3);
  CHECK(r2 > QuadVal::rational(rat(7, 5)));
  CHECK(r2 < QuadVal::rational(rat(3, 2)));
  QuadVal golden(Int(1), Int(1), Int(5), Int(2));  // (1+sqrt5)/2
  CHECK(golden * golden == golden + QuadVal::rational(rat(1)));
  CHECK(golden > QuadVal::rational(rat(8, 5)));
  CHECK(golden < QuadVal::rational(rat(13, 8)));
  // cross-radicand: sqrt2 + sqrt3 vs sqrt(10)
  QuadVal sum = r2 + QuadVal::rational(rat(0));
  CHECK(QuadVal::cmp(r2, r3) < 0);
  QuadVal half_plus = QuadVal(Int(1), Int(2), Int(2), Int(1));  // 1 + 2 sqrt2
  CHECK(half_plus > QuadVal::rational(rat(38, 10)));
  CHECK(half_plus < QuadVal::rational(rat(39, 10)));
  // perfect squares collapse to rationals
  CHECK(QuadVal::root(9).is_rational());
  CHECK(QuadVal::root(9).as_rational() == rat(3));
  CHECK(sum == r2);
}

TEST_CASE("circle map basics") {
  CircleMap id = CircleMap::identity();
  CHECK(id.eval(rat(1, 3)) == rat(1, 3));
  CircleMap rot = CircleMap::rotation(rat(1, 4));
  CHECK(rot.eval(rat(7, 8)) == rat(1, 8));
  CHECK(rot.compose(rot).compose(rot).compose(rot).is_identity());
  CHECK(rot.inverse().eval(rat(0)) == rat(3, 4));
  CHECK(!rot.has_fixed_point());
  CHECK(rot.compose(rot.inverse()).is_identity());
}

TEST_CASE("pl interpolation and dynamics") {
  // fixed points at 0 and 1/2; pushes (0,1/2) toward 1/2, (1/2,1) toward 1
  CircleMap f = CircleMap::pl_interpolate({{rat(0), rat(0)},
                                           {rat(1, 4), rat(3, 8)},
                                           {rat(1, 2), rat(1, 2)},
                                           {rat(3, 4), rat(7, 8)}});
  CHECK(f.fixes(rat(0)));
  CHECK(f.fixes(rat(1, 2)));
  CHECK(!f.fixes(rat(1, 4)));
  CHECK(f.eval(rat(1, 4)) == rat(3, 8));
  CHECK(f.has_fixed_point());
  // 0 repels on the right, 1/2 attracts from the left
  CHECK(f.side_displacement(rat(0), false) == 1);
  CHECK(f.side_displacement(rat(1, 2), true) == 1);
  CHECK(f.side_displacement(rat(1, 2), false) == 1);
  CHECK(f.side_displacement(rat(0), true) == 1);
  CircleMap g = f.inverse();
  CHECK(g.fixes(rat(0)));
  CHECK(g.eval(rat(3, 8)) == rat(1, 4));
  CHECK(f.compose(g).is_identity());
  CHECK(g.compose(f).is_identity());
  // composition against itself stays exact
  CircleMap f2 = f.compose(f);
  CHECK(f2.eval(rat(1, 4)) == f.eval(rat(3, 8)));
}

TEST_CASE("moebius pieces compose exactly") {
  // conjugate a rotation by a moebius reparametrization of an arc
  CircleMap rot = CircleMap::rotation(rat(1, 3));
  CircleMap a = rot.compose(rot.inverse());
  CHECK(a.is_identity());
  CircleMap f = CircleMap::pl_interpolate({{rat(0), rat(1, 8)}, {rat(1, 2), rat(5, 8)}});
  CircleMap h = f.compose(f.inverse());
  CHECK(h.is_identity());
}

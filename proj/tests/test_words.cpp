#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../src/core/words.hpp"

using namespace bfp;

TEST_CASE("free reduction") {
  CHECK(free_reduce({1, -1}) == Letters{});
  CHECK(free_reduce({1, 2, -2, -1}) == Letters{});
  CHECK(free_reduce({1, 2, -2, 1}) == Letters{1, 1});
  CHECK(inverse({1, 2}) == Letters{-2, -1});
  CHECK(concat({1, 2}, {-2, 1}) == Letters{1, 1});
  CHECK(power({1}, 3) == Letters{1, 1, 1});
  CHECK(power({1}, -2) == Letters{-1, -1});
}

TEST_CASE("cyclic reduction") {
  auto [u, v] = cyclic_reduce({1, 2, 3, -2, -1});
  CHECK(u == Letters{1, 2});
  CHECK(v == Letters{3});
  auto [u2, v2] = cyclic_reduce({1, 2});
  CHECK(u2.empty());
  CHECK(v2 == Letters({1, 2}));
}

TEST_CASE("free rank-2 enumeration counts") {
  Rewriter rw;
  CHECK(enumerate_words(2, 0, rw).size() == 1);
  CHECK(enumerate_words(2, 1, rw).size() == 5);
  CHECK(enumerate_words(2, 2, rw).size() == 17);
  // 1 + 4 + 12 + 36
  CHECK(enumerate_words(2, 3, rw).size() == 53);
}

TEST_CASE("enumeration is deterministic and budget-capped") {
  Rewriter rw;
  auto a = enumerate_words(2, 3, rw);
  auto b = enumerate_words(2, 3, rw);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].letters == b[i].letters);
  CHECK_THROWS_AS((void)enumerate_words(3, 9, rw, 1000), Error);
}

TEST_CASE("commuting rewriter gives canonical interleavings") {
  CommutingRewriter rw(std::set<std::pair<int, int>>{{1, 2}});
  CHECK(rw.normalize({2, 1}) == Letters({1, 2}));
  CHECK(rw.normalize({2, 1, -2}) == Letters({1}));
  CHECK(rw.normalize({-2, 1, 2}) == Letters({1}));
  // non-commuting letters keep their order
  CommutingRewriter rw2({});
  CHECK(rw2.normalize({2, 1}) == Letters({2, 1}));
  // mixed alphabet: commuting pair sorts, third generator blocks
  CommutingRewriter rw3(std::set<std::pair<int, int>>{{1, 2}});
  CHECK(rw3.normalize({2, 3, 1}) == Letters({2, 3, 1}));
  CHECK(rw3.normalize({2, 1, 3}) == Letters({1, 2, 3}));
  // enumeration merges equal elements: Z^2 ball counts
  auto words = enumerate_words(2, 2, rw3);
  // |{a^i b^j : |i|+|j| <= 2}| = 13
  CHECK(words.size() == 13);
}

TEST_CASE("word rendering round-trips") {
  std::vector<Generator> gens = {{"a", "A"}, {"b", "B"}};
  Letters w = {1, -2, 1};
  std::string s = word_str(gens, w);
  CHECK(s == "a B a");
  CHECK(parse_word(gens, s) == w);
  CHECK(parse_word(gens, "").empty());
}

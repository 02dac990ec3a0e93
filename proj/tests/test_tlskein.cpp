#include "doctest.h"
#include "skein/braid.hpp"
#include "skein/error.hpp"
#include "skein/tlskein.hpp"
#include "support/testkit.hpp"

using namespace skein;

namespace {
const LaurentPoly A = LaurentPoly::var(1);
const LaurentPoly Ai = LaurentPoly::var(-1);
const LaurentPoly& delta = loop_value();
Matching M(std::vector<std::pair<int, int>> p) { return Matching::from_pairs(p); }
SkeinVector V(std::vector<std::pair<int, int>> p) { return SkeinVector(M(std::move(p))); }
SkeinVector e(int n, int i) { return SkeinVector(rect_generator(n, i)); }
}  // namespace

TEST_CASE("enumerate_basis") {
  auto b0 = enumerate_basis(0);
  REQUIRE(b0.size() == 1);
  CHECK(b0[0].n() == 0);
  CHECK(b0[0].to_string() == "{}");
  auto b2 = enumerate_basis(2);
  REQUIRE(b2.size() == 2);
  CHECK(b2[0] == M({{1, 2}, {3, 4}}));
  CHECK(b2[1] == M({{1, 4}, {2, 3}}));
  CHECK(enumerate_basis(3).size() == 5);
  CHECK(enumerate_basis(4).size() == 14);
  auto b4 = enumerate_basis(4);
  CHECK(std::is_sorted(b4.begin(), b4.end()));
  CHECK(std::adjacent_find(b4.begin(), b4.end()) == b4.end());
}

TEST_CASE("Matching validation") {
  CHECK_THROWS_AS(M({{1, 3}, {2, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(Matching(std::vector<int>{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Matching(std::vector<int>{1}), std::invalid_argument);
  CHECK(M({{3, 4}, {1, 2}}) == M({{1, 2}, {3, 4}}));
  CHECK(M({{1, 4}, {2, 3}}).partner(2) == 3);
  CHECK(is_noncrossing_matching({3, 2, 1, 0}));
  CHECK_FALSE(is_noncrossing_matching({2, 3, 0, 1}));
}

TEST_CASE("reduce") {
  auto m = M({{1, 6}, {2, 5}, {3, 4}});
  CHECK(reduce(matching_diagram(m)) == SkeinVector(m));
  auto s1 = braid_to_tangle(parse_braid("s1", 2));
  CHECK(reduce(s1) == A * V({{1, 4}, {2, 3}}) + Ai * V({{1, 2}, {3, 4}}));
  CHECK(reduce(disjoint_union(matching_diagram(m), parse_tangle("loops 1"))) == delta * SkeinVector(m));
  CHECK(reduce(parse_tangle("endpoints 0")) == SkeinVector(Matching()));
}

TEST_CASE("reduce agrees with the bracket after closing up") {
  // Closing a tangle with a matching gives the bracket; reduce then pair must match.
  std::mt19937_64 rng(8);
  for (int k = 0; k < 30; ++k) {
    int m = testkit::uniform(rng, 1, 3);
    auto w = testkit::random_word(rng, m, 6);
    CHECK(reduce(braid_to_tangle(w)) == act(w, SkeinVector(rect_identity(m))));
  }
}

TEST_CASE("cap_insert") {
  CHECK(cap_insert(Matching(), 1) == M({{1, 2}}));
  CHECK(cap_insert(M({{1, 2}}), 2) == M({{1, 4}, {2, 3}}));
  CHECK(cap_insert(M({{1, 2}}), 1) == M({{1, 2}, {3, 4}}));
  CHECK(cap_insert(M({{1, 2}}), 3) == M({{1, 2}, {3, 4}}));
  CHECK_THROWS(cap_insert(M({{1, 2}}), 0));
  CHECK_THROWS(cap_insert(M({{1, 2}}), 4));
  CHECK(cap_insert(A * V({{1, 2}}), 2) == A * V({{1, 4}, {2, 3}}));
}

TEST_CASE("contract") {
  CHECK(contract(V({{1, 2}}), 1) == delta * SkeinVector(Matching()));
  CHECK(contract(V({{1, 4}, {2, 3}}), 1) == V({{1, 2}}));
  CHECK(contract(cap_insert(SkeinVector(Matching()), 1), 1) == delta * SkeinVector(Matching()));
  auto [m, loop] = contract(M({{1, 2}, {3, 4}}), 2);
  CHECK(m == M({{1, 2}}));
  CHECK_FALSE(loop);
  CHECK_THROWS(contract(V({{1, 2}}), 2));
  for (int n = 1; n <= 4; ++n)
    for (const auto& b : enumerate_basis(n - 1))
      for (int i = 1; i <= 2 * n - 1; ++i) CHECK(contract(cap_insert(SkeinVector(b), i), i) == delta * SkeinVector(b));
}

TEST_CASE("rectangle view") {
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= 2 * n; ++k) CHECK(disk_label(rect_point(k, n), n) == k);
  CHECK(disk_label({false, 1}, 3) == 1);
  CHECK(disk_label({true, 1}, 3) == 6);
  CHECK(disk_label({true, 3}, 3) == 4);
  CHECK(rect_identity(2) == M({{1, 4}, {2, 3}}));
  CHECK(rect_generator(2, 1) == M({{1, 2}, {3, 4}}));
  CHECK(rect_generator(3, 2) == M({{1, 6}, {2, 3}, {4, 5}}));
}

TEST_CASE("compose_rect examples") {
  auto v = A * e(3, 1) + LaurentPoly(2) * SkeinVector(rect_identity(3));
  CHECK(compose_rect(SkeinVector(rect_identity(3)), v) == v);
  CHECK(compose_rect(v, SkeinVector(rect_identity(3))) == v);
  CHECK(compose_rect(e(2, 1), e(2, 1)) == delta * e(2, 1));
  CHECK(compose_rect(compose_rect(e(3, 1), e(3, 2)), e(3, 1)) == e(3, 1));
  CHECK_THROWS(compose_rect(e(2, 1), e(3, 1)));
}

TEST_CASE("Temperley-Lieb relations for n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    for (int i = 1; i < n; ++i) {
      CHECK(compose_rect(e(n, i), e(n, i)) == delta * e(n, i));
      for (int j = 1; j < n; ++j) {
        if (std::abs(i - j) == 1) CHECK(compose_rect(compose_rect(e(n, i), e(n, j)), e(n, i)) == e(n, i));
        if (std::abs(i - j) >= 2) CHECK(compose_rect(e(n, i), e(n, j)) == compose_rect(e(n, j), e(n, i)));
      }
    }
  }
}

TEST_CASE("compose_rect is associative") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    int n = testkit::uniform(rng, 1, 4);
    auto x = testkit::random_vector(rng, n), y = testkit::random_vector(rng, n), z = testkit::random_vector(rng, n);
    CHECK(compose_rect(compose_rect(x, y), z) == compose_rect(x, compose_rect(y, z)));
  }
}

TEST_CASE("reduce is linear over disjoint pieces and idempotent") {
  for (int n = 0; n <= 4; ++n)
    for (const auto& b : enumerate_basis(n)) {
      auto once = reduce(matching_diagram(b));
      CHECK(once == SkeinVector(b));
      CHECK(reduce(disjoint_union(matching_diagram(b), parse_tangle("loops 2"))) == delta * delta * once);
    }
}

TEST_CASE("SkeinVector arithmetic") {
  auto x = V({{1, 2}, {3, 4}}), y = V({{1, 4}, {2, 3}});
  CHECK((x - x).is_zero());
  CHECK((A * x + y).coeff(M({{1, 2}, {3, 4}})) == A);
  CHECK((A * x + y).coeff(M({{1, 4}, {2, 3}})) == LaurentPoly(1));
  CHECK((LaurentPoly() * x).is_zero());
  SkeinVector z(2);
  z.add_term(M({{1, 2}, {3, 4}}), A);
  z.add_term(M({{1, 2}, {3, 4}}), -A);
  CHECK(z.is_zero());
}

TEST_CASE("text and JSON forms") {
  auto v = Ai * V({{1, 2}, {3, 4}}) + A * V({{1, 4}, {2, 3}});
  CHECK(v.to_string() == "A^-1 * {(1,2),(3,4)} + A * {(1,4),(2,3)}");
  CHECK((delta * V({{1, 2}})).to_string() == "(-A^2 - A^-2) * {(1,2)}");
  CHECK(V({{1, 2}}).to_string() == "1 * {(1,2)}");
  CHECK(SkeinVector(2).to_string() == "0");
  CHECK(SkeinVector::parse("0", 2) == SkeinVector(2));
  CHECK(SkeinVector::parse("{(1,2)}") == V({{1, 2}}));
  CHECK(SkeinVector::parse("{}") == SkeinVector(Matching()));
  CHECK_THROWS_AS(SkeinVector::parse("A * {(1,2)} + {(1,2),(3,4)}"), ParseError);
  CHECK_THROWS_AS(SkeinVector::parse("A * {(1,3),(2,4)}"), InputError);
  CHECK_THROWS_AS(SkeinVector::parse("Q * {(1,2)}"), ParseError);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    auto r = testkit::random_vector(rng, testkit::uniform(rng, 0, 4));
    CHECK(SkeinVector::parse(r.to_string(), r.n()) == r);
    CHECK(SkeinVector::from_json(r.to_json()) == r);
  }
  auto j = v.to_json();
  CHECK(j["n"] == 2);
  CHECK(j["terms"].size() == 2);
}

#include "doctest.h"
#include "skein/bracket.hpp"
#include "skein/error.hpp"
#include "support/testkit.hpp"

using namespace skein;

namespace {
const LaurentPoly A = LaurentPoly::var(1);
const LaurentPoly Ai = LaurentPoly::var(-1);
const LaurentPoly& delta = loop_value();
const TangleDiagram& corpus(const std::string& name) {
  for (const auto& e : testkit::corpus())
    if (e.name == name) return e.diagram;
  throw std::out_of_range(name);
}
}  // namespace

TEST_CASE("bracket small values") {
  CHECK(kauffman_bracket(parse_tangle("endpoints 0")) == LaurentPoly(1));
  CHECK(kauffman_bracket(parse_tangle("loops 1")) == delta);
  CHECK(kauffman_bracket(parse_tangle("loops 3")) == delta.pow(3));
  CHECK(kauffman_bracket(corpus("03_unknot_positive_kink")) == positive_kink_value() * delta);
  CHECK(kauffman_bracket(corpus("04_unknot_negative_kink")) == negative_kink_value() * delta);
  CHECK_THROWS_AS(kauffman_bracket(parse_tangle("endpoints 2; arc 1-2")), DiagramError);
}

TEST_CASE("corpus matches tabulated values and the oracle") {
  REQUIRE(testkit::corpus().size() == 20);
  for (const auto& e : testkit::corpus()) {
    CAPTURE(e.name);
    auto b = kauffman_bracket(e.diagram);
    CHECK(b == e.expected);
    CHECK(state_sum_oracle(e.diagram) == b);
  }
}

TEST_CASE("oracle by hand") {
  CHECK(state_sum_oracle(parse_tangle("endpoints 0")) == LaurentPoly(1));
  // two states: A delta^2 + A^-1 delta
  CHECK(state_sum_oracle(corpus("03_unknot_positive_kink")) == A * delta * delta + Ai * delta);
  CHECK(state_sum_oracle(corpus("08_hopf")) == LaurentPoly::parse("A^6 + A^2 + A^-2 + A^-6"));
  CHECK_THROWS_AS(state_sum_oracle(parse_tangle("endpoints 2; arc 1-2")), DiagramError);
  CHECK_THROWS(state_sum_oracle(corpus("13_cinquefoil"), 1, 4));
  auto d = corpus("17_borromean");
  CHECK(state_sum_oracle(d, 3) == state_sum_oracle(d, 1));
}

TEST_CASE("resolve_crossing") {
  auto [d0, dinf] = resolve_crossing(corpus("03_unknot_positive_kink"), 0);
  CHECK(d0.crossing_count() == 0);
  CHECK(d0.closed_loops() == 2);
  CHECK(dinf.crossing_count() == 0);
  CHECK(dinf.closed_loops() == 1);

  auto hopf = corpus("08_hopf");
  for (int c = 0; c < 2; ++c) {
    auto [h0, hinf] = resolve_crossing(hopf, c);
    CHECK(h0.crossing_count() == 1);
    CHECK(hinf.crossing_count() == 1);
    CHECK(kauffman_bracket(h0) == positive_kink_value() * delta);
    CHECK(kauffman_bracket(hinf) == negative_kink_value() * delta);
  }
  CHECK_THROWS_AS(resolve_crossing(hopf, 2), std::out_of_range);
  CHECK_THROWS_AS(resolve_crossing(hopf, -1), std::out_of_range);
}

TEST_CASE("skein identity at every crossing") {
  for (const auto& e : testkit::corpus()) {
    CAPTURE(e.name);
    auto b = kauffman_bracket(e.diagram);
    for (int c = 0; c < e.diagram.crossing_count(); ++c) {
      auto [d0, dinf] = resolve_crossing(e.diagram, c);
      CHECK(b == A * kauffman_bracket(d0) + Ai * kauffman_bracket(dinf));
    }
  }
}

TEST_CASE("disjoint union and mirror") {
  auto loop = parse_tangle("loops 1");
  for (const auto& e : testkit::corpus()) {
    CAPTURE(e.name);
    auto b = kauffman_bracket(e.diagram);
    CHECK(kauffman_bracket(disjoint_union(e.diagram, loop)) == delta * b);
    CHECK(kauffman_bracket(mirror(e.diagram)) == b.bar());
  }
}

TEST_CASE("Reidemeister moves") {
  auto unknot = parse_tangle("loops 1");
  auto r2 = apply_r2(unknot, R2LoopInsertion{});
  CHECK(r2.crossing_count() == 2);
  CHECK(r2.closed_loops() == 0);
  auto sites = r2_removal_sites(r2);
  REQUIRE(!sites.empty());
  CHECK(apply_r2(r2, sites.front()) == unknot);

  std::mt19937_64 rng(17);
  for (const auto& e : testkit::corpus()) {
    if (e.diagram.crossing_count() == 0) continue;
    CAPTURE(e.name);
    auto grown = testkit::random_r2(rng, e.diagram);
    CHECK(grown.crossing_count() == e.diagram.crossing_count() + 2);
    CHECK(kauffman_bracket(grown) == e.expected);
    bool undone = false;
    for (const auto& s : r2_removal_sites(grown))
      if (apply_r2(grown, s).canonical() == e.diagram.canonical()) undone = true;
    CHECK(undone);
  }

  auto tri = testkit::braid_closure(parse_braid("s1 s2 s1", 3));
  auto r3 = r3_sites(tri);
  REQUIRE(!r3.empty());
  auto moved = apply_r3(tri, r3.front());
  CHECK(moved.crossing_count() == 3);
  CHECK_FALSE(moved.canonical() == tri.canonical());
  CHECK(kauffman_bracket(moved) == kauffman_bracket(tri));
  CHECK_THROWS(apply_r3(parse_tangle("X(4,1,3,2); X(2,3,1,4)"), 0));
}

TEST_CASE("kinks scale by -A^3 and -A^-3") {
  for (const auto& e : testkit::corpus()) {
    CAPTURE(e.name);
    const auto& d = e.diagram;
    if (d.crossing_count() == 0) {
      if (d.closed_loops() == 0) continue;
      CHECK(kauffman_bracket(add_kink_on_loop(d, true)) == positive_kink_value() * e.expected);
      CHECK(kauffman_bracket(add_kink_on_loop(d, false)) == negative_kink_value() * e.expected);
      continue;
    }
    for (int label : d.edge_labels()) {
      CHECK(kauffman_bracket(add_kink(d, label, true)) == positive_kink_value() * e.expected);
      CHECK(kauffman_bracket(add_kink(d, label, false)) == negative_kink_value() * e.expected);
    }
  }
}

TEST_CASE("random diagrams agree with the oracle") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 60; ++k) {
    auto d = testkit::random_diagram(rng, 10);
    CAPTURE(d.serialize());
    CHECK(d.crossing_count() <= 10);
    CHECK(kauffman_bracket(d) == state_sum_oracle(d));
  }
}

#include <doctest.h>

#include <random>

#include "hexid/code.hpp"
#include "hexid/constraints.hpp"
#include "hexid/optimize.hpp"

using namespace hexid;

TEST_SUITE("constraints") {
  TEST_CASE("closed neighborhoods and their differences") {
    CHECK(closedNeighborhood({0, 0, 0}) == std::vector<Vertex>{{-1, 0, 1}, {0, -1, 1}, {0, 0, 0}, {0, 0, 1}});
    // Adjacent vertices: the symmetric difference drops the shared pair.
    CHECK(closedNeighborhoodDifference({0, 0, 0}, {0, 0, 1}) ==
          std::vector<Vertex>{{-1, 0, 1}, {0, -1, 1}, {0, 1, 0}, {1, 0, 0}});
    // Distance two: they share one neighbor.
    CHECK(closedNeighborhoodDifference({0, 0, 0}, {1, 0, 0}).size() == 6);
    CHECK(closedNeighborhoodDifference({0, 0, 0}, {0, 0, 0}).empty());
  }

  TEST_CASE("periodic clauses agree with verify") {
    std::mt19937_64 rng(21);
    for (const auto& L : latticeFamily(14)) {
      const auto set = periodicClauses(L);
      CHECK(set.variables == L.domainSize());
      for (const auto& cl : set.clauses) CHECK_FALSE(cl.empty());
      for (int i = 0; i < 30; ++i) {
        std::vector<std::uint8_t> bits(L.domainSize());
        for (auto& b : bits) b = rng() % 2;
        CHECK(satisfiesAll(set, bits) == isIdentifying(PeriodicCode(L, bits)));
      }
    }
  }

  TEST_CASE("propagator forces the last open literal") {
    ClauseSet set{3, {{0, 1}, {1, 2}}};
    Propagator p(set);
    const auto m0 = p.mark();
    REQUIRE(p.assign(0, Assign::Out));
    CHECK(p.value(1) == Assign::In);  // unit clause {1}
    CHECK(p.clauseSatisfied(0));
    CHECK(p.clauseSatisfied(1));
    CHECK(p.value(2) == Assign::Unknown);
    p.undoTo(m0);
    CHECK(p.value(0) == Assign::Unknown);
    CHECK(p.value(1) == Assign::Unknown);
    CHECK(p.clauseOpen(0) == 2);
    CHECK_FALSE(p.conflict());
  }

  TEST_CASE("propagator reports conflicts and recovers on undo") {
    ClauseSet set{2, {{0, 1}, {0}}};
    Propagator p(set);
    const auto m = p.mark();
    CHECK_FALSE(p.assign(0, Assign::Out));
    CHECK(p.conflict());
    p.undoTo(m);
    CHECK_FALSE(p.conflict());
    CHECK(p.assign(0, Assign::In));
    CHECK(p.occurrences(0).size() == 2);
  }
}

#include <doctest.h>

#include <random>
#include <set>

#include "hexid/cluster.hpp"
#include "hexid/error.hpp"
#include "hexid/optimize.hpp"
#include "hexid/predicates.hpp"
#include "hexid/world.hpp"
#include "oracle.hpp"

using namespace hexid;

namespace {

// A periodic code seen only through a finite window; Unknown elsewhere.
class MaskedWorld : public World {
 public:
  MaskedWorld(const PeriodicCode& code, std::vector<Vertex> region) : code_(code), region_(std::move(region)) {}
  Status at(const Vertex& v) const override {
    if (!std::binary_search(region_.begin(), region_.end(), v)) return Status::Unknown;
    return code_.contains(v) ? Status::In : Status::Out;
  }
  int rank(const Vertex& v) const override { return std::abs(v.a) + std::abs(v.b); }
  ClusterView cluster(const Vertex& x) const override { return exploreCluster(*this, x); }
  Tri sameCluster(const Vertex& x, const Vertex& y) const override {
    return exploreSameCluster(*this, x, y, region_.size() + 2);
  }

 private:
  const PeriodicCode& code_;
  std::vector<Vertex> region_;
};

// Partial knowledge must never contradict full knowledge.
void sound(const Tri& partial, const Tri& full) {
  REQUIRE_FALSE(full.isUnknown());
  if (!partial.isUnknown()) CHECK(partial.isTrue() == full.isTrue());
}

void soundRange(const CountRange& partial, const CountRange& full) {
  REQUIRE(full.lower == full.upper);
  CHECK(partial.lower <= full.lower);
  CHECK(full.upper <= partial.upper);
}

bool oracleCrowdedOne(const PeriodicCode& c, const Vertex& v) {
  for (const auto& u : oracle::nbrs(v)) {
    if (oracle::member(c, u)) continue;
    int in = 0;
    for (const auto& x : oracle::nbrs(u)) in += oracle::member(c, x);
    if (in == 3) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("world") {
  TEST_CASE("Kleene connectives") {
    const Tri t = Tri::yes(), f = Tri::no();
    const Tri u1 = Tri::unknown({1, 0, 0}, 5), u2 = Tri::unknown({2, 0, 0}, 3);
    CHECK(triAnd(t, t).isTrue());
    CHECK(triAnd(t, f).isFalse());
    CHECK(triAnd(f, u1).isFalse());
    CHECK(triOr(t, u1).isTrue());
    CHECK(triOr(f, u1).need() == Vertex{1, 0, 0});
    CHECK(triAnd(u1, u2).need() == Vertex{2, 0, 0});
    CHECK(triOr(u1, u2).rank() == 3);
    CHECK(triNot(u1).isUnknown());
    CHECK(triNot(t).isFalse());
    CHECK(Tri::of(true).definite());
    CHECK_THROWS_AS(u1.definite(), Error);
    CHECK(betterNeed(f, u1).isUnknown());
  }

  TEST_CASE("exploreCluster shapes") {
    PeriodicCode c(PeriodLattice(8, 8, 0));
    for (const auto& v : std::vector<Vertex>{{0, 0, 0}, {0, 0, 1}, {-1, 0, 1}}) c.set(v, true);
    MaskedWorld full(c, ball({0, 0, 0}, 6));
    auto view = full.cluster({0, 0, 0});
    CHECK(view.exact());
    CHECK(view.size() == 3);
    auto path = threeClusterOf(view);
    REQUIRE(path);
    CHECK(path->center == Vertex{0, 0, 0});
    CHECK(path->outside == Vertex{0, -1, 1});

    MaskedWorld tiny(c, {{-1, 0, 1}, {0, 0, 0}, {0, 0, 1}});
    auto partial = tiny.cluster({0, 0, 0});
    CHECK(partial.shape == ClusterView::Shape::Unknown);
    CHECK(partial.pending.isUnknown());

    c.set({1, 0, 0}, true);
    MaskedWorld four(c, ball({0, 0, 0}, 6));
    CHECK(four.cluster({0, 0, 0}).big());
    CHECK(four.sameCluster({-1, 0, 1}, {1, 0, 0}).isTrue());
    CHECK(four.sameCluster({-1, 0, 1}, {5, 5, 0}).isFalse());
    CHECK(tiny.sameCluster({0, 0, 0}, {4, 0, 0}).isUnknown());
  }

  TEST_CASE("asThreeCluster") {
    auto c = asThreeCluster({{0, 0, 1}, {0, 0, 0}, {-1, 0, 1}});
    CHECK(c.center == Vertex{0, 0, 0});
    CHECK(c.vertices() == std::vector<Vertex>{{-1, 0, 1}, {0, 0, 0}, {0, 0, 1}});
    CHECK_THROWS_AS(asThreeCluster({{0, 0, 0}, {0, 0, 1}}), Error);
    CHECK_THROWS_AS(asThreeCluster({{0, 0, 0}, {5, 0, 1}, {0, 0, 1}}), Error);
  }

  TEST_CASE("crowded and open labels on hand-built clusters") {
    const PeriodLattice L(10, 10, 0);
    PeriodicCode c(L);
    c.set({0, 0, 0}, true);
    c.set({1, 0, 0}, true);
    c.set({0, 1, 0}, true);  // (0,0,1) now has all three neighbors in D
    ClusterMap map(c);
    PeriodicWorld w(map);
    CHECK(oneClusterAt(w, {0, 0, 0}).isTrue());
    CHECK(crowdedOne(w, {0, 0, 0}).isTrue());
    c.set({0, 1, 0}, false);
    ClusterMap map2(c);
    CHECK(crowdedOne(PeriodicWorld(map2), {0, 0, 0}).isFalse());

    // Path (-1,0,1) - (0,0,0) - (0,0,1); the outside neighbor is (0,-1,1).
    PeriodicCode t(L);
    for (const auto& v : std::vector<Vertex>{{0, 0, 0}, {0, 0, 1}, {-1, 0, 1}}) t.set(v, true);
    ClusterMap tm(t);
    const auto three = asThreeCluster(tm.vertices(tm.keyOf({0, 0, 0})));
    CHECK(openThree(PeriodicWorld(tm), three).isTrue());
    CHECK(crowdedThree(PeriodicWorld(tm), three).isFalse());
    t.set({1, -1, 0}, true);  // second code neighbor of the outside vertex
    ClusterMap closed(t);
    CHECK(openThree(PeriodicWorld(closed), three).isFalse());
    CHECK(heavyAt(PeriodicWorld(closed), {0, 0, 0}).isTrue());
    CHECK(threePlusAt(PeriodicWorld(closed), {0, 0, 0}).isTrue());
    CHECK(heavyAt(PeriodicWorld(closed), {1, -1, 0}).isFalse());

    // Two outside code vertices at distance two from one leaf: crowded.
    t.set({1, -1, 0}, false);
    t.set({1, 0, 1}, true);
    t.set({0, 1, 1}, true);
    ClusterMap crm(t);
    CHECK(crowdedThree(PeriodicWorld(crm), three).isTrue());
    CHECK(openThree(PeriodicWorld(crm), three).isTrue());
  }

  TEST_CASE("leavesNear") {
    auto c = asThreeCluster({{0, 0, 1}, {0, 0, 0}, {-1, 0, 1}});
    CHECK(leavesNear(c, {{1, 0, 0}}));
    CHECK_FALSE(leavesNear(c, {{4, 0, 0}}));
  }

  TEST_CASE("predicates on periodic worlds match direct definitions") {
    std::mt19937_64 rng(17);
    const auto family = latticeFamily(24);
    int ones = 0;
    for (int i = 0; i < 150; ++i) {
      auto c = randomCode(family[rng() % family.size()], rng);
      if (!c) continue;
      ClusterMap map(*c);
      PeriodicWorld w(map);
      for (const auto& v : c->members()) {
        const auto cl = oracle::flood(*c, v);
        CHECK(oneClusterAt(w, v).definite() == (cl.size() == 1));
        CHECK(threePlusAt(w, v).definite() == (cl.size() >= 3));
        if (cl.size() == 1) {
          ++ones;
          CHECK(crowdedOne(w, v).definite() == oracleCrowdedOne(*c, v));
        }
      }
    }
    CHECK(ones > 0);
  }

  TEST_CASE("three-valued predicates are sound on partial windows") {
    std::mt19937_64 rng(23);
    const auto family = latticeFamily(28);
    int checkedThree = 0, checkedOne = 0;
    for (int i = 0; i < 120; ++i) {
      auto c = randomCode(family[rng() % family.size()], rng);
      if (!c) continue;
      ClusterMap map(*c);
      PeriodicWorld full(map);
      const auto members = c->members();
      const Vertex v = members[rng() % members.size()];
      for (int r : {2, 4, 6}) {
        MaskedWorld part(*c, ball(v, r));
        sound(oneClusterAt(part, v), oneClusterAt(full, v));
        sound(heavyAt(part, v), heavyAt(full, v));
        sound(heavyWithin(part, {v}, 3), heavyWithin(full, {v}, 3));
        const auto kind = kindOf(map, map.keyOf(v));
        if (kind == ClusterKind::One) {
          ++checkedOne;
          sound(crowdedOne(part, v), crowdedOne(full, v));
          if (!crowdedOne(full, v).definite()) {
            sound(oneNearbySome(part, v), oneNearbySome(full, v));
            sound(threatenedOne(part, v), threatenedOne(full, v));
          }
        }
        if (kind == ClusterKind::Three) {
          ++checkedThree;
          const auto t = asThreeCluster(map.vertices(map.keyOf(v)));
          sound(openThree(part, t), openThree(full, t));
          sound(crowdedThree(part, t), crowdedThree(full, t));
          soundRange(shellClusters(part, t), shellClusters(full, t));
          sound(leavesNearThreePlus(part, t), leavesNearThreePlus(full, t));
          if (openThree(full, t).definite() && !crowdedThree(full, t).definite()) {
            sound(threatenedThree(part, t), threatenedThree(full, t));
            soundRange(nearbyThreatened(part, {t}), nearbyThreatened(full, {t}));
            sound(needyThree(part, t), needyThree(full, t));
          }
        }
      }
    }
    CHECK(checkedOne > 0);
    CHECK(checkedThree > 0);
  }

  TEST_CASE("count ranges") {
    CountRange r{2, 5, Tri::unknown({1, 1, 0}, 0)};
    CHECK(atMost(r, 5).isTrue());
    CHECK(atMost(r, 1).isFalse());
    CHECK(atMost(r, 3).need() == Vertex{1, 1, 0});
    CHECK_THROWS_AS(atMost(CountRange{2, 5}, 3), Error);
    CHECK(atLeast(r, 2).isTrue());
    CHECK(atLeast(r, 6).isFalse());
    CHECK(atMost(CountRange{3, 3}, 3).isTrue());
  }
}

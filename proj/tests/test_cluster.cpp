#include <doctest.h>

#include <json.hpp>
#include <random>
#include <set>

#include "hexid/cluster.hpp"
#include "hexid/error.hpp"
#include "hexid/lemma_lab.hpp"
#include "hexid/optimize.hpp"
#include "oracle.hpp"

using namespace hexid;

namespace {

PeriodicCode withMembers(PeriodLattice L, const std::vector<Vertex>& vs) {
  PeriodicCode c(L);
  for (const auto& v : vs) c.set(v, true);
  return c;
}

std::vector<PeriodicCode> corpus(int n, unsigned seed, int maxDomain = 28) {
  std::mt19937_64 rng(seed);
  const auto family = latticeFamily(maxDomain);
  std::vector<PeriodicCode> out;
  while (static_cast<int>(out.size()) < n)
    if (auto c = randomCode(family[rng() % family.size()], rng)) out.push_back(*c);
  return out;
}

int oracleSetDistance(const std::set<Vertex>& x, const std::set<Vertex>& y) {
  int best = 1 << 20;
  for (const auto& u : x) {
    const auto d = oracle::bfs(u, 8);
    for (const auto& v : y)
      if (auto it = d.find(v); it != d.end()) best = std::min(best, it->second);
  }
  return best;
}

}  // namespace

TEST_SUITE("cluster") {
  TEST_CASE("sublattice code is all 1-clusters, the full grid one infinite cluster") {
    const PeriodLattice L(2, 2, 1);
    ClusterMap half(PeriodicCode::sublattice(L, 0));
    for (const auto& o : half.orbits()) {
      CHECK(kindOf(half, {o.id, {}}) == ClusterKind::One);
      CHECK_FALSE(o.infinite());
    }
    ClusterMap full(PeriodicCode::all(L));
    REQUIRE(full.orbits().size() == 1);
    CHECK(full.orbits()[0].infinite());
    CHECK(kindOf(full, {0, {}}) == ClusterKind::Big);
    CHECK_THROWS_AS(full.vertices({0, {}}), Error);
  }

  TEST_CASE("infinite stripes have rank-one stabilizers") {
    // A zigzag row: (a,0,0) ~ (a,0,1) ~ (a+1,0,0) runs forever along a.
    PeriodicCode c(PeriodLattice(3, 4, 0));
    for (int a = 0; a < 3; ++a) {
      c.set({a, 0, 0}, true);
      c.set({a, 0, 1}, true);
    }
    ClusterMap map(c);
    REQUIRE(map.orbits().size() == 1);
    CHECK(map.orbits()[0].stabilizer.rank() == 1);
    CHECK(map.orbits()[0].stabilizer.contains({3, 0}));
    CHECK_FALSE(map.orbits()[0].stabilizer.contains({0, 4}));
  }

  TEST_CASE("IntLattice reduction") {
    IntLattice l({{2, 0}, {1, 3}});
    CHECK(l.rank() == 2);
    CHECK(l.contains({3, 3}));
    CHECK(l.contains({0, 6}));
    CHECK_FALSE(l.contains({1, 0}));
    CHECK(l.reduce(l.reduce({7, 5})) == l.reduce({7, 5}));
    CHECK(IntLattice(std::vector<Offset>{}).rank() == 0);
    CHECK(IntLattice(std::vector<Offset>{{0, 0}}).rank() == 0);
    auto sum = latticeSum(IntLattice({{2, 0}}), IntLattice({{0, 2}}));
    CHECK(sum.rank() == 2);
    CHECK(sum.contains({2, 2}));
    CHECK_FALSE(sum.contains({1, 0}));
  }

  TEST_CASE("keys, lifts and orbit sizes agree with flood fill") {
    for (const auto& c : corpus(60, 1)) {
      ClusterMap map(c);
      for (const auto& v : c.members()) {
        const auto key = map.keyOf(v);
        const auto flood = oracle::flood(c, v, 64);
        if (map.infinite(key)) {
          CHECK(flood.size() > 64);
          continue;
        }
        const auto vs = map.vertices(key);
        CHECK(std::set<Vertex>(vs.begin(), vs.end()) == flood);
        CHECK(map.size(key) == static_cast<int>(flood.size()));
        // The key of a translate is the translated key.
        const Offset t{c.lattice().p, 0};
        const auto moved = map.vertices(map.keyOf(v + t));
        CHECK(std::find(moved.begin(), moved.end(), v + t) != moved.end());
      }
    }
    ClusterMap m(PeriodicCode::sublattice(PeriodLattice(1, 1, 0), 0));
    CHECK_THROWS_AS(m.keyOf({0, 0, 1}), Error);
  }

  TEST_CASE("clusterDistance agrees with set distance") {
    int checked = 0;
    for (const auto& c : corpus(25, 2, 20)) {
      ClusterMap map(c);
      const auto ms = c.members();
      for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = 0; j < ms.size(); ++j)
          for (const Offset t : {Offset{0, 0}, Offset{c.lattice().p, 0}, Offset{c.lattice().shear, c.lattice().q}}) {
            const Vertex w = ms[j] + t;
            const auto k1 = map.keyOf(ms[i]), k2 = map.keyOf(w);
            if (k1 == k2 || map.infinite(k1) || map.infinite(k2)) continue;
            const auto a = map.vertices(k1), b = map.vertices(k2);
            const int want = oracleSetDistance({a.begin(), a.end()}, {b.begin(), b.end()});
            if (want > 8) continue;
            CHECK(clusterDistance(map, k1, k2) == want);
            CHECK(clusterDistance(map, k1, k2) >= 2);
            ++checked;
          }
    }
    CHECK(checked > 100);
  }

  TEST_CASE("two clusters sharing a non-code neighbor are at distance two") {
    ClusterMap map(withMembers(PeriodLattice(8, 8, 0), {{0, 0, 0}, {1, 0, 0}}));
    CHECK(clusterDistance(map, map.keyOf({0, 0, 0}), map.keyOf({1, 0, 0})) == 2);
  }

  TEST_CASE("classification errors") {
    ClusterMap map(withMembers(PeriodLattice(8, 8, 0), {{0, 0, 0}, {0, 0, 1}, {-1, 0, 1}, {4, 4, 0}}));
    CHECK_THROWS_AS(classify1(map, {0, 0, 0}), Error);
    CHECK_THROWS_AS(classify1(map, {3, 3, 0}), Error);
    CHECK_FALSE(classify1(map, {4, 4, 0}));
    try {
      classify3(map, {{4, 4, 0}});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotAThreeCluster);
    }
    const auto labels = classify3(map, map.vertices(map.keyOf({0, 0, 0})));
    CHECK(labels.center == Vertex{0, 0, 0});
    CHECK(labels.open);
    CHECK_FALSE(labels.crowded);
    // The 1-cluster is at distance 5 from the path, so nothing is nearby.
    CHECK_FALSE(nearby(map, map.keyOf({4, 4, 0}), map.keyOf({0, 0, 0})));
    ClusterMap bigMap(withMembers(PeriodLattice(8, 8, 0), {{0, 0, 0}, {0, 0, 1}, {-1, 0, 1}, {1, 0, 0}, {4, 4, 0}}));
    try {
      nearby(bigMap, bigMap.keyOf({0, 0, 0}), bigMap.keyOf({4, 4, 0}));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedKind);
    }
  }

  TEST_CASE("nearby: 4-cluster clause and open-center clause") {
    const PeriodLattice L(12, 12, 0);
    // A 4-cluster: path of four vertices.
    std::vector<Vertex> big{{0, 0, 0}, {0, 0, 1}, {-1, 0, 1}, {1, 0, 0}};
    for (const auto& v : sphere({1, 0, 0}, 3)) {
      if (distanceToSet(v, big) != 3) continue;
      auto vs = big;
      vs.push_back(v);
      ClusterMap map(withMembers(L, vs));
      if (classify1(map, v)) continue;
      CHECK(nearby(map, map.keyOf(v), map.keyOf({0, 0, 0})));
      break;
    }
    // Open path centered at (0,0,0): a 1-cluster at distance 3 from a leaf
    // and 4 from the center is not nearby.
    std::vector<Vertex> path{{0, 0, 0}, {0, 0, 1}, {-1, 0, 1}};
    int tried = 0;
    for (const auto& v : ball({0, 0, 0}, 5)) {
      if (distance(v, {0, 0, 0}) != 4 || distanceToSet(v, path) != 3) continue;
      auto vs = path;
      vs.push_back(v);
      ClusterMap map(withMembers(L, vs));
      CHECK_FALSE(nearby(map, map.keyOf(v), map.keyOf({0, 0, 0})));
      ++tried;
    }
    CHECK(tried > 0);
    for (const auto& v : sphere({0, 0, 0}, 3)) {
      if (distanceToSet(v, path) < 3) continue;
      auto vs = path;
      vs.push_back(v);
      ClusterMap map(withMembers(L, vs));
      if (classify1(map, v)) continue;
      CHECK(nearby(map, map.keyOf(v), map.keyOf({0, 0, 0})));
    }
  }

  TEST_CASE("the uncrowded 1-cluster of the fig3a window") {
    // 13 in D alone, its neighbors out; 10 and 11 in D; 8 out.
    auto f = [](double x, double y) { return figureVertex(x, y); };
    const Vertex v13 = f(4, 1);
    std::vector<Vertex> vs{v13, f(5, 2.5), f(2, 1)};
    ClusterMap map(withMembers(PeriodLattice(12, 12, 0), vs));
    CHECK(kindOf(map, map.keyOf(v13)) == ClusterKind::One);
    CHECK_FALSE(map.code().contains(f(3, 2.5)));
    CHECK_FALSE(classify1(map, v13));
  }

  TEST_CASE("the paired clusters of the fig5 window") {
    const auto t = namedTemplate("fig5");
    REQUIRE(t.subjects.size() == 2);
    std::vector<Vertex> vs;
    for (const auto& s : t.subjects) vs.insert(vs.end(), s.begin(), s.end());
    ClusterMap map(withMembers(PeriodLattice(16, 16, 0), vs));
    const auto k1 = map.keyOf(t.subjects[0][0]), k2 = map.keyOf(t.subjects[1][0]);
    CHECK(kindOf(map, k1) == ClusterKind::Three);
    CHECK(kindOf(map, k2) == ClusterKind::Three);
    CHECK(nearby(map, k1, k2));
    CHECK(nearby(map, k2, k1));
    const auto ps = pairs(map);
    REQUIRE(ps.size() == 1);
    CHECK(std::set<ClusterKey>{ps[0].first, ps[0].second} == std::set<ClusterKey>{k1, k2});
    CHECK(partners(map, k1) == std::vector<ClusterKey>{k2});
  }

  TEST_CASE("one leaf near is not enough for pairing") {
    // Two open paths whose leaves are not both within three of each other.
    std::vector<Vertex> a{{0, 0, 0}, {0, 0, 1}, {-1, 0, 1}};
    std::vector<Vertex> b{{4, 0, 0}, {4, 0, 1}, {3, 0, 1}};
    auto vs = a;
    vs.insert(vs.end(), b.begin(), b.end());
    ClusterMap map(withMembers(PeriodLattice(16, 16, 0), vs));
    const bool aNearB = leavesNear(asThreeCluster(a), b), bNearA = leavesNear(asThreeCluster(b), a);
    CHECK_FALSE((aNearB && bNearA));
    CHECK(pairs(map).empty());
  }

  TEST_CASE("structural invariants on verified codes") {
    int threes = 0;
    for (const auto& c : corpus(150, 3)) {
      ClusterMap map(c);
      PeriodicWorld w(map);
      for (const auto& r : classifyAll(map)) {
        CHECK(r.kind != ClusterKind::Two);
        if (r.kind == ClusterKind::Three) {
          ++threes;
          const auto t = asThreeCluster(r.vertices);
          REQUIRE(r.center);
          CHECK(*r.center == t.center);
          // Each leaf sees some code vertex outside the cluster at distance two.
          for (const auto& leaf : t.leaves) {
            bool found = false;
            for (const auto& x : sphere(leaf, 2))
              found |= c.contains(x) && std::find(r.vertices.begin(), r.vertices.end(), x) == r.vertices.end();
            CHECK(found);
          }
          if (r.needy) CHECK(r.threatened);
          if (r.threatened) CHECK((r.open && !r.crowded));
        }
        if (r.kind == ClusterKind::One && r.threatened) CHECK_FALSE(r.crowded);
        for (const auto& p : r.pairedWith) {
          const auto back = partners(map, p);
          bool found = false;
          for (const auto& k : back) found |= map.vertices(k) == map.vertices(r.key);
          CHECK(found);
        }
      }
    }
    CHECK(threes > 0);
  }

  TEST_CASE("classification is invariant under re-anchoring") {
    for (const auto& c : corpus(40, 4)) {
      PeriodicCode moved(c.lattice());
      for (const auto& v : c.members()) moved.set(v + Offset{1, 1}, true);
      auto summary = [](const PeriodicCode& code) {
        ClusterMap map(code);
        std::multiset<std::tuple<int, bool, bool, bool, bool, std::size_t>> s;
        for (const auto& r : classifyAll(map))
          s.insert({static_cast<int>(r.kind), r.crowded, r.open, r.threatened, r.needy, r.nearby.size()});
        return s;
      };
      CHECK(summary(c) == summary(moved));
    }
  }

  TEST_CASE("JSON report") {
    ClusterMap map(withMembers(PeriodLattice(8, 8, 0), {{0, 0, 0}, {0, 0, 1}, {-1, 0, 1}, {4, 4, 0}}));
    const auto doc = nlohmann::json::parse(clusterReportJson(map, classifyAll(map)));
    CHECK(doc["lattice"]["p"] == 8);
    REQUIRE(doc["clusters"].size() == 2);
    std::multiset<std::string> kinds;
    for (const auto& j : doc["clusters"]) kinds.insert(j["kind"].get<std::string>());
    CHECK(kinds == std::multiset<std::string>{"1-cluster", "3-cluster"});
    CHECK(doc["pairs"].empty());
    ClusterMap inf(PeriodicCode::all(PeriodLattice(1, 1, 0)));
    const auto d2 = nlohmann::json::parse(clusterReportJson(inf, classifyAll(inf)));
    CHECK(d2["clusters"][0]["size"] == "INFINITE");
  }
}

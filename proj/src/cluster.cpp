#include "hexid/cluster.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "hexid/error.hpp"
#include "hexid/shell.hpp"

namespace hexid {

namespace {

int floorDiv(int x, int m) {
  int q = x / m;
  if ((x % m != 0) && ((x < 0) != (m < 0))) --q;
  return q;
}
int floorMod(int x, int m) { return x - floorDiv(x, m) * m; }

}  // namespace

IntLattice::IntLattice(const std::vector<Offset>& generators) {
  std::vector<Offset> vs;
  for (const auto& g : generators)
    if (g != Offset{}) vs.push_back(g);
  // Euclid on the first coordinate until a single vector keeps a nonzero one.
  while (true) {
    auto pivot = vs.end();
    for (auto it = vs.begin(); it != vs.end(); ++it)
      if (it->a != 0 && (pivot == vs.end() || std::abs(it->a) < std::abs(pivot->a))) pivot = it;
    if (pivot == vs.end()) break;
    bool reduced = false;
    for (auto it = vs.begin(); it != vs.end(); ++it) {
      if (it == pivot || it->a == 0) continue;
      const int k = it->a / pivot->a;
      it->a -= k * pivot->a;
      it->b -= k * pivot->b;
      reduced = true;
    }
    if (!reduced) break;
  }
  Offset u{};
  int h = 0;
  for (const auto& v : vs) {
    if (v.a != 0) u = v.a > 0 ? v : -v;
    else h = std::gcd(h, std::abs(v.b));
  }
  if (u.a == 0) {
    rank_ = h == 0 ? 0 : 1;
    u_ = Offset{0, h};
    return;
  }
  if (h == 0) {
    rank_ = 1;
    u_ = u;
    return;
  }
  rank_ = 2;
  u_ = Offset{u.a, floorMod(u.b, h)};
  h_ = h;
}

Offset IntLattice::reduce(Offset t) const {
  if (rank_ == 0) return t;
  if (rank_ == 1 && u_.a == 0) return {t.a, floorMod(t.b, u_.b)};
  const int k = floorDiv(t.a, u_.a);
  t = t - Offset{k * u_.a, k * u_.b};
  if (rank_ == 2) t.b = floorMod(t.b, h_);
  return t;
}

std::vector<Offset> IntLattice::basis() const {
  if (rank_ == 0) return {};
  if (rank_ == 1) return {u_};
  return {u_, Offset{0, h_}};
}

IntLattice latticeSum(const IntLattice& x, const IntLattice& y) {
  auto gens = x.basis();
  auto more = y.basis();
  gens.insert(gens.end(), more.begin(), more.end());
  return IntLattice(gens);
}

std::ostream& operator<<(std::ostream& os, const ClusterKey& k) {
  return os << "#" << k.orbit << "+(" << k.shift.a << ',' << k.shift.b << ')';
}

ClusterMap::ClusterMap(PeriodicCode code) : code_(std::move(code)) {
  const auto& lat = code_.lattice();
  const int n = lat.domainSize();
  orbitOf_.assign(n, -1);
  lift_.assign(n, Vertex{});
  for (int i = 0; i < n; ++i) {
    if (!code_.bit(i) || orbitOf_[i] >= 0) continue;
    ClusterOrbit orbit;
    orbit.id = static_cast<int>(orbits_.size());
    std::vector<Offset> voltages;
    const Vertex start = lat.vertexAt(i);
    orbitOf_[i] = orbit.id;
    lift_[i] = start;
    orbit.lift.push_back(start);
    for (std::size_t head = 0; head < orbit.lift.size(); ++head) {
      const Vertex u = orbit.lift[head];
      for (const auto& w : neighbors(u)) {
        if (!code_.contains(w)) continue;
        const int j = lat.index(w);
        if (orbitOf_[j] < 0) {
          orbitOf_[j] = orbit.id;
          lift_[j] = w;
          orbit.lift.push_back(w);
        } else if (lift_[j] != w) {
          voltages.push_back(offsetBetween(lift_[j], w));
        }
      }
    }
    orbit.stabilizer = IntLattice(voltages);
    orbits_.push_back(std::move(orbit));
  }
}

ClusterKey ClusterMap::keyOf(const Vertex& v) const {
  const int j = lattice().index(v);
  if (orbitOf_[j] < 0) throw Error(ErrorKind::InvalidArgument, to_string(v) + " is not a code vertex");
  const auto& orbit = orbits_[orbitOf_[j]];
  return {orbit.id, orbit.stabilizer.reduce(offsetBetween(lift_[j], v))};
}

ClusterKey ClusterMap::canonicalKey(int orbit, Offset shift) const {
  return {orbit, orbits_[orbit].stabilizer.reduce(shift)};
}

std::vector<Vertex> ClusterMap::vertices(const ClusterKey& key) const {
  const auto& orbit = orbits_[key.orbit];
  if (orbit.infinite()) throw Error(ErrorKind::UnsupportedKind, "cluster is infinite");
  std::vector<Vertex> out;
  out.reserve(orbit.lift.size());
  for (const auto& v : orbit.lift) out.push_back(v + key.shift);
  std::sort(out.begin(), out.end());
  return out;
}

Vertex ClusterMap::anchor(const ClusterKey& key) const { return orbits_[key.orbit].anchor() + key.shift; }

ClusterView ClusterMap::view(const Vertex& x) const {
  ClusterView out;
  const ClusterKey key = keyOf(x);
  const auto& orbit = orbits_[key.orbit];
  if (orbit.infinite() || orbit.size() >= 4) {
    out.shape = ClusterView::Shape::Big;
    out.vertices = {x};
  } else {
    out.shape = ClusterView::Shape::Exact;
    out.vertices = vertices(key);
  }
  return out;
}

Status PeriodicWorld::at(const Vertex& v) const {
  return map_.code().contains(v) ? Status::In : Status::Out;
}

ClusterView PeriodicWorld::cluster(const Vertex& x) const { return map_.view(x); }

Tri PeriodicWorld::sameCluster(const Vertex& x, const Vertex& y) const {
  if (!map_.code().contains(x) || !map_.code().contains(y)) return Tri::no();
  return Tri::of(map_.keyOf(x) == map_.keyOf(y));
}

const char* to_string(ClusterKind k) {
  switch (k) {
    case ClusterKind::One: return "1-cluster";
    case ClusterKind::Two: return "2-cluster";
    case ClusterKind::Three: return "3-cluster";
    case ClusterKind::Big: return "4+-cluster";
  }
  return "?";
}

ClusterKind kindOf(const ClusterMap& map, const ClusterKey& key) {
  if (map.infinite(key) || map.size(key) >= 4) return ClusterKind::Big;
  if (map.size(key) == 3) return ClusterKind::Three;
  return map.size(key) == 2 ? ClusterKind::Two : ClusterKind::One;
}

int clusterDistance(const ClusterMap& map, const ClusterKey& c1In, const ClusterKey& c2In) {
  ClusterKey c1 = c1In;
  ClusterKey c2 = c2In;
  if (c1 == c2) return 0;
  if (map.infinite(c1) && !map.infinite(c2)) std::swap(c1, c2);
  const auto& o1 = map.orbit(c1.orbit);
  const auto& o2 = map.orbit(c2.orbit);
  const IntLattice joint = latticeSum(o1.stabilizer, o2.stabilizer);
  auto hits = [&](const Vertex& y) {
    if (!map.code().contains(y)) return false;
    const ClusterKey k = map.keyOf(y);
    return k.orbit == c2.orbit && joint.contains(k.shift - c2.shift);
  };
  std::unordered_map<Vertex, int, VertexHash> dist;
  std::deque<Vertex> queue;
  for (const auto& v : o1.lift) {
    Vertex s = v + c1.shift;
    if (dist.emplace(s, 0).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    const int du = dist[u];
    for (const auto& w : neighbors(u)) {
      if (!dist.emplace(w, du + 1).second) continue;
      if (hits(w)) return du + 1;
      queue.push_back(w);
    }
  }
  return -1;
}

bool classify1(const ClusterMap& map, const Vertex& v) {
  if (!map.code().contains(v) || kindOf(map, map.keyOf(v)) != ClusterKind::One)
    throw Error(ErrorKind::NotAOneCluster, to_string(v) + " is not a 1-cluster");
  return crowdedOne(PeriodicWorld(map), v).definite();
}

namespace {

ThreeCluster threeOf(const ClusterMap& map, const ClusterKey& key) {
  return asThreeCluster(map.vertices(key));
}

void requireThree(const ClusterMap& map, const std::vector<Vertex>& cluster) {
  if (cluster.empty() || !map.code().contains(cluster.front()))
    throw Error(ErrorKind::NotAThreeCluster, "not a 3-cluster of the code");
  const ClusterKey key = map.keyOf(cluster.front());
  auto sorted = cluster;
  std::sort(sorted.begin(), sorted.end());
  if (kindOf(map, key) != ClusterKind::Three || map.vertices(key) != sorted)
    throw Error(ErrorKind::NotAThreeCluster, "not a 3-cluster of the code");
}

std::vector<ClusterKey> keysAround(const ClusterMap& map, const std::vector<Vertex>& set, int r) {
  std::set<ClusterKey> keys;
  for (const auto& x : ballAround(set, r))
    if (map.code().contains(x)) keys.insert(map.keyOf(x));
  return {keys.begin(), keys.end()};
}

}  // namespace

ThreeLabels classify3(const ClusterMap& map, const std::vector<Vertex>& cluster) {
  requireThree(map, cluster);
  PeriodicWorld world(map);
  ThreeCluster c = asThreeCluster(cluster);
  return {c.center, openThree(world, c).definite(), crowdedThree(world, c).definite()};
}

bool nearby(const ClusterMap& map, const ClusterKey& c1, const ClusterKey& c2) {
  PeriodicWorld world(map);
  const ClusterKind k1 = kindOf(map, c1);
  if (k1 == ClusterKind::One) {
    if (crowdedOne(world, map.anchor(c1)).definite())
      throw Error(ErrorKind::UnsupportedKind, "nearby is defined for uncrowded 1-clusters only");
  } else if (k1 == ClusterKind::Three) {
    ThreeCluster t = threeOf(map, c1);
    if (!openThree(world, t).definite() || crowdedThree(world, t).definite())
      throw Error(ErrorKind::UnsupportedKind, "nearby is defined for uncrowded open 3-clusters only");
  } else {
    throw Error(ErrorKind::UnsupportedKind, "nearby is undefined for this cluster kind");
  }
  if (c1 == c2) return false;
  const ClusterKind k2 = kindOf(map, c2);
  if (k2 == ClusterKind::One || k2 == ClusterKind::Two) return false;
  if (k2 == ClusterKind::Big) return clusterDistance(map, c1, c2) <= 3;
  ThreeCluster t2 = threeOf(map, c2);
  if (!openThree(world, t2).definite()) return clusterDistance(map, c1, c2) <= 3;
  if (k1 == ClusterKind::One) return distance(map.anchor(c1), t2.center) <= 3;
  return leavesNear(threeOf(map, c1), t2.vertices());
}

std::vector<ClusterKey> nearbyTargets(const ClusterMap& map, const ClusterKey& c1) {
  std::vector<ClusterKey> out;
  for (const auto& k : keysAround(map, map.vertices(c1), 3))
    if (k != c1 && nearby(map, c1, k)) out.push_back(k);
  return out;
}

bool isThreatened(const ClusterMap& map, const ClusterKey& c) {
  PeriodicWorld world(map);
  switch (kindOf(map, c)) {
    case ClusterKind::One: return threatenedOne(world, map.anchor(c)).definite();
    case ClusterKind::Three: return threatenedThree(world, threeOf(map, c)).definite();
    default: throw Error(ErrorKind::UnsupportedKind, "threatened applies to 1- and 3-clusters");
  }
}

bool isNeedy(const ClusterMap& map, const ClusterKey& c) {
  if (kindOf(map, c) != ClusterKind::Three)
    throw Error(ErrorKind::UnsupportedKind, "needy applies to 3-clusters");
  return needyThree(PeriodicWorld(map), threeOf(map, c)).definite();
}

std::vector<ClusterKey> partners(const ClusterMap& map, const ClusterKey& c) {
  std::vector<ClusterKey> out;
  if (kindOf(map, c) != ClusterKind::Three) return out;
  PeriodicWorld world(map);
  const ThreeCluster t = threeOf(map, c);
  for (const auto& k : keysAround(map, t.vertices(), 3)) {
    if (k == c || kindOf(map, k) != ClusterKind::Three) continue;
    if (pairedThree(world, t, threeOf(map, k)).definite()) out.push_back(k);
  }
  return out;
}

std::vector<std::pair<ClusterKey, ClusterKey>> pairs(const ClusterMap& map) {
  std::set<std::pair<ClusterKey, ClusterKey>> out;
  for (const auto& orbit : map.orbits()) {
    const ClusterKey c{orbit.id, {}};
    if (kindOf(map, c) != ClusterKind::Three) continue;
    for (const auto& k : partners(map, c)) {
      // Re-anchor so the lower orbit sits at shift zero; ties keep the
      // smaller partner shift.
      std::pair<ClusterKey, ClusterKey> p{c, k};
      std::pair<ClusterKey, ClusterKey> q{ClusterKey{k.orbit, {}}, map.canonicalKey(c.orbit, -k.shift)};
      if (c.orbit != k.orbit) out.insert(c.orbit < k.orbit ? p : q);
      else out.insert(std::min(p, q));
    }
  }
  return {out.begin(), out.end()};
}

std::vector<ClusterReport> classifyAll(const ClusterMap& map) {
  PeriodicWorld world(map);
  std::vector<ClusterReport> out;
  for (const auto& orbit : map.orbits()) {
    ClusterReport r;
    r.key = {orbit.id, {}};
    r.kind = kindOf(map, r.key);
    r.infinite = orbit.infinite();
    r.vertices = r.infinite ? orbit.lift : map.vertices(r.key);
    if (r.kind == ClusterKind::One) {
      const Vertex v = r.vertices.front();
      r.crowded = crowdedOne(world, v).definite();
      r.threatened = threatenedOne(world, v).definite();
      if (!r.crowded) r.nearby = nearbyTargets(map, r.key);
    } else if (r.kind == ClusterKind::Three) {
      ThreeCluster t = asThreeCluster(r.vertices);
      r.center = t.center;
      r.open = openThree(world, t).definite();
      r.crowded = crowdedThree(world, t).definite();
      r.threatened = threatenedThree(world, t).definite();
      r.needy = needyThree(world, t).definite();
      if (r.open && !r.crowded) {
        r.nearby = nearbyTargets(map, r.key);
        r.pairedWith = partners(map, r.key);
      }
    }
    if (!r.infinite) {
      std::set<ClusterKey> hits;
      for (const auto& x : shellOf(r.vertices))
        if (map.code().contains(x)) hits.insert(map.keyOf(x));
      r.shellHits.assign(hits.begin(), hits.end());
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

nlohmann::json keyJson(const ClusterKey& k) {
  return {{"orbit", k.orbit}, {"shift", {k.shift.a, k.shift.b}}};
}

nlohmann::json vertexJson(const Vertex& v) { return {v.a, v.b, v.s}; }

}  // namespace

std::string clusterReportJson(const ClusterMap& map, const std::vector<ClusterReport>& reports) {
  nlohmann::json clusters = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["key"] = keyJson(r.key);
    j["kind"] = to_string(r.kind);
    j["size"] = r.infinite ? nlohmann::json("INFINITE") : nlohmann::json(r.vertices.size());
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : r.vertices) j["vertices"].push_back(vertexJson(v));
    if (r.kind == ClusterKind::One || r.kind == ClusterKind::Three) {
      j["crowded"] = r.crowded;
      j["threatened"] = r.threatened;
    }
    if (r.kind == ClusterKind::Three) {
      j["open"] = r.open;
      j["center"] = vertexJson(*r.center);
      j["needy"] = r.needy;
    }
    auto keys = [](const std::vector<ClusterKey>& ks) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& k : ks) a.push_back(keyJson(k));
      return a;
    };
    j["nearby"] = keys(r.nearby);
    j["shellHits"] = keys(r.shellHits);
    j["pairedWith"] = keys(r.pairedWith);
    clusters.push_back(std::move(j));
  }
  nlohmann::json pairList = nlohmann::json::array();
  for (const auto& [a, b] : pairs(map)) pairList.push_back({keyJson(a), keyJson(b)});
  const auto& lat = map.lattice();
  nlohmann::json doc{{"lattice", {{"p", lat.p}, {"q", lat.q}, {"shear", lat.shear}}},
                     {"clusters", clusters},
                     {"pairs", pairList}};
  return doc.dump(2);
}

}  // namespace hexid

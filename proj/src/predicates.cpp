#include "hexid/predicates.hpp"

#include <algorithm>
#include <set>

#include "hexid/error.hpp"
#include "hexid/shell.hpp"

namespace hexid {

std::vector<Vertex> ThreeCluster::vertices() const {
  std::vector<Vertex> v{leaves[0], center, leaves[1]};
  std::sort(v.begin(), v.end());
  return v;
}

ThreeCluster asThreeCluster(const std::vector<Vertex>& vs) {
  if (vs.size() == 3) {
    for (std::size_t c = 0; c < 3; ++c) {
      const Vertex& x = vs[(c + 1) % 3];
      const Vertex& y = vs[(c + 2) % 3];
      if (!adjacent(vs[c], x) || !adjacent(vs[c], y)) continue;
      ThreeCluster out{vs[c], {std::min(x, y), std::max(x, y)}, {}};
      for (const auto& w : neighbors(vs[c]))
        if (w != x && w != y) out.outside = w;
      return out;
    }
  }
  throw Error(ErrorKind::NotAThreeCluster, "vertex set is not a path on three vertices");
}

std::optional<ThreeCluster> threeClusterOf(const ClusterView& view) {
  if (!view.exact() || view.size() != 3) return std::nullopt;
  return asThreeCluster(view.vertices);
}

namespace {

int knownCodeNeighbors(const World& w, const Vertex& x) {
  int n = 0;
  for (const auto& u : neighbors(x)) n += w.at(u) == Status::In ? 1 : 0;
  return n;
}

bool contains(const std::vector<Vertex>& sorted, const Vertex& v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

// At least k of the listed vertices are in the code.
Tri atLeastIn(const World& w, const std::vector<Vertex>& vs, int k) {
  int yes = 0;
  int maybe = 0;
  Tri pending = Tri::no();
  for (const auto& v : vs) {
    Tri t = w.in(v);
    if (t.isTrue()) ++yes;
    if (t.isUnknown()) {
      ++maybe;
      pending = betterNeed(pending, t);
    }
  }
  if (yes >= k) return Tri::yes();
  if (yes + maybe < k) return Tri::no();
  return pending;
}

// Distinct qualifying clusters among candidates; identities are the sorted
// vertex sets of exactly known clusters.
struct Tally {
  std::set<std::vector<Vertex>> sure;
  std::set<std::vector<Vertex>> possible;
  int anonymous = 0;
  Tri pending = Tri::no();

  void add(const Tri& q, const std::vector<Vertex>* identity) {
    if (q.isFalse()) return;
    if (q.isUnknown()) pending = betterNeed(pending, q);
    if (identity) {
      possible.insert(*identity);
      if (q.isTrue()) sure.insert(*identity);
    } else {
      ++anonymous;
    }
  }

  CountRange range() const {
    CountRange r;
    r.lower = static_cast<int>(sure.size());
    r.upper = static_cast<int>(possible.size()) + anonymous;
    r.pending = r.lower < r.upper ? pending : Tri::no();
    return r;
  }
};

}  // namespace

Tri oneClusterAt(const World& w, const Vertex& v) {
  Tri t = w.in(v);
  for (const auto& u : neighbors(v)) t = triAnd(t, w.out(u));
  return t;
}

Tri crowdedOne(const World& w, const Vertex& v) {
  Tri any = Tri::no();
  for (const auto& u : neighbors(v)) {
    Tri t = w.out(u);
    for (const auto& x : neighbors(u)) t = triAnd(t, w.in(x));
    any = triOr(any, t);
  }
  return any;
}

Tri openThree(const World& w, const ThreeCluster& c) {
  Tri t = Tri::yes();
  for (const auto& x : neighbors(c.outside))
    if (x != c.center) t = triAnd(t, w.out(x));
  return t;
}

Tri crowdedThree(const World& w, const ThreeCluster& c) {
  const auto members = c.vertices();
  Tri any = Tri::no();
  for (const auto& v : members) {
    std::vector<Vertex> far;
    for (const auto& x : sphere(v, 2))
      if (!contains(members, x)) far.push_back(x);
    any = triOr(any, atLeastIn(w, far, 2));
    if (any.isTrue()) break;
  }
  return any;
}

Tri heavyAt(const World& w, const Vertex& x) {
  Tri in = w.in(x);
  if (!in.isTrue()) return in;
  ClusterView view = w.cluster(x);
  if (view.big()) return Tri::yes();
  if (view.exact()) {
    if (view.size() != 3) return Tri::no();
    return triNot(openThree(w, asThreeCluster(view.vertices)));
  }
  return view.pending;
}

Tri threePlusAt(const World& w, const Vertex& x) {
  Tri in = w.in(x);
  if (!in.isTrue()) return in;
  if (knownCodeNeighbors(w, x) >= 2) return Tri::yes();
  ClusterView view = w.cluster(x);
  if (view.big()) return Tri::yes();
  if (view.exact()) return Tri::of(view.size() >= 3);
  return view.pending;
}

Tri oneNearbySome(const World& w, const Vertex& v) {
  Tri any = Tri::no();
  for (const auto& x : ball(v, 3)) {
    if (x == v) continue;
    Tri in = w.in(x);
    Tri q;
    if (!in.isTrue()) {
      q = in;
    } else if (knownCodeNeighbors(w, x) >= 2) {
      q = Tri::yes();  // x is a center or lies in a 4+-cluster
    } else {
      ClusterView view = w.cluster(x);
      if (view.big()) {
        q = Tri::yes();
      } else if (view.exact()) {
        if (view.size() != 3) {
          q = Tri::no();
        } else {
          ThreeCluster c = asThreeCluster(view.vertices);
          q = c.center == x ? Tri::yes() : triNot(openThree(w, c));
        }
      } else {
        q = view.pending;
      }
    }
    any = triOr(any, q);
    if (any.isTrue()) return any;
  }
  return any;
}

bool leavesNear(const ThreeCluster& c, const std::vector<Vertex>& d) {
  for (const auto& leaf : c.leaves)
    if (distanceToSet(leaf, d) > 3) return false;
  return true;
}

Tri heavyWithin(const World& w, const std::vector<Vertex>& set, int r) {
  std::vector<Vertex> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  Tri any = Tri::no();
  for (const auto& x : ballAround(sorted, r)) {
    if (contains(sorted, x)) continue;
    any = triOr(any, heavyAt(w, x));
    if (any.isTrue()) return any;
  }
  return any;
}

Tri threatenedThree(const World& w, const ThreeCluster& c) {
  Tri t = triAnd(openThree(w, c), triNot(crowdedThree(w, c)));
  if (t.isFalse()) return t;
  const auto members = c.vertices();
  // A heavy cluster (4+ or closed) within distance three spoils the threat.
  // An open 3-cluster spoils it only from within distance two.
  Tri spoiled = Tri::no();
  for (const auto& x : ballAround(members, 3)) {
    if (contains(members, x)) continue;
    Tri in = w.in(x);
    Tri q;
    const bool close = distanceToSet(x, members) <= 2;
    if (!in.isTrue()) {
      q = in;
    } else if (close && knownCodeNeighbors(w, x) >= 2) {
      q = Tri::yes();
    } else {
      ClusterView view = w.cluster(x);
      if (view.big()) {
        q = Tri::yes();
      } else if (view.exact()) {
        q = view.size() == 3 ? (close ? Tri::yes() : triNot(openThree(w, asThreeCluster(view.vertices))))
                             : Tri::no();
      } else {
        q = view.pending;
      }
    }
    spoiled = triOr(spoiled, q);
    if (spoiled.isTrue()) return Tri::no();
  }
  return triAnd(t, triNot(spoiled));
}

Tri threatenedOne(const World& w, const Vertex& v) {
  Tri t = triAnd(oneClusterAt(w, v), triNot(crowdedOne(w, v)));
  if (t.isFalse()) return t;
  // Spoilers within distance three: heavy clusters, plus unthreatened open
  // 3-clusters whose center is that close.
  Tri spoiled = Tri::no();
  for (const auto& x : ball(v, 3)) {
    if (x == v) continue;
    Tri in = w.in(x);
    Tri q;
    if (!in.isTrue()) {
      q = in;
    } else {
      ClusterView view = w.cluster(x);
      if (view.big()) {
        q = Tri::yes();
      } else if (view.exact()) {
        if (view.size() != 3) {
          q = Tri::no();
        } else {
          ThreeCluster c = asThreeCluster(view.vertices);
          Tri open = openThree(w, c);
          q = triNot(open);
          if (c.center == x) q = triOr(q, triAnd(open, triNot(threatenedThree(w, c))));
        }
      } else {
        q = view.pending;
      }
    }
    spoiled = triOr(spoiled, q);
    if (spoiled.isTrue()) return Tri::no();
  }
  return triAnd(t, triNot(spoiled));
}

CountRange nearbyThreatened(const World& w, const std::vector<ThreeCluster>& subjects) {
  std::vector<Vertex> all;
  std::set<std::vector<Vertex>> subjectIds;
  for (const auto& s : subjects) {
    auto vs = s.vertices();
    all.insert(all.end(), vs.begin(), vs.end());
    subjectIds.insert(vs);
  }
  std::sort(all.begin(), all.end());
  Tally tally;
  for (const auto& x : ballAround(all, 3)) {
    if (contains(all, x)) continue;
    Tri in = w.in(x);
    if (in.isFalse()) continue;
    if (in.isUnknown()) {
      tally.add(in, nullptr);
      continue;
    }
    ClusterView view = w.cluster(x);
    if (view.big()) continue;
    if (!view.exact()) {
      tally.add(view.pending, nullptr);
      continue;
    }
    if (view.size() == 1) {
      bool near = false;
      for (const auto& s : subjects) near = near || distance(x, s.center) <= 3;
      if (near) tally.add(threatenedOne(w, x), &view.vertices);
    } else if (view.size() == 3) {
      if (subjectIds.count(view.vertices)) continue;
      ThreeCluster c = asThreeCluster(view.vertices);
      bool near = false;
      for (const auto& s : subjects) near = near || leavesNear(c, s.vertices());
      if (near) tally.add(threatenedThree(w, c), &view.vertices);
    }
  }
  return tally.range();
}

Tri atMost(const CountRange& c, int k) {
  if (c.upper <= k) return Tri::yes();
  if (c.lower > k) return Tri::no();
  if (!c.pending.isUnknown()) throw Error(ErrorKind::InvalidArgument, "count range open without a pending vertex");
  return c.pending;
}

Tri atLeast(const CountRange& c, int k) { return triNot(atMost(c, k - 1)); }

Tri needyThree(const World& w, const ThreeCluster& c) {
  Tri t = threatenedThree(w, c);
  if (t.isFalse()) return t;
  return triAnd(t, atLeast(nearbyThreatened(w, {c}), 4));
}

Tri pairedThree(const World& w, const ThreeCluster& c1, const ThreeCluster& c2) {
  if (c1 == c2) return Tri::no();
  if (!leavesNear(c1, c2.vertices()) || !leavesNear(c2, c1.vertices())) return Tri::no();
  Tri t = triAnd(openThree(w, c1), openThree(w, c2));
  t = triAnd(t, triNot(crowdedThree(w, c1)));
  return triAnd(t, triNot(crowdedThree(w, c2)));
}

Tri leavesNearThreePlus(const World& w, const ThreeCluster& c) {
  const auto members = c.vertices();
  std::vector<Vertex> farSide;
  for (const auto& y : ball(c.leaves[1], 3))
    if (!contains(members, y)) farSide.push_back(y);
  Tri any = Tri::no();
  for (const auto& x : ball(c.leaves[0], 3)) {
    if (contains(members, x)) continue;
    Tri q = threePlusAt(w, x);
    if (q.isFalse()) continue;
    Tri reach = Tri::no();
    for (const auto& y : farSide) {
      Tri in = w.in(y);
      if (in.isFalse()) continue;
      reach = triOr(reach, in.isTrue() ? w.sameCluster(x, y) : triAnd(in, q));
      if (reach.isTrue()) break;
    }
    any = triOr(any, triAnd(q, reach));
    if (any.isTrue()) return any;
  }
  return any;
}

CountRange shellClusters(const World& w, const ThreeCluster& c) {
  const ShellPartition partition = shellPartition(c.vertices());
  std::set<std::vector<Vertex>> sure;
  std::set<std::vector<Vertex>> possible;
  int anonymousParts = 0;
  Tri pending = Tri::no();
  for (const auto& part : partition.parts) {
    bool identified = false;
    bool maybe = false;
    for (const auto& x : part) {
      Tri in = w.in(x);
      if (in.isFalse()) continue;
      if (in.isUnknown()) {
        maybe = true;
        pending = betterNeed(pending, in);
        continue;
      }
      ClusterView view = w.cluster(x);
      Tri q;
      if (view.big()) {
        q = Tri::no();
      } else if (view.exact()) {
        if (view.size() == 1) q = Tri::yes();
        else if (view.size() == 3) q = openThree(w, asThreeCluster(view.vertices));
        else q = Tri::no();
      } else {
        q = view.pending;
      }
      if (q.isFalse()) continue;
      if (view.exact()) {
        identified = true;
        possible.insert(view.vertices);
        if (q.isTrue()) sure.insert(view.vertices);
        else pending = betterNeed(pending, q);
      } else {
        maybe = true;
        pending = betterNeed(pending, q);
      }
    }
    if (maybe && !identified) ++anonymousParts;
  }
  CountRange r;
  r.lower = static_cast<int>(sure.size());
  r.upper = static_cast<int>(possible.size()) + anonymousParts;
  r.pending = r.lower < r.upper ? pending : Tri::no();
  return r;
}

}  // namespace hexid

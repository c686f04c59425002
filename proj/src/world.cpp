#include "hexid/world.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "hexid/error.hpp"

namespace hexid {

bool Tri::definite() const {
  if (isUnknown())
    throw Error(ErrorKind::InvalidArgument, "predicate undecided at " + to_string(need_));
  return isTrue();
}

Tri betterNeed(const Tri& x, const Tri& y) {
  if (!x.isUnknown()) return y;
  if (!y.isUnknown()) return x;
  return y.rank() < x.rank() ? y : x;
}

Tri triNot(const Tri& x) {
  if (x.isUnknown()) return x;
  return Tri::of(!x.isTrue());
}

Tri triAnd(const Tri& x, const Tri& y) {
  if (x.isFalse() || y.isFalse()) return Tri::no();
  if (x.isTrue()) return y;
  if (y.isTrue()) return x;
  return betterNeed(x, y);
}

Tri triOr(const Tri& x, const Tri& y) {
  if (x.isTrue() || y.isTrue()) return Tri::yes();
  if (x.isFalse()) return y;
  if (y.isFalse()) return x;
  return betterNeed(x, y);
}

Tri World::in(const Vertex& v) const {
  switch (at(v)) {
    case Status::In: return Tri::yes();
    case Status::Out: return Tri::no();
    default: return Tri::unknown(v, rank(v));
  }
}

Tri World::out(const Vertex& v) const { return triNot(in(v)); }

ClusterView exploreCluster(const World& world, const Vertex& x) {
  ClusterView view;
  std::vector<Vertex>& seen = view.vertices;
  seen.push_back(x);
  Tri pending = Tri::no();
  for (std::size_t head = 0; head < seen.size(); ++head) {
    for (const auto& w : neighbors(seen[head])) {
      if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
      Status st = world.at(w);
      if (st == Status::In) {
        seen.push_back(w);
        if (seen.size() >= 4) {
          view.shape = ClusterView::Shape::Big;
          std::sort(seen.begin(), seen.end());
          return view;
        }
      } else if (st == Status::Unknown) {
        pending = betterNeed(pending, Tri::unknown(w, world.rank(w)));
      }
    }
  }
  std::sort(seen.begin(), seen.end());
  if (pending.isUnknown()) {
    view.shape = ClusterView::Shape::Unknown;
    view.pending = pending;
  } else {
    view.shape = ClusterView::Shape::Exact;
  }
  return view;
}

Tri exploreSameCluster(const World& world, const Vertex& x, const Vertex& y, std::size_t cap) {
  if (x == y) return Tri::yes();
  std::unordered_set<Vertex, VertexHash> seen{x};
  std::deque<Vertex> queue{x};
  Tri pending = Tri::no();
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (const auto& w : neighbors(u)) {
      if (seen.count(w)) continue;
      Status st = world.at(w);
      if (st == Status::In) {
        if (w == y) return Tri::yes();
        if (seen.size() >= cap) throw Error(ErrorKind::RegionTooLarge, "cluster exploration exceeded its cap");
        seen.insert(w);
        queue.push_back(w);
      } else if (st == Status::Unknown) {
        pending = betterNeed(pending, Tri::unknown(w, world.rank(w)));
      }
    }
  }
  return pending;
}

}  // namespace hexid

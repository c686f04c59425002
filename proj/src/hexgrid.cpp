#include "hexid/hexgrid.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hexid/error.hpp"

namespace hexid {

std::ostream& operator<<(std::ostream& os, const Vertex& v) {
  return os << '(' << v.a << ',' << v.b << ',' << v.s << ')';
}

std::string to_string(const Vertex& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::array<Vertex, 3> neighbors(const Vertex& v) {
  if (v.s == 0) return {Vertex{v.a, v.b, 1}, Vertex{v.a - 1, v.b, 1}, Vertex{v.a, v.b - 1, 1}};
  return {Vertex{v.a, v.b, 0}, Vertex{v.a + 1, v.b, 0}, Vertex{v.a, v.b + 1, 0}};
}

bool adjacent(const Vertex& u, const Vertex& v) {
  for (const auto& w : neighbors(u))
    if (w == v) return true;
  return false;
}

namespace {

constexpr int kTableRadius = 24;

// BFS distances from (0,0,s) out to kTableRadius.
struct DistanceTable {
  std::unordered_map<Vertex, int, VertexHash> dist[2];

  DistanceTable() {
    for (int s = 0; s < 2; ++s) {
      auto& d = dist[s];
      std::deque<Vertex> queue{Vertex{0, 0, s}};
      d[queue.front()] = 0;
      while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        int du = d[u];
        if (du == kTableRadius) continue;
        for (const auto& w : neighbors(u)) {
          if (d.emplace(w, du + 1).second) queue.push_back(w);
        }
      }
    }
  }
};

const DistanceTable& table() {
  static const DistanceTable t;
  return t;
}

int bfsDistance(const Vertex& from, const Vertex& to) {
  if (from == to) return 0;
  std::unordered_map<Vertex, int, VertexHash> d{{from, 0}};
  std::deque<Vertex> queue{from};
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (const auto& w : neighbors(u)) {
      if (!d.emplace(w, d[u] + 1).second) continue;
      if (w == to) return d[u] + 1;
      queue.push_back(w);
    }
  }
  return -1;  // unreachable on a connected grid
}

}  // namespace

int distance(const Vertex& u, const Vertex& v) {
  const Vertex rel{v.a - u.a, v.b - u.b, v.s};
  const auto& d = table().dist[u.s];
  if (auto it = d.find(rel); it != d.end()) return it->second;
  return bfsDistance(u, v);
}

namespace {

constexpr int kCachedBallRadius = 12;

std::vector<Vertex> bfsBall(const Vertex& v, int r) {
  std::vector<Vertex> out;
  std::unordered_map<Vertex, int, VertexHash> d{{v, 0}};
  std::deque<Vertex> queue{v};
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    out.push_back(u);
    int du = d[u];
    if (du == r) continue;
    for (const auto& w : neighbors(u))
      if (d.emplace(w, du + 1).second) queue.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct BallCache {
  std::vector<Vertex> balls[2][kCachedBallRadius + 1];
  BallCache() {
    for (int s = 0; s < 2; ++s)
      for (int r = 0; r <= kCachedBallRadius; ++r) balls[s][r] = bfsBall(Vertex{0, 0, s}, r);
  }
};

}  // namespace

std::vector<Vertex> ball(const Vertex& v, int r) {
  if (r < 0) throw Error(ErrorKind::InvalidArgument, "ball radius must be nonnegative");
  if (r > kCachedBallRadius) return bfsBall(v, r);
  static const BallCache cache;
  const auto& base = cache.balls[v.s][r];
  std::vector<Vertex> out;
  out.reserve(base.size());
  for (const auto& u : base) out.push_back(u + Offset{v.a, v.b});
  return out;
}

std::vector<Vertex> sphere(const Vertex& v, int r) {
  std::vector<Vertex> out;
  for (const auto& u : ball(v, r))
    if (distance(v, u) == r) out.push_back(u);
  return out;
}

std::vector<Vertex> ballAround(const std::vector<Vertex>& centers, int r) {
  std::unordered_set<Vertex, VertexHash> seen;
  for (const auto& c : centers)
    for (const auto& u : ball(c, r)) seen.insert(u);
  std::vector<Vertex> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

int distanceToSet(const Vertex& v, const std::vector<Vertex>& set) {
  int best = -1;
  for (const auto& u : set) {
    int d = distance(v, u);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

int setDistance(const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
  int best = -1;
  for (const auto& u : x) {
    int d = distanceToSet(u, y);
    if (d >= 0 && (best < 0 || d < best)) best = d;
  }
  return best;
}

namespace {

std::vector<std::array<Vertex, 6>> facesAtOrigin(int s) {
  const Vertex origin{0, 0, s};
  std::vector<std::array<Vertex, 6>> found;
  std::array<Vertex, 6> path{};
  path[0] = origin;
  auto extend = [&](auto&& self, int depth) -> void {
    for (const auto& w : neighbors(path[depth - 1])) {
      if (depth == 6) {
        if (w != origin) continue;
        auto face = path;
        std::sort(face.begin(), face.end());
        if (std::find(found.begin(), found.end(), face) == found.end()) found.push_back(face);
        continue;
      }
      if (std::find(path.begin(), path.begin() + depth, w) != path.begin() + depth) continue;
      path[depth] = w;
      self(self, depth + 1);
    }
  };
  extend(extend, 1);
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

std::array<std::array<Vertex, 6>, 3> faces(const Vertex& v) {
  static const std::vector<std::array<Vertex, 6>> origin[2] = {facesAtOrigin(0), facesAtOrigin(1)};
  const auto& base = origin[v.s];
  std::array<std::array<Vertex, 6>, 3> out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 6; ++j) out[i][j] = base[i][j] + Offset{v.a, v.b};
  return out;
}

bool shareFace(const Vertex& u, const Vertex& v) {
  if (distance(u, v) > 3) return false;
  for (const auto& f : faces(u))
    if (std::find(f.begin(), f.end(), v) != f.end()) return true;
  return false;
}

namespace {
int floorDiv(int x, int m) {
  int q = x / m;
  if ((x % m != 0) && ((x < 0) != (m < 0))) --q;
  return q;
}
int floorMod(int x, int m) { return x - floorDiv(x, m) * m; }
}  // namespace

PeriodLattice::PeriodLattice(int p_, int q_, int shear_) : p(p_), q(q_), shear(shear_) {
  if (p < 1 || q < 1 || shear < 0 || shear >= p)
    throw Error(ErrorKind::InvalidArgument, "period lattice requires p>=1, q>=1, 0<=shear<p");
}

Vertex PeriodLattice::canonical(const Vertex& v) const {
  const int k = floorDiv(v.b, q);
  return {floorMod(v.a - k * shear, p), v.b - k * q, v.s};
}

Offset PeriodLattice::liftOffset(const Vertex& v) const {
  return offsetBetween(canonical(v), v);
}

bool PeriodLattice::isTranslation(Offset t) const {
  if (floorMod(t.b, q) != 0) return false;
  const int k = t.b / q;
  return floorMod(t.a - k * shear, p) == 0;
}

int PeriodLattice::index(const Vertex& v) const {
  const Vertex c = canonical(v);
  return (c.b * p + c.a) * 2 + c.s;
}

Vertex PeriodLattice::vertexAt(int index) const {
  const int cell = index / 2;
  return {cell % p, cell / p, index % 2};
}

std::ostream& operator<<(std::ostream& os, const PeriodLattice& l) {
  return os << '(' << l.p << ',' << l.q << ',' << l.shear << ')';
}

}  // namespace hexid

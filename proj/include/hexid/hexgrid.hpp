#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace hexid {

// A site of the honeycomb lattice: cell (a, b) and sublattice bit s.
// Adjacency: (a,b,0) ~ (a,b,1), (a-1,b,1), (a,b-1,1).
struct Vertex {
  int a = 0;
  int b = 0;
  int s = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

std::ostream& operator<<(std::ostream& os, const Vertex& v);
std::string to_string(const Vertex& v);

// Translation in cell space. Lattice translations preserve the sublattice bit.
struct Offset {
  int a = 0;
  int b = 0;

  friend auto operator<=>(const Offset&, const Offset&) = default;
};

inline Vertex operator+(Vertex v, Offset t) { return {v.a + t.a, v.b + t.b, v.s}; }
inline Vertex operator-(Vertex v, Offset t) { return {v.a - t.a, v.b - t.b, v.s}; }
inline Offset operator+(Offset x, Offset y) { return {x.a + y.a, x.b + y.b}; }
inline Offset operator-(Offset x, Offset y) { return {x.a - y.a, x.b - y.b}; }
inline Offset operator-(Offset x) { return {-x.a, -x.b}; }
// Cell difference of two vertices on the same sublattice.
inline Offset offsetBetween(Vertex from, Vertex to) { return {to.a - from.a, to.b - from.b}; }

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(v.a);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(v.b);
    h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(v.s);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

std::array<Vertex, 3> neighbors(const Vertex& v);
bool adjacent(const Vertex& u, const Vertex& v);

// Graph distance on the infinite grid (breadth-first search, memoized by
// translation class).
int distance(const Vertex& u, const Vertex& v);

// All vertices within distance r of v, sorted.
std::vector<Vertex> ball(const Vertex& v, int r);
// All vertices at distance exactly r from v, sorted.
std::vector<Vertex> sphere(const Vertex& v, int r);
// All vertices within distance r of some vertex of `centers`, sorted.
std::vector<Vertex> ballAround(const std::vector<Vertex>& centers, int r);
// Minimum distance from v to the set.
int distanceToSet(const Vertex& v, const std::vector<Vertex>& set);
int setDistance(const std::vector<Vertex>& x, const std::vector<Vertex>& y);

// The three hexagonal faces containing v, each as its 6 vertices sorted.
std::array<std::array<Vertex, 6>, 3> faces(const Vertex& v);
// True when u and v lie on a common hexagonal face (a 6-cycle of the grid).
bool shareFace(const Vertex& u, const Vertex& v);

// Translation lattice generated by (p, 0) and (shear, q).
struct PeriodLattice {
  int p = 1;
  int q = 1;
  int shear = 0;

  PeriodLattice() = default;
  PeriodLattice(int p, int q, int shear);

  int cells() const { return p * q; }
  int domainSize() const { return 2 * p * q; }

  // Representative with 0 <= a < p and 0 <= b < q.
  Vertex canonical(const Vertex& v) const;
  // Translation t with v = canonical(v) + t.
  Offset liftOffset(const Vertex& v) const;
  bool isTranslation(Offset t) const;

  // Fundamental-domain index of canonical(v).
  int index(const Vertex& v) const;
  Vertex vertexAt(int index) const;

  friend auto operator<=>(const PeriodLattice&, const PeriodLattice&) = default;
};

std::ostream& operator<<(std::ostream& os, const PeriodLattice& l);

}  // namespace hexid

template <>
struct std::hash<hexid::Vertex> : hexid::VertexHash {};

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hexid/hexgrid.hpp"

namespace hexid {

// Kleene truth value. An Unknown result names the undecided vertex whose
// status would help most (lowest rank), so a search can branch on it.
class Tri {
 public:
  enum class Value : std::int8_t { False, True, Unknown };

  Tri() : Tri(Value::False) {}
  static Tri yes() { return Tri(Value::True); }
  static Tri no() { return Tri(Value::False); }
  static Tri of(bool b) { return b ? yes() : no(); }
  static Tri unknown(const Vertex& need, int rank) { return Tri(Value::Unknown, need, rank); }

  Value value() const { return value_; }
  bool isTrue() const { return value_ == Value::True; }
  bool isFalse() const { return value_ == Value::False; }
  bool isUnknown() const { return value_ == Value::Unknown; }
  const Vertex& need() const { return need_; }
  int rank() const { return rank_; }

  // Definite value; throws if Unknown. For fully decided worlds.
  bool definite() const;

 private:
  explicit Tri(Value v, Vertex need = {}, int rank = std::numeric_limits<int>::max())
      : value_(v), need_(need), rank_(rank) {}

  Value value_;
  Vertex need_;
  int rank_;
};

Tri triNot(const Tri& x);
Tri triAnd(const Tri& x, const Tri& y);
Tri triOr(const Tri& x, const Tri& y);
// Keeps whichever Unknown carries the better (lower rank) need.
Tri betterNeed(const Tri& x, const Tri& y);

enum class Status : std::int8_t { Out = 0, In = 1, Unknown = 2 };

// What is known about the cluster containing a code vertex.
struct ClusterView {
  enum class Shape : std::int8_t { Exact, Big, Unknown };
  Shape shape = Shape::Unknown;
  // Exact: every vertex of the cluster (size <= 3), sorted.
  // Big: the cluster has at least four vertices; holds the explored part.
  // Unknown: the explored part so far.
  std::vector<Vertex> vertices;
  Tri pending = Tri::no();  // Unknown with the needed vertex when shape is Unknown

  bool exact() const { return shape == Shape::Exact; }
  bool big() const { return shape == Shape::Big; }
  std::size_t size() const { return vertices.size(); }
};

// Three-valued view of a vertex set on the infinite grid. Periodic codes give
// a fully decided world; lemma windows leave vertices Unknown.
class World {
 public:
  virtual ~World() = default;

  virtual Status at(const Vertex& v) const = 0;
  // Branching preference for an undecided vertex; lower is better.
  virtual int rank(const Vertex& v) const = 0;
  // Cluster of a vertex known to be in the code.
  virtual ClusterView cluster(const Vertex& x) const = 0;
  // Whether two code vertices lie in one cluster.
  virtual Tri sameCluster(const Vertex& x, const Vertex& y) const = 0;

  Tri in(const Vertex& v) const;
  Tri out(const Vertex& v) const;
};

// Shared breadth-first exploration used by worlds without global cluster
// bookkeeping: walks code vertices from x, stopping once four are found.
ClusterView exploreCluster(const World& world, const Vertex& x);
Tri exploreSameCluster(const World& world, const Vertex& x, const Vertex& y, std::size_t cap);

}  // namespace hexid

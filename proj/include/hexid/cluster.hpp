#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hexid/code.hpp"
#include "hexid/predicates.hpp"
#include "hexid/world.hpp"

namespace hexid {

// A sublattice of Z^2 in lower-triangular basis form; used for the
// translation stabilizers of periodic clusters.
class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(const std::vector<Offset>& generators);

  int rank() const { return rank_; }
  // Canonical representative of t modulo the lattice.
  Offset reduce(Offset t) const;
  bool contains(Offset t) const { return reduce(t) == Offset{}; }
  std::vector<Offset> basis() const;

 private:
  int rank_ = 0;
  Offset u_{};  // u_.a > 0 when rank 2, or the single generator when rank 1
  int h_ = 0;   // rank 2: second basis vector (0, h_)
};

IntLattice latticeSum(const IntLattice& x, const IntLattice& y);

// One specific cluster of the lifted code: an orbit of clusters under the
// period lattice plus the translation selecting one member of the orbit.
struct ClusterKey {
  int orbit = -1;
  Offset shift{};

  friend auto operator<=>(const ClusterKey&, const ClusterKey&) = default;
};

std::ostream& operator<<(std::ostream& os, const ClusterKey& k);

struct ClusterOrbit {
  int id = 0;
  // Lift of every domain member of the orbit into the cluster with shift 0,
  // in BFS order from the least domain vertex.
  std::vector<Vertex> lift;
  IntLattice stabilizer;

  bool infinite() const { return stabilizer.rank() > 0; }
  // Number of vertices of one cluster; meaningless when infinite.
  int size() const { return static_cast<int>(lift.size()); }
  Vertex anchor() const { return lift.front(); }
};

// Components of G[D] for a periodic code, found by breadth-first search in
// infinite coordinates; revisiting a domain vertex at a different position
// yields a stabilizer translation, which marks the component infinite.
class ClusterMap {
 public:
  explicit ClusterMap(PeriodicCode code);

  const PeriodicCode& code() const { return code_; }
  const PeriodLattice& lattice() const { return code_.lattice(); }
  const std::vector<ClusterOrbit>& orbits() const { return orbits_; }
  const ClusterOrbit& orbit(int id) const { return orbits_[id]; }

  // Throws InvalidArgument when v is not a code vertex.
  ClusterKey keyOf(const Vertex& v) const;
  // Vertices of a finite cluster, sorted; throws UnsupportedKind if infinite.
  std::vector<Vertex> vertices(const ClusterKey& key) const;
  bool infinite(const ClusterKey& key) const { return orbits_[key.orbit].infinite(); }
  int size(const ClusterKey& key) const { return orbits_[key.orbit].size(); }
  ClusterKey canonicalKey(int orbit, Offset shift) const;
  // Some vertex of the cluster.
  Vertex anchor(const ClusterKey& key) const;

  ClusterView view(const Vertex& x) const;

 private:
  PeriodicCode code_;
  std::vector<ClusterOrbit> orbits_;
  std::vector<int> orbitOf_;   // per domain index, -1 when not in the code
  std::vector<Vertex> lift_;   // per domain index: position in the shift-0 cluster
};

// The fully decided world of a periodic code.
class PeriodicWorld : public World {
 public:
  explicit PeriodicWorld(const ClusterMap& map) : map_(map) {}
  Status at(const Vertex& v) const override;
  int rank(const Vertex&) const override { return 0; }
  ClusterView cluster(const Vertex& x) const override;
  Tri sameCluster(const Vertex& x, const Vertex& y) const override;
  const ClusterMap& map() const { return map_; }

 private:
  const ClusterMap& map_;
};

enum class ClusterKind { One, Two, Three, Big };
const char* to_string(ClusterKind k);
ClusterKind kindOf(const ClusterMap& map, const ClusterKey& key);

// Minimum vertex distance between two distinct clusters, over the actual
// infinite components.
int clusterDistance(const ClusterMap& map, const ClusterKey& c1, const ClusterKey& c2);

// Labels of individual clusters.
bool classify1(const ClusterMap& map, const Vertex& v);  // crowded?
struct ThreeLabels {
  Vertex center;
  bool open = false;
  bool crowded = false;
};
ThreeLabels classify3(const ClusterMap& map, const std::vector<Vertex>& cluster);

// The forward relation: C1 (an uncrowded 1-cluster or uncrowded open
// 3-cluster) is nearby the 3+-cluster C2.
bool nearby(const ClusterMap& map, const ClusterKey& c1, const ClusterKey& c2);
bool isThreatened(const ClusterMap& map, const ClusterKey& c);
bool isNeedy(const ClusterMap& map, const ClusterKey& c);
// 3+-clusters within distance three of c1 for which nearby(c1, .) holds.
std::vector<ClusterKey> nearbyTargets(const ClusterMap& map, const ClusterKey& c1);

// Unordered pairs, each reported once with the first member at shift zero
// of the lower orbit.
std::vector<std::pair<ClusterKey, ClusterKey>> pairs(const ClusterMap& map);
// Open 3-clusters paired with c.
std::vector<ClusterKey> partners(const ClusterMap& map, const ClusterKey& c);

struct ClusterReport {
  ClusterKey key;
  ClusterKind kind = ClusterKind::One;
  bool infinite = false;
  std::vector<Vertex> vertices;  // the lift for infinite clusters
  bool crowded = false;
  bool open = false;
  std::optional<Vertex> center;
  bool threatened = false;
  bool needy = false;
  std::vector<ClusterKey> nearby;   // forward relation, this cluster as source
  std::vector<ClusterKey> shellHits;  // clusters meeting the distance 2..3 shell
  std::vector<ClusterKey> pairedWith;
};

// One report per cluster orbit, each for its shift-0 member.
std::vector<ClusterReport> classifyAll(const ClusterMap& map);
std::string clusterReportJson(const ClusterMap& map, const std::vector<ClusterReport>& reports);

}  // namespace hexid

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hexid/world.hpp"

namespace hexid {

// A 3-cluster is a path; the center is its middle vertex.
struct ThreeCluster {
  Vertex center;
  std::array<Vertex, 2> leaves;
  Vertex outside;  // the center's neighbor outside the path

  std::vector<Vertex> vertices() const;  // sorted
  friend bool operator==(const ThreeCluster&, const ThreeCluster&) = default;
};

// Throws NotAThreeCluster unless the three vertices form a path.
ThreeCluster asThreeCluster(const std::vector<Vertex>& vertices);
std::optional<ThreeCluster> threeClusterOf(const ClusterView& view);

// Cluster-level predicates, three-valued over any World. On a fully decided
// world every result is definite.

Tri oneClusterAt(const World& w, const Vertex& v);
// Precondition: v is a 1-cluster.
Tri crowdedOne(const World& w, const Vertex& v);
Tri openThree(const World& w, const ThreeCluster& c);
Tri crowdedThree(const World& w, const ThreeCluster& c);

// x is a code vertex of a 4+-cluster or of a closed 3-cluster.
Tri heavyAt(const World& w, const Vertex& x);
// x is a code vertex in a cluster of at least three vertices.
Tri threePlusAt(const World& w, const Vertex& x);

// The uncrowded 1-cluster v is nearby some 3+-cluster.
Tri oneNearbySome(const World& w, const Vertex& v);
// Both leaves of c lie within distance three of d.
bool leavesNear(const ThreeCluster& c, const std::vector<Vertex>& d);

Tri threatenedThree(const World& w, const ThreeCluster& c);
Tri threatenedOne(const World& w, const Vertex& v);

// Threatened 1- and 3-clusters nearby any of `subjects` (open 3-clusters),
// excluding the subjects themselves; returned as a count interval.
struct CountRange {
  int lower = 0;
  int upper = 0;
  Tri pending = Tri::no();  // names an undecided vertex when lower < upper
};
CountRange nearbyThreatened(const World& w, const std::vector<ThreeCluster>& subjects);
Tri atMost(const CountRange& c, int k);
Tri atLeast(const CountRange& c, int k);

Tri needyThree(const World& w, const ThreeCluster& c);
Tri pairedThree(const World& w, const ThreeCluster& c1, const ThreeCluster& c2);

// Some 3+-cluster other than c has a vertex within distance three of each
// leaf of c.
Tri leavesNearThreePlus(const World& w, const ThreeCluster& c);
// A 4+-cluster or closed 3-cluster lies within distance three of `set`.
Tri heavyWithin(const World& w, const std::vector<Vertex>& set, int r);

// Distinct 1-clusters and open 3-clusters meeting the vertices at distance two
// or three from `c`.
CountRange shellClusters(const World& w, const ThreeCluster& c);

}  // namespace hexid

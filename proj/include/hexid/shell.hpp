#pragma once

#include <vector>

#include "hexid/hexgrid.hpp"

namespace hexid {

// Vertices at distance two or three from the set, sorted.
std::vector<Vertex> shellOf(const std::vector<Vertex>& cluster);

// Shell vertices at distance three that close a hexagonal face with some
// cluster vertex (two disjoint length-3 paths to it); these must be singleton
// parts in the refined partition.
std::vector<Vertex> faceAntipodes(const std::vector<Vertex>& cluster);

// Partition of the shell into adjacent pairs and singletons with the fewest
// parts, from a maximum matching on the induced shell subgraph.
struct ShellPartition {
  int shellSize = 0;
  int minParts = 0;
  // Same with every face antipode forced into a singleton.
  int constrainedParts = 0;
  std::vector<std::vector<Vertex>> parts;             // realizes minParts
  std::vector<std::vector<Vertex>> constrainedPartition;  // realizes constrainedParts
};

ShellPartition shellPartition(const std::vector<Vertex>& cluster);

// Exhaustive minimum over all pair/singleton partitions; the oracle for small
// shells (at most ~24 vertices).
int bruteForceMinParts(const std::vector<Vertex>& shell, const std::vector<Vertex>& forcedSingletons);

}  // namespace hexid

#include "hexid/shell.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

namespace hexid {

std::vector<Vertex> shellOf(const std::vector<Vertex>& cluster) {
  std::vector<Vertex> out;
  for (const auto& u : ballAround(cluster, 3)) {
    int d = distanceToSet(u, cluster);
    if (d == 2 || d == 3) out.push_back(u);
  }
  return out;
}

std::vector<Vertex> faceAntipodes(const std::vector<Vertex>& cluster) {
  std::vector<Vertex> out;
  for (const auto& v : shellOf(cluster)) {
    if (distanceToSet(v, cluster) != 3) continue;
    for (const auto& u : cluster) {
      if (distance(u, v) == 3 && shareFace(u, v)) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

namespace {

using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

// Maximum matching on the shell, skipping edges at forbidden vertices;
// returns the resulting partition.
std::vector<std::vector<Vertex>> matchPartition(const std::vector<Vertex>& shell,
                                                const std::vector<Vertex>& forbidden) {
  const std::size_t n = shell.size();
  Graph g(n);
  auto isForbidden = [&](const Vertex& v) {
    return std::binary_search(forbidden.begin(), forbidden.end(), v);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (isForbidden(shell[i])) continue;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!isForbidden(shell[j]) && adjacent(shell[i], shell[j])) boost::add_edge(i, j, g);
  }
  std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(n);
  boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
  const auto none = boost::graph_traits<Graph>::null_vertex();
  std::vector<std::vector<Vertex>> parts;
  for (std::size_t i = 0; i < n; ++i) {
    if (mate[i] == none) {
      parts.push_back({shell[i]});
    } else if (mate[i] > i) {
      parts.push_back({shell[i], shell[mate[i]]});
    }
  }
  std::sort(parts.begin(), parts.end());
  return parts;
}

}  // namespace

ShellPartition shellPartition(const std::vector<Vertex>& cluster) {
  ShellPartition out;
  const auto shell = shellOf(cluster);
  auto forced = faceAntipodes(cluster);
  std::sort(forced.begin(), forced.end());
  out.shellSize = static_cast<int>(shell.size());
  out.parts = matchPartition(shell, {});
  out.minParts = static_cast<int>(out.parts.size());
  out.constrainedPartition = matchPartition(shell, forced);
  out.constrainedParts = static_cast<int>(out.constrainedPartition.size());
  return out;
}

int bruteForceMinParts(const std::vector<Vertex>& shell, const std::vector<Vertex>& forcedSingletons) {
  const std::size_t n = shell.size();
  std::set<Vertex> forced(forcedSingletons.begin(), forcedSingletons.end());
  std::vector<bool> used(n, false);
  int best = static_cast<int>(n);
  std::function<void(std::size_t, int)> go = [&](std::size_t i, int parts) {
    while (i < n && used[i]) ++i;
    if (i == n) {
      best = std::min(best, parts);
      return;
    }
    // Every remaining vertex costs at least half a part.
    int remaining = 0;
    for (std::size_t k = i; k < n; ++k) remaining += used[k] ? 0 : 1;
    if (parts + (remaining + 1) / 2 >= best) return;
    used[i] = true;
    if (!forced.count(shell[i])) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (used[j] || forced.count(shell[j]) || !adjacent(shell[i], shell[j])) continue;
        used[j] = true;
        go(i + 1, parts + 1);
        used[j] = false;
      }
    }
    go(i + 1, parts + 1);
    used[i] = false;
  };
  go(0, 0);
  return best;
}

}  // namespace hexid

#pragma once

#include <cstdint>
#include <vector>

#include "hexid/hexgrid.hpp"

namespace hexid {

// Identifying-code conditions as hitting-set clauses: each clause lists
// variables of which at least one must be IN. A nonempty identifier of u is
// the clause N[u]; distinguishing u from v is the clause N[u] △ N[v].
struct ClauseSet {
  int variables = 0;
  std::vector<std::vector<int>> clauses;
};

// Clauses over the fundamental-domain indices of the periodic lift.
ClauseSet periodicClauses(const PeriodLattice& lattice);
bool satisfiesAll(const ClauseSet& set, const std::vector<std::uint8_t>& bits);

// Symmetric difference of two closed neighborhoods, sorted.
std::vector<Vertex> closedNeighborhoodDifference(const Vertex& u, const Vertex& v);
std::vector<Vertex> closedNeighborhood(const Vertex& v);

enum class Assign : std::int8_t { Unknown = -1, Out = 0, In = 1 };

// Incremental assignment over a ClauseSet with unit propagation and an undo
// trail.
class Propagator {
 public:
  explicit Propagator(ClauseSet set);

  int variables() const { return set_.variables; }
  const ClauseSet& clauseSet() const { return set_; }
  Assign value(int var) const { return values_[var]; }
  bool conflict() const { return conflicts_ > 0; }

  // Assigns and propagates. Returns false on conflict; the partial state
  // stays on the trail until undoTo().
  bool assign(int var, Assign value);
  std::size_t mark() const { return trail_.size(); }
  void undoTo(std::size_t mark);

  bool clauseSatisfied(int clause) const { return numIn_[clause] > 0; }
  int clauseOpen(int clause) const;
  const std::vector<int>& occurrences(int var) const { return occurs_[var]; }

 private:
  bool setValue(int var, Assign value);

  ClauseSet set_;
  std::vector<std::vector<int>> occurs_;
  std::vector<Assign> values_;
  std::vector<int> numIn_;
  std::vector<int> numOut_;
  std::vector<int> trail_;
  std::vector<int> pending_;
  int conflicts_ = 0;
};

}  // namespace hexid

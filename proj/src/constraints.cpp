#include "hexid/constraints.hpp"

#include <algorithm>
#include <set>

namespace hexid {

std::vector<Vertex> closedNeighborhood(const Vertex& v) {
  auto n = neighbors(v);
  std::vector<Vertex> out{v, n[0], n[1], n[2]};
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> closedNeighborhoodDifference(const Vertex& u, const Vertex& v) {
  const auto nu = closedNeighborhood(u);
  const auto nv = closedNeighborhood(v);
  std::vector<Vertex> out;
  std::set_symmetric_difference(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(out));
  return out;
}

namespace {
std::vector<int> indices(const PeriodLattice& lattice, const std::vector<Vertex>& vs) {
  std::vector<int> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(lattice.index(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}
}  // namespace

ClauseSet periodicClauses(const PeriodLattice& lattice) {
  std::set<std::vector<int>> unique;
  for (int i = 0; i < lattice.domainSize(); ++i) {
    const Vertex u = lattice.vertexAt(i);
    unique.insert(indices(lattice, closedNeighborhood(u)));
    for (const auto& v : ball(u, 2)) {
      if (v == u) continue;
      unique.insert(indices(lattice, closedNeighborhoodDifference(u, v)));
    }
  }
  ClauseSet out;
  out.variables = lattice.domainSize();
  out.clauses.assign(unique.begin(), unique.end());
  return out;
}

bool satisfiesAll(const ClauseSet& set, const std::vector<std::uint8_t>& bits) {
  for (const auto& clause : set.clauses) {
    bool hit = false;
    for (int var : clause)
      if (bits[var]) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

Propagator::Propagator(ClauseSet set)
    : set_(std::move(set)),
      occurs_(set_.variables),
      values_(set_.variables, Assign::Unknown),
      numIn_(set_.clauses.size(), 0),
      numOut_(set_.clauses.size(), 0) {
  for (std::size_t c = 0; c < set_.clauses.size(); ++c) {
    if (set_.clauses[c].empty()) ++conflicts_;
    for (int var : set_.clauses[c]) occurs_[var].push_back(static_cast<int>(c));
  }
}

int Propagator::clauseOpen(int clause) const {
  return static_cast<int>(set_.clauses[clause].size()) - numIn_[clause] - numOut_[clause];
}

bool Propagator::setValue(int var, Assign value) {
  if (values_[var] != Assign::Unknown) return values_[var] == value;
  values_[var] = value;
  trail_.push_back(var);
  for (int c : occurs_[var]) {
    if (value == Assign::In) {
      ++numIn_[c];
      continue;
    }
    ++numOut_[c];
    if (numIn_[c] > 0) continue;
    const int size = static_cast<int>(set_.clauses[c].size());
    if (numOut_[c] == size) {
      ++conflicts_;
    } else if (numOut_[c] == size - 1) {
      for (int other : set_.clauses[c])
        if (values_[other] == Assign::Unknown) {
          pending_.push_back(other);
          break;
        }
    }
  }
  return true;
}

bool Propagator::assign(int var, Assign value) {
  pending_.clear();
  if (!setValue(var, value)) return false;
  while (!pending_.empty() && conflicts_ == 0) {
    const int next = pending_.back();
    pending_.pop_back();
    if (!setValue(next, Assign::In)) return false;
  }
  pending_.clear();
  return conflicts_ == 0;
}

void Propagator::undoTo(std::size_t mark) {
  while (trail_.size() > mark) {
    const int var = trail_.back();
    trail_.pop_back();
    const Assign value = values_[var];
    for (int c : occurs_[var]) {
      if (value == Assign::In) {
        --numIn_[c];
        continue;
      }
      if (numIn_[c] == 0 && numOut_[c] == static_cast<int>(set_.clauses[c].size())) --conflicts_;
      --numOut_[c];
    }
    values_[var] = Assign::Unknown;
  }
}

}  // namespace hexid

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hexid/code.hpp"
#include "hexid/rational.hpp"

namespace hexid {

struct SearchSpec {
  PeriodLattice lattice;
  std::optional<int> budget;      // only codes of at most this size are sought
  bool symmetryReduction = false; // some code vertex in cell (0,0)
  int domainCap = 32;
  double timeLimitSeconds = 0;    // 0 means no limit
};

struct SearchResult {
  std::optional<int> minSize;     // empty when no code fits (or none found yet)
  std::optional<PeriodicCode> witness;
  long long nodesExplored = 0;
  bool proofOfOptimality = false;
  bool timedOut = false;
  double seconds = 0;
};

// Branch and bound over the fundamental-domain bits. Throws DomainTooLarge
// when 2pq exceeds the cap. A timeout returns the incumbent unproven.
SearchResult minimumCode(const SearchSpec& spec);

// All lattices (p, q, shear) with 0 <= shear < p and 2pq <= maxDomain,
// ordered by domain size then p, q, shear.
std::vector<PeriodLattice> latticeFamily(int maxDomain);
// Members of latticeFamily(max of sizes) whose domain size is listed and p <= maxP.
std::vector<PeriodLattice> latticeFamily(const std::vector<int>& domainSizes, int maxP);

struct ScanRow {
  PeriodLattice lattice;
  SearchResult result;
  std::optional<Rational> density() const;
  // A proven minimum below 12/29 would contradict the lower bound.
  bool critical() const;
};

struct ScanOptions {
  int domainCap = 32;
  double timeLimitSeconds = 0;  // per lattice
  bool symmetryReduction = true;
  int threads = 1;
};

// Rows sorted by density (infeasible last), then lattice.
std::vector<ScanRow> densityScan(const std::vector<PeriodLattice>& family, const ScanOptions& options);
std::string scanCsv(const std::vector<ScanRow>& rows);
std::optional<Rational> smallestDensity(const std::vector<ScanRow>& rows);

// Every identifying code over the lattice by exhaustive enumeration.
std::vector<PeriodicCode> allCodes(const PeriodLattice& lattice, int domainCap = 20);

// A random identifying code: start from the whole grid and delete vertices in
// random order while the code stays identifying, stopping early at random.
// Empty when no identifying code has this period.
std::optional<PeriodicCode> randomCode(const PeriodLattice& lattice, std::mt19937_64& rng);

}  // namespace hexid

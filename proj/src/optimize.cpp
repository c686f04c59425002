#include "hexid/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <sstream>
#include <thread>

#include "hexid/constraints.hpp"
#include "hexid/error.hpp"

namespace hexid {

namespace {

using Clock = std::chrono::steady_clock;

class BranchAndBound {
 public:
  BranchAndBound(const SearchSpec& spec, ClauseSet clauses)
      : spec_(spec), prop_(std::move(clauses)), n_(prop_.variables()), seen_(n_, 0) {
    start_ = Clock::now();
    best_ = spec.budget ? *spec.budget + 1 : n_ + 1;
  }

  SearchResult run() {
    SearchResult out;
    bool ok = !prop_.conflict();
    for (std::size_t c = 0; ok && c < prop_.clauseSet().clauses.size(); ++c) {
      const auto& clause = prop_.clauseSet().clauses[c];
      if (clause.size() == 1) ok = prop_.assign(clause.front(), Assign::In);
    }
    if (ok) dfs();
    out.nodesExplored = nodes_;
    out.timedOut = timedOut_;
    out.proofOfOptimality = !timedOut_;
    if (!bestBits_.empty()) {
      out.minSize = best_;
      out.witness = PeriodicCode(spec_.lattice, bestBits_);
    }
    out.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return out;
  }

 private:
  int countIn() const {
    int k = 0;
    for (int v = 0; v < n_; ++v) k += prop_.value(v) == Assign::In ? 1 : 0;
    return k;
  }

  // Pairwise disjoint unsatisfied clauses each need a fresh member.
  int packingBound(std::vector<int>& open) {
    open.clear();
    const auto& clauses = prop_.clauseSet().clauses;
    for (std::size_t c = 0; c < clauses.size(); ++c)
      if (!prop_.clauseSatisfied(static_cast<int>(c))) open.push_back(static_cast<int>(c));
    std::sort(open.begin(), open.end(), [&](int x, int y) { return prop_.clauseOpen(x) < prop_.clauseOpen(y); });
    ++stamp_;
    int bound = 0;
    for (int c : open) {
      bool disjoint = true;
      for (int v : clauses[c])
        if (prop_.value(v) == Assign::Unknown && seen_[v] == stamp_) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      ++bound;
      for (int v : clauses[c])
        if (prop_.value(v) == Assign::Unknown) seen_[v] = stamp_;
    }
    return bound;
  }

  bool outOfTime() {
    if (spec_.timeLimitSeconds <= 0 || (nodes_ & 1023) != 0) return timedOut_;
    if (std::chrono::duration<double>(Clock::now() - start_).count() > spec_.timeLimitSeconds) timedOut_ = true;
    return timedOut_;
  }

  void dfs() {
    ++nodes_;
    if (outOfTime()) return;
    std::vector<int> open;
    const int size = countIn();
    const int bound = packingBound(open);
    if (open.empty()) {
      if (size < best_) {
        best_ = size;
        bestBits_.assign(n_, 0);
        for (int v = 0; v < n_; ++v) bestBits_[v] = prop_.value(v) == Assign::In ? 1 : 0;
      }
      return;
    }
    if (size + bound >= best_) return;
    // Tightest clause first; within it the variable touching most open clauses.
    const auto& clauses = prop_.clauseSet().clauses;
    const int clause = open.front();
    int var = -1;
    int bestScore = -1;
    for (int v : clauses[clause]) {
      if (prop_.value(v) != Assign::Unknown) continue;
      int score = 0;
      for (int c : prop_.occurrences(v)) score += prop_.clauseSatisfied(c) ? 0 : 1;
      if (score > bestScore) {
        bestScore = score;
        var = v;
      }
    }
    for (Assign value : {Assign::In, Assign::Out}) {
      const auto mark = prop_.mark();
      if (prop_.assign(var, value)) dfs();
      prop_.undoTo(mark);
      if (timedOut_) return;
    }
  }

  const SearchSpec& spec_;
  Propagator prop_;
  int n_;
  std::vector<int> seen_;
  int stamp_ = 0;
  int best_;
  std::vector<std::uint8_t> bestBits_;
  long long nodes_ = 0;
  bool timedOut_ = false;
  Clock::time_point start_;
};

}  // namespace

SearchResult minimumCode(const SearchSpec& spec) {
  const auto& lat = spec.lattice;
  if (lat.domainSize() > spec.domainCap)
    throw Error(ErrorKind::DomainTooLarge, "fundamental domain has " + std::to_string(lat.domainSize()) +
                                               " vertices, above the cap of " + std::to_string(spec.domainCap));
  ClauseSet clauses = periodicClauses(lat);
  if (spec.symmetryReduction) {
    // Translating any code puts one of its vertices into cell (0,0).
    std::vector<int> origin{lat.index({0, 0, 0}), lat.index({0, 0, 1})};
    std::sort(origin.begin(), origin.end());
    clauses.clauses.push_back(origin);
  }
  return BranchAndBound(spec, std::move(clauses)).run();
}

std::vector<PeriodLattice> latticeFamily(int maxDomain) {
  std::vector<PeriodLattice> out;
  for (int d = 2; d <= maxDomain; d += 2)
    for (int p = 1; p <= d / 2; ++p) {
      if ((d / 2) % p != 0) continue;
      const int q = d / 2 / p;
      for (int s = 0; s < p; ++s) out.emplace_back(p, q, s);
    }
  return out;
}

std::vector<PeriodLattice> latticeFamily(const std::vector<int>& domainSizes, int maxP) {
  std::vector<PeriodLattice> out;
  const int maxDomain = domainSizes.empty() ? 0 : *std::max_element(domainSizes.begin(), domainSizes.end());
  for (const auto& l : latticeFamily(maxDomain))
    if (l.p <= maxP && std::find(domainSizes.begin(), domainSizes.end(), l.domainSize()) != domainSizes.end())
      out.push_back(l);
  return out;
}

std::optional<Rational> ScanRow::density() const {
  if (!result.minSize) return std::nullopt;
  return Rational{*result.minSize, lattice.domainSize()};
}

bool ScanRow::critical() const {
  const auto d = density();
  return d && *d < Rational{12, 29};
}

std::vector<ScanRow> densityScan(const std::vector<PeriodLattice>& family, const ScanOptions& options) {
  std::vector<ScanRow> rows(family.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < family.size(); i = next++) {
      SearchSpec spec;
      spec.lattice = family[i];
      spec.symmetryReduction = options.symmetryReduction;
      spec.domainCap = options.domainCap;
      spec.timeLimitSeconds = options.timeLimitSeconds;
      rows[i] = {family[i], minimumCode(spec)};
    }
  };
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(family.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& x, const ScanRow& y) {
    const auto dx = x.density();
    const auto dy = y.density();
    if (dx.has_value() != dy.has_value()) return dx.has_value();
    if (dx && *dx != *dy) return *dx < *dy;
    return x.lattice < y.lattice;
  });
  return rows;
}

std::string scanCsv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "p,q,shear,minSize,density,nodesExplored,optimal\n";
  for (const auto& r : rows) {
    os << r.lattice.p << ',' << r.lattice.q << ',' << r.lattice.shear << ',';
    if (r.result.minSize) os << *r.result.minSize << ',' << formatRational(*r.density());
    else os << "INFEASIBLE,";
    os << ',' << r.result.nodesExplored << ',' << (r.result.proofOfOptimality ? "true" : "false") << '\n';
  }
  return os.str();
}

std::optional<Rational> smallestDensity(const std::vector<ScanRow>& rows) {
  std::optional<Rational> out;
  for (const auto& r : rows)
    if (auto d = r.density(); d && (!out || *d < *out)) out = d;
  return out;
}

std::vector<PeriodicCode> allCodes(const PeriodLattice& lattice, int domainCap) {
  const int n = lattice.domainSize();
  if (n > domainCap)
    throw Error(ErrorKind::DomainTooLarge, "exhaustive enumeration is capped at " + std::to_string(domainCap) + " vertices");
  const ClauseSet clauses = periodicClauses(lattice);
  std::vector<PeriodicCode> out;
  std::vector<std::uint8_t> bits(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int i = 0; i < n; ++i) bits[i] = (mask >> i) & 1u;
    if (satisfiesAll(clauses, bits)) out.emplace_back(lattice, bits);
  }
  return out;
}

std::optional<PeriodicCode> randomCode(const PeriodLattice& lattice, std::mt19937_64& rng) {
  const ClauseSet clauses = periodicClauses(lattice);
  const int n = lattice.domainSize();
  std::vector<std::uint8_t> bits(n, 1);
  if (!satisfiesAll(clauses, bits)) return std::nullopt;
  std::vector<std::vector<int>> occurs(n);
  for (std::size_t c = 0; c < clauses.clauses.size(); ++c)
    for (int v : clauses.clauses[c]) occurs[v].push_back(static_cast<int>(c));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const int attempts = std::uniform_int_distribution<int>(n / 2, n)(rng);
  for (int i = 0; i < attempts; ++i) {
    const int v = order[i];
    bits[v] = 0;
    for (int c : occurs[v]) {
      const auto& clause = clauses.clauses[c];
      if (std::none_of(clause.begin(), clause.end(), [&](int u) { return bits[u] != 0; })) {
        bits[v] = 1;
        break;
      }
    }
  }
  return PeriodicCode(lattice, bits);
}

}  // namespace hexid

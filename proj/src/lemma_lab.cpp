#include "hexid/lemma_lab.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <functional>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "hexid/constraints.hpp"
#include "hexid/error.hpp"
#include "hexid/predicates.hpp"

namespace hexid {

Status WindowConfig::at(const Vertex& v) const {
  auto it = std::lower_bound(region.begin(), region.end(), v);
  if (it == region.end() || *it != v) return Status::Unknown;
  return status[it - region.begin()];
}

std::vector<std::vector<Vertex>> windowClauses(const std::vector<Vertex>& region) {
  std::vector<Vertex> sorted = region;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto inside = [&](const std::vector<Vertex>& vs) {
    return std::all_of(vs.begin(), vs.end(), [&](const Vertex& v) { return std::binary_search(sorted.begin(), sorted.end(), v); });
  };
  std::set<std::vector<Vertex>> out;
  for (const auto& u : ballAround(sorted, 1)) {
    if (auto n = closedNeighborhood(u); inside(n)) out.insert(n);
    for (const auto& v : ball(u, 2)) {
      if (!(u < v)) continue;
      if (auto d = closedNeighborhoodDifference(u, v); inside(d)) out.insert(d);
    }
  }
  return {out.begin(), out.end()};
}

namespace {

// Region indexed in branching order, with a propagator over the window
// clauses. Everything outside the region reads as Unknown.
class Window : public World {
 public:
  Window(const std::vector<Vertex>& region, const std::vector<Vertex>& focus) : order_(region) {
    std::sort(order_.begin(), order_.end());
    order_.erase(std::unique(order_.begin(), order_.end()), order_.end());
    if (!focus.empty()) {
      std::vector<std::pair<int, Vertex>> keyed;
      for (const auto& v : order_) keyed.emplace_back(distanceToSet(v, focus), v);
      std::sort(keyed.begin(), keyed.end());
      for (std::size_t i = 0; i < keyed.size(); ++i) order_[i] = keyed[i].second;
    }
    for (std::size_t i = 0; i < order_.size(); ++i) index_[order_[i]] = static_cast<int>(i);
    ClauseSet set;
    set.variables = static_cast<int>(order_.size());
    for (const auto& clause : windowClauses(order_)) {
      std::vector<int> c;
      for (const auto& v : clause) c.push_back(index_.at(v));
      std::sort(c.begin(), c.end());
      set.clauses.push_back(std::move(c));
    }
    prop_.emplace(std::move(set));
  }

  Status at(const Vertex& v) const override {
    auto it = index_.find(v);
    if (it == index_.end()) return Status::Unknown;
    switch (prop_->value(it->second)) {
      case Assign::In: return Status::In;
      case Assign::Out: return Status::Out;
      default: return Status::Unknown;
    }
  }
  int rank(const Vertex& v) const override {
    auto it = index_.find(v);
    return it == index_.end() ? INT_MAX / 2 : it->second;
  }
  ClusterView cluster(const Vertex& x) const override { return exploreCluster(*this, x); }
  Tri sameCluster(const Vertex& x, const Vertex& y) const override {
    return exploreSameCluster(*this, x, y, order_.size() + 2);
  }

  bool inside(const Vertex& v) const { return index_.count(v) != 0; }
  int size() const { return static_cast<int>(order_.size()); }
  const Vertex& vertex(int i) const { return order_[i]; }
  Propagator& prop() { return *prop_; }

  bool start() {
    if (prop_->conflict()) return false;
    for (const auto& c : prop_->clauseSet().clauses)
      if (c.size() == 1 && !prop_->assign(c.front(), Assign::In)) return false;
    return true;
  }
  bool force(const Vertex& v, Status s) {
    if (s == Status::Unknown || !inside(v)) return true;
    return prop_->assign(index_.at(v), s == Status::In ? Assign::In : Assign::Out);
  }

  WindowConfig snapshot() const {
    WindowConfig c;
    c.region = order_;
    std::sort(c.region.begin(), c.region.end());
    for (const auto& v : c.region) {
      c.status.push_back(at(v));
      const auto n = neighbors(v);
      if (std::all_of(n.begin(), n.end(), [&](const Vertex& u) { return inside(u); })) c.interior.push_back(v);
    }
    return c;
  }

 private:
  std::vector<Vertex> order_;
  std::unordered_map<Vertex, int, VertexHash> index_;
  std::optional<Propagator> prop_;
};

}  // namespace

std::vector<WindowConfig> enumerate(const std::vector<Vertex>& region, const std::map<Vertex, Status>& forced,
                                    std::size_t cap) {
  std::vector<Vertex> sorted = region;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() > cap)
    throw Error(ErrorKind::RegionTooLarge, "region has " + std::to_string(sorted.size()) + " vertices, cap is " +
                                               std::to_string(cap));
  Window w(sorted, {});
  std::vector<WindowConfig> out;
  if (!w.start()) return out;
  for (const auto& [v, s] : forced)
    if (!w.force(v, s)) return out;
  auto& prop = w.prop();
  std::function<void(int)> dfs = [&](int from) {
    int var = from;
    while (var < w.size() && prop.value(var) != Assign::Unknown) ++var;
    if (var == w.size()) {
      out.push_back(w.snapshot());
      return;
    }
    for (Assign a : {Assign::In, Assign::Out}) {
      const auto mark = prop.mark();
      if (prop.assign(var, a)) dfs(var + 1);
      prop.undoTo(mark);
    }
  };
  dfs(0);
  return out;
}

bool feasible(const WindowConfig& config) {
  for (const auto& clause : windowClauses(config.region))
    if (std::all_of(clause.begin(), clause.end(), [&](const Vertex& v) { return config.at(v) == Status::Out; }))
      return false;
  return true;
}

const char* to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L1: return "L1";
    case LemmaId::L2: return "L2";
    case LemmaId::L3: return "L3";
    case LemmaId::L4: return "L4";
    default: return "L5partition";
  }
}

LemmaId parseLemmaId(const std::string& text) {
  for (LemmaId id : {LemmaId::L1, LemmaId::L2, LemmaId::L3, LemmaId::L4, LemmaId::L5partition})
    if (text == to_string(id)) return id;
  if (text == "L5") return LemmaId::L5partition;
  throw Error(ErrorKind::InvalidArgument, "unknown lemma '" + text + "' (expected L1..L4 or L5partition)");
}

std::string defaultTemplate(LemmaId id) {
  switch (id) {
    case LemmaId::L1: return "fig3a";
    case LemmaId::L2: return "fig3b";
    case LemmaId::L3: return "fig4";
    case LemmaId::L4: return "fig5";
    default: return "";
  }
}

int defaultRadius(LemmaId id) {
  switch (id) {
    case LemmaId::L1: return 6;
    case LemmaId::L2: return 6;
    case LemmaId::L3: return 6;
    case LemmaId::L4: return 5;
    default: return 8;
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "VERIFIED";
    case Verdict::Counterexample: return "COUNTEREXAMPLE";
    default: return "INCONCLUSIVE";
  }
}

namespace {

using Clock = std::chrono::steady_clock;

// Hypothesis and conclusion of one lemma, both three-valued.
struct LemmaForm {
  std::function<Tri(const World&)> hypothesis;
  std::function<Tri(const World&)> conclusion;
};

Tri exactCluster(const World& w, const std::vector<Vertex>& members) {
  Tri t = Tri::yes();
  for (const auto& v : members) {
    t = triAnd(t, w.in(v));
    for (const auto& u : neighbors(v))
      if (!std::binary_search(members.begin(), members.end(), u)) t = triAnd(t, w.out(u));
  }
  return t;
}

LemmaForm formFor(LemmaId id, const LemmaTemplate& tmpl) {
  auto need = [&](std::size_t count, std::size_t size) {
    if (tmpl.subjects.size() != count)
      throw Error(ErrorKind::InvalidArgument, std::string(to_string(id)) + " needs " + std::to_string(count) + " subject cluster(s)");
    for (const auto& s : tmpl.subjects)
      if (s.size() != size)
        throw Error(ErrorKind::InvalidArgument, std::string(to_string(id)) + " needs subjects of size " + std::to_string(size));
  };
  switch (id) {
    case LemmaId::L1: {
      need(1, 1);
      const Vertex v = tmpl.subjects[0][0];
      return {[v](const World& w) { return triAnd(oneClusterAt(w, v), triNot(crowdedOne(w, v))); },
              [v](const World& w) { return oneNearbySome(w, v); }};
    }
    case LemmaId::L2: {
      need(1, 3);
      const auto members = tmpl.subjects[0];
      const ThreeCluster c = asThreeCluster(members);
      return {[=](const World& w) { return triAnd(exactCluster(w, members), triNot(openThree(w, c))); },
              [=](const World& w) {
                const CountRange n = shellClusters(w, c);
                return triOr(atMost(n, 9), triAnd(atMost(n, 10), crowdedThree(w, c)));
              }};
    }
    case LemmaId::L3: {
      need(1, 3);
      const auto members = tmpl.subjects[0];
      const ThreeCluster c = asThreeCluster(members);
      return {[=](const World& w) {
                Tri t = exactCluster(w, members);
                return t.isFalse() ? t : triAnd(t, needyThree(w, c));
              },
              [=](const World& w) { return leavesNearThreePlus(w, c); }};
    }
    case LemmaId::L4: {
      need(2, 3);
      const auto m1 = tmpl.subjects[0];
      const auto m2 = tmpl.subjects[1];
      const ThreeCluster c1 = asThreeCluster(m1);
      const ThreeCluster c2 = asThreeCluster(m2);
      std::vector<Vertex> both = m1;
      both.insert(both.end(), m2.begin(), m2.end());
      return {[=](const World& w) {
                return triAnd(triAnd(exactCluster(w, m1), exactCluster(w, m2)), pairedThree(w, c1, c2));
              },
              [=](const World& w) {
                const CountRange n = nearbyThreatened(w, {c1, c2});
                Tri small = atMost(n, 6);
                if (small.isTrue()) return small;
                return triOr(small, triAnd(atMost(n, 7), heavyWithin(w, both, 3)));
              }};
    }
    default: throw Error(ErrorKind::InvalidArgument, "L5partition has no window form");
  }
}

class LemmaSearch {
 public:
  LemmaSearch(Window& w, const LemmaForm& form, const CheckOptions& options, LemmaVerdict& out)
      : w_(w), form_(form), options_(options), out_(out), start_(Clock::now()) {}

  void run() { dfs(); }
  bool stopped() const { return found_ || timedOut_; }
  bool timedOut() const { return timedOut_; }
  bool found() const { return found_; }

 private:
  void dfs() {
    ++out_.configsExplored;
    if (options_.timeLimitSeconds > 0 && (out_.configsExplored & 255) == 0 &&
        std::chrono::duration<double>(Clock::now() - start_).count() > options_.timeLimitSeconds) {
      timedOut_ = true;
      return;
    }
    const Tri h = form_.hypothesis(w_);
    if (h.isFalse()) {
      ++out_.leaves;
      return;
    }
    const Tri c = form_.conclusion(w_);
    if (c.isTrue()) {
      ++out_.leaves;
      return;
    }
    if (h.isTrue() && c.isFalse()) {
      // Setting every free vertex IN satisfies all window clauses that are
      // not already violated, so this branch extends to a feasible config.
      found_ = true;
      out_.config = w_.snapshot();
      return;
    }
    Vertex v;
    if (h.isUnknown() && w_.inside(h.need())) v = h.need();
    else if (c.isUnknown() && w_.inside(c.need())) v = c.need();
    else {
      ++out_.undecided;
      if (!out_.config) {
        out_.config = w_.snapshot();
        const Tri& open = h.isUnknown() ? h : c;
        out_.detail = std::string(h.isUnknown() ? "hypothesis" : "conclusion") + " depends on " + to_string(open.need()) +
                      " outside the window";
      }
      return;
    }
    auto& prop = w_.prop();
    const int var = w_.rank(v);
    for (Assign a : {Assign::In, Assign::Out}) {
      const auto mark = prop.mark();
      if (prop.assign(var, a)) dfs();
      prop.undoTo(mark);
      if (stopped()) return;
    }
  }

  Window& w_;
  const LemmaForm& form_;
  const CheckOptions& options_;
  LemmaVerdict& out_;
  Clock::time_point start_;
  bool found_ = false;
  bool timedOut_ = false;
};

std::vector<Vertex> normalizeAnimal(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  const Offset t{vs.front().a, vs.front().b};
  for (auto& v : vs) v = v - t;
  std::sort(vs.begin(), vs.end());
  return vs;
}

LemmaVerdict checkPartition(int maxSize) {
  LemmaVerdict out;
  out.lemma = LemmaId::L5partition;
  out.radius = maxSize;
  const auto t0 = Clock::now();
  for (int m = 1; m <= maxSize && out.result == Verdict::Verified; ++m) {
    for (const auto& animal : latticeAnimals(m)) {
      ++out.configsExplored;
      const ShellPartition p = shellPartition(animal);
      if (p.minParts <= m + 8 && p.constrainedParts <= m + 8) {
        ++out.leaves;
        continue;
      }
      out.result = Verdict::Counterexample;
      WindowConfig c;
      c.region = ballAround(animal, 3);
      for (const auto& v : c.region)
        c.status.push_back(std::binary_search(animal.begin(), animal.end(), v) ? Status::In : Status::Out);
      out.config = c;
      out.detail = "cluster of size " + std::to_string(m) + " needs " + std::to_string(p.minParts) + " parts (" +
                   std::to_string(p.constrainedParts) + " with face antipodes as singletons)";
      break;
    }
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

}  // namespace

LemmaVerdict checkLemma(LemmaId id, const LemmaTemplate& tmpl, int radius, const CheckOptions& options) {
  if (id == LemmaId::L5partition) return checkPartition(radius);
  if (radius < 0) throw Error(ErrorKind::InvalidArgument, "radius must be nonnegative");
  const LemmaForm form = formFor(id, tmpl);
  std::vector<Vertex> focus;
  for (const auto& s : tmpl.subjects) focus.insert(focus.end(), s.begin(), s.end());
  std::sort(focus.begin(), focus.end());
  std::vector<Vertex> region = ballAround(focus, radius);
  for (const auto& [v, st] : tmpl.vertices) region.push_back(v);
  std::sort(region.begin(), region.end());
  region.erase(std::unique(region.begin(), region.end()), region.end());
  if (region.size() > options.regionCap)
    throw Error(ErrorKind::RegionTooLarge, "window has " + std::to_string(region.size()) + " vertices, cap is " +
                                               std::to_string(options.regionCap));
  LemmaVerdict out;
  out.lemma = id;
  out.templateName = tmpl.name;
  out.radius = radius;
  out.regionSize = region.size();
  const auto t0 = Clock::now();
  Window w(region, focus);
  bool ok = w.start();
  for (const auto& [v, st] : tmpl.vertices) ok = ok && w.force(v, st);
  if (ok) {
    LemmaSearch search(w, form, options, out);
    search.run();
    if (search.found()) {
      out.result = Verdict::Counterexample;
      out.detail = "hypothesis holds and conclusion fails on a feasible window";
    } else if (search.timedOut()) {
      out.result = Verdict::Inconclusive;
      out.detail = "time limit reached";
    } else if (out.undecided > 0) {
      out.result = Verdict::Inconclusive;
    }
  } else {
    out.detail = "template is infeasible";
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

LemmaVerdict checkLemma(LemmaId id, int radius, const CheckOptions& options) {
  if (id == LemmaId::L5partition) return checkPartition(radius);
  return checkLemma(id, namedTemplate(defaultTemplate(id)), radius, options);
}

PartitionBound shellPartitionBound(const ClusterMap& map, const ClusterKey& key) {
  if (map.infinite(key)) throw Error(ErrorKind::UnsupportedKind, "infinite clusters have no finite shell");
  const auto members = map.vertices(key);
  const ShellPartition p = shellPartition(members);
  return {static_cast<int>(members.size()), p.shellSize, p.minParts, p.constrainedParts};
}

std::vector<std::vector<Vertex>> latticeAnimals(int size) {
  if (size < 1) return {};
  std::set<std::vector<Vertex>> level{{Vertex{0, 0, 0}}, {Vertex{0, 0, 1}}};
  for (int m = 1; m < size; ++m) {
    std::set<std::vector<Vertex>> next;
    for (const auto& animal : level)
      for (const auto& v : animal)
        for (const auto& u : neighbors(v)) {
          if (std::binary_search(animal.begin(), animal.end(), u)) continue;
          auto grown = animal;
          grown.push_back(u);
          next.insert(normalizeAnimal(std::move(grown)));
        }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

std::string verdictJson(const LemmaVerdict& v) {
  using nlohmann::json;
  json doc{{"lemma", to_string(v.lemma)},
           {"result", to_string(v.result)},
           {"template", v.templateName},
           {"radius", v.radius},
           {"regionSize", v.regionSize},
           {"configsExplored", v.configsExplored},
           {"decidedBranches", v.leaves},
           {"undecidedBranches", v.undecided},
           {"detail", v.detail}};
  if (v.config) {
    json in = json::array();
    json out = json::array();
    json unknown = json::array();
    for (std::size_t i = 0; i < v.config->region.size(); ++i) {
      const Vertex& x = v.config->region[i];
      json triple{x.a, x.b, x.s};
      switch (v.config->status[i]) {
        case Status::In: in.push_back(triple); break;
        case Status::Out: out.push_back(triple); break;
        default: unknown.push_back(triple);
      }
    }
    doc["config"] = {{"in", in}, {"out", out}, {"unknown", unknown}};
  }
  return doc.dump(2);
}

}  // namespace hexid

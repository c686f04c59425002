#include "hexid/discharge.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hexid/error.hpp"

namespace hexid {

const char* to_string(Engine e) { return e == Engine::Prop1 ? "prop1" : "main"; }

Engine parseEngine(const std::string& name) {
  if (name == "prop1") return Engine::Prop1;
  if (name == "main") return Engine::Main;
  throw Error(ErrorKind::InvalidArgument, "unknown engine '" + name + "' (expected prop1 or main)");
}

Rational ChargeLedger::domainTotal() const {
  Rational sum{0};
  const auto& lat = code.lattice();
  for (int i = 0; i < lat.domainSize(); ++i)
    if (!code.bit(i)) sum += finals[i];
  for (const auto& o : orbits) sum += o.total;
  return sum;
}

namespace {

const Rational kUnit{1, 29};

struct OrbitInfo {
  ClusterKind kind;
  bool open = false;
  bool crowded = false;
};

std::string describe(const ClusterMap& map, int orbit) {
  std::ostringstream os;
  const auto& o = map.orbit(orbit);
  os << "cluster " << ClusterKey{orbit, {}} << " {";
  for (std::size_t i = 0; i < o.lift.size(); ++i) os << (i ? " " : "") << o.lift[i];
  os << (o.infinite() ? " ...}" : "}");
  return os.str();
}

int findRoot(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

class MainRules {
 public:
  MainRules(const ClusterMap& map, ChargeLedger& ledger)
      : map_(map), world_(map), ledger_(ledger), info_(map.orbits().size()) {
    for (const auto& orbit : map.orbits()) {
      const ClusterKey key{orbit.id, {}};
      auto& in = info_[orbit.id];
      in.kind = kindOf(map, key);
      if (in.kind == ClusterKind::Three) {
        ThreeCluster t = asThreeCluster(map.vertices(key));
        in.open = openThree(world_, t).definite();
        in.crowded = crowdedThree(world_, t).definite();
      }
    }
  }

  const OrbitInfo& info(int orbit) const { return info_[orbit]; }

  void rulesTwoToFour() {
    const auto& lat = map_.lattice();
    for (int i = 0; i < lat.domainSize(); ++i) {
      if (!map_.code().bit(i)) continue;
      const Vertex v = lat.vertexAt(i);
      const ClusterKey self = map_.keyOf(v);
      if (info_[self.orbit].kind != ClusterKind::One) continue;
      if (crowdedOne(world_, v).definite()) continue;
      std::set<ClusterKey> big, closed, open;
      for (const auto& x : ball(v, 3)) {
        if (x == v || !map_.code().contains(x)) continue;
        const ClusterKey k = map_.keyOf(x);
        const auto& in = info_[k.orbit];
        if (in.kind == ClusterKind::Big) {
          big.insert(k);
        } else if (in.kind == ClusterKind::Three) {
          if (!in.open) closed.insert(k);
          else if (distance(v, asThreeCluster(map_.vertices(k)).center) <= 3) open.insert(k);
        }
      }
      if (!big.empty()) {
        pay(*big.begin(), v, 2);
      } else if (!closed.empty()) {
        pay(*closed.begin(), v, 3);
      } else if (!open.empty()) {
        pay(ruleFourDonor(v, open), v, 4);
      } else {
        ledger_.anomalies.push_back("uncrowded 1-cluster " + to_string(v) + " is nearby no 3+-cluster");
      }
    }
  }

  void ruleFive() {
    for (const auto& orbit : map_.orbits()) {
      const ClusterKey key{orbit.id, {}};
      if (info_[orbit.id].kind != ClusterKind::Three) continue;
      const ThreeCluster c1 = asThreeCluster(map_.vertices(key));
      if (!needyThree(world_, c1).definite()) continue;
      const auto paired = partners(map_, key);  // paired clusters never pay each other
      std::set<ClusterKey> donors;
      for (const auto& x : ballAround(c1.vertices(), 3)) {
        if (!map_.code().contains(x)) continue;
        const ClusterKey k = map_.keyOf(x);
        if (k == key || info_[k.orbit].kind != ClusterKind::Three || !info_[k.orbit].open) continue;
        if (std::find(paired.begin(), paired.end(), k) != paired.end()) continue;
        if (leavesNear(c1, map_.vertices(k))) donors.insert(k);
      }
      if (donors.empty()) {
        ledger_.anomalies.push_back("needy " + describe(map_, orbit.id) +
                                    " has no open 3-cluster within distance three of both leaves");
        continue;
      }
      const ClusterKey donor = *donors.begin();
      ledger_.transfers.push_back({donor, key, kUnit, 5});
      credit(donor, key);
    }
  }

 private:
  ClusterKey ruleFourDonor(const Vertex& v, const std::set<ClusterKey>& open) const {
    for (const auto& k : open)
      if (info_[k.orbit].crowded) return k;
    for (const auto& k : open)
      if (shareFace(v, asThreeCluster(map_.vertices(k)).center)) return k;
    return *open.begin();
  }

  void pay(const ClusterKey& donor, const Vertex& v, int rule) {
    const ClusterKey recipient = map_.keyOf(v);
    ledger_.transfers.push_back({donor, v, kUnit, rule});
    if (rule == 3) ++ledger_.orbits[donor.orbit].rule3Recipients;
    credit(donor, recipient);
  }

  void credit(const ClusterKey& donor, const ClusterKey& recipient) {
    ledger_.orbits[donor.orbit].sent += kUnit;
    ledger_.orbits[recipient.orbit].received += kUnit;
    ledger_.recipients[donor.orbit].push_back(map_.canonicalKey(recipient.orbit, recipient.shift - donor.shift));
  }

  const ClusterMap& map_;
  PeriodicWorld world_;
  ChargeLedger& ledger_;
  std::vector<OrbitInfo> info_;
};

}  // namespace

ChargeLedger runEngine(Engine engine, const PeriodicCode& code) {
  if (!isIdentifying(code)) throw Error(ErrorKind::InvalidCode, "code is not identifying");
  const ClusterMap map(code);
  const auto& lat = code.lattice();
  const int n = lat.domainSize();
  ChargeLedger ledger;
  ledger.engine = engine;
  ledger.code = code;
  ledger.finals.assign(n, Rational{0});
  ledger.orbits.resize(map.orbits().size());
  ledger.recipients.resize(map.orbits().size());

  const Rational unit = engine == Engine::Main ? Rational{12, 29} : Rational{2, 5};
  const int rule1 = engine == Engine::Main ? 1 : 0;
  auto codeNeighbors = [&](const Vertex& w) {
    int k = 0;
    for (const auto& u : neighbors(w)) k += code.contains(u) ? 1 : 0;
    return k;
  };
  for (int i = 0; i < n; ++i) {
    const Vertex v = lat.vertexAt(i);
    if (code.bit(i)) {
      Rational f{1};
      for (const auto& w : neighbors(v))
        if (!code.contains(w)) f -= unit / codeNeighbors(w);
      ledger.finals[i] = f;
    } else {
      const int k = codeNeighbors(v);
      for (const auto& u : neighbors(v))
        if (code.contains(u)) ledger.transfers.push_back({u, v, unit / k, rule1});
      ledger.finals[i] = unit;
    }
  }

  PeriodicWorld world(map);
  for (int i = 0; i < n; ++i) {
    if (!code.bit(i)) continue;
    auto& o = ledger.orbits[map.keyOf(lat.vertexAt(i)).orbit];
    ++o.reps;
    o.vertexFinal += ledger.finals[i];
    o.outflow += Rational{1} - ledger.finals[i];
  }
  for (const auto& orbit : map.orbits()) {
    auto& o = ledger.orbits[orbit.id];
    const ClusterKey key{orbit.id, {}};
    o.kind = kindOf(map, key);
    o.infinite = orbit.infinite();
    if (o.kind == ClusterKind::Three) {
      ThreeCluster t = asThreeCluster(map.vertices(key));
      o.open = openThree(world, t).definite();
      o.crowded = crowdedThree(world, t).definite();
    } else if (o.kind == ClusterKind::One) {
      o.crowded = crowdedOne(world, orbit.anchor()).definite();
    }
  }

  if (engine == Engine::Main) {
    MainRules rules(map, ledger);
    rules.rulesTwoToFour();
    rules.ruleFive();
    for (const auto& orbit : map.orbits()) {
      auto& o = ledger.orbits[orbit.id];
      if (o.kind == ClusterKind::Three) o.needy = needyThree(world, asThreeCluster(map.vertices({orbit.id, {}}))).definite();
    }
    ledger.pairs = pairs(map);
  }

  std::vector<int> parent(ledger.orbits.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [a, b] : ledger.pairs) parent[findRoot(parent, a.orbit)] = findRoot(parent, b.orbit);
  for (std::size_t id = 0; id < ledger.orbits.size(); ++id) {
    auto& o = ledger.orbits[id];
    o.outflow += o.sent;
    o.total = o.vertexFinal - o.sent + o.received;
    o.group = findRoot(parent, static_cast<int>(id));
  }
  return ledger;
}

ChargeLedger runProp1(const PeriodicCode& code) { return runEngine(Engine::Prop1, code); }
ChargeLedger runMain(const PeriodicCode& code) { return runEngine(Engine::Main, code); }

AuditReport audit(const ChargeLedger& ledger, const Rational& bound) {
  AuditReport report;
  report.bound = bound;
  const auto& lat = ledger.code.lattice();
  for (int i = 0; i < lat.domainSize(); ++i) {
    const bool member = ledger.code.bit(i);
    if ((!member || ledger.engine == Engine::Prop1) && ledger.finals[i] < bound)
      report.failures.push_back({"vertex " + to_string(lat.vertexAt(i)), ledger.finals[i], bound});
  }
  const ClusterMap map(ledger.code);
  std::map<int, std::pair<Rational, int>> groups;
  std::map<int, int> groupSize;
  for (std::size_t id = 0; id < ledger.orbits.size(); ++id) {
    const auto& o = ledger.orbits[id];
    auto& g = groups[o.group];
    g.first += o.total;
    g.second += o.reps;
    ++groupSize[o.group];
  }
  for (std::size_t id = 0; id < ledger.orbits.size(); ++id) {
    const auto& o = ledger.orbits[id];
    const Rational need = bound * o.reps;
    if (o.total >= need) continue;
    AuditFailure f{describe(map, static_cast<int>(id)), o.total, need};
    if (groupSize[o.group] > 1) report.pairedShortfalls.push_back(f);
    else report.failures.push_back(f);
  }
  for (const auto& [root, g] : groups) {
    if (groupSize[root] < 2 || g.first >= bound * g.second) continue;
    report.failures.push_back({"paired group of " + describe(map, root), g.first, bound * g.second});
  }
  if (ledger.engine == Engine::Main) {
    for (std::size_t id = 0; id < ledger.orbits.size(); ++id) {
      const auto& o = ledger.orbits[id];
      if (o.kind == ClusterKind::Three && o.open) report.outflows.emplace_back(static_cast<int>(id), o.outflow);
    }
  }
  report.conserved = ledger.domainTotal() == Rational{ledger.code.size()};
  return report;
}

Rational outflow(const ChargeLedger& ledger, int orbit) {
  if (orbit < 0 || orbit >= static_cast<int>(ledger.orbits.size()))
    throw Error(ErrorKind::InvalidArgument, "no such cluster orbit");
  const auto& o = ledger.orbits[orbit];
  if (o.kind != ClusterKind::Three || !o.open)
    throw Error(ErrorKind::UnsupportedKind, "outflow is audited for open 3-clusters only");
  return o.outflow;
}

ClaimAudit auditClaims(const ChargeLedger& ledger) {
  ClaimAudit out;
  if (ledger.engine != Engine::Main) return out;
  const ClusterMap map(ledger.code);
  const Rational claim1{52, 29};
  const Rational claim2{51, 29};
  for (std::size_t id = 0; id < ledger.orbits.size(); ++id) {
    const auto& o = ledger.orbits[id];
    if (o.kind != ClusterKind::Three || !o.open) continue;
    ++out.openClusters;
    const int orbit = static_cast<int>(id);
    const ClusterKey key{orbit, {}};
    const auto members = map.vertices(key);
    const std::string name = describe(map, orbit);
    if (o.outflow > claim1) out.claim1Failures.push_back(name + " gives " + formatRational(o.outflow));
    const auto& got = ledger.recipients[id];
    bool premise = false;
    for (const auto& v : ballAround(members, 2)) {
      if (!map.code().contains(v) || distanceToSet(v, members) != 2) continue;
      const ClusterKey k = map.keyOf(v);
      if (std::find(got.begin(), got.end(), k) == got.end()) premise = true;
    }
    if (premise) {
      ++out.claim2Premises;
      if (o.outflow > claim2) out.claim2Failures.push_back(name + " gives " + formatRational(o.outflow));
    }
    if (!o.crowded) {
      bool heavy = false;
      for (const auto& k : nearbyTargets(map, key)) {
        const ClusterKind kind = kindOf(map, k);
        if (kind == ClusterKind::Big || (kind == ClusterKind::Three && !ledger.orbits[k.orbit].open)) heavy = true;
      }
      if (heavy) {
        ++out.claim2bPremises;
        if (o.outflow > claim2 || o.needy)
          out.claim2bFailures.push_back(name + " gives " + formatRational(o.outflow) + (o.needy ? " and is needy" : ""));
      }
    }
  }
  return out;
}

namespace {

nlohmann::json partyJson(const Party& p) {
  if (const auto* v = std::get_if<Vertex>(&p)) return {{"vertex", {v->a, v->b, v->s}}};
  const auto& k = std::get<ClusterKey>(p);
  return {{"cluster", {{"orbit", k.orbit}, {"shift", {k.shift.a, k.shift.b}}}}};
}

nlohmann::json amountJson(const Rational& r, bool approx) {
  if (!approx) return formatRational(r);
  return {{"exact", formatRational(r)}, {"approx", toDouble(r)}};
}

}  // namespace

std::string ledgerJson(const ChargeLedger& ledger, const AuditReport* report, bool approx) {
  using nlohmann::json;
  const auto& lat = ledger.code.lattice();
  json doc;
  doc["engine"] = to_string(ledger.engine);
  doc["lattice"] = {{"p", lat.p}, {"q", lat.q}, {"shear", lat.shear}};
  doc["density"] = formatRational(density(ledger.code));
  json transfers = json::array();
  for (const auto& t : ledger.transfers)
    transfers.push_back({{"from", partyJson(t.from)}, {"to", partyJson(t.to)}, {"amount", amountJson(t.amount, approx)}, {"rule", t.rule}});
  doc["transfers"] = transfers;
  json finals = json::array();
  for (int i = 0; i < lat.domainSize(); ++i) {
    const Vertex v = lat.vertexAt(i);
    finals.push_back({{"vertex", {v.a, v.b, v.s}}, {"inCode", ledger.code.bit(i)}, {"final", amountJson(ledger.finals[i], approx)}});
  }
  doc["finals"] = finals;
  json clusters = json::array();
  for (std::size_t id = 0; id < ledger.orbits.size(); ++id) {
    const auto& o = ledger.orbits[id];
    json c{{"orbit", id},
           {"kind", to_string(o.kind)},
           {"infinite", o.infinite},
           {"domainVertices", o.reps},
           {"total", amountJson(o.total, approx)},
           {"sent", amountJson(o.sent, approx)},
           {"received", amountJson(o.received, approx)},
           {"outflow", amountJson(o.outflow, approx)},
           {"pairingGroup", o.group}};
    if (o.kind == ClusterKind::Three) {
      c["open"] = o.open;
      c["crowded"] = o.crowded;
      c["needy"] = o.needy;
    }
    clusters.push_back(std::move(c));
  }
  doc["clusterTotals"] = clusters;
  doc["anomalies"] = ledger.anomalies;
  doc["domainTotal"] = formatRational(ledger.domainTotal());
  if (report) {
    json failures = json::array();
    for (const auto& f : report->failures)
      failures.push_back({{"subject", f.subject}, {"final", amountJson(f.value, approx)}, {"required", amountJson(f.required, approx)}});
    json shortfalls = json::array();
    for (const auto& f : report->pairedShortfalls)
      shortfalls.push_back({{"subject", f.subject}, {"final", amountJson(f.value, approx)}, {"required", amountJson(f.required, approx)}});
    json outflows = json::array();
    for (const auto& [orbit, value] : report->outflows) outflows.push_back({{"orbit", orbit}, {"outflow", amountJson(value, approx)}});
    doc["audit"] = {{"bound", formatRational(report->bound)},
                    {"ok", report->ok()},
                    {"conserved", report->conserved},
                    {"failures", failures},
                    {"pairedShortfalls", shortfalls},
                    {"outflows", outflows}};
  }
  return doc.dump(2);
}

}  // namespace hexid

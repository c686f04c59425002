#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hexid/cluster.hpp"
#include "hexid/code.hpp"
#include "hexid/rational.hpp"

namespace hexid {

enum class Engine { Prop1, Main };
const char* to_string(Engine e);
Engine parseEngine(const std::string& name);

// Rule ids: 0 is the single rule of the 2/5 engine, 1..5 the main rules.
using Party = std::variant<Vertex, ClusterKey>;

struct Transfer {
  Party from;
  Party to;
  Rational amount;
  int rule = 0;
};

struct OrbitCharge {
  ClusterKind kind = ClusterKind::One;
  bool infinite = false;
  bool open = false;
  bool crowded = false;
  bool needy = false;
  int reps = 0;              // domain vertices of the orbit
  Rational vertexFinal{0};   // sum of per-vertex finals after rule 1
  Rational sent{0};          // rules 2..5, per fundamental domain
  Rational received{0};
  Rational total{0};         // vertexFinal - sent + received
  Rational outflow{0};       // rule-1 charge leaving its vertices plus `sent`
  int rule3Recipients = 0;
  int group = 0;             // pairing component; audited together
};

// One fundamental domain's worth of discharging. Every recipient lies in
// the domain (vertices) or is the shift-zero member of its orbit (clusters).
struct ChargeLedger {
  Engine engine = Engine::Main;
  PeriodicCode code;
  std::vector<Transfer> transfers;
  std::vector<Rational> finals;     // per domain index
  std::vector<OrbitCharge> orbits;  // per cluster orbit
  std::vector<std::pair<ClusterKey, ClusterKey>> pairs;
  std::vector<std::string> anomalies;
  // Recipient clusters of each orbit's shift-zero member (rules 2..5).
  std::vector<std::vector<ClusterKey>> recipients;

  Rational domainTotal() const;
};

// Throws InvalidCode when the code is not identifying.
ChargeLedger runProp1(const PeriodicCode& code);
ChargeLedger runMain(const PeriodicCode& code);
ChargeLedger runEngine(Engine engine, const PeriodicCode& code);

struct AuditFailure {
  std::string subject;
  Rational value;
  Rational required;
};

struct AuditReport {
  Rational bound;
  std::vector<AuditFailure> failures;
  // Open 3-cluster outflows per orbit (main engine only).
  std::vector<std::pair<int, Rational>> outflows;
  // Paired clusters below the bound on their own; covered by their group.
  std::vector<AuditFailure> pairedShortfalls;
  bool conserved = true;
  bool ok() const { return failures.empty() && conserved; }
};

// Vertices outside the code must reach the bound; clusters must reach
// bound * size (per domain for infinite clusters), pairing groups jointly.
// The 2/5 engine is also audited per code vertex.
AuditReport audit(const ChargeLedger& ledger, const Rational& bound);

// Total charge given away by the cluster orbit's shift-zero member; throws
// UnsupportedKind unless it is an open 3-cluster.
Rational outflow(const ChargeLedger& ledger, int orbit);

// Outflow bounds on open 3-clusters: outflow <= 52/29 always; <= 51/29 when some code
// vertex at distance two gets nothing from it, or when an uncrowded one has a
// nearby closed or 4+ cluster (which also rules out needy).
struct ClaimAudit {
  int openClusters = 0;
  int claim2Premises = 0;
  int claim2bPremises = 0;
  std::vector<std::string> claim1Failures;
  std::vector<std::string> claim2Failures;
  std::vector<std::string> claim2bFailures;
  bool ok() const { return claim1Failures.empty() && claim2Failures.empty() && claim2bFailures.empty(); }
};

ClaimAudit auditClaims(const ChargeLedger& ledger);

std::string ledgerJson(const ChargeLedger& ledger, const AuditReport* report, bool approx);

}  // namespace hexid

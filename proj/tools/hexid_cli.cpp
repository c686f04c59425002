// Command-line front end. Exit codes: 0 success, 1 violation or failed
// audit, 2 usage or I/O error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hexid/cluster.hpp"
#include "hexid/code.hpp"
#include "hexid/discharge.hpp"
#include "hexid/error.hpp"
#include "hexid/lemma_lab.hpp"
#include "hexid/optimize.hpp"

namespace {

using namespace hexid;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
  std::string codePath;
  std::string format = "text";
  bool approx = false;
  int threads = 1;
};

std::string showRational(const Rational& r, bool approx) {
  std::string s = formatRational(r);
  if (approx) {
    std::ostringstream os;
    os.precision(6);
    os << " (~" << toDouble(r) << ")";
    s += os.str();
  }
  return s;
}

void writeOrPrint(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << text;
}

int runVerify(const Common& c) {
  const PeriodicCode code = readCodeFile(c.codePath);
  const VerifyResult r = verify(code);
  if (r.ok()) {
    std::cout << "OK density=" << showRational(density(code), c.approx) << '\n';
    return kOk;
  }
  for (const auto& v : r.violations) {
    std::cout << to_string(v.kind);
    for (const auto& x : v.vertices) std::cout << ' ' << x;
    std::cout << '\n';
  }
  std::cout << "FAIL " << r.violations.size() << " violation(s)\n";
  return kFail;
}

int runDensity(const Common& c) {
  const PeriodicCode code = readCodeFile(c.codePath);
  std::cout << "density=" << showRational(density(code), c.approx) << " size=" << code.size()
            << " domain=" << code.lattice().domainSize() << '\n';
  return kOk;
}

int runClassify(const Common& c) {
  const PeriodicCode code = readCodeFile(c.codePath);
  if (!isIdentifying(code)) throw Error(ErrorKind::InvalidCode, "code is not identifying");
  const ClusterMap map(code);
  const auto reports = classifyAll(map);
  if (c.format == "json") {
    std::cout << clusterReportJson(map, reports) << '\n';
    return kOk;
  }
  for (const auto& r : reports) {
    std::cout << r.key << ' ' << to_string(r.kind);
    if (r.infinite) std::cout << " infinite";
    else std::cout << " size=" << r.vertices.size();
    if (r.kind == ClusterKind::One || r.kind == ClusterKind::Three)
      std::cout << (r.crowded ? " crowded" : " uncrowded") << (r.threatened ? " threatened" : "");
    if (r.kind == ClusterKind::Three) std::cout << (r.open ? " open" : " closed") << (r.needy ? " needy" : "");
    if (!r.pairedWith.empty()) std::cout << " paired";
    std::cout << " {";
    for (std::size_t i = 0; i < r.vertices.size(); ++i) std::cout << (i ? " " : "") << r.vertices[i];
    std::cout << "}\n";
  }
  return kOk;
}

int runDischarge(const Common& c, const std::string& engineName, const std::string& boundText) {
  const Engine engine = parseEngine(engineName);
  const PeriodicCode code = readCodeFile(c.codePath);
  const Rational bound = boundText.empty() ? (engine == Engine::Main ? Rational{12, 29} : Rational{2, 5})
                                           : parseRational(boundText);
  const ChargeLedger ledger = runEngine(engine, code);
  const AuditReport report = audit(ledger, bound);
  if (c.format == "json") {
    std::cout << ledgerJson(ledger, &report, c.approx) << '\n';
  } else {
    std::cout << "engine=" << to_string(engine) << " bound=" << showRational(bound, c.approx)
              << " transfers=" << ledger.transfers.size() << " conserved=" << (report.conserved ? "yes" : "no") << '\n';
    for (const auto& f : report.failures)
      std::cout << "FAIL " << f.subject << " final=" << showRational(f.value, c.approx)
                << " required=" << showRational(f.required, c.approx) << '\n';
    for (const auto& a : ledger.anomalies) std::cout << "ANOMALY " << a << '\n';
    std::cout << (report.ok() ? "AUDIT PASS" : "AUDIT FAIL") << '\n';
  }
  return report.ok() ? kOk : kFail;
}

int runOutflow(const Common& c) {
  const PeriodicCode code = readCodeFile(c.codePath);
  const ChargeLedger ledger = runMain(code);
  const ClaimAudit claims = auditClaims(ledger);
  for (std::size_t id = 0; id < ledger.orbits.size(); ++id) {
    const auto& o = ledger.orbits[id];
    if (o.kind != ClusterKind::Three || !o.open) continue;
    std::cout << ClusterKey{static_cast<int>(id), {}} << " outflow=" << showRational(o.outflow, c.approx)
              << (o.crowded ? " crowded" : "") << (o.needy ? " needy" : "") << '\n';
  }
  for (const auto& s : claims.claim1Failures) std::cout << "FAIL 52/29 " << s << '\n';
  for (const auto& s : claims.claim2Failures) std::cout << "FAIL 51/29 " << s << '\n';
  for (const auto& s : claims.claim2bFailures) std::cout << "FAIL 51/29 (heavy nearby) " << s << '\n';
  std::cout << "open=" << claims.openClusters << (claims.ok() ? " CLAIMS PASS" : " CLAIMS FAIL") << '\n';
  return claims.ok() ? kOk : kFail;
}

int runCheckLemma(const Common& c, const std::string& id, const std::string& tmplName, const std::string& tmplFile,
                  int radius, double timeLimit, bool timing) {
  const LemmaId lemma = parseLemmaId(id);
  CheckOptions options;
  options.timeLimitSeconds = timeLimit;
  const int r = radius >= 0 ? radius : defaultRadius(lemma);
  LemmaVerdict v;
  if (lemma == LemmaId::L5partition) {
    v = checkLemma(lemma, r, options);
  } else {
    const LemmaTemplate t = !tmplFile.empty() ? readTemplateFile(tmplFile)
                                              : namedTemplate(tmplName.empty() ? defaultTemplate(lemma) : tmplName);
    v = checkLemma(lemma, t, r, options);
  }
  if (c.format == "json") {
    std::cout << verdictJson(v) << '\n';
  } else {
    std::cout << to_string(v.result) << " lemma=" << to_string(v.lemma) << " radius=" << v.radius
              << " region=" << v.regionSize << " configs=" << v.configsExplored;
    if (timing) std::cout << " seconds=" << v.seconds;
    std::cout << '\n';
    if (!v.detail.empty()) std::cout << v.detail << '\n';
  }
  return v.result == Verdict::Verified ? kOk : kFail;
}

int runShell(const Common& c) {
  const PeriodicCode code = readCodeFile(c.codePath);
  const ClusterMap map(code);
  bool ok = true;
  for (const auto& orbit : map.orbits()) {
    if (orbit.infinite()) continue;
    const ClusterKey key{orbit.id, {}};
    const PartitionBound b = shellPartitionBound(map, key);
    const bool within = b.minParts <= b.clusterSize + 8 && b.constrainedParts <= b.clusterSize + 8;
    ok = ok && within;
    std::cout << key << " m=" << b.clusterSize << " shell=" << b.shellSize << " minParts=" << b.minParts
              << " constrainedParts=" << b.constrainedParts << (within ? "" : " EXCEEDS m+8") << '\n';
  }
  return ok ? kOk : kFail;
}

int runSearch(const Common& c, int p, int q, int shear, int budget, bool symmetry, double timeLimit, int cap,
              const std::string& out) {
  SearchSpec spec;
  spec.lattice = PeriodLattice(p, q, shear);
  if (budget >= 0) spec.budget = budget;
  spec.symmetryReduction = symmetry;
  spec.timeLimitSeconds = timeLimit;
  spec.domainCap = cap;
  const SearchResult r = minimumCode(spec);
  if (!r.minSize) {
    std::cout << (r.timedOut ? "TIMEOUT no code found" : "INFEASIBLE") << " nodes=" << r.nodesExplored << '\n';
    return kFail;
  }
  std::cout << "minSize=" << *r.minSize << " density="
            << showRational(Rational{*r.minSize, spec.lattice.domainSize()}, c.approx) << " nodes=" << r.nodesExplored
            << " optimal=" << (r.proofOfOptimality ? "true" : "false") << '\n';
  if (!out.empty()) writeCodeFile(out, *r.witness);
  else std::cout << serializeCode(*r.witness);
  return kOk;
}

std::vector<int> parseList(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

int runScan(const Common& c, int maxDomain, const std::string& domains, int maxP, double timeLimit, int cap,
            const std::string& out) {
  const auto family = domains.empty() ? latticeFamily(maxDomain) : latticeFamily(parseList(domains), maxP);
  ScanOptions options;
  options.threads = c.threads;
  options.timeLimitSeconds = timeLimit;
  options.domainCap = cap;
  const auto rows = densityScan(family, options);
  writeOrPrint(out, scanCsv(rows));
  bool critical = false;
  for (const auto& r : rows)
    if (r.critical()) {
      critical = true;
      std::cerr << "CRITICAL: " << r.lattice << " has density " << formatRational(*r.density()) << " below 12/29\n";
    }
  if (const auto d = smallestDensity(rows)) std::cerr << "smallest density " << showRational(*d, c.approx) << '\n';
  return critical ? kFail : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identifying codes on the hexagonal grid"};
  app.require_subcommand(1, 1);
  Common common;
  auto addCommon = [&](CLI::App* sub, bool needsCode) {
    auto* opt = sub->add_option("--code", common.codePath, "code file");
    if (needsCode) opt->required()->check(CLI::ExistingFile);
    sub->add_flag("--approx", common.approx, "also print decimal approximations");
    sub->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* verifyCmd = app.add_subcommand("verify", "check the identifying property");
  addCommon(verifyCmd, true);
  auto* densityCmd = app.add_subcommand("density", "print the density of a code");
  addCommon(densityCmd, true);
  auto* classifyCmd = app.add_subcommand("classify", "classify the clusters of a code");
  addCommon(classifyCmd, true);
  classifyCmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  std::string engine = "main";
  std::string bound;
  auto* dischargeCmd = app.add_subcommand("discharge", "run and audit a discharging engine");
  addCommon(dischargeCmd, true);
  dischargeCmd->add_option("--engine", engine)->check(CLI::IsMember({"prop1", "main"}));
  dischargeCmd->add_option("--bound", bound, "bound as num/den (default per engine)");
  std::string dischargeFormat = "json";
  dischargeCmd->add_option("--format", dischargeFormat, "json (default) or text")->check(CLI::IsMember({"text", "json"}));

  auto* outflowCmd = app.add_subcommand("outflow", "outflow of every open 3-cluster");
  addCommon(outflowCmd, true);

  std::string lemmaId;
  std::string tmplName;
  std::string tmplFile;
  int radius = -1;
  double timeLimit = 0;
  bool timing = false;
  auto* lemmaCmd = app.add_subcommand("check-lemma", "check a structural lemma on a window");
  addCommon(lemmaCmd, false);
  lemmaCmd->add_option("--id", lemmaId, "L1, L2, L3, L4 or L5partition")->required();
  auto* tmplOpt = lemmaCmd->add_option("--template", tmplName, "named template");
  lemmaCmd->add_option("--template-file", tmplFile, "template file")->check(CLI::ExistingFile)->excludes(tmplOpt);
  lemmaCmd->add_option("--radius", radius, "window margin around the subjects (animal size for L5partition)");
  lemmaCmd->add_option("--time-limit", timeLimit, "seconds before giving up as inconclusive");
  lemmaCmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));
  lemmaCmd->add_flag("--timing", timing, "print elapsed seconds");

  auto* shellCmd = app.add_subcommand("shell", "shell partition bound of every finite cluster");
  addCommon(shellCmd, true);

  int p = 1, q = 1, shear = 0, budget = -1, cap = 32;
  bool symmetry = false;
  std::string out;
  auto* searchCmd = app.add_subcommand("search", "minimum identifying code for one lattice");
  addCommon(searchCmd, false);
  searchCmd->add_option("--p", p)->required()->check(CLI::PositiveNumber);
  searchCmd->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  searchCmd->add_option("--shear", shear);
  searchCmd->add_option("--budget", budget, "largest code size of interest");
  searchCmd->add_flag("--symmetry", symmetry, "require a code vertex in cell (0,0)");
  searchCmd->add_option("--time-limit", timeLimit);
  searchCmd->add_option("--cap", cap, "largest fundamental domain allowed");
  searchCmd->add_option("--out", out, "witness file");

  int maxDomain = 24, maxP = 1000;
  std::string domains;
  auto* scanCmd = app.add_subcommand("scan", "minimum density over a lattice family");
  addCommon(scanCmd, false);
  scanCmd->add_option("--max-domain", maxDomain, "all lattices with 2pq up to this");
  scanCmd->add_option("--domains", domains, "comma-separated domain sizes instead");
  scanCmd->add_option("--max-p", maxP, "with --domains, largest p");
  scanCmd->add_option("--time-limit", timeLimit, "seconds per lattice");
  scanCmd->add_option("--cap", cap);
  scanCmd->add_option("--out", out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verifyCmd) return runVerify(common);
    if (*densityCmd) return runDensity(common);
    if (*classifyCmd) return runClassify(common);
    if (*dischargeCmd) {
      common.format = dischargeFormat;
      return runDischarge(common, engine, bound);
    }
    if (*outflowCmd) return runOutflow(common);
    if (*lemmaCmd) return runCheckLemma(common, lemmaId, tmplName, tmplFile, radius, timeLimit, timing);
    if (*shellCmd) return runShell(common);
    if (*searchCmd) return runSearch(common, p, q, shear, budget, symmetry, timeLimit, cap, out);
    if (*scanCmd) return runScan(common, maxDomain, domains, maxP, timeLimit, cap, out);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    const bool usage = e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::InvalidArgument ||
                       e.kind() == ErrorKind::DomainTooLarge || e.kind() == ErrorKind::RegionTooLarge;
    return usage ? kUsage : kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

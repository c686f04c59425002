#include "hexid/code.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "hexid/constraints.hpp"
#include "hexid/error.hpp"

namespace hexid {

PeriodicCode::PeriodicCode(PeriodLattice lattice)
    : lattice_(lattice), bits_(static_cast<std::size_t>(lattice.domainSize()), 0) {}

PeriodicCode::PeriodicCode(PeriodLattice lattice, std::vector<std::uint8_t> bits)
    : lattice_(lattice), bits_(std::move(bits)) {
  if (static_cast<int>(bits_.size()) != lattice_.domainSize())
    throw Error(ErrorKind::InvalidArgument, "membership size does not match 2*p*q");
  for (auto& b : bits_) b = b ? 1 : 0;
}

PeriodicCode PeriodicCode::all(PeriodLattice lattice) {
  return PeriodicCode(lattice, std::vector<std::uint8_t>(lattice.domainSize(), 1));
}

PeriodicCode PeriodicCode::sublattice(PeriodLattice lattice, int s) {
  PeriodicCode code(lattice);
  for (int i = 0; i < lattice.domainSize(); ++i) code.setBit(i, lattice.vertexAt(i).s == s);
  return code;
}

int PeriodicCode::size() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<Vertex> PeriodicCode::members() const {
  std::vector<Vertex> out;
  for (int i = 0; i < lattice_.domainSize(); ++i)
    if (bits_[i]) out.push_back(lattice_.vertexAt(i));
  return out;
}

std::vector<Vertex> identifier(const PeriodicCode& code, const Vertex& v) {
  std::vector<Vertex> out;
  for (const auto& u : closedNeighborhood(v))
    if (code.contains(u)) out.push_back(u);
  return out;
}

const char* to_string(Violation::Kind kind) {
  return kind == Violation::Kind::EmptyIdentifier ? "EmptyIdentifier" : "IndistinguishablePair";
}

namespace {

// Translate an unordered pair so that one endpoint sits in the fundamental
// domain; of the two choices keep the lexicographically smaller ordered pair.
std::pair<Vertex, Vertex> normalizePair(const PeriodLattice& lattice, Vertex u, Vertex v) {
  const Offset tu = lattice.liftOffset(u);
  const Offset tv = lattice.liftOffset(v);
  std::pair<Vertex, Vertex> x{u - tu, v - tu};
  std::pair<Vertex, Vertex> y{v - tv, u - tv};
  return std::min(x, y);
}

}  // namespace

VerifyResult verify(const PeriodicCode& code) {
  const auto& lattice = code.lattice();
  std::set<Violation> found;
  for (int i = 0; i < lattice.domainSize(); ++i) {
    const Vertex u = lattice.vertexAt(i);
    const auto idu = identifier(code, u);
    if (idu.empty()) found.insert({Violation::Kind::EmptyIdentifier, {u}});
    for (const auto& v : ball(u, 2)) {
      if (v == u) continue;
      if (identifier(code, v) != idu) continue;
      // Two empty identifiers are reported through EmptyIdentifier alone.
      if (idu.empty()) continue;
      auto [x, y] = normalizePair(lattice, u, v);
      found.insert({Violation::Kind::IndistinguishablePair, {x, y}});
    }
  }
  return {std::vector<Violation>(found.begin(), found.end())};
}

bool isIdentifying(const PeriodicCode& code) {
  const auto& lattice = code.lattice();
  for (int i = 0; i < lattice.domainSize(); ++i) {
    const Vertex u = lattice.vertexAt(i);
    bool any = false;
    for (const auto& w : closedNeighborhood(u)) any = any || code.contains(w);
    if (!any) return false;
    for (const auto& v : ball(u, 2)) {
      if (v == u) continue;
      bool split = false;
      for (const auto& w : closedNeighborhoodDifference(u, v))
        if (code.contains(w)) {
          split = true;
          break;
        }
      if (!split) return false;
    }
  }
  return true;
}

Rational density(const PeriodicCode& code) {
  return Rational(code.size(), code.lattice().domainSize());
}

std::string serializeCode(const PeriodicCode& code) {
  std::ostringstream os;
  const auto& l = code.lattice();
  os << "period " << l.p << ' ' << l.q << ' ' << l.shear << '\n';
  for (const auto& v : code.members()) os << v.a << ' ' << v.b << ' ' << v.s << '\n';
  return os.str();
}

PeriodicCode parseCode(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::Parse, "code line " + std::to_string(lineNo) + ": " + why);
  };
  // Header is the first non-blank line.
  std::string keyword;
  int p = 0, q = 0, shear = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (!(ls >> keyword >> p >> q >> shear) || keyword != "period") throw fail("expected 'period p q shear'");
    std::string extra;
    if (ls >> extra) throw fail("trailing text after header");
    break;
  }
  if (keyword != "period") throw Error(ErrorKind::Parse, "empty code file");
  PeriodLattice lattice;
  try {
    lattice = PeriodLattice(p, q, shear);
  } catch (const Error& e) {
    throw fail(e.what());
  }
  PeriodicCode code(lattice);
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Vertex v;
    if (!(ls >> v.a >> v.b >> v.s)) throw fail("expected 'a b s'");
    std::string extra;
    if (ls >> extra) throw fail("trailing text");
    if (v.a < 0 || v.a >= p || v.b < 0 || v.b >= q || (v.s != 0 && v.s != 1))
      throw fail("vertex outside the fundamental domain");
    code.set(v, true);
  }
  return code;
}

PeriodicCode readCodeFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parseCode(os.str());
}

void writeCodeFile(const std::filesystem::path& path, const PeriodicCode& code) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path.string());
  out << serializeCode(code);
}

}  // namespace hexid

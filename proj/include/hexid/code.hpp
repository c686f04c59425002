#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hexid/hexgrid.hpp"
#include "hexid/rational.hpp"

namespace hexid {

// A doubly periodic vertex set: membership bits on the fundamental domain of
// a period lattice, lifted to the whole grid through PeriodLattice::canonical.
class PeriodicCode {
 public:
  PeriodicCode() = default;
  explicit PeriodicCode(PeriodLattice lattice);
  PeriodicCode(PeriodLattice lattice, std::vector<std::uint8_t> bits);

  static PeriodicCode all(PeriodLattice lattice);
  // Every vertex with sublattice bit s.
  static PeriodicCode sublattice(PeriodLattice lattice, int s);

  const PeriodLattice& lattice() const { return lattice_; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool contains(const Vertex& v) const { return bits_[lattice_.index(v)] != 0; }
  bool bit(int index) const { return bits_[index] != 0; }
  void set(const Vertex& v, bool member) { bits_[lattice_.index(v)] = member ? 1 : 0; }
  void setBit(int index, bool member) { bits_[index] = member ? 1 : 0; }

  int size() const;
  // Members of the fundamental domain, in domain order.
  std::vector<Vertex> members() const;

  friend bool operator==(const PeriodicCode&, const PeriodicCode&) = default;

 private:
  PeriodLattice lattice_{};
  std::vector<std::uint8_t> bits_ = std::vector<std::uint8_t>(2, 0);
};

// N[v] ∩ D in infinite-grid coordinates, sorted.
std::vector<Vertex> identifier(const PeriodicCode& code, const Vertex& v);

struct Violation {
  enum class Kind { EmptyIdentifier, IndistinguishablePair };
  Kind kind;
  // One vertex for EmptyIdentifier, two for IndistinguishablePair. The first
  // vertex always lies in the fundamental domain.
  std::vector<Vertex> vertices;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

const char* to_string(Violation::Kind kind);

struct VerifyResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Exhaustive identifying-code check over one fundamental domain: every N[u]
// must meet D, and u must be distinguishable from every v within distance 2.
VerifyResult verify(const PeriodicCode& code);
// Same predicate as verify(code).ok(), without collecting violations.
bool isIdentifying(const PeriodicCode& code);

Rational density(const PeriodicCode& code);

// Text format: "period p q shear" then one "a b s" line per member.
std::string serializeCode(const PeriodicCode& code);
PeriodicCode parseCode(std::string_view text);
PeriodicCode readCodeFile(const std::filesystem::path& path);
void writeCodeFile(const std::filesystem::path& path, const PeriodicCode& code);

}  // namespace hexid

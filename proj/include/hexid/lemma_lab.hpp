#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hexid/cluster.hpp"
#include "hexid/code.hpp"
#include "hexid/shell.hpp"
#include "hexid/world.hpp"

namespace hexid {

// A finite window of the grid with a three-valued status per vertex.
// Everything outside the region is Unknown.
struct WindowConfig {
  std::vector<Vertex> region;    // sorted
  std::vector<Status> status;    // parallel to region
  std::vector<Vertex> interior;  // region vertices whose closed neighborhood lies in the region

  Status at(const Vertex& v) const;
};

// Identifying-code clauses that only mention region vertices: N[u] for every
// u with N[u] inside, and N[u] xor N[v] for every pair within distance two
// whose symmetric difference lies inside. Every genuine code satisfies them.
std::vector<std::vector<Vertex>> windowClauses(const std::vector<Vertex>& region);

// Every feasible assignment of the region vertices that are not forced.
// Throws RegionTooLarge above the cap.
std::vector<WindowConfig> enumerate(const std::vector<Vertex>& region, const std::map<Vertex, Status>& forced,
                                    std::size_t cap = 48);
bool feasible(const WindowConfig& config);

// A lemma template: a named window with forced statuses and the subject
// clusters the lemma talks about.
struct LemmaTemplate {
  std::string name;
  std::vector<std::vector<Vertex>> subjects;
  std::map<Vertex, Status> vertices;       // Unknown entries are free
  std::map<Vertex, std::string> labels;    // figure labels, for reports
};

// Map a drawing coordinate of the figures onto the grid. Throws
// InvalidArgument for a point that is not a grid vertex.
Vertex figureVertex(double x, double y);

// Named windows: fig3a, fig3b, fig4, fig5, fig6, plus origin1 and origin3
// (a bare 1-cluster and 3-cluster at the origin).
std::vector<std::string> templateNames();
LemmaTemplate namedTemplate(const std::string& name);

std::string serializeTemplate(const LemmaTemplate& t);
LemmaTemplate parseTemplate(std::string_view text);
LemmaTemplate readTemplateFile(const std::filesystem::path& path);

enum class LemmaId { L1, L2, L3, L4, L5partition };
const char* to_string(LemmaId id);
LemmaId parseLemmaId(const std::string& text);
std::string defaultTemplate(LemmaId id);
int defaultRadius(LemmaId id);

enum class Verdict { Verified, Counterexample, Inconclusive };
const char* to_string(Verdict v);

struct LemmaVerdict {
  LemmaId lemma = LemmaId::L1;
  Verdict result = Verdict::Verified;
  std::string templateName;
  int radius = 0;
  std::size_t regionSize = 0;
  long long configsExplored = 0;  // search nodes, or animals for L5partition
  long long leaves = 0;           // decided branches
  long long undecided = 0;        // branches left open by the window
  std::optional<WindowConfig> config;  // the counterexample, or the first undecided branch
  std::string detail;
  double seconds = 0;
};

struct CheckOptions {
  std::size_t regionCap = 400;
  double timeLimitSeconds = 0;  // 0 means none; exceeding it yields Inconclusive
};

// Lazy depth-first case analysis over region = template vertices plus every
// vertex within `radius` of a subject. Branches only on vertices the lemma's
// predicates ask about. A branch whose hypothesis holds and conclusion fails
// under a feasible assignment is a counterexample (advisory, since window
// feasibility over-approximates); a branch left open by vertices outside the
// region makes the verdict Inconclusive.
LemmaVerdict checkLemma(LemmaId id, const LemmaTemplate& tmpl, int radius, const CheckOptions& options = {});
LemmaVerdict checkLemma(LemmaId id, int radius, const CheckOptions& options = {});

// Partition bound of one finite cluster of a periodic code. Throws
// UnsupportedKind for infinite clusters.
struct PartitionBound {
  int clusterSize = 0;
  int shellSize = 0;
  int minParts = 0;
  int constrainedParts = 0;
};
PartitionBound shellPartitionBound(const ClusterMap& map, const ClusterKey& key);

// Connected vertex sets of the given size up to translation, each sorted and
// normalized.
std::vector<std::vector<Vertex>> latticeAnimals(int size);

std::string verdictJson(const LemmaVerdict& v);

}  // namespace hexid

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hexid/error.hpp"
#include "hexid/lemma_lab.hpp"

namespace hexid {

// Drawings place the vertex pairs of each zigzag row 0.5 apart and the rows
// 1.5 apart. A "low" vertex (x, y) has neighbors (x +- 1, y + 0.5) and
// (x, y - 1); those are the sublattice-1 vertices.
Vertex figureVertex(double x, double y) {
  const double xr = std::round(x);
  const double y2 = std::round(2 * y);
  if (std::abs(xr - x) > 1e-9 || std::abs(y2 - 2 * y) > 1e-9)
    throw Error(ErrorKind::InvalidArgument, "figure point off the grid");
  const int xi = static_cast<int>(xr);
  auto low = [&](int twiceY, int s) -> std::optional<Vertex> {
    const int num = 4 - twiceY;  // 2 * (2 - y)
    if (num % 3 != 0) return std::nullopt;
    const int n = num / 3;
    const int dx = xi - 4;
    if (((n - dx) % 2 + 2) % 2 != 0) return std::nullopt;
    return Vertex{(n + dx) / 2, (n - dx) / 2, s};
  };
  const int t = static_cast<int>(y2);
  if (auto v = low(t, 0)) return *v;
  if (auto v = low(t + 2, 1)) return *v;
  throw Error(ErrorKind::InvalidArgument, "figure point off the grid");
}

namespace {

struct Point {
  const char* label;
  double x;
  double y;
};

using Points = std::vector<Point>;

const Points kFig3a = {{"1", 2, 5},   {"2", 4, 5},   {"3", 2, 4},   {"4", 3, 3.5}, {"5", 4, 4},
                       {"6", 1, 2.5}, {"7", 2, 2},   {"8", 3, 2.5}, {"9", 4, 2},   {"10", 5, 2.5},
                       {"11", 2, 1},  {"12", 3, 0.5}, {"13", 4, 1}};

const Points kFig3b = {{"1", 5, 6.5},  {"2", 2, 5},    {"3", 3, 5.5},  {"4", 4, 5},    {"5", 5, 5.5},
                       {"6", 6, 5},    {"7", 7, 5.5},  {"8", 1, 3.5},  {"9", 2, 4},    {"10", 3, 3.5},
                       {"11", 4, 4},   {"12", 5, 3.5}, {"13", 6, 4},   {"14", 7, 3.5}, {"15", 0, 2},
                       {"16", 1, 2.5}, {"17", 2, 2},   {"18", 3, 2.5}, {"19", 4, 2},   {"20", 5, 2.5},
                       {"21", 6, 2},   {"22", 7, 2.5}, {"23", 8, 2},   {"24", 1, 0.5}, {"25", 2, 1},
                       {"26", 3, 0.5}, {"27", 4, 1},   {"28", 5, 0.5}, {"29", 6, 1},   {"30", 7, 0.5},
                       {"31", 3, -0.5}, {"32", 5, -0.5}};

const Points kFig4 = {{"0", 5, 6.5},  {"1", 4, 5},    {"2", 5, 5.5},  {"3", 6, 5},    {"4", 7, 5.5},
                      {"5", 8, 5},    {"6", 4, 4},    {"7", 5, 3.5},  {"8", 6, 4},    {"9", 7, 3.5},
                      {"10", 8, 4},   {"11", 9, 3.5}, {"12", 6, 2},   {"13", 7, 2.5}, {"14", 8, 2},
                      {"15", 3, -0.5}, {"16", 5, -0.5}, {"", 3, 2.5},  {"", 4, 2},     {"", 5, 2.5},
                      {"", 4, -1},    {"", 0, 2},     {"", 0, 1},     {"", 1, 0.5},   {"", 8, 1},
                      {"", 7, 0.5}};

const Points kFig5 = {{"1", 3, 6.5},  {"2", 4, 7},    {"3", 5, 6.5},  {"4", 6, 7},    {"5", 7, 6.5},
                      {"6", 8, 7},    {"7", 0, 5},    {"8", 1, 5.5},  {"9", 2, 5},    {"10", 3, 5.5},
                      {"11", 4, 5},   {"12", 5, 5.5}, {"13", 6, 5},   {"14", 7, 5.5}, {"15", 8, 5},
                      {"16", 9, 5.5}, {"17", 10, 5},  {"18", 0, 4},   {"19", 1, 3.5}, {"20", 2, 4},
                      {"21", 3, 3.5}, {"22", 4, 4},   {"23", 5, 3.5}, {"24", 6, 4},   {"25", 7, 3.5},
                      {"26", 8, 4},   {"27", 9, 3.5}, {"28", 10, 4},  {"29", 11, 3.5}, {"30", 2, 2},
                      {"31", 3, 2.5}, {"32", 4, 2},   {"33", 5, 2.5}, {"34", 6, 2},   {"35", 7, 2.5},
                      {"36", 8, 2},   {"37", 9, 2.5}, {"38", 10, 2},  {"39", 4, 1},   {"40", 5, 0.5},
                      {"41", 6, 1},   {"42", 7, 0.5}, {"43", 8, 1},   {"44", 9, 0.5}, {"45", 3, -0.5},
                      {"46", 7, -0.5}};

const Points kFig6Extra = {{"47", 8, -1}, {"48", 9, -0.5}, {"49", 4, -2}, {"50", 5, -2.5}, {"51", 6, -2}};

Vertex at(const Points& pts, const char* label) {
  for (const auto& p : pts)
    if (std::string(p.label) == label) return figureVertex(p.x, p.y);
  throw Error(ErrorKind::InvalidArgument, std::string("no figure label ") + label);
}

LemmaTemplate build(std::string name, const Points& pts, std::vector<std::vector<Vertex>> subjects) {
  LemmaTemplate t;
  t.name = std::move(name);
  for (const auto& p : pts) {
    const Vertex v = figureVertex(p.x, p.y);
    t.vertices.emplace(v, Status::Unknown);
    if (*p.label) t.labels[v] = p.label;
  }
  for (auto& s : subjects) {
    std::sort(s.begin(), s.end());
    for (const auto& v : s) t.vertices[v] = Status::In;
  }
  for (const auto& s : subjects)
    for (const auto& v : s)
      for (const auto& u : neighbors(v))
        if (!std::binary_search(s.begin(), s.end(), u)) t.vertices[u] = Status::Out;
  t.subjects = std::move(subjects);
  return t;
}

}  // namespace

std::vector<std::string> templateNames() { return {"fig3a", "fig3b", "fig4", "fig5", "fig6", "origin1", "origin3"}; }

LemmaTemplate namedTemplate(const std::string& name) {
  if (name == "fig3a") return build(name, kFig3a, {{at(kFig3a, "13")}});
  if (name == "fig3b") return build(name, kFig3b, {{at(kFig3b, "18"), at(kFig3b, "19"), at(kFig3b, "20")}});
  if (name == "fig4")
    return build(name, kFig4, {{figureVertex(3, 2.5), figureVertex(4, 2), figureVertex(5, 2.5)}});
  if (name == "fig5" || name == "fig6") {
    Points pts = kFig5;
    if (name == "fig6") pts.insert(pts.end(), kFig6Extra.begin(), kFig6Extra.end());
    return build(name, pts,
                 {{at(pts, "21"), at(pts, "22"), at(pts, "23")}, {at(pts, "39"), at(pts, "40"), at(pts, "41")}});
  }
  if (name == "origin1") return build(name, {}, {{Vertex{0, 0, 0}}});
  if (name == "origin3") return build(name, {}, {{Vertex{0, 0, 0}, Vertex{0, 0, 1}, Vertex{-1, 0, 1}}});
  throw Error(ErrorKind::InvalidArgument, "unknown template '" + name + "'");
}

namespace {

const char* statusWord(Status s) {
  switch (s) {
    case Status::In: return "IN";
    case Status::Out: return "OUT";
    default: return "UNKNOWN";
  }
}

}  // namespace

std::string serializeTemplate(const LemmaTemplate& t) {
  std::ostringstream os;
  os << "template " << t.name << '\n';
  for (const auto& s : t.subjects) {
    os << "subject";
    for (const auto& v : s) os << ' ' << v.a << ' ' << v.b << ' ' << v.s;
    os << '\n';
  }
  for (const auto& [v, st] : t.vertices) {
    os << v.a << ' ' << v.b << ' ' << v.s << ' ' << statusWord(st);
    if (auto it = t.labels.find(v); it != t.labels.end()) os << ' ' << it->second;
    os << '\n';
  }
  return os.str();
}

LemmaTemplate parseTemplate(std::string_view text) {
  LemmaTemplate t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  bool header = false;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::Parse, "template line " + std::to_string(lineNo) + ": " + why);
  };
  auto checkVertex = [&](const Vertex& v) {
    if (v.s != 0 && v.s != 1) fail("sublattice bit must be 0 or 1");
  };
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!header) {
      if (first != "template" || !(ls >> t.name)) fail("expected 'template <name>'");
      header = true;
      continue;
    }
    if (first == "subject") {
      std::vector<Vertex> s;
      Vertex v;
      while (ls >> v.a >> v.b >> v.s) {
        checkVertex(v);
        s.push_back(v);
      }
      if (s.empty() || !ls.eof()) fail("subject needs whole vertex triples");
      std::sort(s.begin(), s.end());
      t.subjects.push_back(std::move(s));
      continue;
    }
    Vertex v;
    std::string word;
    try {
      v.a = std::stoi(first);
    } catch (const std::exception&) {
      fail("expected a vertex");
    }
    if (!(ls >> v.b >> v.s >> word)) fail("expected 'a b s STATUS [label]'");
    checkVertex(v);
    Status st;
    if (word == "IN") st = Status::In;
    else if (word == "OUT") st = Status::Out;
    else if (word == "UNKNOWN") st = Status::Unknown;
    else fail("status must be IN, OUT or UNKNOWN");
    if (t.vertices.count(v)) fail("vertex listed twice");
    t.vertices[v] = st;
    std::string label;
    if (ls >> label) t.labels[v] = label;
  }
  if (!header) throw Error(ErrorKind::Parse, "empty template");
  for (const auto& s : t.subjects)
    for (const auto& v : s) {
      auto it = t.vertices.find(v);
      if (it == t.vertices.end()) t.vertices[v] = Status::In;
      else if (it->second == Status::Out) throw Error(ErrorKind::Parse, "subject vertex marked OUT");
    }
  return t;
}

LemmaTemplate readTemplateFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseTemplate(ss.str());
}

}  // namespace hexid

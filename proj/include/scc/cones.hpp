#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scc/core.hpp"
#include "scc/pieces.hpp"

namespace scc {

class InvalidSpec : public Error {
 public:
  using Error::Error;
};
class UnknownFormat : public Error {
 public:
  using Error::Error;
};
class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

enum class RuleKind { SOnly, Pk, FullL, Laced, Chords };

struct Rule {
  RuleKind kind = RuleKind::Pk;
  uint32_t k = 4;                                  // Pk
  size_t base = 0;                                 // Laced: base vertex x_i
  std::vector<std::pair<size_t, size_t>> chords;   // Chords: forward arcs u -> v, added on top of P4

  static Rule s_only() { return Rule{RuleKind::SOnly, 0, 0, {}}; }
  static Rule p(uint32_t k) { return Rule{RuleKind::Pk, k, 0, {}}; }
  static Rule full() { return Rule{RuleKind::FullL, 0, 0, {}}; }
  static Rule laced(size_t base) { return Rule{RuleKind::Laced, 4, base, {}}; }
  static Rule explicit_chords(std::vector<std::pair<size_t, size_t>> c) {
    return Rule{RuleKind::Chords, 4, 0, std::move(c)};
  }

  std::string str() const;
  static Rule parse(std::string_view text);
  friend bool operator==(const Rule& a, const Rule& b) {
    return a.kind == b.kind && a.k == b.k && a.base == b.base && a.chords == b.chords;
  }
  // P4 subset of X_i subset of L
  bool thin_sandwich() const;
};

// Chord-set containment a subset of b that holds on every relator; false when not decidable from the rules alone.
bool rule_contained(const Rule& a, const Rule& b);

struct GenSetSpec {
  Rule default_rule = Rule::p(4);
  std::map<size_t, Rule> overrides;  // 1-based relator index

  const Rule& rule_for(size_t i) const;
  // Throws InvalidSpec if an override index or a vertex is out of range.
  void validate(const Presentation& p) const;
  std::string str() const;
};

// "default: P4", "3: laced@5", "2: chords[(0,3),(1,4)]", "1: L", "4: S", '#' comments.
GenSetSpec parse_spec(std::string_view text);
GenSetSpec load_spec(const std::string& path);

struct Edge {
  size_t u = 0;
  size_t v = 0;
  std::string tag;
};

// Plain undirected graph on 0..n-1.
struct Graph {
  size_t n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<size_t>> adjacency() const;
};

// Forward-jump structure on a cycle: from q one step covers step[q] >= 1 letters.
// Requires q + step[q] nondecreasing around the cycle.
class JumpTable {
 public:
  JumpTable() = default;
  explicit JumpTable(std::vector<uint32_t> step);
  size_t size() const { return n_; }
  uint32_t step(size_t q) const { return levels_.empty() ? 0 : levels_[0][q]; }
  // fewest steps from q covering forward distance d (0 <= d < n)
  uint32_t jumps(size_t q, size_t d) const;
  // farthest forward distance covered by t steps from q, capped at n
  size_t reach(size_t q, uint32_t t) const;

 private:
  size_t n_ = 0;
  std::vector<std::vector<uint32_t>> levels_;  // distance covered by 2^j steps, capped at n
};

class ConeGraph {
 public:
  ConeGraph() = default;

  size_t relator_index() const { return index_; }  // 1-based
  size_t n() const { return n_; }
  const Rule& rule() const { return rule_; }

  uint32_t distance(size_t u, size_t v) const;
  std::vector<uint32_t> distances_from(size_t u) const;
  // Row-major n x n, only for n <= kDenseLimit.
  std::vector<uint16_t> distance_matrix() const;
  uint32_t diameter() const;

  // distance in the P4 cone of the same relator
  uint32_t base_distance(size_t u, size_t v) const;
  // Laced: distance to the base vertex in the P4 cone
  const std::vector<uint32_t>& levels() const { return levels_; }
  // Pk and the P4 part of Laced/Chords: forward reach of one chord from q
  uint32_t chord_reach(size_t q) const { return own_.step(q); }

  bool adjacent(size_t u, size_t v) const;
  // Tag of edge {u,v}: "cycle", "P<k>", "L", "laced-level", "explicit"; empty if absent.
  std::string edge_tag(size_t u, size_t v) const;
  size_t edge_count() const;
  // Materialized edges (u < v, cycle edges first); throws when over the cap.
  Graph to_graph(size_t edge_cap = 20'000'000) const;

  static constexpr size_t kDenseLimit = 4096;

  friend ConeGraph build_cone(const Presentation& p, const PieceIndex& idx, const GenSetSpec& spec, size_t i);
  friend ConeGraph build_cone(const Presentation& p, const PieceIndex& idx, const Rule& rule, size_t i);

 private:
  uint32_t jumps_between(const JumpTable& t, size_t u, size_t v) const;
  uint32_t layered_distance(size_t u, size_t v) const;
  std::vector<uint32_t> bfs(size_t u) const;
  std::vector<uint32_t> jump_row(const JumpTable& t, size_t u) const;
  uint32_t jump_diameter(const JumpTable& t) const;

  size_t index_ = 0;
  size_t n_ = 0;
  Rule rule_;
  JumpTable own_;   // steps of the rule itself (Pk) or of P4 (Laced, Chords)
  std::vector<uint32_t> levels_;
  std::vector<std::vector<size_t>> extra_;  // explicit chords adjacency
};

// i is 1-based.
ConeGraph build_cone(const Presentation& p, const PieceIndex& idx, const GenSetSpec& spec, size_t i);
ConeGraph build_cone(const Presentation& p, const PieceIndex& idx, const Rule& rule, size_t i);

uint32_t cone_distance(const ConeGraph& c, size_t u, size_t v);
uint32_t cone_diameter(const ConeGraph& c);

enum class GraphFormat { EdgeList, Dot };
GraphFormat parse_format(std::string_view name);
std::string export_graph(const Graph& g, GraphFormat format, const std::string& name = "cone");
std::string export_graph(const ConeGraph& c, GraphFormat format);
Graph import_edge_list(std::string_view text);

struct HyperbolicityReport {
  uint32_t delta4_x2 = 0;  // twice the four-point constant
  uint32_t slim_lower = 0;
  uint32_t diameter = 0;
  std::vector<size_t> delta4_witness;  // x, y, z, w
  std::vector<size_t> slim_witness;    // x, y, z, v
  std::string method;                  // exhaustive | cycle | laced | complete
  bool exact = true;
  double delta4() const { return delta4_x2 / 2.0; }
};

// All-pairs BFS distances; throws DisconnectedGraph.
std::vector<uint16_t> all_pairs(const Graph& g);
HyperbolicityReport hyperbolicity(const Graph& g);
// Small cones are scanned exhaustively unless exhaustive_small is false.
HyperbolicityReport hyperbolicity(const ConeGraph& c, bool exhaustive_small = true);
// Exhaustive scans over a distance matrix of n vertices.
HyperbolicityReport exhaustive_hyperbolicity(const std::vector<uint16_t>& dist, size_t n);

constexpr size_t kExhaustiveLimit = 128;

}  // namespace scc

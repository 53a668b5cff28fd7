#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scc/group.hpp"

namespace scc {

// A relator copy g<r_i>: vertex k is g r_i[0..k).
struct RelatorCopy {
  size_t relator = 0;  // 1-based
  Word base;           // canonical g
};

struct SPathSegment {
  RelatorCopy copy;
  size_t from = 0;  // positions on the copy
  size_t to = 0;
  bool forward = true;
  Word label;               // S-word read along P_j
  bool degenerate = false;  // X-edge on no relator, spelled letter by letter
};

struct SelfIntersection {
  size_t first = 0;  // indices into SPath::vertices
  size_t last = 0;
  size_t segment_lo = 0;
  size_t segment_hi = 0;
  bool tree = true;  // false: the closed subpath carries a cycle
};

struct SPath {
  std::vector<Word> gamma;
  std::vector<size_t> breakpoints;  // indices into gamma
  std::vector<SPathSegment> segments;
  std::vector<Word> vertices;              // P, canonical forms
  std::vector<size_t> vertex_ids;          // equal elements share an id
  std::vector<size_t> edge_segment;        // segment of edge (vertices[q], vertices[q+1])
  std::vector<size_t> essential;           // indices into vertices, P_ess in order
  std::vector<SelfIntersection> loops;
  std::vector<std::string> choices;        // ties broken by the fixed rule
};

// Breakpoints greedy-maximal; ties by relator index, then shortlex P_j, then position.
SPath s_path(const TruncatedBall& b, const std::vector<Word>& gamma);

struct PropertyResult {
  std::string name;
  size_t checked = 0;
  size_t violations = 0;
  std::vector<std::string> witnesses;  // first few
  bool pass() const { return violations == 0; }
};

struct SPathReport {
  size_t samples = 0;
  size_t degenerate_samples = 0;
  size_t max_loop_span = 0;
  size_t max_pruned_distance = 0;
  std::vector<PropertyResult> properties;
  bool pass() const;
};

struct SPathOptions {
  size_t samples = 200;
  uint64_t seed = 1;
  size_t min_distance = 2;
  size_t max_distance = 0;  // 0: ball radius
};

// Properties of the S-paths of sampled certified X-geodesics from the identity.
SPathReport check_s_paths(const TruncatedBall& b, SPathOptions options = {});
// X-ball norm of every arc label r_i[k1..k2) against the cone distance, i <= truncation.
PropertyResult check_cone_convexity(const TruncatedBall& b, const PieceIndex& idx, const GenSetSpec& spec);

}  // namespace scc

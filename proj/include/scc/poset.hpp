#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scc/cones.hpp"
#include "scc/core.hpp"
#include "scc/pieces.hpp"

namespace scc {

class SpecNotNested : public Error {
 public:
  using Error::Error;
};
class OverlappingIndexSets : public Error {
 public:
  using Error::Error;
};

struct ProfileEntry {
  size_t index = 0;    // 1-based relator index
  uint32_t value = 0;  // max X-cone distance between endpoints of a Y chord
  std::string method;  // contained | full | laced | brute
};

struct ComparisonProfile {
  GenSetSpec from;  // X, the metric
  GenSetSpec to;    // Y, the chords measured
  std::vector<ProfileEntry> per_index;
  std::vector<uint32_t> running_sup;
  uint32_t final_sup() const { return running_sup.empty() ? 0 : running_sup.back(); }
  // running_sup strictly increasing from the first index on
  bool strictly_increasing() const;
  // "growth witness" or "no obstruction up to N"
  std::string verdict() const;
};

// Cone brute force is used only up to this relator length.
constexpr size_t kProfileBruteLimit = ConeGraph::kDenseLimit;

ComparisonProfile compare_profile(const Presentation& p, const PieceIndex& idx, const GenSetSpec& x,
                                  const GenSetSpec& y, size_t n_relators);
uint32_t profile_entry(const Presentation& p, const PieceIndex& idx, const Rule& x, const Rule& y, size_t i,
                       std::string* method = nullptr);

struct AntipodalBases {
  std::vector<size_t> x;         // per relator, vertex 0
  std::vector<size_t> y;         // shortlex-least vertex at P4 distance floor(diam/2) from x
  std::vector<uint32_t> diameter;  // of the P4 cone
};
AntipodalBases pick_antipodal_bases(const Presentation& p, const PieceIndex& idx, size_t n_relators);
// Laced specs at the chosen bases, one override per relator.
std::pair<GenSetSpec, GenSetSpec> laced_pair(const AntipodalBases& bases);

// Relator indices whose P4 cone has diameter above the threshold.
std::vector<size_t> witness_indices(const Presentation& p, const PieceIndex& idx, size_t n_relators,
                                    uint32_t threshold = 8);

// X^A: X^2 off I and on I_A, X^1 on I minus I_A. I_A = {I[a-1] : a in A}, A 1-based positions.
GenSetSpec mix_pfin(const GenSetSpec& x1, const GenSetSpec& x2, const std::set<size_t>& a,
                    const std::vector<size_t>& witnesses);
// W^A: X on I_A, Y on J_A, L elsewhere.
GenSetSpec mix_antichain(const GenSetSpec& x, const GenSetSpec& y, const std::set<size_t>& i_a,
                         const std::set<size_t>& j_a);

struct Triviality {
  std::vector<uint32_t> counts;       // minimal piece count of the full cycle, per relator
  std::vector<uint32_t> running_max;
  std::vector<size_t> records;        // 1-based indices where running_max rises
  bool growing = false;
  uint32_t max() const { return running_max.empty() ? 0 : running_max.back(); }
  std::string status() const { return growing ? "growing" : "bounded so far"; }
};

// kInfinity marks a cycle that is not a product of pieces.
uint32_t full_cycle_piece_count(const PieceIndex& idx, size_t i);
Triviality tc_triviality(const Presentation& p, const PieceIndex& idx, size_t n_relators);

}  // namespace scc

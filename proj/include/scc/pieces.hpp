#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "scc/core.hpp"

namespace scc {

class EmptyWord : public Error {
 public:
  using Error::Error;
};

enum class IndexMode {
  Dense,     // suffix array kept, per-position run table, exact for all queries
  Streamed,  // per-relator maxima only, runs capped at stream_cap
};

struct PieceIndexOptions {
  IndexMode mode = IndexMode::Dense;
  // Cap on run lengths in streamed mode; clamped to the shortest cycle length.
  uint32_t stream_cap = 4096;
};

struct LongestPiece {
  uint32_t length = 0;
  size_t position = 0;  // start q on r_i realizing the maximum (smallest such q)
};

class PieceIndex {
 public:
  static constexpr uint32_t kInfinity = std::numeric_limits<uint32_t>::max();

  PieceIndex() = default;
  PieceIndex(const Presentation& p, PieceIndexOptions options = {});

  const Presentation& presentation() const { return pres_; }
  const SymmetrizedClosure& closure() const { return closure_; }
  IndexMode mode() const { return options_.mode; }
  // true when a streamed run reached the cap, so values equal to the cap are lower bounds
  bool saturated() const { return saturated_; }
  uint32_t cap() const { return cap_; }

  bool is_piece(const Word& u) const;
  // Number of distinct members having u as a prefix, stopping once `limit` are found.
  size_t prefix_member_count(const Word& u, size_t limit = 2) const;

  // m(i,q): longest piece starting at q on the cycle of r_i (i is 0-based).
  uint32_t max_piece_run(size_t i, size_t q) const;
  std::vector<uint32_t> runs(size_t i) const;

  LongestPiece longest_piece(size_t i) const { return longest_.at(i); }

  // Minimal number of pieces whose concatenation is the arc of length len
  // starting at q (forward) or ending at q (backward). kInfinity if impossible.
  uint32_t min_piece_cover(size_t i, size_t q, size_t len, bool forward = true) const;
  uint32_t min_piece_cover_dp(size_t i, size_t q, size_t len, bool forward = true) const;

  // m(i,q+1) >= m(i,q) - 1 everywhere, i.e. every sub-arc of a piece arc is a piece arc.
  bool sub_arc_closed() const;

  size_t text_length() const { return text_len_; }

 private:
  struct Segment {
    size_t start;   // text offset
    size_t length;  // cycle length
    size_t cycle;   // closure cycle id
  };

  void build();
  size_t segment_of(size_t text_pos) const;
  uint64_t member_id(size_t seg, size_t q) const;
  // SA interval of suffixes beginning with u
  std::pair<size_t, size_t> locate(const Word& u) const;

  Presentation pres_;
  SymmetrizedClosure closure_;
  PieceIndexOptions options_;
  uint32_t cap_ = 0;
  bool saturated_ = false;
  size_t text_len_ = 0;

  std::vector<Segment> segments_;
  std::vector<uint8_t> text8_;
  std::vector<int32_t> text32_;
  std::vector<int32_t> sa_;
  std::vector<std::vector<uint32_t>> cycle_runs_;  // per closure cycle, per position q < length
  std::vector<LongestPiece> longest_;
};

PieceIndex build_piece_index(const Presentation& p, PieceIndexOptions options = {});

struct RelatorStat {
  size_t index = 0;  // 1-based
  size_t length = 0;
  uint32_t longest_piece = 0;
};

struct SmallCancellationReport {
  Rational lambda;
  std::vector<RelatorStat> per_relator;
  bool pass = true;
  struct Witness {
    size_t relator = 0;  // 1-based
    size_t position = 0;
    Word piece;
  };
  std::optional<Witness> worst_witness;
};

SmallCancellationReport check_small_cancellation(const PieceIndex& idx, Rational lambda);

}  // namespace scc

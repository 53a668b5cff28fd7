#include "scc/pieces.hpp"

#include <algorithm>

#include "scc/suffix_array.hpp"

namespace scc {

namespace {

constexpr uint32_t kNone = PieceIndex::kInfinity;

}  // namespace

PieceIndex::PieceIndex(const Presentation& p, PieceIndexOptions options)
    : pres_(p), closure_(p), options_(options) {
  build();
}

PieceIndex build_piece_index(const Presentation& p, PieceIndexOptions options) { return PieceIndex(p, options); }

size_t PieceIndex::segment_of(size_t text_pos) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), text_pos,
                             [](size_t v, const Segment& s) { return v < s.start; });
  return static_cast<size_t>(it - segments_.begin()) - 1;
}

uint64_t PieceIndex::member_id(size_t seg, size_t q) const {
  const Segment& s = segments_[seg];
  const ClosureCycle& c = closure_.cycles()[s.cycle];
  return closure_.cycle_base(s.cycle) + q % c.period;
}

void PieceIndex::build() {
  const auto& cycles = closure_.cycles();
  longest_.assign(pres_.size(), LongestPiece{});
  if (cycles.empty()) return;

  size_t min_len = SIZE_MAX, max_len = 0;
  for (const auto& c : cycles) {
    min_len = std::min(min_len, c.word.size());
    max_len = std::max(max_len, c.word.size());
  }
  const bool streamed = options_.mode == IndexMode::Streamed;
  cap_ = streamed ? static_cast<uint32_t>(std::min<size_t>(options_.stream_cap, min_len))
                  : static_cast<uint32_t>(max_len);

  // text: per cycle, the word followed by an extension repeating it, then separator 1; sentinel 0
  size_t total = 1;
  for (const auto& c : cycles) {
    size_t n = c.word.size();
    size_t ext = streamed ? std::min<size_t>(cap_, n) : n - 1;
    segments_.push_back(Segment{total - 1, n, static_cast<size_t>(&c - cycles.data())});
    total += n + ext + 1;
  }
  text_len_ = total;
  const int32_t alphabet = static_cast<int32_t>(2 * pres_.rank() + 2);
  const bool narrow = alphabet <= 256;
  auto fill = [&](auto& text) {
    text.resize(total);
    size_t at = 0;
    for (const auto& c : cycles) {
      size_t n = c.word.size();
      size_t ext = streamed ? std::min<size_t>(cap_, n) : n - 1;
      for (size_t t = 0; t < n + ext; ++t) text[at++] = static_cast<std::decay_t<decltype(text[0])>>(c.word[t % n].code() + 2);
      text[at++] = 1;
    }
    text[at] = 0;
  };
  std::vector<int32_t> plcp;
  if (narrow) {
    fill(text8_);
    sa_ = suffix_array(text8_, alphabet);
    plcp = permuted_lcp(text8_, sa_);
  } else {
    fill(text32_);
    sa_ = suffix_array(text32_, alphabet);
    plcp = permuted_lcp(text32_, sa_);
  }

  // relators whose forward reading is a given cycle
  std::vector<std::vector<std::pair<size_t, size_t>>> forward_of(cycles.size());
  for (size_t i = 0; i < pres_.size(); ++i) {
    auto [c, shift] = closure_.forward_cycle(i);
    forward_of[c].emplace_back(i, shift);
  }
  if (!streamed) {
    cycle_runs_.resize(cycles.size());
    for (size_t c = 0; c < cycles.size(); ++c) cycle_runs_[c].assign(cycles[c].word.size(), 0);
  }

  std::vector<size_t> recheck;  // text positions whose run may exceed a shorter member's length
  auto commit = [&](size_t pos, uint32_t raw) {
    size_t seg = segment_of(pos);
    const Segment& s = segments_[seg];
    size_t q = pos - s.start;
    uint32_t v = std::min<uint32_t>(raw, static_cast<uint32_t>(s.length));
    if (streamed) {
      if (v >= cap_) {
        v = cap_;
        saturated_ = true;
      }
    } else {
      if (v > min_len) recheck.push_back(pos);
      cycle_runs_[s.cycle][q] = v;
    }
    for (auto [i, shift] : forward_of[s.cycle]) {
      size_t qi = (q + s.length - shift % s.length) % s.length;
      LongestPiece& lp = longest_[i];
      if (v > lp.length || (v == lp.length && qi < lp.position)) lp = LongestPiece{v, qi};
    }
  };

  struct Pending {
    size_t pos;
    uint32_t min_since;
    uint32_t left;
  };
  std::vector<Pending> pending;
  bool have_a = false, have_b = false;
  uint64_t a_id = 0;
  uint32_t a_min = kNone, b_min = kNone;
  const size_t N = sa_.size();
  for (size_t k = 0; k < N; ++k) {
    size_t pos = static_cast<size_t>(sa_[k]);
    uint32_t l = k == 0 ? 0u : static_cast<uint32_t>(plcp[pos]);
    a_min = std::min(a_min, l);
    b_min = std::min(b_min, l);
    for (Pending& p : pending) p.min_since = std::min(p.min_since, l);
    if (pos + 1 >= N) continue;  // sentinel
    size_t seg = segment_of(pos);
    size_t q = pos - segments_[seg].start;
    if (q >= segments_[seg].length) continue;
    uint64_t x = member_id(seg, q);
    uint32_t left = 0;
    if (have_a) left = a_id != x ? a_min : (have_b ? b_min : 0u);
    if (have_a && a_id != x) {
      for (const Pending& p : pending) commit(p.pos, std::max(p.left, p.min_since));
      pending.clear();
      b_min = a_min;
      have_b = true;
    }
    a_id = x;
    a_min = kNone;
    have_a = true;
    pending.push_back(Pending{pos, kNone, left});
  }
  for (const Pending& p : pending) commit(p.pos, p.left);

  if (!recheck.empty()) {
    // exact pass for the rare runs that could be cut by a shorter member
    std::sort(recheck.begin(), recheck.end());
    for (size_t k = 0; k < N; ++k) {
      size_t pos = static_cast<size_t>(sa_[k]);
      if (!std::binary_search(recheck.begin(), recheck.end(), pos)) continue;
      size_t seg = segment_of(pos);
      const Segment& s = segments_[seg];
      uint64_t x = member_id(seg, pos - s.start);
      uint32_t best = 0;
      auto consider = [&](size_t k2, uint32_t r) {
        size_t p2 = static_cast<size_t>(sa_[k2]);
        if (p2 + 1 >= N) return;
        size_t s2 = segment_of(p2);
        size_t q2 = p2 - segments_[s2].start;
        if (q2 >= segments_[s2].length || member_id(s2, q2) == x) return;
        uint32_t v = std::min<uint32_t>({r, static_cast<uint32_t>(s.length), static_cast<uint32_t>(segments_[s2].length)});
        best = std::max(best, v);
      };
      uint32_t r = kNone;
      for (size_t k2 = k; k2-- > 0;) {
        r = std::min(r, static_cast<uint32_t>(plcp[sa_[k2 + 1]]));
        if (r <= best) break;
        consider(k2, r);
      }
      r = kNone;
      for (size_t k2 = k + 1; k2 < N; ++k2) {
        r = std::min(r, static_cast<uint32_t>(plcp[sa_[k2]]));
        if (r <= best) break;
        consider(k2, r);
      }
      cycle_runs_[s.cycle][pos - s.start] = best;
    }
    for (auto& lp : longest_) lp = LongestPiece{};
    for (size_t i = 0; i < pres_.size(); ++i) {
      auto [c, shift] = closure_.forward_cycle(i);
      size_t n = cycles[c].word.size();
      for (size_t q = 0; q < n; ++q) {
        uint32_t v = cycle_runs_[c][(q + shift) % n];
        if (v > longest_[i].length) longest_[i] = LongestPiece{v, q};
      }
    }
  }

  if (streamed) {
    // keep nothing per position
    std::vector<int32_t>().swap(sa_);
    std::vector<uint8_t>().swap(text8_);
    std::vector<int32_t>().swap(text32_);
  }
}

uint32_t PieceIndex::max_piece_run(size_t i, size_t q) const {
  if (options_.mode == IndexMode::Streamed) throw Error("per-position runs are not kept in streamed mode");
  auto [c, shift] = closure_.forward_cycle(i);
  const auto& runs = cycle_runs_[c];
  return runs[(q + shift) % runs.size()];
}

std::vector<uint32_t> PieceIndex::runs(size_t i) const {
  size_t n = pres_.relator(i).size();
  std::vector<uint32_t> out(n);
  for (size_t q = 0; q < n; ++q) out[q] = max_piece_run(i, q);
  return out;
}

std::pair<size_t, size_t> PieceIndex::locate(const Word& u) const {
  auto at = [&](size_t pos) -> int32_t {
    if (!text8_.empty()) return text8_[pos];
    return text32_[pos];
  };
  // first suffix >= u, then first suffix whose prefix of |u| letters exceeds u
  auto cmp = [&](int32_t pos, bool upper) {
    for (size_t t = 0; t < u.size(); ++t) {
      int32_t a = at(static_cast<size_t>(pos) + t);
      int32_t b = static_cast<int32_t>(u[t].code() + 2);
      if (a != b) return a < b;
    }
    return upper;  // equal prefix: below upper bound, not below lower bound
  };
  auto lo = std::partition_point(sa_.begin(), sa_.end(), [&](int32_t pos) { return cmp(pos, false); });
  auto hi = std::partition_point(lo, sa_.end(), [&](int32_t pos) { return cmp(pos, true); });
  return {static_cast<size_t>(lo - sa_.begin()), static_cast<size_t>(hi - sa_.begin())};
}

size_t PieceIndex::prefix_member_count(const Word& u, size_t limit) const {
  if (u.empty()) throw EmptyWord("empty word");
  if (options_.mode == IndexMode::Streamed) throw Error("piece queries need a dense index");
  if (sa_.empty()) return 0;
  auto [lo, hi] = locate(u);
  std::vector<uint64_t> ids;
  for (size_t k = lo; k < hi && ids.size() < limit; ++k) {
    size_t pos = static_cast<size_t>(sa_[k]);
    size_t seg = segment_of(pos);
    size_t q = pos - segments_[seg].start;
    if (q >= segments_[seg].length || segments_[seg].length < u.size()) continue;
    uint64_t id = member_id(seg, q);
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  }
  return ids.size();
}

bool PieceIndex::is_piece(const Word& u) const {
  if (u.empty()) throw EmptyWord("empty word");
  if (options_.mode == IndexMode::Streamed) throw Error("piece queries need a dense index");
  if (sa_.empty()) return false;
  auto [lo, hi] = locate(u);
  for (size_t k = lo; k < hi; ++k) {
    size_t pos = static_cast<size_t>(sa_[k]);
    size_t seg = segment_of(pos);
    const Segment& s = segments_[seg];
    size_t q = pos - s.start;
    if (q >= s.length || s.length < u.size()) continue;
    return cycle_runs_[s.cycle][q] >= u.size();
  }
  return false;
}

uint32_t PieceIndex::min_piece_cover(size_t i, size_t q, size_t len, bool forward) const {
  if (len == 0) return 0;
  size_t n = pres_.relator(i).size();
  if (len > n) throw Error("arc longer than the relator");
  size_t pos = forward ? q % n : (q % n + n - len % n) % n;
  uint32_t count = 0;
  size_t remaining = len;
  while (remaining > 0) {
    uint32_t m = max_piece_run(i, pos);
    if (m == 0) return kInfinity;
    ++count;
    if (m >= remaining) break;
    remaining -= m;
    pos = (pos + m) % n;
  }
  return count;
}

uint32_t PieceIndex::min_piece_cover_dp(size_t i, size_t q, size_t len, bool forward) const {
  if (len == 0) return 0;
  const Word& r = pres_.relator(i);
  size_t n = r.size();
  if (len > n) throw Error("arc longer than the relator");
  size_t start = forward ? q % n : (q % n + n - len % n) % n;
  Word arc = subword_cyclic(r, start, len);
  std::vector<uint32_t> dp(len + 1, kInfinity);
  dp[0] = 0;
  for (size_t t = 1; t <= len; ++t) {
    for (size_t s = 0; s < t; ++s) {
      if (dp[s] == kInfinity || dp[s] + 1 >= dp[t]) continue;
      Word u(arc.begin() + s, arc.begin() + t);
      if (is_piece(u)) dp[t] = dp[s] + 1;
    }
  }
  return dp[len];
}

bool PieceIndex::sub_arc_closed() const {
  if (options_.mode == IndexMode::Streamed) throw Error("per-position runs are not kept in streamed mode");
  for (const auto& runs : cycle_runs_) {
    size_t n = runs.size();
    for (size_t q = 0; q < n; ++q) {
      if (runs[q] > 0 && runs[(q + 1) % n] + 1 < runs[q]) return false;
    }
  }
  return true;
}

SmallCancellationReport check_small_cancellation(const PieceIndex& idx, Rational lambda) {
  if (lambda.num <= 0) throw Error("lambda must be positive");
  SmallCancellationReport rep;
  rep.lambda = lambda;
  const Presentation& p = idx.presentation();
  // worst: largest ratio p/|r| among failures, then smallest index
  size_t worst = SIZE_MAX;
  for (size_t i = 0; i < p.size(); ++i) {
    LongestPiece lp = idx.longest_piece(i);
    size_t len = p.relator(i).size();
    rep.per_relator.push_back(RelatorStat{i + 1, len, lp.length});
    if (!lambda.exceeds(static_cast<int64_t>(len), lp.length)) {
      rep.pass = false;
      if (worst == SIZE_MAX) {
        worst = i;
      } else {
        const RelatorStat& w = rep.per_relator[worst];
        if (static_cast<unsigned __int128>(lp.length) * w.length >
            static_cast<unsigned __int128>(w.longest_piece) * len) {
          worst = i;
        }
      }
    }
  }
  if (worst != SIZE_MAX) {
    LongestPiece lp = idx.longest_piece(worst);
    rep.worst_witness = SmallCancellationReport::Witness{
        worst + 1, lp.position, subword_cyclic(p.relator(worst), lp.position, lp.length)};
  }
  return rep;
}

}  // namespace scc

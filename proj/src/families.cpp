#include "scc/families.hpp"

#include <algorithm>
#include <cmath>

#include "scc/parallel.hpp"

namespace scc {

namespace {

// Cube of period p exists iff some maximal run of period p has length >= 3p.
// Every such run covers a multiple of p where forward plus backward agreement reaches 2p.
template <class At>
bool has_cube(At at, size_t n, size_t max_period) {
  for (size_t p = 1; p <= max_period && 3 * p <= n; ++p) {
    for (size_t j = 0; j + p < n; j += p) {
      size_t fwd = 0;
      while (fwd < 2 * p && j + p + fwd < n && at(j + fwd) == at(j + p + fwd)) ++fwd;
      if (fwd >= 2 * p) return true;
      size_t bwd = 0;
      while (fwd + bwd < 2 * p && bwd < j && at(j - 1 - bwd) == at(j + p - 1 - bwd)) ++bwd;
      if (fwd + bwd >= 2 * p) return true;
    }
  }
  return false;
}

}  // namespace

bool is_cube_free(const std::vector<uint8_t>& w) {
  return !has_cube([&](size_t i) { return w[i]; }, w.size(), w.size());
}

bool is_cube_free(std::string_view w) {
  return !has_cube([&](size_t i) { return w[i]; }, w.size(), w.size());
}

bool is_cube_free(const Word& w) {
  return !has_cube([&](size_t i) { return w[i].code(); }, w.size(), w.size());
}

bool is_cyclically_cube_free(const Word& w) {
  size_t n = w.size();
  return !has_cube([&](size_t i) { return w[i % n].code(); }, 2 * n, n / 3);
}

CubeFreeEnumerator::CubeFreeEnumerator(size_t length) : length_(length) { w_.reserve(length); }

bool CubeFreeEnumerator::suffix_cube(size_t end) const {
  for (size_t p = 1; 3 * p <= end; ++p) {
    size_t s = end - 3 * p;
    bool cube = true;
    for (size_t t = 0; t < 2 * p && cube; ++t) cube = w_[s + t] == w_[s + p + t];
    if (cube) return true;
  }
  return false;
}

bool CubeFreeEnumerator::next(std::string& out) {
  if (done_) return false;
  bool bump = started_;
  started_ = true;
  if (length_ == 0) {
    if (bump) {
      done_ = true;
      return false;
    }
    out.clear();
    ++emitted_;
    return true;
  }
  for (;;) {
    if (bump) {
      while (!w_.empty() && w_.back() == 'b') w_.pop_back();
      if (w_.empty()) {
        done_ = true;
        return false;
      }
      w_.back() = 'b';
      bump = suffix_cube(w_.size());
      continue;
    }
    if (w_.size() == length_) {
      out = w_;
      ++emitted_;
      return true;
    }
    w_.push_back('a');
    bump = suffix_cube(w_.size());
  }
}

std::vector<std::string> enumerate_cube_free(size_t length, size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  CubeFreeEnumerator e(length);
  std::string w;
  while (out.size() < count) {
    if (!e.next(w)) {
      throw NotEnoughWords("only " + std::to_string(out.size()) + " cube-free words of length " +
                           std::to_string(length));
    }
    out.push_back(w);
  }
  return out;
}

uint64_t count_cube_free(size_t length) {
  CubeFreeEnumerator e(length);
  std::string w;
  while (e.next(w)) {
  }
  return e.emitted();
}

std::string family_relator_string(size_t n) {
  if (n < 6) throw ParameterTooSmall("family parameter n must be at least 6, got " + std::to_string(n));
  if (n > 24) throw ResourceBudgetExceeded("family parameter n too large: " + std::to_string(n));
  size_t blocks = size_t{1} << n;
  auto words = enumerate_cube_free(9 * n, blocks);
  std::string r;
  r.reserve(blocks * (9 * n + 1));
  for (const auto& w : words) {
    r.push_back('c');
    r += w;
  }
  return r;
}

Word build_family_relator(size_t n) {
  std::string s = family_relator_string(n);
  Word w(s.size());
  for (size_t i = 0; i < s.size(); ++i) w[i] = Letter{static_cast<uint16_t>(s[i] - 'a'), 1};
  return w;
}

Presentation family_presentation(size_t n_lo, size_t n_hi) {
  std::vector<Word> rels;
  for (size_t n = n_lo; n <= n_hi; ++n) rels.push_back(build_family_relator(n));
  return Presentation({'a', 'b', 'c'}, std::move(rels));
}

double inequality_value(size_t n) {
  double x = static_cast<double>(n);
  return std::sqrt(9 * x) * std::pow(2.0, x / 2) / ((18 * x + 1) * (x + std::log2(9 * x + 1)));
}

// log2 of the same quantity, summed term by term
double inequality_value_log(size_t n) {
  double x = static_cast<double>(n);
  return 0.5 * std::log2(9 * x) + x / 2 - std::log2(18 * x + 1) - std::log2(x + std::log2(9 * x + 1));
}

size_t inequality_threshold(size_t from, size_t to, bool log_domain) {
  constexpr double slack = 1e-9;
  size_t n0 = 0;
  for (size_t n = to + 1; n-- > from;) {
    bool ok = log_domain ? inequality_value_log(n) >= -slack : inequality_value(n) >= 1.0 - slack;
    if (!ok) break;
    n0 = n;
  }
  return n0;
}

FamilyVerification verify_family(size_t n_lo, size_t n_hi, FamilyOptions options) {
  if (n_lo < 6) throw ParameterTooSmall("family parameter n must be at least 6, got " + std::to_string(n_lo));
  if (n_hi < n_lo) throw Error("empty family range");
  uint64_t closure = 0;
  for (size_t n = n_lo; n <= n_hi; ++n) {
    if (n > 24) throw ResourceBudgetExceeded("family parameter n too large: " + std::to_string(n));
    closure += 2 * (uint64_t{1} << n) * (9 * n + 1);
  }
  if (closure > options.closure_cap) {
    throw ResourceBudgetExceeded("closure of " + std::to_string(closure) + " letters exceeds cap " +
                                 std::to_string(options.closure_cap));
  }

  FamilyVerification out;
  size_t count = n_hi - n_lo + 1;
  std::vector<Word> rels(count);
  std::vector<uint8_t> cube_free(count);
  parallel_for(count, [&](size_t k) {
    rels[k] = build_family_relator(n_lo + k);
    cube_free[k] = is_cube_free(rels[k]);
  });
  Presentation p({'a', 'b', 'c'}, std::move(rels));
  rels.clear();

  out.mode = closure > options.dense_limit ? IndexMode::Streamed : IndexMode::Dense;
  PieceIndex idx(p, PieceIndexOptions{out.mode, options.stream_cap});
  out.joint = check_small_cancellation(idx, Rational{1, 24});
  out.pass = out.joint.pass;
  for (size_t k = 0; k < count; ++k) {
    FamilyReport r;
    r.n = n_lo + k;
    r.relator_length = p.relator(k).size();
    r.expected_length = (uint64_t{1} << r.n) * (9 * r.n + 1);
    r.longest_piece = idx.longest_piece(k).length;
    r.piece_saturated = idx.saturated() && r.longest_piece >= idx.cap();
    r.piece_bound = 18 * r.n + 1;
    r.cube_free = cube_free[k] != 0;
    r.c24_margin = Rational{static_cast<int64_t>(r.relator_length) - 24 * static_cast<int64_t>(r.longest_piece), 24};
    r.inequality = inequality_value(r.n);
    r.pass = r.relator_length == r.expected_length && r.cube_free && !r.piece_saturated &&
             r.longest_piece <= r.piece_bound && r.c24_margin.num > 0;
    out.pass = out.pass && r.pass;
    out.reports.push_back(r);
  }
  return out;
}

Presentation select_relators(const Presentation& p, const std::vector<size_t>& indices) {
  std::vector<Word> rels;
  for (size_t i : indices) {
    if (i == 0 || i > p.size()) throw Error("relator index out of range: " + std::to_string(i));
    rels.push_back(p.relator(i - 1));
  }
  return Presentation(p.alphabet(), std::move(rels), p.lambda_target());
}

}  // namespace scc

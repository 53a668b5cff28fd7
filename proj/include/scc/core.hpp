#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(size_t line, size_t column, const std::string& reason);
  size_t line;
  size_t column;
  std::string reason;
};

class RelatorNotReduced : public Error {
 public:
  using Error::Error;
};

class RelatorNotCyclicallyReduced : public Error {
 public:
  using Error::Error;
};

class UnusedGenerator : public Error {
 public:
  using Error::Error;
};

// Exact nonnegative rational, used for lambda.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  static Rational parse(std::string_view text);
  std::string str() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  // lambda * len > p, evaluated exactly
  bool exceeds(int64_t len, int64_t p) const {
    return static_cast<__int128>(num) * len > static_cast<__int128>(p) * den;
  }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

struct Letter {
  uint16_t symbol = 0;
  int8_t sign = 1;

  Letter inverse() const { return Letter{symbol, static_cast<int8_t>(-sign)}; }
  // a, A, b, B, ... ordering
  uint32_t code() const { return 2 * symbol + (sign < 0 ? 1 : 0); }
  static Letter from_code(uint32_t c) {
    return Letter{static_cast<uint16_t>(c / 2), static_cast<int8_t>((c & 1) ? -1 : 1)};
  }

  friend bool operator==(const Letter& a, const Letter& b) { return a.symbol == b.symbol && a.sign == b.sign; }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
  friend bool operator<(const Letter& a, const Letter& b) { return a.code() < b.code(); }
};

using Word = std::vector<Letter>;

Word free_reduce(const Word& w);
Word invert(const Word& w);
bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);

// Returns (c, u) with w = u c u^-1 and c cyclically reduced. Requires w reduced.
std::pair<Word, Word> cyclic_reduce(const Word& w);

Word concat(const Word& a, const Word& b);
Word rotate(const Word& w, size_t k);
Word subword_cyclic(const Word& w, size_t start, size_t length);
bool shortlex_less(const Word& a, const Word& b);

// Smallest p dividing |w| with w equal to its rotation by p.
size_t cyclic_period(const Word& w);
// Start of the lexicographically least rotation (codes order).
size_t least_rotation(const Word& w);

class Presentation {
 public:
  Presentation() = default;
  // Alphabet is sorted on construction so symbol ids follow the canonical order.
  Presentation(std::vector<char> alphabet, std::vector<Word> relators,
               Rational lambda_target = Rational{1, 24});
  static Presentation from_strings(const std::vector<char>& alphabet,
                                   const std::vector<std::string>& relators,
                                   Rational lambda_target = Rational{1, 24});

  const std::vector<char>& alphabet() const { return alphabet_; }
  const std::vector<Word>& relators() const { return relators_; }
  size_t rank() const { return alphabet_.size(); }
  size_t size() const { return relators_.size(); }
  const Word& relator(size_t i) const { return relators_.at(i); }
  Rational lambda_target() const { return lambda_; }
  size_t total_length() const;

  Presentation truncated(size_t n) const;

  Word word(std::string_view text) const;
  std::string str(const Word& w) const;

 private:
  std::vector<char> alphabet_;
  std::vector<Word> relators_;
  Rational lambda_{1, 24};
};

// Text format: "gens: a, b", "rel: abAB" per relator, optional "lambda: p/q", '#' comments.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);
std::string serialize(const Presentation& p);

struct MemberOrigin {
  size_t relator = 0;  // 0-based internally
  size_t offset = 0;
  bool inverted = false;
};

// One class of equal cyclic words among the relators and their inverses.
struct ClosureCycle {
  Word word;            // the cycle as first met (a relator or its inverse)
  size_t period = 0;    // number of distinct rotations
  MemberOrigin origin;  // relator and orientation it was first met as
};

// The symmetrized closure, stored as distinct cycles. Member k of cycle c is
// the rotation of cycles[c].word by k, for 0 <= k < period.
class SymmetrizedClosure {
 public:
  SymmetrizedClosure() = default;
  explicit SymmetrizedClosure(const Presentation& p);

  const std::vector<ClosureCycle>& cycles() const { return cycles_; }
  size_t size() const { return member_count_; }
  bool empty() const { return member_count_ == 0; }
  size_t cycle_of_member(size_t m) const;
  Word member(size_t m) const;
  MemberOrigin origin(size_t m) const;
  std::vector<Word> members(size_t cap = 1u << 22) const;

  // cycle id and rotation shift of relator i read forward / inverted
  std::pair<size_t, size_t> forward_cycle(size_t i) const { return forward_.at(i); }
  std::pair<size_t, size_t> inverse_cycle(size_t i) const { return inverse_.at(i); }
  size_t cycle_base(size_t c) const { return base_.at(c); }

 private:
  std::vector<ClosureCycle> cycles_;
  std::vector<size_t> base_;
  std::vector<std::pair<size_t, size_t>> forward_;
  std::vector<std::pair<size_t, size_t>> inverse_;
  size_t member_count_ = 0;
};

SymmetrizedClosure symmetrize(const Presentation& p);

}  // namespace scc

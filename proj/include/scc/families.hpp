#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scc/core.hpp"
#include "scc/pieces.hpp"

namespace scc {

class NotEnoughWords : public Error {
 public:
  using Error::Error;
};
class ParameterTooSmall : public Error {
 public:
  using Error::Error;
};
class ResourceBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Works on any sequence of small integers (letters of a binary word are 0/1).
bool is_cube_free(const std::vector<uint8_t>& w);
bool is_cube_free(std::string_view w);
bool is_cube_free(const Word& w);
// No cube in any rotation-spanning window of the cyclic word.
bool is_cyclically_cube_free(const Word& w);

// Lexicographic stream of cube-free words of fixed length over {a < b}.
class CubeFreeEnumerator {
 public:
  explicit CubeFreeEnumerator(size_t length);
  bool next(std::string& out);
  size_t emitted() const { return emitted_; }
  size_t length() const { return length_; }

 private:
  bool extend(size_t from);
  bool suffix_cube(size_t end) const;

  size_t length_;
  size_t emitted_ = 0;
  bool started_ = false;
  bool done_ = false;
  std::string w_;
};

std::vector<std::string> enumerate_cube_free(size_t length, size_t count);
// Exact number of cube-free binary words of the given length.
uint64_t count_cube_free(size_t length);

// Product over i of c * w_n^i with the first 2^n cube-free words of length 9n, over gens a, b, c.
Word build_family_relator(size_t n);
std::string family_relator_string(size_t n);
Presentation family_presentation(size_t n_lo, size_t n_hi);

double inequality_value(size_t n);
double inequality_value_log(size_t n);
// Smallest n0 >= from with the value >= 1 for all n in [n0, to]; 0 if none.
size_t inequality_threshold(size_t from, size_t to, bool log_domain = false);

struct FamilyReport {
  size_t n = 0;
  size_t relator_length = 0;
  uint64_t expected_length = 0;
  uint32_t longest_piece = 0;
  bool piece_saturated = false;
  uint64_t piece_bound = 0;  // 18n+1
  bool cube_free = false;
  Rational c24_margin;  // |r|/24 - p
  double inequality = 0;
  bool pass = false;
};

struct FamilyVerification {
  std::vector<FamilyReport> reports;
  SmallCancellationReport joint;
  IndexMode mode = IndexMode::Dense;
  bool pass = false;
};

struct FamilyOptions {
  uint64_t closure_cap = 200'000'000;  // letters over the symmetrized closure
  uint64_t dense_limit = 40'000'000;   // above this the streamed index is used
  uint32_t stream_cap = 4096;
};

FamilyVerification verify_family(size_t n_lo, size_t n_hi, FamilyOptions options = {});

// Keeps relators whose (1-based) index is selected.
Presentation select_relators(const Presentation& p, const std::vector<size_t>& indices);

}  // namespace scc

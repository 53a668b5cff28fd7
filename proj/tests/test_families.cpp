#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scc/families.hpp"

using namespace scc;

namespace {

// First `count` cube-free words of length len in lexicographic order, by plain backtracking.
void backtrack(std::string& s, size_t len, size_t count, std::vector<std::string>& out) {
  if (out.size() >= count || oracle::has_cube(s)) return;
  if (s.size() == len) {
    out.push_back(s);
    return;
  }
  for (char c : {'a', 'b'}) {
    s.push_back(c);
    backtrack(s, len, count, out);
    s.pop_back();
  }
}

std::vector<std::string> first_cube_free(size_t len, size_t count) {
  std::vector<std::string> out;
  std::string s;
  backtrack(s, len, count, out);
  return out;
}

}  // namespace

TEST_CASE("cube-freeness agrees with the window scan") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 3000; ++it) {
    size_t len = rng() % 24;
    std::string s;
    for (size_t t = 0; t < len; ++t) s.push_back(rng() % 2 ? 'b' : 'a');
    CHECK(is_cube_free(s) == !oracle::has_cube(s));
  }
  CHECK_FALSE(is_cube_free(std::string_view("abaabaaba")));
  CHECK(is_cube_free(std::string_view("aabaabba")));
}

TEST_CASE("cube-free counts match exhaustive enumeration") {
  for (size_t len = 1; len <= 14; ++len) CHECK(count_cube_free(len) == oracle::count_cube_free(len));
  CHECK(count_cube_free(18) == 2502);
}

TEST_CASE("enumerator emits words in lexicographic order") {
  for (size_t len : {9, 11, 13}) {
    auto got = enumerate_cube_free(len, 40);
    CHECK(got == first_cube_free(len, 40));
    CHECK(std::is_sorted(got.begin(), got.end()));
  }
  CHECK_THROWS_AS(enumerate_cube_free(4, 100), NotEnoughWords);
}

TEST_CASE("family relators") {
  auto words = first_cube_free(54, 64);
  std::string expect;
  for (const auto& w : words) expect += "c" + w;
  CHECK(family_relator_string(6) == expect);
  for (size_t n = 6; n <= 10; ++n) {
    Word r = build_family_relator(n);
    CHECK(r.size() == (size_t{1} << n) * (9 * n + 1));
    CHECK(is_cube_free(r));
  }
  CHECK_THROWS_AS(family_relator_string(5), ParameterTooSmall);
  CHECK_THROWS_AS(verify_family(3, 8), ParameterTooSmall);
  Presentation p = family_presentation(6, 8);
  CHECK(p.size() == 3);
  CHECK(select_relators(p, {1, 3}).size() == 2);
}

TEST_CASE("family verification at small parameters") {
  FamilyVerification v = verify_family(6, 9);
  CHECK(v.pass);
  CHECK(v.joint.pass);
  REQUIRE(v.reports.size() == 4);
  for (const auto& r : v.reports) {
    CHECK(r.pass);
    CHECK(r.cube_free);
    CHECK(r.relator_length == r.expected_length);
    CHECK(r.longest_piece <= r.piece_bound);
    CHECK(24 * uint64_t{r.longest_piece} < r.relator_length);
  }
}

TEST_CASE("inequality value and threshold") {
  for (size_t n = 6; n < 60; ++n) {
    double x = static_cast<double>(n);
    double direct = std::sqrt(9 * x) * std::exp2(x / 2) / ((18 * x + 1) * (x + std::log2(9 * x + 1)));
    CHECK(inequality_value(n) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(inequality_value_log(n) == doctest::Approx(std::log2(direct)).epsilon(1e-9));
    if (n > 8) CHECK(inequality_value(n) > inequality_value(n - 1));
  }
  size_t n0 = inequality_threshold(6, 60);
  CHECK(n0 == inequality_threshold(6, 60, true));
  CHECK(inequality_value(n0) >= 1.0);
  CHECK(inequality_value(n0 - 1) < 1.0);
}

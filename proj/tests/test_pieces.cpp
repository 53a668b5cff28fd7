#include <doctest.h>

#include "oracles.hpp"
#include "scc/pieces.hpp"

using namespace scc;

namespace {

std::optional<Presentation> random_presentation(std::mt19937_64& rng, size_t max_len) {
  size_t rank = 1 + rng() % 3;
  std::vector<char> al;
  for (size_t k = 0; k < rank; ++k) al.push_back(static_cast<char>('a' + k));
  std::vector<Word> rels;
  for (size_t k = 0, m = 1 + rng() % 3; k < m; ++k) rels.push_back(oracle::random_reduced(rng, rank, 1 + rng() % max_len));
  try {
    return Presentation(al, rels);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

TEST_CASE("piece index agrees with the brute-force definition") {
  std::mt19937_64 rng(31);
  size_t tested = 0;
  while (tested < 300) {
    auto p = random_presentation(rng, 12);
    if (!p) continue;
    ++tested;
    PieceIndex idx(*p);
    auto members = oracle::closure(p->relators());
    for (const Word& m : members) {
      for (size_t s = 0; s < m.size(); ++s) {
        for (size_t len = 1; s + len <= m.size(); ++len) {
          Word u(m.begin() + static_cast<std::ptrdiff_t>(s), m.begin() + static_cast<std::ptrdiff_t>(s + len));
          CHECK(idx.is_piece(u) == oracle::is_piece(members, u));
        }
      }
    }
    for (size_t i = 0; i < p->size(); ++i) {
      const Word& r = p->relator(i);
      CHECK(idx.longest_piece(i).length == oracle::longest_piece(members, r));
      for (size_t q = 0; q < r.size(); ++q) {
        uint32_t run = 0;
        for (size_t len = 1; len <= r.size() && oracle::is_piece(members, subword_cyclic(r, q, len)); ++len) run = static_cast<uint32_t>(len);
        CHECK(idx.max_piece_run(i, q) == run);
      }
    }
    CHECK(idx.sub_arc_closed());
  }
}

TEST_CASE("greedy piece cover equals the DP and the splitting oracle") {
  std::mt19937_64 rng(32);
  size_t tested = 0;
  while (tested < 150) {
    auto p = random_presentation(rng, 10);
    if (!p) continue;
    ++tested;
    PieceIndex idx(*p);
    auto members = oracle::closure(p->relators());
    for (size_t i = 0; i < p->size(); ++i) {
      const Word& r = p->relator(i);
      size_t n = r.size();
      for (size_t q = 0; q < n; ++q) {
        for (size_t len = 0; len <= n; ++len) {
          uint32_t g = idx.min_piece_cover(i, q, len, true);
          CHECK(g == idx.min_piece_cover_dp(i, q, len, true));
          uint32_t o = len == 0 ? 0 : oracle::piece_cover(members, subword_cyclic(r, q, len));
          CHECK(g == (o == UINT32_MAX ? PieceIndex::kInfinity : o));
          CHECK(idx.min_piece_cover(i, q, len, false) == idx.min_piece_cover_dp(i, q, len, false));
        }
      }
    }
  }
}

TEST_CASE("streamed mode caps the longest piece") {
  std::mt19937_64 rng(33);
  size_t tested = 0;
  while (tested < 200) {
    auto p = random_presentation(rng, 14);
    if (!p) continue;
    ++tested;
    PieceIndex dense(*p);
    PieceIndex streamed(*p, {IndexMode::Streamed, 3});
    for (size_t i = 0; i < p->size(); ++i) {
      CHECK(streamed.longest_piece(i).length == std::min(dense.longest_piece(i).length, streamed.cap()));
    }
  }
}

TEST_CASE("commutator pieces and small cancellation") {
  Presentation p = parse_presentation("gens: a, b\nrel: abAB\n");
  PieceIndex idx(p);
  CHECK(idx.longest_piece(0).length == 1);
  CHECK(idx.is_piece(p.word("a")));
  CHECK_FALSE(idx.is_piece(p.word("ab")));
  CHECK(check_small_cancellation(idx, Rational{1, 3}).pass);
  auto fail = check_small_cancellation(idx, Rational{1, 4});
  CHECK_FALSE(fail.pass);
  REQUIRE(fail.worst_witness);
  CHECK(fail.worst_witness->relator == 1);
  CHECK(fail.worst_witness->piece.size() == 1);
  CHECK_THROWS_AS(idx.is_piece(Word{}), EmptyWord);
}

TEST_CASE("a proper power has no pieces under the literal definition") {
  // the rotations of aaa are all equal, so only aaa and AAA are members
  Presentation p = parse_presentation("gens: a\nrel: aaa\n");
  PieceIndex idx(p);
  CHECK(idx.longest_piece(0).length == 0);
  CHECK_FALSE(idx.is_piece(p.word("a")));
}

TEST_CASE("prefix member counts") {
  Presentation p = parse_presentation("gens: a, b\nrel: abAB\n");
  PieceIndex idx(p);
  CHECK(idx.prefix_member_count(p.word("a"), 10) == 2);  // abAB, aBAb
  CHECK(idx.prefix_member_count(p.word("ab"), 10) == 1);
  CHECK(idx.prefix_member_count(p.word("aa"), 10) == 0);
}

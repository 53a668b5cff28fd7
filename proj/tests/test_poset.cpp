#include <doctest.h>

#include "oracles.hpp"
#include "scc/families.hpp"
#include "scc/poset.hpp"

using namespace scc;

namespace {

std::optional<Presentation> random_presentation(std::mt19937_64& rng, size_t min_len, size_t max_len, size_t count) {
  std::vector<Word> rels;
  for (size_t k = 0; k < count; ++k) rels.push_back(oracle::random_reduced(rng, 2, min_len + rng() % (max_len - min_len + 1)));
  try {
    return Presentation({'a', 'b'}, rels);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Largest X-distance across a Y-edge, both graphs searched by plain BFS.
uint32_t brute_entry(const ConeGraph& cx, const ConeGraph& cy) {
  auto dx = oracle::all_pairs(cx.to_graph().adjacency());
  uint32_t best = 0;
  for (const Edge& e : cy.to_graph().edges) best = std::max(best, dx[e.u][e.v]);
  return best;
}

GenSetSpec spec_of(const Rule& r) {
  GenSetSpec s;
  s.default_rule = r;
  return s;
}

}  // namespace

TEST_CASE("profile entries against the edge scan") {
  std::mt19937_64 rng(81);
  size_t tested = 0;
  while (tested < 80) {
    auto p = random_presentation(rng, 6, 50, 1);
    if (!p) continue;
    ++tested;
    PieceIndex idx(*p);
    size_t n = p->relator(0).size();
    std::vector<Rule> rules = {Rule::s_only(), Rule::p(1), Rule::p(4), Rule::full(), Rule::laced(rng() % n),
                               Rule::laced(rng() % n)};
    for (const Rule& x : rules) {
      for (const Rule& y : rules) {
        std::string method;
        uint32_t got = profile_entry(*p, idx, x, y, 1, &method);
        INFO(x.str() << " vs " << y.str() << " via " << method);
        CHECK(got == brute_entry(build_cone(*p, idx, x, 1), build_cone(*p, idx, y, 1)));
      }
    }
    CHECK(profile_entry(*p, idx, Rule::s_only(), Rule::full(), 1) == n / 2);
  }
}

TEST_CASE("comparison profile of a spec with itself") {
  Presentation p = family_presentation(6, 8);
  PieceIndex idx(p);
  GenSetSpec p4;
  ComparisonProfile prof = compare_profile(p, idx, p4, p4, 3);
  REQUIRE(prof.per_index.size() == 3);
  for (const auto& e : prof.per_index) CHECK(e.value <= 1);
  CHECK(prof.final_sup() <= 1);
  CHECK_FALSE(prof.strictly_increasing());
  CHECK(prof.verdict() == "no obstruction up to 3");

  ComparisonProfile grow = compare_profile(p, idx, p4, spec_of(Rule::full()), 3);
  CHECK(grow.strictly_increasing());
  CHECK(grow.verdict() == "growth witness");
  for (size_t t = 0; t < 3; ++t) CHECK(grow.per_index[t].value == build_cone(p, idx, Rule::p(4), t + 1).diameter());
}

TEST_CASE("antipodal bases") {
  Presentation p = family_presentation(6, 8);
  PieceIndex idx(p);
  AntipodalBases b = pick_antipodal_bases(p, idx, 3);
  REQUIRE(b.x.size() == 3);
  for (size_t t = 0; t < 3; ++t) {
    ConeGraph c = build_cone(p, idx, Rule::p(4), t + 1);
    CHECK(b.x[t] == 0);
    CHECK(b.diameter[t] == c.diameter());
    CHECK(c.distance(b.x[t], b.y[t]) == b.diameter[t] / 2);
    for (size_t v = 0; v < b.y[t]; ++v) CHECK(c.distance(b.x[t], v) != b.diameter[t] / 2);
  }
  auto [lx, ly] = laced_pair(b);
  CHECK(lx.rule_for(2) == Rule::laced(b.x[1]));
  CHECK(ly.rule_for(3) == Rule::laced(b.y[2]));
}

TEST_CASE("mixed specs") {
  GenSetSpec l = spec_of(Rule::full());
  GenSetSpec p4;
  std::vector<size_t> witnesses = {3, 5, 7};
  GenSetSpec m = mix_pfin(l, p4, {1, 3}, witnesses);
  CHECK(m.rule_for(1) == Rule::p(4));
  CHECK(m.rule_for(3) == Rule::p(4));
  CHECK(m.rule_for(5) == Rule::full());
  CHECK(m.rule_for(7) == Rule::p(4));
  CHECK(mix_pfin(l, p4, {}, witnesses).rule_for(3) == Rule::full());
  CHECK(mix_pfin(l, p4, {1, 2, 3}, witnesses).overrides.empty());
  CHECK(mix_pfin(l, p4, {1}, {}).overrides.empty());
  CHECK_THROWS_AS(mix_pfin(p4, l, {1}, witnesses), SpecNotNested);

  GenSetSpec w = mix_antichain(p4, spec_of(Rule::s_only()), {2}, {4});
  CHECK(w.rule_for(1) == Rule::full());
  CHECK(w.rule_for(2) == Rule::p(4));
  CHECK(w.rule_for(4) == Rule::s_only());
  CHECK(mix_antichain(p4, p4, {}, {}).overrides.empty());
  CHECK_THROWS_AS(mix_antichain(p4, p4, {2, 3}, {3}), OverlappingIndexSets);
}

TEST_CASE("full-cycle piece counts against the splitting oracle") {
  std::mt19937_64 rng(82);
  size_t tested = 0;
  while (tested < 150) {
    auto p = random_presentation(rng, 2, 14, 1 + rng() % 3);
    if (!p) continue;
    ++tested;
    PieceIndex idx(*p);
    auto members = oracle::closure(p->relators());
    for (size_t i = 0; i < p->size(); ++i) {
      const Word& r = p->relator(i);
      uint32_t best = UINT32_MAX;
      for (size_t q = 0; q < r.size(); ++q) best = std::min(best, oracle::piece_cover(members, rotate(r, q)));
      CHECK(full_cycle_piece_count(idx, i) == best);
    }
  }
}

TEST_CASE("triviality status") {
  Presentation p = family_presentation(6, 8);
  PieceIndex idx(p);
  Triviality none = tc_triviality(p, idx, 0);
  CHECK(none.counts.empty());
  CHECK(none.max() == 0);
  CHECK_FALSE(none.growing);
  Triviality tr = tc_triviality(p, idx, 3);
  REQUIRE(tr.counts.size() == 3);
  for (size_t t = 0; t < 3; ++t) CHECK(tr.counts[t] == full_cycle_piece_count(idx, t));
  CHECK(tr.records.front() == 1);
  CHECK(tr.status() == (tr.growing ? "growing" : "bounded so far"));
}

TEST_CASE("witness indices") {
  Presentation p = family_presentation(6, 8);
  PieceIndex idx(p);
  CHECK(witness_indices(p, idx, 3) == std::vector<size_t>{1, 2, 3});
  CHECK(witness_indices(p, idx, 3, 1000).empty());
}

#include <doctest.h>

#include "oracles.hpp"
#include "scc/cones.hpp"

using namespace scc;

namespace {

std::optional<Presentation> random_presentation(std::mt19937_64& rng, size_t min_len, size_t max_len) {
  size_t rank = 2 + rng() % 2;
  std::vector<char> al;
  for (size_t k = 0; k < rank; ++k) al.push_back(static_cast<char>('a' + k));
  std::vector<Word> rels;
  for (size_t k = 0, m = 1 + rng() % 2; k < m; ++k) {
    rels.push_back(oracle::random_reduced(rng, rank, min_len + rng() % (max_len - min_len + 1)));
  }
  try {
    return Presentation(al, rels);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Word arc(const Word& r, size_t q, size_t len) {
  Word w;
  for (size_t t = 0; t < len; ++t) w.push_back(r[(q + t) % r.size()]);
  return w;
}

// Cone adjacency straight from the definition: the cycle edges, plus every pair
// joined by an arc that splits into at most k pieces (k = 0 means every pair).
std::vector<std::vector<size_t>> definition_cone(const std::set<Word>& members, const Word& r, uint32_t k, bool full) {
  size_t n = r.size();
  std::vector<std::pair<size_t, size_t>> edges;
  for (size_t u = 0; u < n; ++u) {
    for (size_t v = u + 1; v < n; ++v) {
      size_t d = v - u;
      bool adj = full || d == 1 || d == n - 1;
      if (!adj && k > 0) adj = oracle::piece_cover(members, arc(r, u, d)) <= k || oracle::piece_cover(members, arc(r, v, n - d)) <= k;
      if (adj) edges.push_back({u, v});
    }
  }
  return oracle::adjacency(n, edges);
}

}  // namespace

TEST_CASE("cone distances follow the generating-set definition") {
  std::mt19937_64 rng(41);
  size_t tested = 0;
  while (tested < 60) {
    auto p = random_presentation(rng, 3, 24);
    if (!p) continue;
    ++tested;
    PieceIndex idx(*p);
    auto members = oracle::closure(p->relators());
    for (size_t i = 1; i <= p->size(); ++i) {
      const Word& r = p->relator(i - 1);
      size_t n = r.size();
      std::vector<std::pair<Rule, std::vector<std::vector<size_t>>>> cases = {
          {Rule::s_only(), definition_cone(members, r, 0, false)},
          {Rule::p(1), definition_cone(members, r, 1, false)},
          {Rule::p(2), definition_cone(members, r, 2, false)},
          {Rule::p(4), definition_cone(members, r, 4, false)},
          {Rule::full(), definition_cone(members, r, 0, true)},
      };
      for (const auto& [rule, adj] : cases) {
        ConeGraph c = build_cone(*p, idx, rule, i);
        auto d = oracle::all_pairs(adj);
        uint32_t diam = 0;
        for (size_t u = 0; u < n; ++u) {
          auto row = c.distances_from(u);
          for (size_t v = 0; v < n; ++v) {
            diam = std::max(diam, d[u][v]);
            CHECK(c.distance(u, v) == d[u][v]);
            CHECK(row[v] == d[u][v]);
          }
        }
        CHECK(c.diameter() == diam);
      }
    }
  }
}

TEST_CASE("laced and chord cones agree with BFS on their exported graphs") {
  std::mt19937_64 rng(42);
  size_t tested = 0;
  while (tested < 80) {
    auto p = random_presentation(rng, 4, 40);
    if (!p) continue;
    ++tested;
    PieceIndex idx(*p);
    for (size_t i = 1; i <= p->size(); ++i) {
      size_t n = p->relator(i - 1).size();
      for (const Rule& rule : {Rule::laced(rng() % n), Rule::explicit_chords({{0, n / 2}, {1, n - 2}})}) {
        ConeGraph c = build_cone(*p, idx, rule, i);
        Graph g = c.to_graph();
        CHECK(g.n == n);
        auto adj = g.adjacency();
        for (size_t u = 0; u < n; ++u) {
          auto d = oracle::bfs(adj, u);
          for (size_t v = 0; v < n; ++v) CHECK(c.distance(u, v) == d[v]);
        }
        // P4 edges stay inside every such cone
        ConeGraph p4 = build_cone(*p, idx, Rule::p(4), i);
        for (size_t u = 0; u < n; ++u)
          for (size_t v = 0; v < n; ++v) CHECK(c.distance(u, v) <= p4.distance(u, v));
      }
    }
  }
}

TEST_CASE("jump table matches stepping one at a time") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 200; ++it) {
    size_t n = 2 + rng() % 30;
    // q + step[q] nondecreasing: draw targets as a nondecreasing sequence
    std::vector<uint32_t> step(n);
    size_t target = 1 + rng() % (n - 1);
    for (size_t q = 0; q < n; ++q) {
      target = std::max(target, q + 1);
      target = std::min(target + rng() % 3, q + n - 1);
      step[q] = static_cast<uint32_t>(target - q);
    }
    JumpTable t(step);
    for (size_t q = 0; q < n; ++q) {
      for (size_t d = 0; d < n; ++d) {
        uint32_t count = 0;
        size_t covered = 0, cur = q;
        while (covered < d) {
          covered += step[cur];
          cur = (cur + step[cur]) % n;
          ++count;
        }
        CHECK(t.jumps(q, d) == count);
      }
      size_t covered = 0, cur = q;
      for (uint32_t s = 0; s <= 2 * n; ++s) {
        CHECK(t.reach(q, s) == std::min(covered, n));
        covered += step[cur];
        cur = (cur + step[cur]) % n;
      }
    }
  }
}

TEST_CASE("rule and spec text round trip") {
  for (const Rule& r : {Rule::s_only(), Rule::p(4), Rule::p(2), Rule::full(), Rule::laced(7),
                        Rule::explicit_chords({{0, 3}, {2, 5}})}) {
    CHECK(Rule::parse(r.str()) == r);
  }
  GenSetSpec spec = parse_spec("# generating sets\ndefault: P4\n2: L\n3: laced@5\n4: chords[(0,3),(1,4)]\n");
  CHECK(spec.default_rule == Rule::p(4));
  CHECK(spec.rule_for(1) == Rule::p(4));
  CHECK(spec.rule_for(2) == Rule::full());
  CHECK(spec.rule_for(3) == Rule::laced(5));
  CHECK(parse_spec(spec.str()).str() == spec.str());
  CHECK_THROWS_AS(parse_spec("default P4\n"), InvalidSpec);
  CHECK_THROWS_AS(parse_spec("0: L\n"), InvalidSpec);
  CHECK_THROWS_AS(parse_spec("default: Q7\n"), InvalidSpec);

  Presentation p = parse_presentation("gens: a, b\nrel: abAB\n");
  CHECK_THROWS_AS(parse_spec("2: L\n").validate(p), InvalidSpec);
  CHECK_THROWS_AS(parse_spec("1: laced@4\n").validate(p), InvalidSpec);
  CHECK_NOTHROW(parse_spec("1: laced@3\n").validate(p));
}

TEST_CASE("rule containment") {
  CHECK(rule_contained(Rule::s_only(), Rule::p(1)));
  CHECK(rule_contained(Rule::p(2), Rule::p(4)));
  CHECK_FALSE(rule_contained(Rule::p(4), Rule::p(2)));
  CHECK(rule_contained(Rule::p(4), Rule::laced(0)));
  CHECK(rule_contained(Rule::laced(3), Rule::full()));
  CHECK_FALSE(rule_contained(Rule::full(), Rule::p(4)));
  CHECK(Rule::laced(0).thin_sandwich());
  CHECK_FALSE(Rule::s_only().thin_sandwich());
}

TEST_CASE("edge list export and import round trip") {
  Presentation p = parse_presentation("gens: a, b\nrel: aabbbAbAbbAB\n");
  PieceIndex idx(p);
  ConeGraph c = build_cone(p, idx, Rule::p(2), 1);
  Graph g = c.to_graph();
  Graph back = import_edge_list(export_graph(c, GraphFormat::EdgeList));
  REQUIRE(back.edges.size() == g.edges.size());
  for (size_t k = 0; k < g.edges.size(); ++k) {
    CHECK(back.edges[k].u == g.edges[k].u);
    CHECK(back.edges[k].v == g.edges[k].v);
    CHECK(back.edges[k].tag == g.edges[k].tag);
  }
  std::string dot = export_graph(c, GraphFormat::Dot);
  CHECK(dot.rfind("graph cone_1 {", 0) == 0);
  CHECK(parse_format("dot") == GraphFormat::Dot);
  CHECK_THROWS_AS(parse_format("png"), UnknownFormat);
  CHECK_THROWS_AS(import_edge_list("0 x\n"), Error);
}

#include <doctest.h>

#include "oracles.hpp"
#include "scc/cones.hpp"

using namespace scc;

namespace {

Graph random_connected(std::mt19937_64& rng, size_t n, size_t extra) {
  Graph g;
  g.n = n;
  for (size_t v = 1; v < n; ++v) g.edges.push_back({rng() % v, v, "t"});
  for (size_t k = 0; k < extra; ++k) {
    size_t u = rng() % n, v = rng() % n;
    if (u != v) g.edges.push_back({u, v, "x"});
  }
  return g;
}

Graph cycle(size_t n) {
  Graph g;
  g.n = n;
  for (size_t u = 0; u < n; ++u) g.edges.push_back({u, (u + 1) % n, "c"});
  return g;
}

std::vector<std::vector<size_t>> adj_of(const Graph& g) {
  std::vector<std::pair<size_t, size_t>> e;
  for (const Edge& x : g.edges) e.push_back({x.u, x.v});
  return oracle::adjacency(g.n, e);
}

}  // namespace

TEST_CASE("exhaustive hyperbolicity matches the quadruple scans") {
  std::mt19937_64 rng(51);
  for (int it = 0; it < 120; ++it) {
    size_t n = 1 + rng() % 14;
    Graph g = random_connected(rng, n, rng() % (2 * n + 1));
    auto d = oracle::all_pairs(adj_of(g));
    HyperbolicityReport rep = hyperbolicity(g);
    CHECK(rep.delta4_x2 == oracle::delta4_x2(d));
    CHECK(rep.slim_lower == oracle::slim(d));
    uint32_t diam = 0;
    for (auto& row : d)
      for (uint32_t x : row) diam = std::max(diam, x);
    CHECK(rep.diameter == diam);
    if (rep.delta4_witness.size() == 4) {
      auto& w = rep.delta4_witness;
      uint32_t s[3] = {d[w[0]][w[1]] + d[w[2]][w[3]], d[w[0]][w[2]] + d[w[1]][w[3]], d[w[0]][w[3]] + d[w[1]][w[2]]};
      std::sort(s, s + 3);
      CHECK(s[2] - s[1] == rep.delta4_x2);
    }
  }
}

TEST_CASE("trees are 0-hyperbolic and complete graphs have no thickness") {
  std::mt19937_64 rng(52);
  for (int it = 0; it < 30; ++it) {
    Graph t = random_connected(rng, 2 + rng() % 20, 0);
    auto rep = hyperbolicity(t);
    CHECK(rep.delta4_x2 == 0);
    CHECK(rep.slim_lower == 0);
  }
  Graph k;
  k.n = 9;
  for (size_t u = 0; u < 9; ++u)
    for (size_t v = u + 1; v < 9; ++v) k.edges.push_back({u, v, "k"});
  auto rep = hyperbolicity(k);
  CHECK(rep.delta4_x2 == 0);
  CHECK(rep.diameter == 1);
}

TEST_CASE("disconnected graphs are rejected") {
  Graph g;
  g.n = 3;
  g.edges.push_back({0, 1, ""});
  CHECK_THROWS_AS(all_pairs(g), DisconnectedGraph);
}

TEST_CASE("cycle closed form agrees with the exhaustive scan") {
  for (size_t n = 3; n <= 40; ++n) {
    HyperbolicityReport ex = hyperbolicity(cycle(n));
    if (n <= 12) {
      auto d = oracle::all_pairs(adj_of(cycle(n)));
      CHECK(ex.delta4_x2 == oracle::delta4_x2(d));
      CHECK(ex.slim_lower == oracle::slim(d));
    }
    Presentation p = Presentation::from_strings({'a', 'b'}, {"ab" + std::string(n - 2, 'a')});
    PieceIndex idx(p);
    ConeGraph c = build_cone(p, idx, Rule::s_only(), 1);
    HyperbolicityReport cf = hyperbolicity(c, false);
    CHECK(cf.method == "cycle");
    CHECK(cf.exact);
    CHECK(cf.delta4_x2 == ex.delta4_x2);
    CHECK(cf.slim_lower == ex.slim_lower);
    CHECK(cf.diameter == n / 2);
  }
}

TEST_CASE("laced certificate agrees with the exhaustive scan") {
  std::mt19937_64 rng(53);
  size_t tested = 0;
  while (tested < 60) {
    size_t len = 8 + rng() % 60;
    Word w = oracle::random_reduced(rng, 2, len);
    Presentation p;
    try {
      p = Presentation({'a', 'b'}, {w});
    } catch (const Error&) {
      continue;
    }
    ++tested;
    PieceIndex idx(p);
    ConeGraph c = build_cone(p, idx, Rule::laced(rng() % len), 1);
    HyperbolicityReport ex = hyperbolicity(c, true);
    HyperbolicityReport ce = hyperbolicity(c, false);
    CHECK(ex.method == "exhaustive");
    CHECK(ce.method == "laced");
    CHECK(ex.delta4_x2 <= 2);
    CHECK(ex.slim_lower <= 1);
    CHECK(ce.delta4_x2 <= ex.delta4_x2);
    CHECK(ce.slim_lower <= ex.slim_lower);
    if (ce.exact) {
      CHECK(ce.delta4_x2 == ex.delta4_x2);
      CHECK(ce.slim_lower == ex.slim_lower);
    }
  }
}

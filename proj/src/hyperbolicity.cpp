#include <algorithm>
#include <deque>

#include "scc/cones.hpp"

namespace scc {

namespace {

constexpr uint16_t kUnreached = UINT16_MAX;

using Bits = std::vector<uint64_t>;

bool intersects(const uint64_t* a, const uint64_t* b, size_t words) {
  for (size_t t = 0; t < words; ++t) {
    if (a[t] & b[t]) return true;
  }
  return false;
}

// (largest pair sum - second largest) over the three pairings
uint32_t four_point_x2(uint32_t dxy, uint32_t dzw, uint32_t dxz, uint32_t dyw, uint32_t dxw, uint32_t dyz) {
  uint32_t s[3] = {dxy + dzw, dxz + dyw, dxw + dyz};
  std::sort(s, s + 3);
  return s[2] - s[1];
}

}  // namespace

std::vector<uint16_t> all_pairs(const Graph& g) {
  size_t n = g.n;
  auto adj = g.adjacency();
  std::vector<uint16_t> dist(n * n, kUnreached);
  std::deque<size_t> queue;
  for (size_t s = 0; s < n; ++s) {
    uint16_t* row = &dist[s * n];
    row[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      size_t x = queue.front();
      queue.pop_front();
      for (size_t y : adj[x]) {
        if (row[y] == kUnreached) {
          row[y] = static_cast<uint16_t>(row[x] + 1);
          queue.push_back(y);
        }
      }
    }
    for (size_t v = 0; v < n; ++v) {
      if (row[v] == kUnreached) throw DisconnectedGraph("graph is disconnected");
    }
  }
  return dist;
}

HyperbolicityReport exhaustive_hyperbolicity(const std::vector<uint16_t>& dist, size_t n) {
  HyperbolicityReport rep;
  rep.method = "exhaustive";
  auto d = [&](size_t a, size_t b) -> uint32_t { return dist[a * n + b]; };
  for (size_t a = 0; a < n * n; ++a) rep.diameter = std::max<uint32_t>(rep.diameter, dist[a]);

  for (size_t x = 0; x < n; ++x) {
    for (size_t y = x + 1; y < n; ++y) {
      for (size_t z = y + 1; z < n; ++z) {
        for (size_t w = z + 1; w < n; ++w) {
          uint32_t v = four_point_x2(d(x, y), d(z, w), d(x, z), d(y, w), d(x, w), d(y, z));
          if (v > rep.delta4_x2 || rep.delta4_witness.empty()) {
            rep.delta4_x2 = v;
            rep.delta4_witness = {x, y, z, w};
          }
        }
      }
    }
  }

  // metric intervals and balls as bitsets
  size_t words = (n + 63) / 64;
  std::vector<uint64_t> interval(n * n * words, 0);
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < n; ++y) {
      uint64_t* b = &interval[(x * n + y) * words];
      for (size_t v = 0; v < n; ++v) {
        if (d(x, v) + d(v, y) == d(x, y)) b[v / 64] |= uint64_t{1} << (v % 64);
      }
    }
  }
  size_t radii = rep.diameter + 1;
  std::vector<uint64_t> ball(n * radii * words, 0);
  for (size_t v = 0; v < n; ++v) {
    for (size_t w = 0; w < n; ++w) {
      for (size_t r = d(v, w); r < radii; ++r) ball[(v * radii + r) * words + w / 64] |= uint64_t{1} << (w % 64);
    }
  }
  Bits uni(words);
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = x + 1; y < n; ++y) {
      const uint64_t* side = &interval[(x * n + y) * words];
      for (size_t z = 0; z < n; ++z) {
        const uint64_t* a = &interval[(x * n + z) * words];
        const uint64_t* b = &interval[(z * n + y) * words];
        for (size_t t = 0; t < words; ++t) uni[t] = a[t] | b[t];
        for (size_t t = 0; t < words; ++t) {
          uint64_t rest = side[t] & ~uni[t];
          while (rest) {
            size_t v = t * 64 + static_cast<size_t>(__builtin_ctzll(rest));
            rest &= rest - 1;
            if (intersects(&ball[(v * radii + rep.slim_lower) * words], uni.data(), words)) continue;
            uint32_t r = rep.slim_lower + 1;
            while (!intersects(&ball[(v * radii + r) * words], uni.data(), words)) ++r;
            rep.slim_lower = r;
            rep.slim_witness = {x, y, z, v};
          }
        }
      }
    }
  }
  return rep;
}

HyperbolicityReport hyperbolicity(const Graph& g) {
  if (g.n == 0) throw Error("empty graph");
  if (g.n > kExhaustiveLimit) {
    throw Error("exhaustive hyperbolicity limited to " + std::to_string(kExhaustiveLimit) + " vertices");
  }
  return exhaustive_hyperbolicity(all_pairs(g), g.n);
}

namespace {

HyperbolicityReport cycle_report(size_t n) {
  HyperbolicityReport rep;
  rep.method = "cycle";
  rep.diameter = static_cast<uint32_t>(n / 2);
  rep.delta4_x2 = static_cast<uint32_t>(2 * (n / 4) - (n % 4 == 1 ? 1 : 0));
  rep.slim_lower = static_cast<uint32_t>(n / 4);
  auto d = [&](size_t a, size_t b) -> uint32_t {
    size_t t = (b + n - a) % n;
    return static_cast<uint32_t>(std::min(t, n - t));
  };
  // witnesses near the quarter points
  auto near = [&](size_t c) {
    std::vector<size_t> out;
    for (int e = -2; e <= 2; ++e) out.push_back((c + n + static_cast<size_t>(e + 4) - 4) % n);
    return out;
  };
  uint32_t best = 0;
  for (size_t y : near(n / 4)) {
    for (size_t z : near(n / 2)) {
      for (size_t w : near(3 * n / 4)) {
        uint32_t v = four_point_x2(d(0, y), d(z, w), d(0, z), d(y, w), d(0, w), d(y, z));
        if (v > best || rep.delta4_witness.empty()) {
          best = v;
          rep.delta4_witness = {0, y, z, w};
        }
      }
    }
  }
  if (best != rep.delta4_x2) rep.exact = false;
  uint32_t slim = 0;
  for (size_t y : near(n / 2)) {
    for (size_t z : near(n / 4)) {
      for (size_t v : near(3 * n / 4)) {
        if (d(0, v) + d(v, y) != d(0, y)) continue;
        uint32_t gap = UINT32_MAX;
        for (size_t w = 0; w < n; ++w) {
          if (d(0, w) + d(w, z) == d(0, z) || d(z, w) + d(w, y) == d(z, y)) gap = std::min(gap, d(v, w));
        }
        if (gap > slim || rep.slim_witness.empty()) {
          slim = gap;
          rep.slim_witness = {0, y, z, v};
        }
      }
    }
  }
  if (slim != rep.slim_lower) rep.exact = false;
  return rep;
}

// Greedy chains of P4 steps from the base in both directions.
std::vector<size_t> laced_candidates(const ConeGraph& c) {
  size_t n = c.n();
  size_t x = c.rule().base;
  std::vector<size_t> cand{x};
  size_t pos = x;
  for (int t = 0; t < 6; ++t) {
    pos = (pos + c.chord_reach(pos)) % n;
    cand.push_back(pos);
  }
  // backward: farthest vertex whose forward step reaches the current one
  pos = x;
  for (int t = 0; t < 6; ++t) {
    size_t g = 1;
    while (g + 1 < n && c.chord_reach((pos + n - (g + 1)) % n) >= g + 1) ++g;
    pos = (pos + n - g) % n;
    cand.push_back(pos);
  }
  const auto& lv = c.levels();
  uint32_t top = *std::max_element(lv.begin(), lv.end());
  auto first_top = std::find(lv.begin(), lv.end(), top) - lv.begin();
  auto last_top = lv.rend() - std::find(lv.rbegin(), lv.rend(), top) - 1;
  cand.push_back(static_cast<size_t>(first_top));
  cand.push_back(static_cast<size_t>(last_top));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  return cand;
}

// Layered-clique metric |level difference| + {0,1}: four-point at most 1, intervals within 1.
HyperbolicityReport laced_report(const ConeGraph& c) {
  HyperbolicityReport rep;
  rep.method = "laced";
  rep.diameter = c.diameter();
  size_t n = c.n();
  auto cand = laced_candidates(c);
  size_t k = cand.size();
  std::vector<uint32_t> dm(k * k);
  for (size_t a = 0; a < k; ++a) {
    for (size_t b = 0; b < k; ++b) dm[a * k + b] = c.distance(cand[a], cand[b]);
  }
  auto d = [&](size_t a, size_t b) { return dm[a * k + b]; };
  for (size_t a = 0; a < k && rep.delta4_x2 < 2; ++a) {
    for (size_t b = a + 1; b < k; ++b) {
      for (size_t e = b + 1; e < k; ++e) {
        for (size_t f = e + 1; f < k; ++f) {
          uint32_t v = four_point_x2(d(a, b), d(e, f), d(a, e), d(b, f), d(a, f), d(b, e));
          if (v > rep.delta4_x2 || rep.delta4_witness.empty()) {
            rep.delta4_x2 = v;
            rep.delta4_witness = {cand[a], cand[b], cand[e], cand[f]};
          }
        }
      }
    }
  }
  // slim witness: a vertex of I(x,y) outside I(x,z) and I(z,y)
  size_t budget = 64;
  for (size_t a = 0; a < k && rep.slim_lower < 1 && budget > 0; ++a) {
    for (size_t b = a + 1; b < k && rep.slim_lower < 1 && budget > 0; ++b) {
      for (size_t e = 0; e < k && rep.slim_lower < 1 && budget > 0; ++e) {
        if (e == a || e == b || d(a, b) < 2) continue;
        --budget;
        size_t x = cand[a], y = cand[b], z = cand[e];
        auto rx = c.distances_from(x), ry = c.distances_from(y), rz = c.distances_from(z);
        for (size_t v = 0; v < n; ++v) {
          if (rx[v] + ry[v] != rx[y]) continue;
          if (rx[v] + rz[v] == rx[z] || rz[v] + ry[v] == rz[y]) continue;
          rep.slim_lower = 1;
          rep.slim_witness = {x, y, z, v};
          break;
        }
      }
    }
  }
  rep.exact = rep.delta4_x2 == 2 && rep.slim_lower == 1;
  return rep;
}

}  // namespace

HyperbolicityReport hyperbolicity(const ConeGraph& c, bool exhaustive_small) {
  size_t n = c.n();
  if (n == 0) throw Error("empty cone");
  if (n <= kExhaustiveLimit && (exhaustive_small || c.rule().kind == RuleKind::Pk || c.rule().kind == RuleKind::Chords)) {
    return exhaustive_hyperbolicity(c.distance_matrix(), n);
  }
  switch (c.rule().kind) {
    case RuleKind::SOnly:
      return cycle_report(n);
    case RuleKind::FullL: {
      HyperbolicityReport rep;
      rep.method = "complete";
      rep.diameter = 1;
      return rep;
    }
    case RuleKind::Laced:
      return laced_report(c);
    default:
      throw Error("no exact hyperbolicity method for rule " + c.rule().str() + " beyond " +
                  std::to_string(kExhaustiveLimit) + " vertices");
  }
}

}  // namespace scc

#include "scc/poset.hpp"

#include <algorithm>
#include <map>

#include "scc/parallel.hpp"

namespace scc {

namespace {

// new record at the last index, at least three records
bool growth_pattern(const std::vector<uint32_t>& running, std::vector<size_t>* records_out = nullptr) {
  std::vector<size_t> records;
  for (size_t t = 0; t < running.size(); ++t) {
    if (t == 0 || running[t] > running[t - 1]) records.push_back(t + 1);
  }
  bool growing = records.size() >= 3 && records.back() == running.size();
  if (records_out) *records_out = std::move(records);
  return growing;
}

uint32_t laced_entry(const ConeGraph& cx, const ConeGraph& cy) {
  const auto& lx = cx.levels();
  const auto& ly = cy.levels();
  size_t n = cx.n();
  struct Group {
    uint32_t lo = UINT32_MAX, hi = 0;
    std::vector<size_t> at_lo, at_hi;
    size_t size = 0;
  };
  std::map<uint32_t, Group> groups;
  for (size_t v = 0; v < n; ++v) {
    Group& g = groups[ly[v]];
    ++g.size;
    if (lx[v] < g.lo) {
      g.lo = lx[v];
      g.at_lo.clear();
    }
    if (lx[v] == g.lo) g.at_lo.push_back(v);
    if (lx[v] > g.hi || g.at_hi.empty()) {
      g.hi = lx[v];
      g.at_hi.clear();
    }
    if (lx[v] == g.hi) g.at_hi.push_back(v);
  }
  uint32_t best = 1;
  for (const auto& [level, g] : groups) {
    if (g.size < 2) continue;
    uint32_t delta = g.hi - g.lo;
    if (delta + 1 <= best) continue;
    bool bump = false;
    for (size_t u : g.at_lo) {
      for (size_t v : g.at_hi) {
        if (u != v && cx.base_distance(u, v) != delta) {
          bump = true;
          break;
        }
      }
      if (bump) break;
    }
    best = std::max(best, delta + (bump ? 1 : 0));
  }
  return best;
}

}  // namespace

bool ComparisonProfile::strictly_increasing() const {
  for (size_t t = 1; t < running_sup.size(); ++t) {
    if (running_sup[t] <= running_sup[t - 1]) return false;
  }
  return !running_sup.empty();
}

std::string ComparisonProfile::verdict() const {
  return growth_pattern(running_sup) ? "growth witness"
                                     : "no obstruction up to " + std::to_string(per_index.size());
}

uint32_t profile_entry(const Presentation& p, const PieceIndex& idx, const Rule& x, const Rule& y, size_t i,
                       std::string* method) {
  auto set = [&](const char* m) {
    if (method) *method = m;
  };
  size_t n = p.relator(i - 1).size();
  if (rule_contained(y, x)) {
    set("contained");
    return n < 2 ? 0 : 1;
  }
  ConeGraph cx = build_cone(p, idx, x, i);
  if (y.kind == RuleKind::FullL) {
    set("full");
    return cx.diameter();
  }
  if (x.kind == RuleKind::Laced && y.kind == RuleKind::Laced) {
    set("laced");
    return laced_entry(cx, build_cone(p, idx, y, i));
  }
  if (n > kProfileBruteLimit) {
    throw Error("no profile method for " + x.str() + " against " + y.str() + " on relator " + std::to_string(i) +
                " of length " + std::to_string(n));
  }
  set("brute");
  auto dist = cx.distance_matrix();
  uint32_t best = 0;
  for (const Edge& e : build_cone(p, idx, y, i).to_graph().edges) best = std::max<uint32_t>(best, dist[e.u * n + e.v]);
  return best;
}

ComparisonProfile compare_profile(const Presentation& p, const PieceIndex& idx, const GenSetSpec& x,
                                  const GenSetSpec& y, size_t n_relators) {
  x.validate(p);
  y.validate(p);
  size_t count = std::min(n_relators, p.size());
  ComparisonProfile prof;
  prof.from = x;
  prof.to = y;
  prof.per_index.resize(count);
  parallel_for(count, [&](size_t t) {
    ProfileEntry& e = prof.per_index[t];
    e.index = t + 1;
    e.value = profile_entry(p, idx, x.rule_for(t + 1), y.rule_for(t + 1), t + 1, &e.method);
  });
  for (const ProfileEntry& e : prof.per_index) {
    prof.running_sup.push_back(prof.running_sup.empty() ? e.value : std::max(prof.running_sup.back(), e.value));
  }
  return prof;
}

AntipodalBases pick_antipodal_bases(const Presentation& p, const PieceIndex& idx, size_t n_relators) {
  size_t count = std::min(n_relators, p.size());
  AntipodalBases b;
  b.x.assign(count, 0);
  b.y.assign(count, 0);
  b.diameter.assign(count, 0);
  parallel_for(count, [&](size_t t) {
    ConeGraph c = build_cone(p, idx, Rule::p(4), t + 1);
    uint32_t diam = c.diameter();
    auto row = c.distances_from(0);
    uint32_t half = diam / 2;
    b.diameter[t] = diam;
    b.y[t] = static_cast<size_t>(std::find(row.begin(), row.end(), half) - row.begin());
  });
  return b;
}

std::pair<GenSetSpec, GenSetSpec> laced_pair(const AntipodalBases& bases) {
  GenSetSpec x, y;
  for (size_t t = 0; t < bases.x.size(); ++t) {
    x.overrides[t + 1] = Rule::laced(bases.x[t]);
    y.overrides[t + 1] = Rule::laced(bases.y[t]);
  }
  return {x, y};
}

std::vector<size_t> witness_indices(const Presentation& p, const PieceIndex& idx, size_t n_relators,
                                    uint32_t threshold) {
  size_t count = std::min(n_relators, p.size());
  std::vector<uint32_t> diam(count);
  parallel_for(count, [&](size_t t) { diam[t] = build_cone(p, idx, Rule::p(4), t + 1).diameter(); });
  std::vector<size_t> out;
  for (size_t t = 0; t < count; ++t) {
    if (diam[t] > threshold) out.push_back(t + 1);
  }
  return out;
}

GenSetSpec mix_pfin(const GenSetSpec& x1, const GenSetSpec& x2, const std::set<size_t>& a,
                    const std::vector<size_t>& witnesses) {
  for (size_t i : witnesses) {
    if (!rule_contained(x2.rule_for(i), x1.rule_for(i))) {
      throw SpecNotNested("X2 rule " + x2.rule_for(i).str() + " is not contained in X1 rule " + x1.rule_for(i).str() +
                          " at index " + std::to_string(i));
    }
  }
  GenSetSpec out = x2;
  for (size_t pos = 1; pos <= witnesses.size(); ++pos) {
    if (!a.count(pos)) out.overrides[witnesses[pos - 1]] = x1.rule_for(witnesses[pos - 1]);
  }
  return out;
}

GenSetSpec mix_antichain(const GenSetSpec& x, const GenSetSpec& y, const std::set<size_t>& i_a,
                         const std::set<size_t>& j_a) {
  for (size_t i : i_a) {
    if (j_a.count(i)) throw OverlappingIndexSets("index " + std::to_string(i) + " is in both I_A and J_A");
  }
  GenSetSpec out;
  out.default_rule = Rule::full();
  for (size_t i : i_a) out.overrides[i] = x.rule_for(i);
  for (size_t i : j_a) out.overrides[i] = y.rule_for(i);
  return out;
}

uint32_t full_cycle_piece_count(const PieceIndex& idx, size_t i) {
  auto runs = idx.runs(i);
  size_t n = runs.size();
  if (n == 0) return 0;
  uint32_t longest = 0;
  for (uint32_t m : runs) {
    if (m == 0) return PieceIndex::kInfinity;
    longest = std::max(longest, m);
  }
  if (longest >= n) return 1;
  JumpTable t(runs);
  uint32_t best = PieceIndex::kInfinity;
  for (size_t q = 0; q < n; ++q) best = std::min(best, t.jumps(q, n));
  return best;
}

Triviality tc_triviality(const Presentation& p, const PieceIndex& idx, size_t n_relators) {
  size_t count = std::min(n_relators, p.size());
  Triviality tr;
  tr.counts.resize(count);
  parallel_for(count, [&](size_t t) { tr.counts[t] = full_cycle_piece_count(idx, t); });
  for (uint32_t c : tr.counts) tr.running_max.push_back(tr.running_max.empty() ? c : std::max(tr.running_max.back(), c));
  tr.growing = growth_pattern(tr.running_max, &tr.records);
  return tr;
}

}  // namespace scc

#include "scc/spath.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

namespace scc {

namespace {

std::string word_key(const Word& w) {
  std::string k(w.size(), '\0');
  for (size_t j = 0; j < w.size(); ++j) k[j] = static_cast<char>(w[j].code());
  return k;
}

// Interns group elements given by canonical words; long words fall back to Dehn equality.
class Elements {
 public:
  explicit Elements(const DehnMachine& m) : m_(m) {}

  size_t id(const Word& canonical) {
    std::string k = word_key(canonical);
    if (auto it = index_.find(k); it != index_.end()) return it->second;
    bool long_word = canonical.size() > m_.canonical_safe_length();
    std::string ab;
    if (long_word) {
      ab = m_.invariant_key(canonical);
      for (auto& [w, id] : buckets_[ab]) {
        if (m_.equal(w, canonical)) return index_[k] = id;
      }
    }
    size_t fresh = count_++;
    index_[k] = fresh;
    if (long_word) buckets_[ab].emplace_back(canonical, fresh);
    return fresh;
  }

 private:
  const DehnMachine& m_;
  std::unordered_map<std::string, size_t> index_;
  std::unordered_map<std::string, std::vector<std::pair<Word, size_t>>> buckets_;
  size_t count_ = 0;
};

// Prefix elements of each relator, for locating a vertex on a copy.
class CopyLocator {
 public:
  explicit CopyLocator(const DehnMachine& m) : m_(m) {
    const Presentation& p = m.presentation();
    for (size_t i = 0; i < p.size(); ++i) {
      const Word& r = p.relator(i);
      std::vector<Word> prefixes;
      std::unordered_map<std::string, size_t> keys;
      for (size_t k = 0; k < r.size(); ++k) {
        prefixes.emplace_back(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
        keys.emplace(word_key(m.canonical(prefixes.back())), k);
      }
      prefixes_.push_back(std::move(prefixes));
      keys_.push_back(std::move(keys));
    }
  }

  const Word& prefix(size_t i, size_t k) const { return prefixes_[i][k]; }

  // position k with x = g r_i[0..k), i 0-based
  std::optional<size_t> position(size_t i, const Word& g, const Word& x) const {
    Word c = m_.canonical(concat(invert(g), x));
    auto it = keys_[i].find(word_key(c));
    if (it != keys_[i].end()) return it->second;
    if (c.size() <= m_.canonical_safe_length()) return std::nullopt;
    for (size_t k = 0; k < prefixes_[i].size(); ++k) {
      if (m_.equal(prefixes_[i][k], c)) return k;
    }
    return std::nullopt;
  }

 private:
  const DehnMachine& m_;
  std::vector<std::vector<Word>> prefixes_;
  std::vector<std::unordered_map<std::string, size_t>> keys_;
};

struct Candidate {
  size_t end = 0;
  size_t relator = 0;  // 0-based
  size_t from = 0;
  size_t to = 0;
  bool forward = true;
  Word label;
  Word base;
};

// shorter arc from k to l on r, ties by shortlex label
void choose_arc(const Word& r, size_t k, size_t l, Candidate& c, bool& tie) {
  size_t n = r.size();
  size_t fd = (l + n - k) % n;
  Word fwd = subword_cyclic(r, k, fd);
  Word bwd = fd == 0 ? Word{} : invert(subword_cyclic(r, l, n - fd));
  tie = fd != 0 && 2 * fd == n;
  if (tie) {
    c.forward = !shortlex_less(bwd, fwd);
  } else {
    c.forward = 2 * fd < n;
  }
  c.label = c.forward ? fwd : bwd;
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.end != b.end) return a.end > b.end;
  if (a.relator != b.relator) return a.relator < b.relator;
  if (shortlex_less(a.label, b.label)) return true;
  if (shortlex_less(b.label, a.label)) return false;
  return a.from < b.from;
}

}  // namespace

SPath s_path(const TruncatedBall& b, const std::vector<Word>& gamma) {
  const DehnMachine& m = b.dehn();
  const Presentation& p = m.presentation();
  CopyLocator loc(m);
  SPath sp;
  if (gamma.empty()) return sp;
  for (const Word& w : gamma) sp.gamma.push_back(m.canonical(w));
  const auto& gam = sp.gamma;
  size_t last = gam.size() - 1;

  sp.vertices.push_back(gam[0]);
  sp.breakpoints.push_back(0);
  size_t a = 0;
  while (a < last) {
    std::optional<Candidate> best;
    size_t ties = 0, top_end = 0;
    for (size_t i = 0; i < p.size(); ++i) {
      const Word& r = p.relator(i);
      for (size_t k = 0; k < r.size(); ++k) {
        Word g = m.canonical(concat(gam[a], invert(loc.prefix(i, k))));
        size_t t = a + 1;
        std::optional<size_t> l, pos;
        while (t <= last && (pos = loc.position(i, g, gam[t]))) {
          l = pos;
          ++t;
        }
        if (!l) continue;
        Candidate c;
        c.end = t - 1;
        c.relator = i;
        c.from = k;
        c.to = *l;
        c.base = g;
        bool arc_tie = false;
        choose_arc(r, k, *l, c, arc_tie);
        if (arc_tie) {
          sp.choices.push_back("segment " + std::to_string(sp.segments.size() + 1) + ": antipodal endpoints on relator " +
                               std::to_string(i + 1) + ", shortlex direction taken");
        }
        if (c.end > top_end) {
          top_end = c.end;
          ties = 0;
        } else if (c.end == top_end) {
          ++ties;
        }
        if (!best || better(c, *best)) best = std::move(c);
      }
    }
    SPathSegment seg;
    size_t end;
    if (best) {
      end = best->end;
      seg.copy = RelatorCopy{best->relator + 1, best->base};
      seg.from = best->from;
      seg.to = best->to;
      seg.forward = best->forward;
      seg.label = best->label;
      if (ties > 0) {
        sp.choices.push_back("segment " + std::to_string(sp.segments.size() + 1) + ": " + std::to_string(ties + 1) +
                             " relator copies reach the same breakpoint, smallest index taken");
      }
    } else {
      end = a + 1;
      seg.degenerate = true;
      seg.label = free_reduce(concat(invert(gam[a]), gam[a + 1]));
    }
    Word cur = gam[a];
    for (const Letter& x : seg.label) {
      cur = free_reduce(concat(cur, Word{x}));
      sp.vertices.push_back(m.canonical(cur));
      sp.edge_segment.push_back(sp.segments.size());
    }
    sp.segments.push_back(std::move(seg));
    sp.breakpoints.push_back(end);
    a = end;
  }

  Elements elements(m);
  for (const Word& v : sp.vertices) sp.vertex_ids.push_back(elements.id(v));

  // chronological loop erasure
  std::vector<size_t> stack;
  std::unordered_map<size_t, size_t> on_stack;  // id -> stack position
  for (size_t q = 0; q < sp.vertices.size(); ++q) {
    size_t id = sp.vertex_ids[q];
    auto it = on_stack.find(id);
    if (it == on_stack.end()) {
      on_stack[id] = stack.size();
      stack.push_back(q);
      continue;
    }
    size_t s = it->second;
    size_t first = stack[s];
    SelfIntersection loop{first, q, sp.edge_segment[first], sp.edge_segment[first], true};
    std::set<size_t> verts;
    std::set<std::pair<size_t, size_t>> edges;
    for (size_t t = first; t <= q; ++t) verts.insert(sp.vertex_ids[t]);
    for (size_t t = first; t < q; ++t) {
      size_t u = sp.vertex_ids[t], v = sp.vertex_ids[t + 1];
      edges.insert({std::min(u, v), std::max(u, v)});
      loop.segment_lo = std::min(loop.segment_lo, sp.edge_segment[t]);
      loop.segment_hi = std::max(loop.segment_hi, sp.edge_segment[t]);
    }
    loop.tree = edges.size() + 1 == verts.size();
    sp.loops.push_back(loop);
    for (size_t t = s + 1; t < stack.size(); ++t) on_stack.erase(sp.vertex_ids[stack[t]]);
    stack.resize(s + 1);
  }
  sp.essential = std::move(stack);
  return sp;
}

bool SPathReport::pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.pass(); });
}

namespace {

PropertyResult named(std::string name) {
  PropertyResult r;
  r.name = std::move(name);
  return r;
}

void violate(PropertyResult& r, std::string witness) {
  ++r.violations;
  if (r.witnesses.size() < 5) r.witnesses.push_back(std::move(witness));
}

}  // namespace

SPathReport check_s_paths(const TruncatedBall& b, SPathOptions options) {
  const DehnMachine& m = b.dehn();
  const Presentation& p = m.presentation();
  CopyLocator loc(m);
  size_t hi = options.max_distance ? std::min(options.max_distance, b.radius()) : b.radius();

  std::vector<size_t> pool;
  for (size_t id = 0; id < b.size(); ++id) {
    if (b.depth(id) >= options.min_distance && b.depth(id) <= hi) pool.push_back(id);
  }
  std::mt19937_64 rng(options.seed);
  size_t take = std::min(options.samples, pool.size());
  for (size_t t = 0; t < take; ++t) std::swap(pool[t], pool[t + rng() % (pool.size() - t)]);
  pool.resize(take);

  PropertyResult span = named("type_i_span_at_most_4"), no_ii = named("no_type_ii"),
                 near = named("pruned_within_2_of_essential"), local = named("essential_overlap_below_three_quarters"),
                 ends = named("essential_endpoints");
  SPathReport rep;
  for (size_t target : pool) {
    Word v = b.vertex(target);
    Geodesic geo = geodesic(b, Word{}, v);
    SPath sp = s_path(b, geo.vertices);
    ++rep.samples;
    std::string tag = p.str(v);
    if (std::any_of(sp.segments.begin(), sp.segments.end(), [](const SPathSegment& s) { return s.degenerate; })) {
      ++rep.degenerate_samples;
    }

    ++no_ii.checked;
    for (const SelfIntersection& loop : sp.loops) {
      if (!loop.tree) {
        violate(no_ii, tag + ": cycle on P[" + std::to_string(loop.first) + ".." + std::to_string(loop.last) + "]");
        continue;
      }
      ++span.checked;
      size_t width = loop.segment_hi - loop.segment_lo + 1;
      rep.max_loop_span = std::max(rep.max_loop_span, width);
      if (width > 4) violate(span, tag + ": loop spans " + std::to_string(width) + " segments");
    }

    ++ends.checked;
    if (sp.essential.empty() || sp.vertex_ids[sp.essential.front()] != sp.vertex_ids.front() ||
        sp.vertex_ids[sp.essential.back()] != sp.vertex_ids.back()) {
      violate(ends, tag);
    }

    std::set<size_t> ess_ids;
    for (size_t q : sp.essential) ess_ids.insert(sp.vertex_ids[q]);
    std::set<size_t> seen;
    for (size_t q = 0; q < sp.vertices.size(); ++q) {
      size_t id = sp.vertex_ids[q];
      if (ess_ids.count(id) || !seen.insert(id).second) continue;
      ++near.checked;
      uint32_t best = UINT32_MAX;
      for (size_t e : sp.essential) {
        auto d = b.distance(sp.vertices[q], sp.vertices[e]);
        if (d) best = std::min(best, *d);
        if (best <= 1) break;
      }
      if (best != UINT32_MAX) rep.max_pruned_distance = std::max<size_t>(rep.max_pruned_distance, best);
      if (best > 2) violate(near, tag + ": pruned vertex " + p.str(sp.vertices[q]));
    }

    std::set<std::pair<size_t, std::string>> copies;
    for (const SPathSegment& seg : sp.segments) {
      if (seg.degenerate || !copies.insert({seg.copy.relator, word_key(seg.copy.base)}).second) continue;
      ++local.checked;
      size_t i = seg.copy.relator - 1;
      size_t n = p.relator(i).size();
      std::vector<std::optional<size_t>> pos;
      for (size_t q : sp.essential) pos.push_back(loc.position(i, seg.copy.base, sp.vertices[q]));
      size_t count = 0;
      for (size_t t = 0; t + 1 < pos.size(); ++t) {
        if (pos[t] && pos[t + 1] && ((*pos[t] + 1) % n == *pos[t + 1] || (*pos[t + 1] + 1) % n == *pos[t])) ++count;
      }
      if (4 * count >= 3 * n) {
        violate(local, tag + ": " + std::to_string(count) + " essential edges on a copy of relator " +
                           std::to_string(seg.copy.relator));
      }
    }
  }
  rep.properties = {span, no_ii, near, local, ends};
  return rep;
}

PropertyResult check_cone_convexity(const TruncatedBall& b, const PieceIndex& idx, const GenSetSpec& spec) {
  PropertyResult res = named("cone_convexity");
  const Presentation& p = b.presentation();
  for (size_t i = 1; i <= p.size(); ++i) {
    ConeGraph cone = build_cone(p, idx, spec, i);
    const Word& r = p.relator(i - 1);
    for (size_t k1 = 0; k1 < r.size(); ++k1) {
      for (size_t k2 = k1 + 1; k2 < r.size(); ++k2) {
        uint32_t d = cone.distance(k1, k2);
        auto nb = b.norm(subword_cyclic(r, k1, k2 - k1));
        ++res.checked;
        bool ok = d <= b.radius() ? (nb && *nb == d) : !nb;
        if (!ok) {
          violate(res, "relator " + std::to_string(i) + " (" + std::to_string(k1) + "," + std::to_string(k2) +
                           "): cone " + std::to_string(d) + ", ball " + (nb ? std::to_string(*nb) : "outside"));
        }
      }
    }
  }
  return res;
}

}  // namespace scc

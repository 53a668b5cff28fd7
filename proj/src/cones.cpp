#include "scc/cones.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace scc {

namespace {

constexpr uint32_t kInf = UINT32_MAX;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

size_t parse_size(std::string_view s, const std::string& what) {
  s = trim(s);
  size_t v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw InvalidSpec("invalid " + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string Rule::str() const {
  switch (kind) {
    case RuleKind::SOnly:
      return "S";
    case RuleKind::Pk:
      return "P" + std::to_string(k);
    case RuleKind::FullL:
      return "L";
    case RuleKind::Laced:
      return "laced@" + std::to_string(base);
    case RuleKind::Chords: {
      std::string s = "chords[";
      for (size_t t = 0; t < chords.size(); ++t) {
        if (t) s += ",";
        s += "(" + std::to_string(chords[t].first) + "," + std::to_string(chords[t].second) + ")";
      }
      return s + "]";
    }
  }
  return "";
}

Rule Rule::parse(std::string_view text) {
  text = trim(text);
  if (text == "S") return s_only();
  if (text == "L") return full();
  if (text.size() >= 2 && text[0] == 'P') {
    size_t k = parse_size(text.substr(1), "piece count");
    if (k == 0) throw InvalidSpec("piece count must be positive");
    return p(static_cast<uint32_t>(k));
  }
  if (text.rfind("laced@", 0) == 0) return laced(parse_size(text.substr(6), "laced base vertex"));
  if (text.rfind("chords[", 0) == 0 && text.back() == ']') {
    std::string_view body = text.substr(7, text.size() - 8);
    std::vector<std::pair<size_t, size_t>> chords;
    size_t i = 0;
    while (true) {
      while (i < body.size() && (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ',')) ++i;
      if (i >= body.size()) break;
      if (body[i] != '(') throw InvalidSpec("expected '(' in chord list");
      size_t close = body.find(')', i);
      if (close == std::string_view::npos) throw InvalidSpec("unterminated chord");
      std::string_view pair = body.substr(i + 1, close - i - 1);
      size_t comma = pair.find(',');
      if (comma == std::string_view::npos) throw InvalidSpec("chord needs two vertices");
      chords.emplace_back(parse_size(pair.substr(0, comma), "chord vertex"),
                          parse_size(pair.substr(comma + 1), "chord vertex"));
      i = close + 1;
    }
    return explicit_chords(std::move(chords));
  }
  throw InvalidSpec("unknown rule '" + std::string(text) + "'");
}

bool Rule::thin_sandwich() const {
  switch (kind) {
    case RuleKind::SOnly:
      return false;
    case RuleKind::Pk:
      return k >= 4;
    default:
      return true;
  }
}

bool rule_contained(const Rule& a, const Rule& b) {
  if (a == b || a.kind == RuleKind::SOnly || b.kind == RuleKind::FullL) return true;
  if (a.kind == RuleKind::Pk) {
    if (b.kind == RuleKind::Pk) return a.k <= b.k;
    if (b.kind == RuleKind::Laced || b.kind == RuleKind::Chords) return a.k <= 4;
    return false;
  }
  if (a.kind == RuleKind::Chords && b.kind == RuleKind::Chords) {
    std::set<std::pair<size_t, size_t>> have(b.chords.begin(), b.chords.end());
    return std::all_of(a.chords.begin(), a.chords.end(), [&](const auto& c) { return have.count(c) > 0; });
  }
  return false;
}

const Rule& GenSetSpec::rule_for(size_t i) const {
  auto it = overrides.find(i);
  return it == overrides.end() ? default_rule : it->second;
}

void GenSetSpec::validate(const Presentation& p) const {
  for (const auto& [i, rule] : overrides) {
    if (i == 0 || i > p.size()) {
      throw InvalidSpec("override index " + std::to_string(i) + " outside 1.." + std::to_string(p.size()));
    }
  }
  for (size_t i = 1; i <= p.size(); ++i) {
    const Rule& r = rule_for(i);
    size_t n = p.relator(i - 1).size();
    if (r.kind == RuleKind::Laced && r.base >= n) {
      throw InvalidSpec("laced base " + std::to_string(r.base) + " outside relator " + std::to_string(i));
    }
    for (auto [u, v] : r.chords) {
      if (u >= n || v >= n) throw InvalidSpec("chord vertex outside relator " + std::to_string(i));
      if (u == v) throw InvalidSpec("chord with equal endpoints on relator " + std::to_string(i));
    }
  }
}

std::string GenSetSpec::str() const {
  std::string s = "default: " + default_rule.str() + "\n";
  for (const auto& [i, r] : overrides) s += std::to_string(i) + ": " + r.str() + "\n";
  return s;
}

GenSetSpec parse_spec(std::string_view text) {
  GenSetSpec spec;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw InvalidSpec("line " + std::to_string(line_no) + ": missing ':'");
    std::string_view key = trim(line.substr(0, colon));
    try {
      Rule rule = Rule::parse(line.substr(colon + 1));
      if (key == "default") {
        spec.default_rule = rule;
      } else {
        size_t i = parse_size(key, "relator index");
        if (i == 0) throw InvalidSpec("relator indices are 1-based");
        spec.overrides[i] = rule;
      }
    } catch (const InvalidSpec& e) {
      throw InvalidSpec("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return spec;
}

GenSetSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::vector<std::vector<size_t>> Graph::adjacency() const {
  std::vector<std::vector<size_t>> adj(n);
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

JumpTable::JumpTable(std::vector<uint32_t> step) : n_(step.size()) {
  if (n_ == 0) return;
  for (auto& s : step) s = std::clamp<uint32_t>(s, 1, static_cast<uint32_t>(n_));
  levels_.push_back(std::move(step));
  for (size_t span = 2; span / 2 < n_; span *= 2) {
    const auto& prev = levels_.back();
    std::vector<uint32_t> next(n_);
    for (size_t q = 0; q < n_; ++q) {
      uint64_t a = prev[q];
      next[q] = static_cast<uint32_t>(a >= n_ ? n_ : std::min<uint64_t>(n_, a + prev[(q + a) % n_]));
    }
    levels_.push_back(std::move(next));
  }
}

uint32_t JumpTable::jumps(size_t q, size_t d) const {
  if (d == 0) return 0;
  uint32_t count = 0;
  size_t covered = 0, cur = q;
  for (size_t j = levels_.size(); j-- > 0;) {
    uint32_t s = levels_[j][cur];
    if (covered + s < d) {
      covered += s;
      cur = (cur + s) % n_;
      count += uint32_t{1} << j;
    }
  }
  return count + 1;
}

size_t JumpTable::reach(size_t q, uint32_t t) const {
  size_t covered = 0, cur = q;
  for (size_t j = 0; j < levels_.size() && t > 0 && covered < n_; ++j, t >>= 1) {
    if (t & 1) {
      covered += levels_[j][cur];
      cur = (cur + levels_[j][cur]) % n_;
    }
  }
  if (t > 0) return n_;
  return std::min(covered, n_);
}

namespace {

// Greedy k-piece reach from every position, at least one letter, at most n-1.
std::vector<uint32_t> piece_steps(const std::vector<uint32_t>& runs, uint32_t k) {
  size_t n = runs.size();
  std::vector<uint32_t> step(n, 1);
  if (n < 2) return step;
  for (size_t q = 0; q < n; ++q) {
    size_t total = 0, pos = q;
    for (uint32_t t = 0; t < k && total < n - 1; ++t) {
      uint32_t m = runs[pos];
      if (m == 0) break;
      total += m;
      pos = (pos + m) % n;
    }
    step[q] = static_cast<uint32_t>(std::clamp<size_t>(total, 1, n - 1));
  }
  return step;
}

// Starts of all arcs of the cycle reading x forward.
std::vector<size_t> occurrences(const Word& r, const Word& x) {
  std::vector<size_t> out;
  size_t n = r.size(), d = x.size();
  if (d == 0 || d > n) return out;
  // prefix function over x # r r
  std::vector<size_t> pi(d, 0);
  for (size_t i = 1; i < d; ++i) {
    size_t k = pi[i - 1];
    while (k > 0 && x[i] != x[k]) k = pi[k - 1];
    if (x[i] == x[k]) ++k;
    pi[i] = k;
  }
  size_t k = 0;
  for (size_t i = 0; i < n + d - 1; ++i) {
    const Letter& c = r[i % n];
    while (k > 0 && (k == d || c != x[k])) k = pi[k - 1];
    if (c == x[k]) ++k;
    if (k == d) out.push_back((i + 1 - d) % n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ConeGraph build_cone(const Presentation& p, const PieceIndex& idx, const GenSetSpec& spec, size_t i) {
  if (i == 0 || i > p.size()) throw InvalidSpec("relator index " + std::to_string(i) + " out of range");
  for (const auto& [j, rule] : spec.overrides) {
    if (j == 0 || j > p.size()) throw InvalidSpec("override index " + std::to_string(j) + " out of range");
  }
  return build_cone(p, idx, spec.rule_for(i), i);
}

ConeGraph build_cone(const Presentation& p, const PieceIndex& idx, const Rule& rule, size_t i) {
  if (i == 0 || i > p.size()) throw InvalidSpec("relator index " + std::to_string(i) + " out of range");
  const Word& r = p.relator(i - 1);
  ConeGraph c;
  c.index_ = i;
  c.n_ = r.size();
  c.rule_ = rule;
  size_t n = c.n_;
  if (rule.kind == RuleKind::Pk && rule.k == 0) throw InvalidSpec("piece count must be positive");
  if (rule.kind == RuleKind::Laced && rule.base >= n) throw InvalidSpec("laced base outside the relator");
  for (auto [u, v] : rule.chords) {
    if (u >= n || v >= n || u == v) throw InvalidSpec("invalid chord (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }

  switch (rule.kind) {
    case RuleKind::SOnly:
      c.own_ = JumpTable(std::vector<uint32_t>(n, 1));
      break;
    case RuleKind::FullL:
      break;
    case RuleKind::Pk:
      c.own_ = JumpTable(piece_steps(idx.runs(i - 1), rule.k));
      break;
    case RuleKind::Laced:
    case RuleKind::Chords:
      c.own_ = JumpTable(piece_steps(idx.runs(i - 1), 4));
      break;
  }
  if (rule.kind == RuleKind::Laced) c.levels_ = c.jump_row(c.own_, rule.base);
  if (rule.kind == RuleKind::Chords) {
    c.extra_.assign(n, {});
    for (auto [u, v] : rule.chords) {
      size_t d = (v + n - u) % n;
      Word x = subword_cyclic(r, u, d);
      for (size_t q : occurrences(r, x)) {
        c.extra_[q].push_back((q + d) % n);
        c.extra_[(q + d) % n].push_back(q);
      }
      for (size_t q : occurrences(r, invert(x))) {
        c.extra_[q].push_back((q + d) % n);
        c.extra_[(q + d) % n].push_back(q);
      }
    }
    for (auto& a : c.extra_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
  }
  return c;
}

uint32_t ConeGraph::jumps_between(const JumpTable& t, size_t u, size_t v) const {
  if (u == v) return 0;
  size_t d = (v + n_ - u) % n_;
  return std::min(t.jumps(u, d), t.jumps(v, n_ - d));
}

std::vector<uint32_t> ConeGraph::jump_row(const JumpTable& t, size_t s) const {
  std::vector<uint32_t> row(n_, kInf);
  row[s] = 0;
  if (n_ < 2) return row;
  // forward layers
  size_t covered = 0;
  for (uint32_t layer = 1; covered < n_ - 1; ++layer) {
    size_t next = std::min(n_ - 1, covered + t.step((s + covered) % n_));
    for (size_t d = covered + 1; d <= next; ++d) row[(s + d) % n_] = layer;
    covered = next;
  }
  // backward layers: positions s - d from which `layer` forward steps reach s
  size_t back = 0;
  for (uint32_t layer = 1; back < n_ - 1; ++layer) {
    size_t g = back + 1;
    while (g + 1 <= n_ - 1 && t.step((s + n_ - (g + 1)) % n_) >= g + 1 - back) ++g;
    for (size_t d = back + 1; d <= g; ++d) {
      uint32_t& cell = row[(s + n_ - d) % n_];
      cell = std::min(cell, layer);
    }
    back = g;
  }
  return row;
}

uint32_t ConeGraph::jump_diameter(const JumpTable& t) const {
  if (n_ < 2) return 0;
  uint32_t best = 0;
  for (size_t s = 0; s < n_; ++s) {
    auto g = [&](size_t d) { return t.jumps(s, d); };
    auto h = [&](size_t d) { return t.jumps((s + d) % n_, n_ - d); };
    size_t lo = 1, hi = n_ - 1;
    // smallest d with g(d) >= h(d), or n-1 if none
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (g(mid) >= h(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    uint32_t v = std::min(g(lo), h(lo));
    if (lo > 1) v = std::max(v, std::min(g(lo - 1), h(lo - 1)));
    best = std::max(best, v);
  }
  return best;
}

uint32_t ConeGraph::base_distance(size_t u, size_t v) const {
  if (rule_.kind == RuleKind::Pk && rule_.k != 4) throw Error("cone has no P4 structure");
  if (rule_.kind == RuleKind::SOnly || rule_.kind == RuleKind::FullL) throw Error("cone has no P4 structure");
  return jumps_between(own_, u, v);
}

uint32_t ConeGraph::layered_distance(size_t u, size_t v) const {
  if (u == v) return 0;
  uint32_t a = levels_[u], b = levels_[v];
  uint32_t delta = a > b ? a - b : b - a;
  return delta + (jumps_between(own_, u, v) != delta ? 1 : 0);
}

std::vector<uint32_t> ConeGraph::bfs(size_t s) const {
  std::vector<uint32_t> dist(n_, kInf);
  std::set<size_t> unvisited;
  for (size_t v = 0; v < n_; ++v) {
    if (v != s) unvisited.insert(unvisited.end(), v);
  }
  dist[s] = 0;
  std::deque<size_t> queue{s};
  auto visit = [&](size_t v, uint32_t d) {
    auto it = unvisited.find(v);
    if (it == unvisited.end()) return;
    unvisited.erase(it);
    dist[v] = d;
    queue.push_back(v);
  };
  // visit every unvisited vertex in the cyclic range x+lo .. x+hi
  auto visit_range = [&](size_t from, size_t len, uint32_t d) {
    if (len == 0) return;
    size_t a = from % n_, b = a + len;
    auto sweep = [&](size_t lo, size_t hi) {
      for (auto it = unvisited.lower_bound(lo); it != unvisited.end() && *it < hi;) {
        dist[*it] = d;
        queue.push_back(*it);
        it = unvisited.erase(it);
      }
    };
    if (b <= n_) {
      sweep(a, b);
    } else {
      sweep(a, n_);
      sweep(0, b - n_);
    }
  };
  while (!queue.empty()) {
    size_t x = queue.front();
    queue.pop_front();
    uint32_t d = dist[x] + 1;
    size_t fwd = own_.step(x);
    visit_range(x + 1, fwd, d);
    // largest g with step(x - g) >= g
    size_t lo = 1, hi = n_ - 1;
    while (lo < hi) {
      size_t mid = (lo + hi + 1) / 2;
      if (own_.step((x + n_ - mid) % n_) >= mid) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    visit_range(x + n_ - lo, lo, d);
    if (!extra_.empty()) {
      for (size_t y : extra_[x]) visit(y, d);
    }
  }
  return dist;
}

uint32_t ConeGraph::distance(size_t u, size_t v) const {
  if (u >= n_ || v >= n_) throw Error("vertex out of range");
  if (u == v) return 0;
  switch (rule_.kind) {
    case RuleKind::SOnly: {
      size_t d = (v + n_ - u) % n_;
      return static_cast<uint32_t>(std::min(d, n_ - d));
    }
    case RuleKind::FullL:
      return 1;
    case RuleKind::Pk:
      return jumps_between(own_, u, v);
    case RuleKind::Laced:
      return layered_distance(u, v);
    case RuleKind::Chords:
      return bfs(u)[v];
  }
  return kInf;
}

std::vector<uint32_t> ConeGraph::distances_from(size_t u) const {
  if (u >= n_) throw Error("vertex out of range");
  switch (rule_.kind) {
    case RuleKind::SOnly:
    case RuleKind::Pk:
      return jump_row(own_, u);
    case RuleKind::FullL: {
      std::vector<uint32_t> row(n_, 1);
      row[u] = 0;
      return row;
    }
    case RuleKind::Laced: {
      std::vector<uint32_t> base = jump_row(own_, u);
      std::vector<uint32_t> row(n_);
      for (size_t v = 0; v < n_; ++v) {
        uint32_t a = levels_[u], b = levels_[v];
        uint32_t delta = a > b ? a - b : b - a;
        row[v] = v == u ? 0 : delta + (base[v] != delta ? 1 : 0);
      }
      return row;
    }
    case RuleKind::Chords:
      return bfs(u);
  }
  return {};
}

std::vector<uint16_t> ConeGraph::distance_matrix() const {
  if (n_ > kDenseLimit) throw Error("distance matrix limited to n <= " + std::to_string(kDenseLimit));
  std::vector<uint16_t> m(n_ * n_);
  for (size_t u = 0; u < n_; ++u) {
    auto row = distances_from(u);
    for (size_t v = 0; v < n_; ++v) m[u * n_ + v] = static_cast<uint16_t>(row[v]);
  }
  return m;
}

uint32_t ConeGraph::diameter() const {
  if (n_ < 2) return 0;
  switch (rule_.kind) {
    case RuleKind::SOnly:
      return static_cast<uint32_t>(n_ / 2);
    case RuleKind::FullL:
      return 1;
    case RuleKind::Pk:
      return jump_diameter(own_);
    case RuleKind::Laced:
      return *std::max_element(levels_.begin(), levels_.end());
    case RuleKind::Chords: {
      if (n_ > kDenseLimit) throw Error("diameter of an explicit-chord cone limited to n <= " + std::to_string(kDenseLimit));
      uint32_t best = 0;
      for (size_t u = 0; u < n_; ++u) {
        auto row = bfs(u);
        best = std::max(best, *std::max_element(row.begin(), row.end()));
      }
      return best;
    }
  }
  return 0;
}

std::string ConeGraph::edge_tag(size_t u, size_t v) const {
  if (u >= n_ || v >= n_ || u == v) return "";
  size_t d = (v + n_ - u) % n_;
  if (d == 1 || d == n_ - 1) return "cycle";
  auto jump_adjacent = [&] { return own_.step(u) >= d || own_.step(v) >= n_ - d; };
  switch (rule_.kind) {
    case RuleKind::SOnly:
      return "";
    case RuleKind::FullL:
      return "L";
    case RuleKind::Pk:
      return jump_adjacent() ? "P" + std::to_string(rule_.k) : "";
    case RuleKind::Laced:
      if (jump_adjacent()) return "P4";
      return levels_[u] == levels_[v] ? "laced-level" : "";
    case RuleKind::Chords:
      if (jump_adjacent()) return "P4";
      return std::binary_search(extra_[u].begin(), extra_[u].end(), v) ? "explicit" : "";
  }
  return "";
}

bool ConeGraph::adjacent(size_t u, size_t v) const { return !edge_tag(u, v).empty(); }

namespace {

template <class F>
void for_each_chord(const ConeGraph& c, const JumpTable& t, const std::vector<uint32_t>& levels,
                    const std::vector<std::vector<size_t>>& extra, F&& emit) {
  size_t n = c.n();
  const Rule& rule = c.rule();
  if (rule.kind == RuleKind::FullL) {
    for (size_t u = 0; u < n; ++u) {
      for (size_t v = u + 2; v < n; ++v) {
        if (!(u == 0 && v == n - 1)) emit(u, v, "L");
      }
    }
    return;
  }
  if (rule.kind == RuleKind::SOnly) return;
  std::string jump_tag = rule.kind == RuleKind::Pk ? "P" + std::to_string(rule.k) : "P4";
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t u = 0; u < n; ++u) {
    size_t reach = t.step(u);
    for (size_t d = 2; d <= reach && d + 2 <= n; ++d) {
      size_t v = (u + d) % n;
      pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<std::pair<size_t, size_t>> more;
  if (rule.kind == RuleKind::Laced) {
    std::vector<std::vector<size_t>> groups;
    for (size_t v = 0; v < n; ++v) {
      if (levels[v] >= groups.size()) groups.resize(levels[v] + 1);
      groups[levels[v]].push_back(v);
    }
    for (const auto& g : groups) {
      for (size_t a = 0; a < g.size(); ++a) {
        for (size_t b = a + 1; b < g.size(); ++b) {
          size_t d = g[b] - g[a];
          if (d == 1 || d == n - 1) continue;
          more.emplace_back(g[a], g[b]);
        }
      }
    }
  }
  if (rule.kind == RuleKind::Chords) {
    for (size_t u = 0; u < n; ++u) {
      for (size_t v : extra[u]) {
        size_t d = (v + n - u) % n;
        if (u < v && d != 1 && d != n - 1) more.emplace_back(u, v);
      }
    }
  }
  std::sort(more.begin(), more.end());
  std::vector<std::pair<size_t, size_t>> only_more;
  std::set_difference(more.begin(), more.end(), pairs.begin(), pairs.end(), std::back_inserter(only_more));
  std::string more_tag = rule.kind == RuleKind::Laced ? "laced-level" : "explicit";
  size_t a = 0, b = 0;
  while (a < pairs.size() || b < only_more.size()) {
    if (b >= only_more.size() || (a < pairs.size() && pairs[a] < only_more[b])) {
      emit(pairs[a].first, pairs[a].second, jump_tag);
      ++a;
    } else {
      emit(only_more[b].first, only_more[b].second, more_tag);
      ++b;
    }
  }
}

}  // namespace

size_t ConeGraph::edge_count() const {
  size_t cycle = n_ >= 3 ? n_ : (n_ == 2 ? 1 : 0);
  if (rule_.kind == RuleKind::FullL) return n_ * (n_ - 1) / 2;
  size_t count = cycle;
  for_each_chord(*this, own_, levels_, extra_, [&](size_t, size_t, const std::string&) { ++count; });
  return count;
}

Graph ConeGraph::to_graph(size_t edge_cap) const {
  Graph g;
  g.n = n_;
  if (rule_.kind == RuleKind::FullL && n_ * (n_ - 1) / 2 > edge_cap) throw Error("cone has too many edges to materialize");
  if (n_ == 2) g.edges.push_back(Edge{0, 1, "cycle"});
  if (n_ >= 3) {
    for (size_t u = 0; u < n_; ++u) g.edges.push_back(Edge{u, (u + 1) % n_, "cycle"});
  }
  for_each_chord(*this, own_, levels_, extra_, [&](size_t u, size_t v, const std::string& tag) {
    if (g.edges.size() >= edge_cap) throw Error("cone has too many edges to materialize");
    g.edges.push_back(Edge{u, v, tag});
  });
  return g;
}

uint32_t cone_distance(const ConeGraph& c, size_t u, size_t v) { return c.distance(u, v); }
uint32_t cone_diameter(const ConeGraph& c) { return c.diameter(); }

GraphFormat parse_format(std::string_view name) {
  if (name == "edge-list" || name == "edges") return GraphFormat::EdgeList;
  if (name == "dot" || name == "DOT") return GraphFormat::Dot;
  throw UnknownFormat("unknown graph format '" + std::string(name) + "'");
}

std::string export_graph(const Graph& g, GraphFormat format, const std::string& name) {
  std::string out;
  if (format == GraphFormat::EdgeList) {
    for (const Edge& e : g.edges) out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + e.tag + "\n";
    return out;
  }
  out = "graph " + name + " {\n";
  for (size_t v = 0; v < g.n; ++v) out += "  " + std::to_string(v) + ";\n";
  for (const Edge& e : g.edges) {
    out += "  " + std::to_string(e.u) + " -- " + std::to_string(e.v) + " [label=\"" + e.tag + "\"];\n";
  }
  return out + "}\n";
}

std::string export_graph(const ConeGraph& c, GraphFormat format) {
  return export_graph(c.to_graph(), format, "cone_" + std::to_string(c.relator_index()));
}

Graph import_edge_list(std::string_view text) {
  Graph g;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::istringstream ls(line);
    Edge e;
    if (!(ls >> e.u >> e.v)) throw Error("edge list line " + std::to_string(line_no) + ": expected 'u v tag'");
    ls >> e.tag;
    g.n = std::max({g.n, e.u + 1, e.v + 1});
    g.edges.push_back(e);
  }
  return g;
}

}  // namespace scc

#include "scc/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

namespace scc {

namespace {

constexpr uint64_t kMod = (uint64_t{1} << 61) - 1;
constexpr uint64_t kBase = 0x5bd1e9955bd1e995ULL % kMod;

uint64_t mulmod(uint64_t a, uint64_t b) {
  unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  uint64_t lo = static_cast<uint64_t>(t & kMod);
  uint64_t hi = static_cast<uint64_t>(t >> 61);
  uint64_t s = lo + hi;
  return s >= kMod ? s - kMod : s;
}

uint64_t addmod(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= kMod ? s - kMod : s;
}

uint64_t probe_key(size_t len, uint64_t h) { return mulmod(h, 1000003) ^ (static_cast<uint64_t>(len) << 40); }

struct Hasher {
  std::vector<uint64_t> prefix, power;
  explicit Hasher(const Word& w) : prefix(w.size() + 1, 0), power(w.size() + 1, 1) {
    for (size_t k = 0; k < w.size(); ++k) {
      prefix[k + 1] = addmod(mulmod(prefix[k], kBase), w[k].code() + 1);
      power[k + 1] = mulmod(power[k], kBase);
    }
  }
  uint64_t get(size_t s, size_t len) const {
    return addmod(prefix[s + len], kMod - mulmod(prefix[s], power[len]));
  }
};

bool same_letter(const Letter& a, const Letter& b) { return a.symbol == b.symbol && a.sign == b.sign; }

}  // namespace

DehnMachine::DehnMachine(const Presentation& p, std::optional<Rational> lambda) : pres_(p), closure_(p), quotients_(std::make_shared<Quotients>()) {
  const Rational sixth{1, 6};
  Rational lam = lambda ? *lambda : (p.lambda_target() <= sixth ? p.lambda_target() : sixth);
  if (lam.num <= 0 || sixth < lam) throw NotSmallCancellation("lambda " + lam.str() + " is outside (0, 1/6]");
  PieceIndex idx(p);
  auto rep = check_small_cancellation(idx, lam);
  if (!rep.pass && !lambda && !(lam == sixth)) {
    lam = sixth;
    rep = check_small_cancellation(idx, lam);
  }
  if (!rep.pass) {
    std::string msg = "presentation is not C'(" + lam.str() + ")";
    if (rep.worst_witness) {
      msg += ": relator " + std::to_string(rep.worst_witness->relator) + " has piece " + p.str(rep.worst_witness->piece);
    }
    throw NotSmallCancellation(msg);
  }
  lambda_ = lam;
  for (size_t i = 0; i < p.size(); ++i) {
    longest_.push_back(idx.longest_piece(i).length);
    int64_t n = static_cast<int64_t>(p.relator(i).size());
    int64_t e = n - 3 * static_cast<int64_t>(longest_.back()) - n / 2;
    int64_t a = (n + 1) / 2 - 1;
    int64_t b = e > 0 ? 2 * e - 1 : 0;
    h_safe_ = std::min<size_t>(h_safe_, static_cast<size_t>(std::max<int64_t>(0, std::min(a, b))));
  }
  dehn_ = make_table(false);
  half_ = make_table(true);
}

Letter DehnMachine::member_letter(size_t cycle, size_t offset, size_t j) const {
  const Word& w = closure_.cycles()[cycle].word;
  return w[(offset + j) % w.size()];
}

DehnMachine::Table DehnMachine::make_table(bool half) const {
  Table t;
  std::set<size_t> lengths;
  const auto& cycles = closure_.cycles();
  for (size_t c = 0; c < cycles.size(); ++c) {
    const Word& w = cycles[c].word;
    size_t n = w.size();
    size_t h = half ? (n + 1) / 2
                    : static_cast<size_t>((lambda_.den - 3 * lambda_.num) * static_cast<int64_t>(n) / lambda_.den) + 1;
    h = std::min(h, n);
    lengths.insert(h);
    Word doubled = concat(w, w);
    Hasher hs(doubled);
    for (size_t off = 0; off < cycles[c].period; ++off) {
      t.probes[probe_key(h, hs.get(off, h))].emplace_back(c, off);
    }
  }
  t.lengths.assign(lengths.begin(), lengths.end());
  return t;
}

template <class Accept>
std::optional<FactorMatch> DehnMachine::find(const Table& t, const Word& w, Accept accept) const {
  if (t.lengths.empty() || w.empty()) return std::nullopt;
  Hasher hs(w);
  const auto& cycles = closure_.cycles();
  for (size_t s = 0; s < w.size(); ++s) {
    std::optional<FactorMatch> best;
    for (size_t h : t.lengths) {
      if (s + h > w.size()) break;
      auto it = t.probes.find(probe_key(h, hs.get(s, h)));
      if (it == t.probes.end()) continue;
      for (auto [c, off] : it->second) {
        size_t n = cycles[c].word.size();
        size_t len = 0;
        while (len < n && s + len < w.size() && same_letter(w[s + len], member_letter(c, off, len))) ++len;
        if (len < h) continue;  // hash collision
        if (!accept(s, len, c, off)) continue;
        if (!best || len > best->length) best = FactorMatch{s, len, closure_.cycle_base(c) + off, c, off};
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

std::optional<FactorMatch> DehnMachine::greendlinger_factor(const Word& w) const {
  return find(dehn_, w, [&](size_t, size_t len, size_t c, size_t) {
    int64_t n = static_cast<int64_t>(closure_.cycles()[c].word.size());
    return static_cast<int64_t>(len) * lambda_.den > (lambda_.den - 3 * lambda_.num) * n;
  });
}

namespace {

// w with the factor replaced by the inverse of the rest of the member
Word splice(const Word& w, const FactorMatch& m, const Word& cycle) {
  size_t n = cycle.size();
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m.start));
  for (size_t j = n; j-- > m.length;) out.push_back(cycle[(m.offset + j) % n].inverse());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(m.start + m.length), w.end());
  return free_reduce(out);
}

}  // namespace

Word DehnMachine::normalize(const Word& w) const {
  Word cur = free_reduce(w);
  while (auto m = greendlinger_factor(cur)) cur = splice(cur, *m, closure_.cycles()[m->cycle].word);
  return cur;
}

Word DehnMachine::canonical(const Word& w) const {
  Word cur = free_reduce(w);
  auto accept = [&](size_t s, size_t len, size_t c, size_t off) {
    const Word& cyc = closure_.cycles()[c].word;
    size_t n = cyc.size();
    if (2 * len > n) return true;
    if (2 * len < n) return false;
    Word u(cur.begin() + static_cast<std::ptrdiff_t>(s), cur.begin() + static_cast<std::ptrdiff_t>(s + len));
    Word tinv;
    for (size_t j = n; j-- > len;) tinv.push_back(cyc[(off + j) % n].inverse());
    return shortlex_less(tinv, u);
  };
  while (auto m = find(half_, cur, accept)) cur = splice(cur, *m, closure_.cycles()[m->cycle].word);
  return cur;
}

std::optional<FactorMatch> greendlinger_factor(const DehnMachine& m, const Word& w) { return m.greendlinger_factor(w); }
Word dehn_normalize(const DehnMachine& m, const Word& w) { return m.normalize(w); }

std::vector<int64_t> abelianize(const Word& w, size_t rank) {
  std::vector<int64_t> v(rank, 0);
  for (const Letter& l : w) v.at(l.symbol) += l.sign;
  return v;
}

struct DehnMachine::Quotients {
  using Perm = std::array<uint8_t, 8>;
  struct Hom {
    size_t degree = 0;
    std::vector<Perm> forward, backward;  // per generator, image and inverse image
  };
  std::once_flag once;
  std::vector<Hom> homs;
  std::vector<std::vector<int64_t>> lattice;  // relator exponent sums in Hermite normal form
  std::vector<size_t> pivots;

  void hermite(const Presentation& p) {
    size_t rank = p.rank();
    std::vector<std::vector<int64_t>> rows;
    for (const Word& r : p.relators()) rows.push_back(abelianize(r, rank));
    size_t top = 0;
    for (size_t c = 0; c < rank && top < rows.size(); ++c) {
      for (;;) {
        size_t best = rows.size();
        for (size_t t = top; t < rows.size(); ++t) {
          if (rows[t][c] != 0 && (best == rows.size() || std::abs(rows[t][c]) < std::abs(rows[best][c]))) best = t;
        }
        if (best == rows.size()) break;
        std::swap(rows[top], rows[best]);
        bool done = true;
        for (size_t t = top + 1; t < rows.size(); ++t) {
          int64_t q = rows[t][c] / rows[top][c];
          for (size_t k = c; k < rank; ++k) rows[t][k] -= q * rows[top][k];
          done = done && rows[t][c] == 0;
        }
        if (done) break;
      }
      if (top == rows.size() || rows[top][c] == 0) continue;
      if (rows[top][c] < 0) {
        for (int64_t& x : rows[top]) x = -x;
      }
      pivots.push_back(c);
      lattice.push_back(rows[top]);
      ++top;
    }
  }

  // canonical representative of v modulo the relator lattice
  void reduce(std::vector<int64_t>& v) const {
    for (size_t t = 0; t < lattice.size(); ++t) {
      size_t c = pivots[t];
      int64_t m = lattice[t][c];
      int64_t q = v[c] / m;
      if (v[c] - q * m < 0) --q;
      for (size_t k = c; k < v.size(); ++k) v[k] -= q * lattice[t][k];
    }
  }

  static Perm image(const Hom& h, const Word& w) {
    Perm x{};
    for (size_t t = 0; t < h.degree; ++t) x[t] = static_cast<uint8_t>(t);
    for (const Letter& l : w) {
      const Perm& g = l.sign > 0 ? h.forward[l.symbol] : h.backward[l.symbol];
      for (size_t t = 0; t < h.degree; ++t) x[t] = g[x[t]];
    }
    return x;
  }

  // Order of the image, counted up to cap by closing under the generator images.
  static size_t image_order(const Hom& h, size_t cap) {
    std::set<Perm> seen;
    Perm id{};
    for (size_t t = 0; t < h.degree; ++t) id[t] = static_cast<uint8_t>(t);
    std::vector<Perm> todo{id};
    seen.insert(id);
    while (!todo.empty() && seen.size() < cap) {
      Perm x = todo.back();
      todo.pop_back();
      for (const Perm& g : h.forward) {
        Perm y{};
        for (size_t t = 0; t < h.degree; ++t) y[t] = g[x[t]];
        if (seen.insert(y).second) todo.push_back(y);
      }
    }
    return seen.size();
  }

  // One homomorphism per degree 5..8 whose image has order at least k!/2.
  void search(const Presentation& p) {
    size_t rank = p.rank();
    if (rank < 2 || p.size() == 0) return;
    size_t letters = 0;
    for (const Word& r : p.relators()) letters += r.size();
    constexpr uint64_t kLetterBudget = 60'000'000;
    for (size_t k = 5; k <= 8; ++k) {
      std::vector<Perm> perms;
      Perm q{};
      for (size_t t = 0; t < k; ++t) q[t] = static_cast<uint8_t>(t);
      do perms.push_back(q);
      while (std::next_permutation(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(k)));
      size_t big = perms.size() / 2;
      double space = std::pow(static_cast<double>(perms.size()), static_cast<double>(rank));
      uint64_t tries = std::min<uint64_t>(kLetterBudget / std::max<size_t>(letters, 1), 1'000'000);
      bool exhaustive = space <= static_cast<double>(tries);
      if (exhaustive) tries = static_cast<uint64_t>(space);
      std::mt19937_64 rng(0x5cc0 + k);
      Hom h;
      h.degree = k;
      h.forward.resize(rank);
      h.backward.resize(rank);
      for (uint64_t t = 0; t < tries; ++t) {
        uint64_t code = t;
        for (size_t s = 0; s < rank; ++s) {
          size_t pick = exhaustive ? code % perms.size() : rng() % perms.size();
          code /= perms.size();
          h.forward[s] = perms[pick];
          for (size_t v = 0; v < k; ++v) h.backward[s][h.forward[s][v]] = static_cast<uint8_t>(v);
        }
        bool kills = true;
        for (const Word& r : p.relators()) {
          Perm x = image(h, r);
          for (size_t v = 0; v < k && kills; ++v) kills = x[v] == v;
          if (!kills) break;
        }
        if (kills && image_order(h, big) >= big) {
          homs.push_back(h);
          break;
        }
      }
    }
  }
};

std::string DehnMachine::invariant_key(const Word& w) const {
  std::call_once(quotients_->once, [&] {
    quotients_->hermite(pres_);
    quotients_->search(pres_);
  });
  auto v = abelianize(w, pres_.rank());
  quotients_->reduce(v);
  std::string key(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(int64_t));
  for (const auto& h : quotients_->homs) {
    auto x = Quotients::image(h, w);
    key.append(reinterpret_cast<const char*>(x.data()), h.degree);
  }
  return key;
}

std::vector<Word> letter_generators(size_t rank) {
  std::vector<Word> out;
  for (size_t s = 0; s < rank; ++s) {
    out.push_back(Word{Letter{static_cast<uint16_t>(s), 1}});
    out.push_back(Word{Letter{static_cast<uint16_t>(s), -1}});
  }
  return out;
}

std::vector<Word> generating_words(const Presentation& p, const PieceIndex& idx, const GenSetSpec& spec,
                                   size_t n_relators) {
  auto cmp = [](const Word& a, const Word& b) { return shortlex_less(a, b); };
  std::set<Word, decltype(cmp)> out(cmp);
  for (Word& g : letter_generators(p.rank())) out.insert(std::move(g));
  auto add = [&](const Word& w) {
    out.insert(w);
    out.insert(invert(w));
  };
  size_t count = std::min(n_relators, p.size());
  for (size_t i = 1; i <= count; ++i) {
    const Rule& rule = spec.rule_for(i);
    const Word& r = p.relator(i - 1);
    size_t n = r.size();
    if (rule.kind == RuleKind::SOnly) continue;
    if (rule.kind == RuleKind::FullL) {
      for (size_t q = 0; q < n; ++q) {
        for (size_t len = 1; len < n; ++len) add(subword_cyclic(r, q, len));
      }
      continue;
    }
    uint32_t k = rule.kind == RuleKind::Pk ? rule.k : 4;
    for (size_t q = 0; q < n; ++q) {
      size_t total = 0;
      for (uint32_t t = 0; t < k && total < n - 1; ++t) {
        uint32_t m = idx.max_piece_run(i - 1, (q + total) % n);
        if (m == 0) break;
        total = std::min(n - 1, total + m);
      }
      for (size_t len = 1; len <= total; ++len) add(subword_cyclic(r, q, len));
    }
    if (rule.kind == RuleKind::Laced || rule.kind == RuleKind::Chords) {
      const char* tag = rule.kind == RuleKind::Laced ? "laced-level" : "explicit";
      ConeGraph cone = build_cone(p, idx, rule, i);
      for (const Edge& e : cone.to_graph().edges) {
        if (e.tag != tag) continue;
        size_t fwd = (e.v + n - e.u) % n;
        if (2 * fwd <= n) add(subword_cyclic(r, e.u, fwd));
        if (2 * fwd >= n) add(subword_cyclic(r, e.v, n - fwd));
      }
    }
  }
  return {out.begin(), out.end()};
}

std::string TruncatedBall::key(const Word& canonical) const {
  std::string k(canonical.size(), '\0');
  for (size_t j = 0; j < canonical.size(); ++j) k[j] = static_cast<char>(canonical[j].code());
  return k;
}

namespace {

}  // namespace

Word TruncatedBall::vertex(size_t id) const {
  const std::string& k = *keys_.at(id);
  Word w(k.size());
  for (size_t j = 0; j < k.size(); ++j) w[j] = Letter::from_code(static_cast<unsigned char>(k[j]));
  return w;
}

std::optional<size_t> TruncatedBall::lookup(const Word& canonical) const {
  auto it = index_.find(key(canonical));
  if (it != index_.end()) return it->second;
  if (canonical.size() <= dehn_->canonical_safe_length()) return std::nullopt;
  auto b = buckets_.find(dehn_->invariant_key(canonical));
  if (b == buckets_.end()) return std::nullopt;
  ++fallback_lookups_;
  for (uint32_t id : b->second) {
    if (dehn_->equal(vertex(id), canonical)) return id;
  }
  return std::nullopt;
}

std::optional<size_t> TruncatedBall::find(const Word& g) const { return lookup(dehn_->canonical(g)); }

std::optional<uint32_t> TruncatedBall::norm(const Word& g) const {
  auto id = find(g);
  if (!id) return std::nullopt;
  return depth_[*id];
}

std::optional<uint32_t> TruncatedBall::distance(const Word& u, const Word& v) const {
  return norm(concat(invert(u), v));
}

std::vector<uint32_t> TruncatedBall::tree_path(size_t id) const {
  std::vector<uint32_t> path;
  while (id != 0) {
    path.push_back(parent_gen_[id]);
    id = parent_[id];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

TruncatedBall build_ball(const Presentation& p, const std::vector<Word>& generators, const std::string& metric,
                         size_t n_relators, size_t radius, BallOptions options) {
  if (radius > 255) throw BudgetExceeded("radius above 255");
  if (generators.size() > UINT16_MAX) throw BudgetExceeded("too many generators");
  TruncatedBall b;
  b.dehn_ = std::make_shared<DehnMachine>(p.truncated(n_relators));
  b.metric_ = metric;
  b.truncation_ = std::min(n_relators, p.size());
  b.radius_ = radius;
  b.generators_ = generators;
  for (const Word& g : generators) {
    for (const Letter& l : g) {
      if (l.symbol >= p.rank()) throw Error("generator letter outside the alphabet");
    }
  }
  size_t safe = b.dehn_->canonical_safe_length();
  auto insert = [&](const Word& c, uint8_t depth, uint32_t parent, uint16_t gen) {
    auto [it, fresh] = b.index_.emplace(b.key(c), static_cast<uint32_t>(b.keys_.size()));
    (void)fresh;
    if (c.size() > safe) b.buckets_[b.dehn_->invariant_key(c)].push_back(it->second);
    b.keys_.push_back(&it->first);
    b.depth_.push_back(depth);
    b.parent_.push_back(parent);
    b.parent_gen_.push_back(gen);
  };
  insert(Word{}, 0, 0, 0);
  b.layers_.push_back(1);
  size_t begin = 0;
  for (size_t d = 0; d < radius; ++d) {
    size_t end = b.keys_.size();
    for (size_t id = begin; id < end; ++id) {
      Word w = b.vertex(id);
      for (size_t g = 0; g < generators.size(); ++g) {
        Word c = b.dehn_->canonical(concat(w, generators[g]));
        if (b.lookup(c)) continue;
        insert(c, static_cast<uint8_t>(d + 1), static_cast<uint32_t>(id), static_cast<uint16_t>(g));
        if (b.keys_.size() > options.vertex_cap) {
          throw BudgetExceeded("ball exceeds " + std::to_string(options.vertex_cap) + " vertices");
        }
      }
    }
    b.layers_.push_back(b.keys_.size() - end);
    begin = end;
  }
  return b;
}

TruncatedBall build_ball(const Presentation& p, size_t n_relators, size_t radius, BallOptions options) {
  return build_ball(p, letter_generators(p.rank()), "S", n_relators, radius, options);
}

TruncatedBall build_ball(const Presentation& p, const GenSetSpec& spec, size_t n_relators, size_t radius,
                         BallOptions options) {
  Presentation t = p.truncated(n_relators);
  spec.validate(p);
  PieceIndex idx(t);
  return build_ball(p, generating_words(t, idx, spec, n_relators), "X:" + spec.str(), n_relators, radius, options);
}

Geodesic geodesic(const TruncatedBall& b, const Word& u, const Word& v) {
  const DehnMachine& m = b.dehn();
  auto id = b.find(concat(invert(u), v));
  if (!id) throw OutOfCertifiedRegion("u^-1 v lies outside the ball of radius " + std::to_string(b.radius()));
  Geodesic g;
  g.generators = b.tree_path(*id);
  g.length = static_cast<uint32_t>(g.generators.size());
  Word cur = free_reduce(u);
  g.vertices.push_back(m.canonical(cur));
  for (uint32_t gi : g.generators) {
    cur = free_reduce(concat(cur, b.generators()[gi]));
    g.vertices.push_back(m.canonical(cur));
  }
  return g;
}

}  // namespace scc

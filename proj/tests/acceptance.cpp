// One PASS/FAIL line per acceptance criterion. Exit status 0 when the failing criteria are
// exactly those named by --known-failure (none by default).

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "scc/families.hpp"
#include "scc/poset.hpp"
#include "scc/spath.hpp"

#ifndef SCC_FIXTURES
#define SCC_FIXTURES "fixtures"
#endif

using namespace scc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

size_t max_rss_mb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return static_cast<size_t>(u.ru_maxrss) / 1024;
}

Presentation fixture(const std::string& name) { return load_presentation(std::string(SCC_FIXTURES) + "/" + name); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// ---- 1 -------------------------------------------------------------------

void family_verification(Outcome& o) {
  auto t0 = Clock::now();
  FamilyVerification v = verify_family(6, 12);
  double secs = seconds_since(t0);
  for (const auto& r : v.reports) {
    std::string n = "n=" + std::to_string(r.n);
    o.require(r.relator_length == (uint64_t{1} << r.n) * (9 * r.n + 1), n + " length");
    o.require(r.cube_free, n + " cube-free");
    o.require(r.longest_piece <= 18 * r.n + 1, n + " piece bound");
  }
  o.require(v.reports.size() == 7, "seven relators");
  o.require(v.joint.pass, "joint C'(1/24)");
  o.require(secs <= 60, "60 s budget");
  o.detail << "n=6..12 joint C'(1/24) " << (v.joint.pass ? "pass" : "fail") << ", " << secs << " s";
}

// ---- 2 -------------------------------------------------------------------

void cube_free_counting(Outcome& o) {
  o.detail << "counts";
  for (size_t len = 1; len <= 18; ++len) {
    uint64_t c = count_cube_free(len);
    o.detail << " " << c;
    o.require(static_cast<double>(c) >= std::exp2(static_cast<double>(len) / 9 + 1), "lower bound at " + std::to_string(len));
    if (len <= 10) o.require(c == oracle::count_cube_free(len), "oracle at " + std::to_string(len));
  }
}

// ---- 3 -------------------------------------------------------------------

void laced_thinness(Outcome& o) {
  Presentation p = family_presentation(6, 10);
  PieceIndex idx(p);
  AntipodalBases bases = pick_antipodal_bases(p, idx, p.size());
  std::set<uint32_t> laced_delta;
  std::vector<uint32_t> cycle_delta;
  o.detail << "laced delta4x2/slim";
  for (size_t i = 1; i <= p.size(); ++i) {
    for (size_t base : {bases.x[i - 1], bases.y[i - 1]}) {
      HyperbolicityReport h = hyperbolicity(build_cone(p, idx, Rule::laced(base), i), false);
      o.require(h.slim_lower <= 1, "laced slim at relator " + std::to_string(i));
      o.require(h.exact, "laced certificate exact at relator " + std::to_string(i));
      laced_delta.insert(h.delta4_x2);
      o.detail << " " << h.delta4_x2 << "/" << h.slim_lower;
    }
    cycle_delta.push_back(hyperbolicity(build_cone(p, idx, Rule::s_only(), i), false).delta4_x2);
  }
  o.require(laced_delta.size() == 1, "laced delta4 constant");
  o.detail << "; cycle delta4x2";
  for (size_t t = 0; t < cycle_delta.size(); ++t) {
    o.detail << " " << cycle_delta[t];
    if (t > 0) o.require(cycle_delta[t] > cycle_delta[t - 1], "cycle delta4 increasing");
  }
}

// ---- 4 -------------------------------------------------------------------

void piece_cover_oracle(Outcome& o) {
  std::mt19937_64 rng(2024);
  size_t fixtures = 0, mismatches = 0, arcs = 0, factors = 0;
  while (fixtures < 40) {
    size_t rank = 1 + rng() % 3;
    std::vector<Word> rels;
    size_t total = 0;
    for (size_t k = 0, m = 1 + rng() % 4; k < m; ++k) {
      rels.push_back(oracle::random_reduced(rng, rank, 1 + rng() % 30));
      total += rels.back().size();
    }
    if (total > 200) continue;
    std::vector<char> al;
    for (size_t k = 0; k < rank; ++k) al.push_back(static_cast<char>('a' + k));
    Presentation p;
    try {
      p = Presentation(al, rels);
    } catch (const Error&) {
      continue;
    }
    ++fixtures;
    PieceIndex idx(p);
    auto members = oracle::closure(p.relators());
    for (const Word& m : members) {
      for (size_t s = 0; s < m.size(); ++s) {
        for (size_t len = 1; s + len <= m.size(); ++len) {
          Word u(m.begin() + static_cast<std::ptrdiff_t>(s), m.begin() + static_cast<std::ptrdiff_t>(s + len));
          ++factors;
          if (idx.is_piece(u) != oracle::is_piece(members, u)) ++mismatches;
        }
      }
    }
    for (size_t i = 0; i < p.size(); ++i) {
      size_t n = p.relator(i).size();
      for (size_t q = 0; q < n; ++q) {
        for (size_t len = 0; len <= n; ++len) {
          for (bool fwd : {true, false}) {
            ++arcs;
            if (idx.min_piece_cover(i, q, len, fwd) != idx.min_piece_cover_dp(i, q, len, fwd)) ++mismatches;
          }
        }
      }
    }
  }
  o.require(mismatches == 0, "zero mismatches");
  o.detail << fixtures << " fixtures, " << factors << " factors, " << arcs << " arcs, " << mismatches << " mismatches";
}

// ---- 5 -------------------------------------------------------------------

void dehn_cross_validation(Outcome& o) {
  Presentation p = fixture("dehn_wc.pres");
  DehnMachine m(p);
  o.require(m.lambda() <= Rational{1, 8}, "C'(1/8)");
  // The relator is w c with w over a, b, so the group is free on a, b and c = w^-1.
  Word w(p.relator(0).begin(), p.relator(0).end() - 1);
  auto image = [&](const Word& x) {
    Word out;
    for (const Letter& l : x) {
      if (l.symbol == 2) {
        Word s = l.sign > 0 ? oracle::inverse(w) : w;
        out.insert(out.end(), s.begin(), s.end());
      } else {
        out.push_back(l);
      }
    }
    return oracle::reduce(out);
  };

  // reference ball: BFS over reduced images, radius 8
  std::vector<Word> gens = letter_generators(3);
  std::map<Word, uint32_t> ball{{Word{}, 0}};
  std::vector<Word> frontier{Word{}};
  for (uint32_t r = 1; r <= 8; ++r) {
    std::vector<Word> next;
    for (const Word& x : frontier) {
      for (const Word& g : gens) {
        Word y = x;
        Word gi = image(g);
        y.insert(y.end(), gi.begin(), gi.end());
        y = oracle::reduce(y);
        if (ball.emplace(y, r).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }

  size_t words = 0, agree = 0;
  Word cur;
  std::function<void()> walk = [&] {
    ++words;
    Word img = image(cur);
    bool trivial = m.is_trivial(cur);
    auto it = ball.find(img);
    bool in_ball = it != ball.end();
    bool ok = in_ball && trivial == (img.empty()) && it->second <= cur.size();
    if (ok && !trivial) {
      // a nontrivial word's normal form names the same ball element
      ok = image(dehn_normalize(m, free_reduce(cur))) == img;
    }
    if (ok) ++agree;
    if (cur.size() == 8) return;
    for (const Word& g : gens) {
      cur.push_back(g[0]);
      walk();
      cur.pop_back();
    }
  };
  walk();
  o.require(agree == words, "full agreement");
  o.detail << words << " words of length <= 8, " << agree << " agree; reference ball " << ball.size() << " elements";
}

// ---- 6 -------------------------------------------------------------------

void s_path_suite(Outcome& o) {
  struct Case {
    const char* file;
    size_t radius;
    SPathOptions opt;
  };
  for (const Case& c : {Case{"spath.pres", 3, {300, 7, 2, 3}}, Case{"spath2.pres", 2, {300, 3, 2, 2}}}) {
    Presentation p = fixture(c.file);
    PieceIndex idx(p);
    TruncatedBall b = build_ball(p, GenSetSpec{}, 1, c.radius);
    SPathReport rep = check_s_paths(b, c.opt);
    o.require(rep.samples >= 200, std::string(c.file) + " sample count");
    o.detail << c.file << ": " << rep.samples << " samples";
    for (const auto& pr : rep.properties) {
      o.require(pr.pass(), std::string(c.file) + " " + pr.name);
      o.detail << ", " << pr.name << " " << pr.violations << "/" << pr.checked;
    }
    PropertyResult conv = check_cone_convexity(b, idx, GenSetSpec{});
    o.require(conv.pass() && conv.checked > 0, std::string(c.file) + " convexity");
    o.detail << ", convexity " << conv.violations << "/" << conv.checked << ", loop span " << rep.max_loop_span
             << ", pruned distance " << rep.max_pruned_distance << "; ";
  }
}

// ---- 7 -------------------------------------------------------------------

size_t record_count(const std::vector<uint32_t>& running) {
  size_t c = 0;
  for (size_t t = 0; t < running.size(); ++t) c += t == 0 || running[t] > running[t - 1];
  return c;
}

void incomparability(Outcome& o) {
  Presentation p = family_presentation(6, 12);
  PieceIndex idx(p);
  AntipodalBases bases = pick_antipodal_bases(p, idx, p.size());
  auto [x, y] = laced_pair(bases);
  for (const auto& [from, to, tag] : {std::tuple{x, y, "x->y"}, std::tuple{y, x, "y->x"}}) {
    ComparisonProfile prof = compare_profile(p, idx, from, to, p.size());
    o.require(prof.strictly_increasing(), std::string(tag) + " strictly increasing");
    o.require(prof.final_sup() >= 3 * prof.running_sup.front(), std::string(tag) + " final >= 3x initial");
    o.detail << tag;
    for (uint32_t v : prof.running_sup) o.detail << " " << v;
    o.detail << "; ";
  }

  std::vector<size_t> witnesses = witness_indices(p, idx, p.size());
  std::set<size_t> evens, odds;
  for (size_t a = 1; a <= witnesses.size(); ++a) (a % 2 ? odds : evens).insert(a);
  GenSetSpec l;
  l.default_rule = Rule::full();
  GenSetSpec p4;
  GenSetSpec ma = mix_pfin(l, p4, evens, witnesses), mb = mix_pfin(l, p4, odds, witnesses);
  for (const auto& [from, to, tag] : {std::tuple{ma, mb, "X^evens measures X^odds"}, std::tuple{mb, ma, "X^odds measures X^evens"}}) {
    ComparisonProfile prof = compare_profile(p, idx, from, to, p.size());
    size_t records = record_count(prof.running_sup);
    o.require(records >= 3, std::string(tag) + " unbounded growth");
    o.detail << tag << ":";
    for (const auto& e : prof.per_index) o.detail << " " << e.value;
    o.detail << " (" << records << " records); ";
  }
}

// ---- 8 -------------------------------------------------------------------

void inequality_scan(Outcome& o) {
  o.require(inequality_value(6) < 1.0, "below 1 at n=6");
  for (size_t n = 7; n <= 200; ++n) o.require(inequality_value(n) > inequality_value(n - 1), "monotone at " + std::to_string(n));
  size_t direct = inequality_threshold(6, 200, false);
  size_t logd = inequality_threshold(6, 200, true);
  o.require(direct != 0, "eventually >= 1");
  o.require(direct == logd, "threshold stable");
  o.detail << "f(6) = " << inequality_value(6) << ", n0 = " << direct << " (direct) / " << logd << " (log domain)";
}

// ---- 9 -------------------------------------------------------------------

void performance_gate(Outcome& o) {
  auto t0 = Clock::now();
  Presentation p = family_presentation(6, 16);
  PieceIndex idx(p);
  uint32_t longest = 0;
  for (size_t i = 0; i < p.size(); ++i) longest = std::max(longest, idx.longest_piece(i).length);
  double secs = seconds_since(t0);
  size_t mb = max_rss_mb();
  o.require(secs <= 120, "120 s");
  o.require(mb <= 8192, "8 GB");
  o.detail << "n=6..16, " << idx.text_length() << " text letters, longest piece " << longest << ", " << secs << " s, peak RSS "
           << mb << " MB; n up to 19 uses the streamed index (see README)";
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int a = 1; a < argc; ++a) {
    if (std::string(argv[a]) == "--known-failure" && a + 1 < argc) {
      known.insert(std::stoi(argv[++a]));
    } else {
      std::cerr << "usage: acceptance [--known-failure N]...\n";
      return 2;
    }
  }
  struct Criterion {
    int id;
    const char* name;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "family verification", family_verification},
      {2, "cube-free counting", cube_free_counting},
      {3, "laced-cone thinness", laced_thinness},
      {4, "piece-cover oracle equivalence", piece_cover_oracle},
      {5, "Dehn/BFS cross-validation", dehn_cross_validation},
      {6, "S-path structural suite", s_path_suite},
      {7, "incomparability experiment", incomparability},
      {8, "inequality scan", inequality_scan},
      {9, "performance gate", performance_gate},
  };
  std::set<int> failed;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) failed.insert(c.id);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail.str() << std::endl;
  }
  std::cout << failed.size() << " of 9 criteria fail";
  if (!known.empty()) {
    std::cout << "; recorded as known:";
    for (int k : known) std::cout << " " << k;
  }
  std::cout << std::endl;
  return failed == known ? 0 : 1;
}

#include "scc/report.hpp"

#include <chrono>
#include <ctime>

#include "scc/parallel.hpp"

namespace scc::report {

namespace {

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json uint_list(const std::vector<size_t>& v) {
  Json a = Json::array();
  for (size_t x : v) a.push_back(x);
  return a;
}

Json count_or_null(uint32_t c) { return c == PieceIndex::kInfinity ? Json(nullptr) : Json(c); }

}  // namespace

Json envelope(const std::string& kind, const Json& body, bool with_meta) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  if (with_meta) j["meta"] = {{"generated_at", utc_now()}, {"threads", thread_count()}};
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Presentation& p) {
  Json gens = Json::array();
  for (char c : p.alphabet()) gens.push_back(std::string(1, c));
  Json rels = Json::array();
  for (const Word& r : p.relators()) rels.push_back({{"word", p.str(r)}, {"length", r.size()}});
  return {{"generators", gens}, {"relators", rels}, {"lambda_target", p.lambda_target().str()},
          {"total_length", p.total_length()}};
}

Json to_json(const SmallCancellationReport& r, const Presentation& p) {
  Json per = Json::array();
  for (const RelatorStat& s : r.per_relator) {
    per.push_back({{"index", s.index},
                   {"length", s.length},
                   {"longest_piece", s.longest_piece},
                   {"ratio", s.length ? static_cast<double>(s.longest_piece) / static_cast<double>(s.length) : 0.0}});
  }
  Json j{{"lambda", r.lambda.str()}, {"pass", r.pass}, {"per_relator", per}};
  if (r.worst_witness) {
    j["worst_witness"] = {{"relator", r.worst_witness->relator},
                          {"position", r.worst_witness->position},
                          {"piece", p.str(r.worst_witness->piece)}};
  } else {
    j["worst_witness"] = nullptr;
  }
  return j;
}

Json piece_stats(const PieceIndex& idx) {
  const Presentation& p = idx.presentation();
  Json per = Json::array();
  uint32_t overall = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    LongestPiece lp = idx.longest_piece(i);
    size_t n = p.relator(i).size();
    overall = std::max(overall, lp.length);
    per.push_back({{"index", i + 1},
                   {"length", n},
                   {"longest_piece", lp.length},
                   {"position", lp.position},
                   {"ratio", n ? static_cast<double>(lp.length) / static_cast<double>(n) : 0.0}});
  }
  return {{"mode", idx.mode() == IndexMode::Dense ? "dense" : "streamed"},
          {"saturated", idx.saturated()},
          {"closure_members", idx.closure().size()},
          {"longest_piece", overall},
          {"per_relator", per}};
}

Json to_json(const FamilyVerification& v) {
  Json reps = Json::array();
  for (const FamilyReport& r : v.reports) {
    reps.push_back({{"n", r.n},
                    {"relator_length", r.relator_length},
                    {"expected_length", r.expected_length},
                    {"longest_piece", r.longest_piece},
                    {"piece_saturated", r.piece_saturated},
                    {"piece_bound", r.piece_bound},
                    {"cube_free", r.cube_free},
                    {"c24_margin", r.c24_margin.str()},
                    {"inequality", r.inequality},
                    {"pass", r.pass}});
  }
  return {{"mode", v.mode == IndexMode::Dense ? "dense" : "streamed"},
          {"joint_lambda", v.joint.lambda.str()},
          {"joint_pass", v.joint.pass},
          {"pass", v.pass},
          {"relators", reps}};
}

Json to_json(const HyperbolicityReport& r) {
  return {{"method", r.method},         {"exact", r.exact},
          {"diameter", r.diameter},     {"delta4", r.delta4()},
          {"delta4_x2", r.delta4_x2},   {"delta4_witness", uint_list(r.delta4_witness)},
          {"slim_lower", r.slim_lower}, {"slim_witness", uint_list(r.slim_witness)}};
}

Json cone_summary(const ConeGraph& c) {
  return {{"relator", c.relator_index()},
          {"rule", c.rule().str()},
          {"vertices", c.n()},
          {"edges", c.edge_count()},
          {"diameter", c.diameter()}};
}

Json ball_stats(const TruncatedBall& b) {
  Json layers = Json::array();
  for (size_t l : b.layer_sizes()) layers.push_back(l);
  return {{"metric", b.metric()},
          {"truncation", b.truncation()},
          {"radius", b.radius()},
          {"lambda", b.dehn().lambda().str()},
          {"generators", b.generators().size()},
          {"vertices", b.size()},
          {"layers", layers},
          {"canonical_safe_length", b.dehn().canonical_safe_length() == SIZE_MAX
                                        ? Json(nullptr)
                                        : Json(b.dehn().canonical_safe_length())},
          {"fallback_lookups", b.fallback_lookups()},
          {"boundary", "distances certified only for elements within the radius"}};
}

Json to_json(const PropertyResult& r) {
  Json w = Json::array();
  for (const std::string& s : r.witnesses) w.push_back(s);
  return {{"name", r.name}, {"checked", r.checked}, {"violations", r.violations}, {"pass", r.pass()}, {"witnesses", w}};
}

Json to_json(const SPathReport& r) {
  Json props = Json::array();
  for (const PropertyResult& p : r.properties) props.push_back(to_json(p));
  return {{"samples", r.samples},
          {"degenerate_samples", r.degenerate_samples},
          {"max_loop_span", r.max_loop_span},
          {"max_pruned_distance", r.max_pruned_distance},
          {"pass", r.pass()},
          {"properties", props}};
}

Json to_json(const ComparisonProfile& p) {
  Json per = Json::array();
  for (size_t t = 0; t < p.per_index.size(); ++t) {
    const ProfileEntry& e = p.per_index[t];
    per.push_back({{"index", e.index}, {"value", e.value}, {"running_sup", p.running_sup[t]}, {"method", e.method}});
  }
  return {{"from", p.from.str()},
          {"to", p.to.str()},
          {"final_sup", p.final_sup()},
          {"strictly_increasing", p.strictly_increasing()},
          {"verdict", p.verdict()},
          {"per_index", per}};
}

Json to_json(const AntipodalBases& b) {
  Json rows = Json::array();
  for (size_t t = 0; t < b.x.size(); ++t) {
    rows.push_back({{"index", t + 1}, {"x", b.x[t]}, {"y", b.y[t]}, {"p4_diameter", b.diameter[t]}});
  }
  return {{"bases", rows}};
}

Json to_json(const Triviality& t) {
  Json rows = Json::array();
  for (size_t k = 0; k < t.counts.size(); ++k) {
    rows.push_back({{"index", k + 1}, {"pieces", count_or_null(t.counts[k])}, {"running_max", count_or_null(t.running_max[k])}});
  }
  return {{"status", t.status()}, {"max", count_or_null(t.max())}, {"records", uint_list(t.records)}, {"per_relator", rows}};
}

std::string profile_csv(const ComparisonProfile& p) {
  std::string out = "index,value,running_sup,method\n";
  for (size_t t = 0; t < p.per_index.size(); ++t) {
    const ProfileEntry& e = p.per_index[t];
    out += std::to_string(e.index) + "," + std::to_string(e.value) + "," + std::to_string(p.running_sup[t]) + "," +
           e.method + "\n";
  }
  return out;
}

}  // namespace scc::report

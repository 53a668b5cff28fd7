// scc: command line front end for the small cancellation toolkit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scc/cones.hpp"
#include "scc/families.hpp"
#include "scc/group.hpp"
#include "scc/pieces.hpp"
#include "scc/poset.hpp"
#include "scc/report.hpp"
#include "scc/spath.hpp"

using namespace scc;
using report::Json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

struct UsageError : Error {
  using Error::Error;
};

bool g_meta = true;
std::string g_out;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void emit(const std::string& kind, const Json& body) { write_text(g_out, report::dump(report::envelope(kind, body, g_meta))); }

// A spec file, or a single rule applied to every relator.
GenSetSpec spec_arg(const std::string& text, const std::string& flag) {
  if (text.empty()) return GenSetSpec{};
  if (std::filesystem::exists(text)) return load_spec(text);
  try {
    GenSetSpec s;
    s.default_rule = Rule::parse(text);
    return s;
  } catch (const Error& e) {
    throw UsageError(flag + ": '" + text + "' is neither a spec file nor a rule (" + e.what() + ")");
  }
}

std::set<size_t> index_list(const std::string& text, const std::string& flag) {
  std::set<size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v == 0) throw UsageError(flag + ": bad index '" + item + "'");
    out.insert(v);
  }
  return out;
}

Rational lambda_arg(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--lambda: ") + e.what());
  }
}

int check_lambda(const std::string& path, const std::string& lambda) {
  Rational lam = lambda_arg(lambda);
  Presentation p = load_presentation(path);
  PieceIndex idx(p);
  auto rep = check_small_cancellation(idx, lam);
  emit("small_cancellation", report::to_json(rep, p));
  return rep.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small cancellation toolkit: pieces, cones, families, balls, S-paths, thin-cone profiles"};
  app.require_subcommand(1);
  app.add_flag("--no-meta", [](int64_t) { g_meta = false; }, "omit the meta block (timestamps) from JSON");
  app.add_option("--out", g_out, "write the JSON report here instead of stdout");

  std::function<int()> action;
  auto existing = CLI::ExistingFile;

  // check
  std::string pres_path, lambda;
  auto* check = app.add_subcommand("check", "verify C'(lambda)");
  check->add_option("--lambda", lambda, "lambda as p/q")->required();
  check->add_option("pres", pres_path, "presentation file")->required()->check(existing);
  check->callback([&] { action = [&] { return check_lambda(pres_path, lambda); }; });

  // pres
  auto* pres = app.add_subcommand("pres", "presentation I/O");
  pres->require_subcommand(1);
  auto* pres_parse = pres->add_subcommand("parse", "print the parsed presentation as JSON");
  pres_parse->add_option("pres", pres_path)->required()->check(existing);
  pres_parse->callback([&] { action = [&] {
    emit("presentation", report::to_json(load_presentation(pres_path)));
    return kPass;
  }; });
  auto* pres_validate = pres->add_subcommand("validate", "exit 0 when the presentation is well formed");
  pres_validate->add_option("pres", pres_path)->required()->check(existing);
  pres_validate->callback([&] { action = [&] {
    try {
      Presentation p = load_presentation(pres_path);
      emit("validation", {{"valid", true}, {"relators", p.size()}});
      return kPass;
    } catch (const Error& e) {
      emit("validation", {{"valid", false}, {"error", e.what()}});
      return kFail;
    }
  }; });
  auto* pres_ser = pres->add_subcommand("serialize", "print the presentation in canonical text form");
  pres_ser->add_option("pres", pres_path)->required()->check(existing);
  pres_ser->callback([&] { action = [&] {
    write_text(g_out, serialize(load_presentation(pres_path)));
    return kPass;
  }; });

  // pieces
  auto* pieces = app.add_subcommand("pieces", "piece statistics and C'(lambda)");
  pieces->require_subcommand(1);
  auto* pieces_stats = pieces->add_subcommand("stats", "longest piece per relator");
  pieces_stats->add_option("pres", pres_path)->required()->check(existing);
  pieces_stats->callback([&] { action = [&] {
    PieceIndex idx(load_presentation(pres_path));
    emit("piece_stats", report::piece_stats(idx));
    return kPass;
  }; });
  auto* pieces_check = pieces->add_subcommand("check", "verify C'(lambda)");
  pieces_check->add_option("--lambda", lambda, "lambda as p/q")->required();
  pieces_check->add_option("pres", pres_path)->required()->check(existing);
  pieces_check->callback([&] { action = [&] { return check_lambda(pres_path, lambda); }; });

  // cone
  std::string spec_text, format = "edge-list";
  size_t relator = 1;
  bool no_exhaustive = false;
  auto* cone = app.add_subcommand("cone", "cone graphs C_i^X");
  cone->require_subcommand(1);
  auto cone_common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_text, "spec file or a single rule (default P4)");
    sub->add_option("--relator", relator, "1-based relator index")->check(CLI::PositiveNumber);
    sub->add_option("pres", pres_path)->required()->check(existing);
  };
  auto with_cone = [&](const std::function<int(const ConeGraph&)>& f) {
    Presentation p = load_presentation(pres_path);
    GenSetSpec spec = spec_arg(spec_text, "--spec");
    spec.validate(p);
    if (relator > p.size()) throw UsageError("--relator: " + std::to_string(relator) + " outside 1.." + std::to_string(p.size()));
    PieceIndex idx(p);
    return f(build_cone(p, idx, spec, relator));
  };
  auto* cone_build = cone->add_subcommand("build", "cone summary");
  cone_common(cone_build);
  cone_build->callback([&] { action = [&] {
    return with_cone([](const ConeGraph& c) {
      emit("cone", report::cone_summary(c));
      return kPass;
    });
  }; });
  auto* cone_hyp = cone->add_subcommand("hyp", "hyperbolicity report");
  cone_common(cone_hyp);
  cone_hyp->add_flag("--no-exhaustive", no_exhaustive, "use closed forms even for small cones");
  cone_hyp->callback([&] { action = [&] {
    return with_cone([&](const ConeGraph& c) {
      Json j = report::cone_summary(c);
      j["hyperbolicity"] = report::to_json(hyperbolicity(c, !no_exhaustive));
      emit("cone_hyperbolicity", j);
      return kPass;
    });
  }; });
  auto* cone_export = cone->add_subcommand("export", "edge list or DOT");
  cone_common(cone_export);
  cone_export->add_option("--format", format, "edge-list | dot");
  cone_export->callback([&] { action = [&] {
    GraphFormat f;
    try {
      f = parse_format(format);
    } catch (const Error& e) {
      throw UsageError(std::string("--format: ") + e.what());
    }
    return with_cone([&](const ConeGraph& c) {
      write_text(g_out, export_graph(c, f));
      return kPass;
    });
  }; });

  // family
  size_t fam_n = 6, fam_from = 6, fam_to = 12;
  std::string json_path;
  auto* family = app.add_subcommand("family", "the cube-free relator family r'_n");
  family->require_subcommand(1);
  auto* family_gen = family->add_subcommand("gen", "write a presentation with r'_n (or r'_from..r'_to)");
  auto* gen_n = family_gen->add_option("--n", fam_n, "single n");
  auto* gen_from = family_gen->add_option("--from", fam_from);
  family_gen->add_option("--to", fam_to)->needs(gen_from);
  gen_n->excludes(gen_from);
  family_gen->callback([&] { action = [&] {
    size_t lo = gen_from->count() ? fam_from : fam_n;
    size_t hi = gen_from->count() ? fam_to : fam_n;
    if (lo > hi) throw UsageError("--from exceeds --to");
    write_text(g_out, serialize(family_presentation(lo, hi)));
    return kPass;
  }; });
  auto* family_verify = family->add_subcommand("verify", "lengths, cube-freeness, piece bound and joint C'(1/24)");
  family_verify->add_option("--from", fam_from);
  family_verify->add_option("--to", fam_to);
  family_verify->add_option("--json", json_path, "also write the report here");
  family_verify->callback([&] { action = [&] {
    if (fam_from > fam_to) throw UsageError("--from exceeds --to");
    FamilyVerification v = verify_family(fam_from, fam_to);
    Json j = report::envelope("family_verification", report::to_json(v), g_meta);
    if (!json_path.empty()) write_text(json_path, report::dump(j));
    write_text(g_out, report::dump(j));
    return v.pass ? kPass : kFail;
  }; });

  // group
  std::string metric = "S";
  size_t trunc = SIZE_MAX, radius = 2, samples = 200, cap = BallOptions{}.vertex_cap;
  uint64_t seed = 1;
  auto* group = app.add_subcommand("group", "Dehn reduction, truncated balls and S-paths");
  group->require_subcommand(1);
  auto group_common = [&](CLI::App* sub) {
    sub->add_option("--metric", metric, "S, a spec file, or a single rule");
    sub->add_option("--trunc", trunc, "use relators 1..N");
    sub->add_option("--radius", radius)->check(CLI::Range(0, 255));
    sub->add_option("--cap", cap, "vertex budget")->check(CLI::PositiveNumber);
    sub->add_option("pres", pres_path)->required()->check(existing);
  };
  auto make_ball = [&](Presentation& p, GenSetSpec& spec) {
    p = load_presentation(pres_path);
    BallOptions opt{cap};
    if (metric == "S") return build_ball(p, std::min(trunc, p.size()), radius, opt);
    spec = spec_arg(metric, "--metric");
    spec.validate(p);
    return build_ball(p, spec, std::min(trunc, p.size()), radius, opt);
  };
  auto* group_ball = group->add_subcommand("ball", "ball statistics");
  group_common(group_ball);
  group_ball->callback([&] { action = [&] {
    Presentation p;
    GenSetSpec spec;
    TruncatedBall b = make_ball(p, spec);
    emit("ball", report::ball_stats(b));
    return kPass;
  }; });
  auto* group_spath = group->add_subcommand("spath", "S-path property checks on sampled geodesics");
  group_common(group_spath);
  group_spath->add_option("--sample", samples)->check(CLI::PositiveNumber);
  group_spath->add_option("--seed", seed);
  group_spath->callback([&] { action = [&] {
    if (metric == "S") metric = "P4";
    Presentation p;
    GenSetSpec spec;
    TruncatedBall b = make_ball(p, spec);
    SPathOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    SPathReport rep = check_s_paths(b, opt);
    PieceIndex idx(b.presentation());
    PropertyResult convex = check_cone_convexity(b, idx, spec);
    Json j = report::to_json(rep);
    j["properties"].push_back(report::to_json(convex));
    j["pass"] = rep.pass() && convex.pass();
    j["ball"] = report::ball_stats(b);
    emit("spath", j);
    return rep.pass() && convex.pass() ? kPass : kFail;
  }; });

  // poset
  std::string x_text, y_text, csv_path, a_text, b_text, ia_text, ja_text;
  size_t upto = SIZE_MAX;
  uint32_t threshold = 8;
  auto* poset = app.add_subcommand("poset", "thin-cone comparison profiles");
  poset->require_subcommand(1);
  auto upto_of = [&](const Presentation& p) { return std::min(upto, p.size()); };
  // "antipodal-x" / "antipodal-y" select the laced pair at antipodal bases
  auto poset_spec = [&](const std::string& text, const std::string& flag, const Presentation& p,
                        const PieceIndex& idx) {
    if (text == "antipodal-x" || text == "antipodal-y") {
      auto pair = laced_pair(pick_antipodal_bases(p, idx, p.size()));
      return text == "antipodal-x" ? pair.first : pair.second;
    }
    GenSetSpec s = spec_arg(text, flag);
    s.validate(p);
    return s;
  };
  auto* poset_compare = poset->add_subcommand("compare", "chords of Y measured in the X-cones");
  poset_compare->add_option("--x", x_text, "metric spec")->required();
  poset_compare->add_option("--y", y_text, "chord spec")->required();
  poset_compare->add_option("--upto", upto);
  poset_compare->add_option("--csv", csv_path, "also write the profile table as CSV");
  poset_compare->add_option("pres", pres_path)->required()->check(existing);
  poset_compare->callback([&] { action = [&] {
    Presentation p = load_presentation(pres_path);
    PieceIndex idx(p);
    auto prof = compare_profile(p, idx, poset_spec(x_text, "--x", p, idx), poset_spec(y_text, "--y", p, idx), upto_of(p));
    if (!csv_path.empty()) write_text(csv_path, report::profile_csv(prof));
    emit("profile", report::to_json(prof));
    return kPass;
  }; });
  auto* poset_pfin = poset->add_subcommand("pfin", "index-set mixtures X^A and their profiles");
  poset_pfin->add_option("--a", a_text, "1-based positions in the witness list")->required();
  poset_pfin->add_option("--b", b_text, "second position set; profiles both ways");
  poset_pfin->add_option("--x1", x_text, "coarse spec (default L)");
  poset_pfin->add_option("--x2", y_text, "fine spec contained in X1 (default P4)");
  poset_pfin->add_option("--threshold", threshold, "witness indices have P4 cone diameter above this");
  poset_pfin->add_option("--upto", upto);
  poset_pfin->add_option("pres", pres_path)->required()->check(existing);
  poset_pfin->callback([&] { action = [&] {
    Presentation p = load_presentation(pres_path);
    PieceIndex idx(p);
    GenSetSpec x1 = x_text.empty() ? GenSetSpec{Rule::full(), {}} : poset_spec(x_text, "--x1", p, idx);
    GenSetSpec x2 = y_text.empty() ? GenSetSpec{} : poset_spec(y_text, "--x2", p, idx);
    auto wit = witness_indices(p, idx, upto_of(p), threshold);
    GenSetSpec ma = mix_pfin(x1, x2, index_list(a_text, "--a"), wit);
    Json j{{"witness_indices", wit}, {"mix_a", ma.str()}};
    if (!b_text.empty()) {
      GenSetSpec mb = mix_pfin(x1, x2, index_list(b_text, "--b"), wit);
      j["mix_b"] = mb.str();
      j["a_measures_b"] = report::to_json(compare_profile(p, idx, ma, mb, upto_of(p)));
      j["b_measures_a"] = report::to_json(compare_profile(p, idx, mb, ma, upto_of(p)));
    }
    emit("pfin", j);
    return kPass;
  }; });
  auto* poset_anti = poset->add_subcommand("antichain", "W^A: X on I_A, Y on J_A, L elsewhere");
  poset_anti->add_option("--x", x_text)->required();
  poset_anti->add_option("--y", y_text)->required();
  poset_anti->add_option("--ia", ia_text, "relator indices taking X");
  poset_anti->add_option("--ja", ja_text, "relator indices taking Y");
  poset_anti->add_option("pres", pres_path)->required()->check(existing);
  poset_anti->callback([&] { action = [&] {
    Presentation p = load_presentation(pres_path);
    PieceIndex idx(p);
    GenSetSpec w = mix_antichain(poset_spec(x_text, "--x", p, idx), poset_spec(y_text, "--y", p, idx),
                                 index_list(ia_text, "--ia"), index_list(ja_text, "--ja"));
    w.validate(p);
    emit("antichain", {{"spec", w.str()}});
    return kPass;
  }; });
  auto* poset_trivial = poset->add_subcommand("trivial", "full-cycle piece counts");
  poset_trivial->add_option("--upto", upto);
  poset_trivial->add_option("pres", pres_path)->required()->check(existing);
  poset_trivial->callback([&] { action = [&] {
    Presentation p = load_presentation(pres_path);
    PieceIndex idx(p);
    emit("tc_triviality", report::to_json(tc_triviality(p, idx, upto_of(p))));
    return kPass;
  }; });
  auto* poset_bases = poset->add_subcommand("bases", "antipodal base points of the P4 cones");
  poset_bases->add_option("--upto", upto);
  poset_bases->add_option("pres", pres_path)->required()->check(existing);
  poset_bases->callback([&] { action = [&] {
    Presentation p = load_presentation(pres_path);
    PieceIndex idx(p);
    emit("antipodal_bases", report::to_json(pick_antipodal_bases(p, idx, upto_of(p))));
    return kPass;
  }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    emit("error", {{"error", e.what()}});
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}

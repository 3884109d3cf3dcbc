// Command-line front end: subgroup-graph construction and decision
// procedures for Coxeter groups of extra-large type, plus the surface-group
// pipeline.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coxsg/analysis.hpp"
#include "coxsg/completion.hpp"
#include "coxsg/io.hpp"
#include "coxsg/pipeline.hpp"
#include "coxsg/presentation.hpp"
#include "coxsg/reduction.hpp"
#include "coxsg/rewriting.hpp"
#include "coxsg/separability.hpp"
#include "coxsg/surface.hpp"

using nlohmann::json;
using namespace coxsg;

namespace {

std::string slurp(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& content)
{
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

struct CommonArgs {
  std::string presentation_path;
  std::string gens_path;
  std::string word_text;
  std::string cover_text;
  std::string json_path;
  std::string export_dot, export_graph;
  bool trace = false;
  bool unchecked = false;
  long budget = 0;
};

CoxeterPresentation load_presentation(const CommonArgs& args)
{
  return parse_presentation(slurp(args.presentation_path));
}

std::vector<Word> load_gens(const CommonArgs& args, const CoxeterPresentation& p)
{
  std::vector<Word> gens;
  if (args.gens_path.empty())
    return gens;
  std::istringstream in(slurp(args.gens_path));
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
      ++start;
    line = line.substr(start);
    if (line.empty() || line[0] == '#')
      continue;
    gens.push_back(parse_word(line, p.rank()));
  }
  return gens;
}

std::optional<std::vector<Gen>> parse_cover(const std::string& text, std::size_t n)
{
  if (text.empty())
    return std::nullopt;
  std::vector<Gen> cover;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    long v = std::stol(tok);
    if (v < 1 || static_cast<std::size_t>(v) > n)
      throw std::runtime_error("--cover index out of range");
    cover.push_back(static_cast<Gen>(v - 1));
  }
  return cover;
}

BuildOptions build_options(const CommonArgs& args, const CoxeterPresentation& p)
{
  BuildOptions opt;
  opt.cover = parse_cover(args.cover_text, p.rank());
  opt.unchecked = args.unchecked;
  opt.budget = args.budget;
  if (args.trace)
    opt.trace = [](const std::string& line) { std::cerr << "  " << line << "\n"; };
  return opt;
}

void emit(const CommonArgs& args, const json& doc, const std::string& human)
{
  if (args.json_path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << human;
  if (!args.json_path.empty())
    spill(args.json_path, doc.dump(2) + "\n");
}

void export_graphs(const CommonArgs& args, const SubgroupGraph& g)
{
  if (!args.export_dot.empty())
    spill(args.export_dot, graph_to_dot(g));
  if (!args.export_graph.empty())
    spill(args.export_graph, graph_to_json(g) + "\n");
}

json stats_json(const BuildStats& stats)
{
  return json{{"s_H", stats.s_H},
              {"completion_steps", stats.phase1.completion_steps},
              {"gamma_initial", stats.phase1.gamma_initial},
              {"gamma_final", stats.phase1.gamma_final},
              {"delta1_vertices", stats.delta1_vertices},
              {"delta1_edges", stats.delta1_edges},
              {"delta2_vertices", stats.delta2_vertices},
              {"delta2_edges", stats.delta2_edges},
              {"seconds_phase1", stats.seconds_phase1},
              {"seconds_phase2", stats.seconds_phase2}};
}

json word_json(const Word& w, std::size_t n)
{
  return json{{"text", format_word(w, n)}, {"length", w.size()}};
}

int cmd_check(const CommonArgs& args)
{
  CoxeterPresentation p = load_presentation(args);
  json doc{{"schema", "coxsg/1"}, {"verb", "check"}};
  std::ostringstream human;

  bool extra_large = p.is_extra_large();
  doc["extra_large"] = extra_large;
  human << "extra-large type: " << (extra_large ? "pass" : "FAIL") << "\n";

  auto requested = parse_cover(args.cover_text, p.rank());
  std::optional<std::vector<Gen>> cover = requested;
  if (!cover)
    cover = p.declared_cover();
  if (!cover)
    cover = find_cover(p);

  bool reduction_ok = false;
  if (cover) {
    ReductionReport rep = check_reduction_hypothesis(p, *cover);
    reduction_ok = rep.pass;
    json cj = json::array();
    for (Gen g : *cover)
      cj.push_back(g + 1);
    doc["cover"] = cj;
    doc["reduction_hypothesis"] = rep.pass;
    human << "reduction hypothesis (cover";
    for (Gen g : *cover)
      human << " " << (g + 1);
    human << "): " << (rep.pass ? "pass" : "FAIL") << "\n";
    for (auto& v : rep.violations)
      human << "  " << v.message << "\n";
  } else {
    doc["reduction_hypothesis"] = false;
    human << "reduction hypothesis: FAIL (no admissible cover exists)\n";
  }

  SeparabilityReport sep = check_separability_condition(p);
  doc["separability_condition"] = sep.pass;
  human << "separability condition: " << (sep.pass ? "pass" : "FAIL") << "\n";
  for (auto& v : sep.violations)
    human << "  " << v.message << "\n";

  emit(args, doc, human.str());
  if (!extra_large || !reduction_ok)
    return 2;
  if (!sep.pass)
    return 3;
  return 0;
}

int cmd_build(const CommonArgs& args)
{
  CoxeterPresentation p = load_presentation(args);
  std::vector<Word> gens = load_gens(args, p);
  BuildResult r = build_subgroup_graph(p, gens, build_options(args, p));
  export_graphs(args, r.delta2);

  json doc{{"schema", "coxsg/1"}, {"verb", "build"}, {"stats", stats_json(r.stats)}};
  std::ostringstream human;
  human << "built Delta_2: " << r.stats.delta2_vertices << " vertices, "
        << r.stats.delta2_edges << " edges (s_H = " << r.stats.s_H << ", "
        << r.stats.phase1.completion_steps << " completions, gamma "
        << r.stats.phase1.gamma_initial << " -> " << r.stats.phase1.gamma_final << ")\n"
        << "phase 1: " << r.stats.seconds_phase1 << " s, phase 2: "
        << r.stats.seconds_phase2 << " s\n";
  emit(args, doc, human.str());
  return 0;
}

int cmd_member(const CommonArgs& args)
{
  CoxeterPresentation p = load_presentation(args);
  std::vector<Word> gens = load_gens(args, p);
  Word w = parse_word(args.word_text, p.rank());
  BuildResult r = build_subgroup_graph(p, gens, build_options(args, p));
  export_graphs(args, r.delta2);
  MembershipResult m = is_member(r.delta2, w);

  json doc{{"schema", "coxsg/1"},
           {"verb", "member"},
           {"word", word_json(w, p.rank())},
           {"reduced", word_json(m.reduced, p.rank())},
           {"member", m.member}};
  std::ostringstream human;
  human << format_word(w, p.rank()) << (m.member ? " IS " : " is NOT ")
        << "in the subgroup\n";
  if (args.trace) {
    human << "  dehn-reduced: " << format_word(m.reduced, p.rank()) << "\n  trace:";
    for (VertexId v : m.trace)
      human << " " << v;
    if (m.fell_off)
      human << " (fell off at letter " << m.fell_off_at << ")";
    human << "\n";
  }
  emit(args, doc, human.str());
  return 0;
}

int cmd_index(const CommonArgs& args)
{
  CoxeterPresentation p = load_presentation(args);
  std::vector<Word> gens = load_gens(args, p);
  BuildResult r = build_subgroup_graph(p, gens, build_options(args, p));
  export_graphs(args, r.delta2);
  FullnessReport f = is_finite_index(r.delta2);
  json doc{{"schema", "coxsg/1"},
           {"verb", "index"},
           {"finite_index", f.full},
           {"vertex_count", f.vertex_count}};
  std::ostringstream human;
  if (f.full)
    human << "finite index: graph is full; coset-count estimate " << f.vertex_count
          << "\n";
  else
    human << "infinite index: vertex " << f.missing_vertex << " misses a"
          << (f.missing_label + 1) << "\n";
  emit(args, doc, human.str());
  return 0;
}

int cmd_qc(const CommonArgs& args)
{
  CoxeterPresentation p = load_presentation(args);
  std::vector<Word> gens = load_gens(args, p);
  BuildResult r = build_subgroup_graph(p, gens, build_options(args, p));
  long d = quasiconvexity_constant(r.delta2);
  json doc{{"schema", "coxsg/1"}, {"verb", "qc"}, {"diameter", d}};
  std::ostringstream human;
  human << "quasiconvexity constant (diameter of Delta_2): " << d << "\n";
  emit(args, doc, human.str());
  return 0;
}

int cmd_witness(const CommonArgs& args)
{
  CoxeterPresentation p = load_presentation(args);
  std::vector<Word> gens = load_gens(args, p);
  BuildResult r = build_subgroup_graph(p, gens, build_options(args, p));
  Word z = infinite_index_witness(r.delta2);
  json doc{{"schema", "coxsg/1"},
           {"verb", "witness"},
           {"witness", word_json(z, p.rank())}};
  std::ostringstream human;
  human << "infinite-index witness z = " << format_word(z, p.rank())
        << " (all powers are normal and avoid the subgroup)\n";
  emit(args, doc, human.str());
  return 0;
}

int cmd_intersect(const CommonArgs& args, const std::string& gens2_path)
{
  CoxeterPresentation p = load_presentation(args);
  std::vector<Word> gens = load_gens(args, p);
  CommonArgs b = args;
  b.gens_path = gens2_path;
  std::vector<Word> gens2 = load_gens(b, p);
  BuildResult h = build_subgroup_graph(p, gens, build_options(args, p));
  BuildResult k = build_subgroup_graph(p, gens2, build_options(args, p));
  SubgroupGraph acc = intersection_acceptor(h.delta2, k.delta2);
  export_graphs(args, acc);

  json doc{{"schema", "coxsg/1"},
           {"verb", "intersect"},
           {"acceptor_vertices", acc.vertex_count()},
           {"acceptor_edges", acc.edge_count()}};
  std::ostringstream human;
  human << "intersection acceptor: " << acc.vertex_count() << " vertices, "
        << acc.edge_count()
        << " edges (accepts a Dehn-reduced word iff it lies in both subgroups)\n";
  if (!args.word_text.empty()) {
    Word w = parse_word(args.word_text, p.rank());
    Word red = dehn_reduce(p, w);
    bool member = acc.reads_closed_loop(red);
    doc["word"] = word_json(w, p.rank());
    doc["member"] = member;
    human << format_word(w, p.rank()) << (member ? " IS" : " is NOT")
          << " in the intersection\n";
  }
  emit(args, doc, human.str());
  return 0;
}

json quotient_json(const FiniteQuotient& q)
{
  json imgs = json::array();
  for (std::size_t i = 0; i < q.images.size(); ++i)
    imgs.push_back(cycle_notation(q.images[i]));
  json doc{{"degree", q.degree}, {"images", imgs}, {"basepoint", q.base_index}};
  if (q.terminal_index)
    doc["terminal"] = *q.terminal_index;
  return doc;
}

int cmd_separate(const CommonArgs& args)
{
  CoxeterPresentation p = load_presentation(args);
  std::vector<Word> gens = load_gens(args, p);
  Word w = parse_word(args.word_text, p.rank());
  SeparationCertificate cert =
      separate(p, gens, w, parse_cover(args.cover_text, p.rank()));

  json doc{{"schema", "coxsg/1"},
           {"verb", "separate"},
           {"word", word_json(w, p.rank())},
           {"quotient", quotient_json(cert.quotient)},
           {"w_image", cert.w_image}};
  std::ostringstream human;
  human << quotient_to_text(cert.quotient);
  human << "certificate: O_H * w = " << cert.w_image << " != O_H = " << cert.base_index
        << "; every subgroup generator fixes O_H\n";
  emit(args, doc, human.str());
  return 0;
}

int cmd_rf(const CommonArgs& args)
{
  CoxeterPresentation p = load_presentation(args);
  Word w = parse_word(args.word_text, p.rank());
  SeparationCertificate cert = residual_witness(p, w);
  json doc{{"schema", "coxsg/1"},
           {"verb", "rf"},
           {"word", word_json(w, p.rank())},
           {"quotient", quotient_json(cert.quotient)},
           {"w_image", cert.w_image}};
  std::ostringstream human;
  human << quotient_to_text(cert.quotient);
  human << "phi(w) sends " << cert.base_index << " to " << cert.w_image
        << ", so w survives in the finite quotient\n";
  emit(args, doc, human.str());
  return 0;
}

int cmd_nf(const CommonArgs& args, bool check_only)
{
  CoxeterPresentation p = load_presentation(args);
  Word w = parse_word(args.word_text, p.rank());
  if (check_only) {
    NormalCheck chk = check_shortlex_normal(p, w);
    json doc{{"schema", "coxsg/1"},
             {"verb", "isnf"},
             {"word", word_json(w, p.rank())},
             {"normal", chk.normal}};
    std::ostringstream human;
    if (chk.normal)
      human << format_word(w, p.rank()) << " is in shortlex normal form\n";
    else {
      doc["reject_position"] = chk.reject_position;
      human << format_word(w, p.rank()) << " is NOT normal (rejected at letter "
            << chk.reject_position << ")\n";
    }
    emit(args, doc, human.str());
    return 0;
  }
  Word nf = normal_form(p, w);
  json doc{{"schema", "coxsg/1"},
           {"verb", "nf"},
           {"word", word_json(w, p.rank())},
           {"normal_form", word_json(nf, p.rank())}};
  std::ostringstream human;
  human << format_word(nf, p.rank()) << "\n";
  emit(args, doc, human.str());
  return 0;
}

int cmd_surface(const CommonArgs& args, int genus, bool nonorientable)
{
  surface::SurfacePresentation sp(genus, !nonorientable);
  std::vector<surface::SWord> gens;
  if (!args.gens_path.empty()) {
    std::istringstream in(slurp(args.gens_path));
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
        line.pop_back();
      if (line.empty() || line[0] == '#')
        continue;
      gens.push_back(surface::parse_sword(line, sp.rank()));
    }
  }
  surface::DirectedSubgroupGraph g = surface::surface_bouquet(sp, gens);
  surface::SurfaceStats stats = surface::surface_phase1(g);
  surface::surface_two_complete(g);
  if (!surface::surface_is_two_complete(g))
    throw std::runtime_error("surface Delta_2 failed the completeness check");

  std::optional<surface::SWord> w;
  if (!args.word_text.empty())
    w = surface::parse_sword(args.word_text, sp.rank());
  surface::SurfaceReport rep = surface::surface_queries(g, w);

  json doc{{"schema", "coxsg/1"},
           {"verb", "surface"},
           {"genus", genus},
           {"orientable", !nonorientable},
           {"vertices", rep.vertex_count},
           {"edges", rep.edge_count},
           {"full", rep.full},
           {"diameter", rep.diameter},
           {"completions", stats.completion_steps}};
  std::ostringstream human;
  human << "surface Delta_2: " << rep.vertex_count << " vertices, " << rep.edge_count
        << " edges; " << (rep.full ? "finite index (full)" : "infinite index")
        << "; diameter " << rep.diameter << "\n";
  if (w) {
    doc["member"] = rep.member;
    human << surface::format_sword(*w, sp.rank()) << (rep.member ? " IS" : " is NOT")
          << " in the subgroup\n";
  }
  emit(args, doc, human.str());
  return 0;
}

int cmd_bench(const CommonArgs& args, long max_s, unsigned seed)
{
  // Exponent-6 triangle group; random Dehn-reduced generators at each
  // target size, fixed seed for reproducibility.
  CoxeterPresentation p(3);
  p.set_exponent(0, 1, 6);
  p.set_exponent(0, 2, 6);
  p.set_exponent(1, 2, 6);
  std::mt19937_64 rng(seed);

  json rows = json::array();
  std::ostringstream human;
  human << "  s_H     seconds    edges(D2)  completions\n";
  std::vector<double> xs, ys;
  for (long target = 100; target <= max_s; target += 100) {
    std::vector<Word> gens;
    long total = 0;
    while (total < target) {
      std::size_t len = static_cast<std::size_t>(std::min<long>(100, target - total));
      if (len < 2)
        break;
      Word w;
      std::uniform_int_distribution<int> letter(0, 2);
      while (w.size() < len) {
        Gen g = static_cast<Gen>(letter(rng));
        if (!w.empty() && w.back() == g)
          continue;
        w.push_back(g);
      }
      w = dehn_reduce(p, w);
      total += static_cast<long>(w.size());
      gens.push_back(std::move(w));
    }
    auto t0 = std::chrono::steady_clock::now();
    BuildResult r = build_subgroup_graph(p, gens);
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    human << "  " << r.stats.s_H << "\t" << secs << "\t" << r.stats.delta2_edges << "\t"
          << r.stats.phase1.completion_steps << "\n";
    rows.push_back(json{{"s_H", r.stats.s_H},
                        {"seconds", secs},
                        {"delta2_edges", r.stats.delta2_edges},
                        {"completions", r.stats.phase1.completion_steps}});
    if (r.stats.s_H > 0 && secs > 0) {
      xs.push_back(std::log(static_cast<double>(r.stats.s_H)));
      ys.push_back(std::log(secs));
    }
  }
  double exponent = 0;
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      mx += xs[k];
      my += ys[k];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(ys.size());
    double num = 0, den = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      num += (xs[k] - mx) * (ys[k] - my);
      den += (xs[k] - mx) * (xs[k] - mx);
    }
    exponent = den > 0 ? num / den : 0;
  }
  human << "fitted growth exponent: " << exponent << "\n";
  json doc{{"schema", "coxsg/1"},
           {"verb", "bench"},
           {"rows", rows},
           {"fitted_exponent", exponent}};
  emit(args, doc, human.str());
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{
      "Subgroup graphs for Coxeter groups of extra-large type: perimeter\n"
      "reduction, 2-completion, membership, finite index, quasiconvexity,\n"
      "intersections, and explicit finite quotients."};
  app.require_subcommand(1);

  CommonArgs args;
  int genus = 2;
  bool nonorientable = false;
  long max_s = 1500;
  unsigned seed = 1;
  std::string gens2_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--presentation", args.presentation_path,
                    "presentation file (gens/m/cover lines)")
        ->required();
    cmd->add_option("--json", args.json_path,
                    "write machine-readable output ('-' = stdout)");
    cmd->add_flag("--trace", args.trace, "verbose step/trace output");
  };
  auto add_build_flags = [&](CLI::App* cmd) {
    cmd->add_option("--cover", args.cover_text, "comma-separated 1-based cover indices");
    cmd->add_option("--export-dot", args.export_dot, "write the graph in DOT form");
    cmd->add_option("--export-graph", args.export_graph, "write the graph document");
    cmd->add_flag("--unchecked", args.unchecked,
                  "run Phase I without the Reduction Hypothesis");
    cmd->add_option("--budget", args.budget, "step cap for --unchecked runs");
  };
  auto add_gens = [&](CLI::App* cmd, bool required) {
    auto* o =
        cmd->add_option("--gens", args.gens_path, "subgroup generators, one word per line");
    if (required)
      o->required();
  };
  auto add_word = [&](CLI::App* cmd) {
    cmd->add_option("--word", args.word_text,
                    "word (letters 'aba' or 1-based indices '1 2 1')")
        ->required();
  };

  auto* check = app.add_subcommand("check", "hypothesis report for a presentation");
  add_common(check);
  check->add_option("--cover", args.cover_text, "comma-separated 1-based cover indices");

  auto* build = app.add_subcommand("build", "construct Delta_0 -> Delta_1 -> Delta_2");
  add_common(build);
  add_build_flags(build);
  add_gens(build, false);

  auto* member = app.add_subcommand("member", "decide membership of a word");
  add_common(member);
  add_build_flags(member);
  add_gens(member, false);
  add_word(member);

  auto* index = app.add_subcommand("index", "decide finite index via fullness");
  add_common(index);
  add_build_flags(index);
  add_gens(index, false);

  auto* qc = app.add_subcommand("qc", "quasiconvexity constant (diameter)");
  add_common(qc);
  add_build_flags(qc);
  add_gens(qc, false);

  auto* witness = app.add_subcommand("witness", "infinite-index witness word");
  add_common(witness);
  add_build_flags(witness);
  add_gens(witness, false);

  auto* intersect =
      app.add_subcommand("intersect", "intersection acceptor of two subgroups");
  add_common(intersect);
  add_build_flags(intersect);
  add_gens(intersect, true);
  intersect->add_option("--gens2", gens2_path, "second subgroup's generators")->required();
  intersect->add_option("--word", args.word_text, "optional word to test");

  auto* separate_cmd =
      app.add_subcommand("separate", "finite quotient separating w from H");
  add_common(separate_cmd);
  separate_cmd->add_option("--cover", args.cover_text, "comma-separated cover");
  add_gens(separate_cmd, false);
  add_word(separate_cmd);

  auto* rf = app.add_subcommand("rf", "finite quotient in which w survives");
  add_common(rf);
  add_word(rf);

  auto* nf = app.add_subcommand("nf", "shortlex normal form of a word");
  add_common(nf);
  add_word(nf);

  auto* isnf = app.add_subcommand("isnf", "test whether a word is shortlex normal");
  add_common(isnf);
  add_word(isnf);

  auto* surf = app.add_subcommand("surface", "surface-group pipeline and queries");
  surf->add_option("--genus", genus, "genus (>= 2 orientable, >= 4 nonorientable)")
      ->required();
  surf->add_flag("--nonorientable", nonorientable, "use the nonorientable relator");
  surf->add_option("--gens", args.gens_path, "subgroup generators, one word per line");
  surf->add_option("--word", args.word_text, "word with ' or - marking inverses");
  surf->add_option("--json", args.json_path, "machine-readable output");
  surf->add_flag("--trace", args.trace, "verbose output");

  auto* bench = app.add_subcommand("bench", "timing sweep over random subgroups");
  bench->add_option("--max-s", max_s, "largest generator-length total (default 1500)");
  bench->add_option("--seed", seed, "random seed (default 1)");
  bench->add_option("--json", args.json_path, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return cmd_check(args);
    if (build->parsed())
      return cmd_build(args);
    if (member->parsed())
      return cmd_member(args);
    if (index->parsed())
      return cmd_index(args);
    if (qc->parsed())
      return cmd_qc(args);
    if (witness->parsed())
      return cmd_witness(args);
    if (intersect->parsed())
      return cmd_intersect(args, gens2_path);
    if (separate_cmd->parsed())
      return cmd_separate(args);
    if (rf->parsed())
      return cmd_rf(args);
    if (nf->parsed())
      return cmd_nf(args, false);
    if (isnf->parsed())
      return cmd_nf(args, true);
    if (surf->parsed())
      return cmd_surface(args, genus, nonorientable);
    if (bench->parsed())
      return cmd_bench(args, max_s, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

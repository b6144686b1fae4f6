#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jmono/dessin.hpp"
#include "jmono/enumerate.hpp"
#include "jmono/error.hpp"
#include "jmono/fibers.hpp"
#include "jmono/json_io.hpp"
#include "jmono/pullback.hpp"
#include "jmono/subgroup.hpp"
#include "jmono/weierstrass.hpp"

#ifdef JMONO_HAVE_OPENMP
#include <omp.h>
#endif

using namespace jmono;

namespace {

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::string slurp(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "-" or empty reads standard input; a leading brace is inline JSON;
// anything else is a file path
std::string read_source(const std::string& arg) {
  if (arg.empty() || arg == "-") return slurp(std::cin);
  if (arg[0] == '{' || arg[0] == '[') return arg;
  std::ifstream f(arg);
  if (!f) throw input_error("cannot open " + arg);
  return slurp(f);
}

Dessin load_dessin(const std::string& arg) {
  return dessin_from_json(parse_json(read_source(arg)));
}

void set_workers(int workers) {
#ifdef JMONO_HAVE_OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#else
  (void)workers;
#endif
}

std::string hex_key(const std::string& raw) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned char c : raw) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::vector<std::string> sorted_labels(const std::vector<KodairaType>& v) {
  std::vector<std::string> out;
  for (const KodairaType& t : v) out.push_back(t.label());
  std::sort(out.begin(), out.end());
  return out;
}

void cmd_analyze(const std::string& src) {
  Dessin d = load_dessin(src);
  VertexCensus c = census(d);
  json gens = json::array();
  for (const GeneratorInfo& g : generators(d)) {
    json rec = {{"word", g.word.text()},
                {"kind", g.kind},
                {"matrix", word_to_matrix(g.word).str()}};
    if (g.order > 0) rec["order"] = g.order;
    gens.push_back(rec);
  }
  json rec = {{"n", d.n},
              {"genus", c.genus},
              {"et", et(d)},
              {"cdf", cdf(d)},
              {"a2", c.a2.size()},
              {"a6", c.a6.size()},
              {"b2", c.b2.size()},
              {"b4", c.b4.size()},
              {"cusps", c.widths()},
              {"torsion_free", d.torsion_free()},
              {"key", hex_key(canonical_key(d))},
              {"generators", gens}};
  if (c.genus == 0) rec["minimal_lift"] = minimal_lift_exists(d);
  emit(rec);
}

void cmd_enumerate(int index, bool genus0, bool torsion_free, bool saturated,
                   long et_max, int cusps, int workers) {
  set_workers(workers);
  Filter f;
  std::ostringstream desc;
  desc << "index=" << index;
  if (genus0) {
    f.genus = 0;
    desc << " genus0";
  }
  if (torsion_free) {
    f.torsion_free = true;
    desc << " torsion-free";
  }
  if (saturated) {
    f.saturated = true;
    desc << " saturated";
  }
  if (et_max >= 0) {
    f.et_max = et_max;
    desc << " et<=" << et_max;
  }
  if (cusps >= 0) {
    f.cusps = cusps;
    desc << " cusps=" << cusps;
  }
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Dessin> all = enumerate_dessins(index, f);
  for (const Dessin& d : all) emit(dessin_to_json(d));
  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0).count();
  emit({{"count", all.size()}, {"filter", desc.str()}, {"elapsed", elapsed}});
}

void cmd_classify(const std::string& cls, int workers) {
  set_workers(workers);
  std::string target = cls == "k3" ? "K3" : cls;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<SurfaceWitness> all = classify_surfaces(target);
  for (const SurfaceWitness& w : all)
    emit({{"dessin", dessin_to_json(w.dessin)},
          {"config", config_to_json(w.config)},
          {"report", report_to_json(w.report)}});
  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0).count();
  emit({{"count", all.size()},
        {"filter", "class=" + target},
        {"elapsed", elapsed}});
}

void cmd_lift(const std::string& src, int extra, long r_max) {
  Dessin d = load_dessin(src);
  auto rows = enumerate_configs(d, extra, r_max);
  for (const auto& [c, rep] : rows)
    emit({{"config", config_to_json(c)}, {"report", report_to_json(rep)}});
  emit({{"count", rows.size()}, {"minimal_lift", minimal_lift_exists(d)}});
}

void cmd_pullback(const std::string& dsrc, const std::string& psrc,
                  const std::vector<std::string>& twists) {
  Dessin d = load_dessin(dsrc);
  RamificationProfile prof = profile_from_json(parse_json(read_source(psrc)));
  int g = check_profile(prof, d);
  emit({{"profile", profile_to_json(prof)}, {"base_genus", g}});
  for (const Preimage& pre : preimages(d, prof))
    emit({{"up", pre.up},
          {"part", pre.part},
          {"ram", pre.a},
          {"class", pre.cls},
          {"width", pre.width}});
  std::set<std::string> tw(twists.begin(), twists.end());
  FiberAssignment cfg = induced_config(d, prof, tw);
  long euler = 0;
  for (const auto& [pt, ty] : cfg.fibers) euler += ty.euler();
  json rec = {{"config", config_to_json(cfg)},
              {"valid", config_valid(cfg)},
              {"euler_total", euler},
              {"descent", nullptr}};
  FiberAssignment up = minimal_config(d);
  if (g == 0 && config_valid(up))
    rec["descent"] = pullback_group_to_json(pullback_group(d, up, prof));
  emit(rec);
}

void cmd_weierstrass(const std::string& src, const std::string& match) {
  WeierstrassModel m = model_from_json(parse_json(read_source(src)));
  ModelReport rep = model_report(m);
  json rec = model_report_to_json(rep);
  rec["delta"] =
      poly_str(rational(4) * pow_poly(m.p, 3) + rational(27) * (m.q * m.q));
  try {
    JInfo ji = discriminant_and_j(m);
    rec["j_num"] = poly_str(ji.j_num);
    rec["j_den"] = poly_str(ji.j_den);
  } catch (const input_error&) {
    rec["j_constant"] = true;
  }
  emit(rec);
  if (match.empty()) return;

  Dessin d = load_dessin(match);
  std::vector<std::string> want = sorted_labels(rep.fibers);
  int extras = 0;
  for (const std::string& s : want)
    if (s == "I0*") ++extras;
  const FiberAssignment* found = nullptr;
  auto rows = enumerate_configs(d, extras);
  for (const auto& [c, r] : rows) {
    std::vector<KodairaType> types;
    for (const auto& [pt, ty] : c.fibers) types.push_back(ty);
    if (sorted_labels(types) == want) {
      found = &c;
      break;
    }
  }
  emit({{"match", found != nullptr},
        {"fibers", want},
        {"config", found ? config_to_json(*found) : json(nullptr)}});
}

void cmd_export(const std::string& src, const std::string& format) {
  Dessin d = load_dessin(src);
  if (format == "dot")
    std::cout << to_dot(d);
  else
    emit(dessin_to_json(d));
}

void cmd_reduce(const std::string& src) {
  Dessin d = load_dessin(src);
  ReduceTrace tr = reduce_graph(d);
  auto kind_str = [](MoveKind k) {
    switch (k) {
      case MoveKind::ClipTree: return "clip-tree";
      case MoveKind::SplitA6: return "split-a6";
      case MoveKind::RemoveB2: return "remove-b2";
    }
    return "unknown";
  };
  for (const ReduceMove& mv : tr.moves)
    emit({{"kind", kind_str(mv.kind)},
          {"vertex", mv.vertex},
          {"et_before", mv.et_before},
          {"et_after", mv.et_after},
          {"delta", mv.delta},
          {"mod12", mv.mod12}});
  json terminal = json::array();
  for (const TerminalComponent& t : tr.terminal)
    terminal.push_back({{"et", t.et}, {"shape", t.shape}});
  emit({{"initial_et", tr.initial_et},
        {"final_et", tr.final_et},
        {"terminal", terminal},
        {"counterexample", tr.counterexample}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monodromy toolkit for elliptic fibrations over the line"};
  app.require_subcommand(1);

  std::string in = "-", in2, format = "dot", cls = "rational", match;
  std::vector<std::string> twists;
  int index = 1, extra = 0, cusps = -1, workers = 0;
  long r_max = 1000000, et_max = -1;

  CLI::App* analyze = app.add_subcommand("analyze", "census, ET, genus, generators");
  analyze->add_option("input", in, "dessin JSON (file, inline or -)");

  CLI::App* enumerate = app.add_subcommand("enumerate", "stream index-n dessins");
  enumerate->add_option("--index", index, "index (number of points)")->required();
  bool genus0 = false, torsion_free = false, saturated = false;
  enumerate->add_flag("--genus0", genus0, "genus 0 only");
  enumerate->add_flag("--torsion-free", torsion_free, "no a2/b2 vertices");
  enumerate->add_flag("--saturated", saturated, "no a2 vertices");
  enumerate->add_option("--et", et_max, "keep ET <= bound");
  enumerate->add_option("--cusps", cusps, "exact cusp count");
  enumerate->add_option("--workers", workers, "thread count (0 = default)");

  CLI::App* classify = app.add_subcommand("classify", "surfaces with witnesses");
  classify->add_option("--class", cls, "rational | k3")
      ->check(CLI::IsMember({"rational", "k3", "K3"}));
  classify->add_option("--workers", workers, "thread count (0 = default)");

  CLI::App* lift = app.add_subcommand("lift", "valid homological invariants");
  lift->add_option("input", in, "dessin JSON (file, inline or -)");
  lift->add_option("--extra", extra, "extra I0* twist points");
  lift->add_option("--r-max", r_max, "keep configurations with r <= bound");

  CLI::App* pullback = app.add_subcommand("pullback", "base-change bookkeeping");
  pullback->add_option("dessin", in, "dessin JSON (file, inline or -)")->required();
  pullback->add_option("profile", in2, "ramification profile JSON")->required();
  pullback->add_option("--twists", twists, "preimage ids to twist (P/j)");

  CLI::App* weier = app.add_subcommand("weierstrass", "independent model oracle");
  weier->add_option("model", in, "model JSON (file, inline or -)");
  weier->add_option("--match", match, "dessin JSON to compare fiber multisets");

  CLI::App* exp = app.add_subcommand("export-dot", "AB-graph export");
  exp->add_option("input", in, "dessin JSON (file, inline or -)");
  exp->add_option("--format", format, "dot | json")
      ->check(CLI::IsMember({"dot", "json"}));

  CLI::App* reduce = app.add_subcommand("reduce", "ET reduction trace");
  reduce->add_option("input", in, "dessin JSON (file, inline or -)");

  try {
    app.parse(argc, argv);
    if (analyze->parsed()) cmd_analyze(in);
    if (enumerate->parsed())
      cmd_enumerate(index, genus0, torsion_free, saturated, et_max, cusps, workers);
    if (classify->parsed()) cmd_classify(cls, workers);
    if (lift->parsed()) cmd_lift(in, extra, r_max);
    if (pullback->parsed()) cmd_pullback(in, in2, twists);
    if (weier->parsed()) cmd_weierstrass(in, match);
    if (exp->parsed()) cmd_export(in, format);
    if (reduce->parsed()) cmd_reduce(in);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    emit({{"error", "input"}, {"message", e.what()}});
    return 1;
  } catch (const input_error& e) {
    emit({{"error", "input"}, {"message", e.what()}});
    return 1;
  } catch (const internal_error& e) {
    emit({{"error", "internal"}, {"message", e.what()}});
    return 2;
  }
  return 0;
}

// stabsym: command-line front end.
//
// Exit codes: 0 success, 2 parse error, 3 precondition violation,
// 4 search budget exhausted with an Unknown verdict.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stabsym/error.hpp"
#include "stabsym/io.hpp"

namespace {

using namespace stabsym;

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitUnknown = 4;

struct Globals {
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  double tol = kDefaultTol;
  std::string out;
  std::string format = "json";

  SearchOptions search() const { return {budget, seed, tol}; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Globals& g, const std::string& json_text, bool is_json = true) {
  std::string text = json_text;
  if (is_json && g.format == "text") text = json_to_text(json_text);
  if (!text.empty() && text.back() != '\n') text += '\n';
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw PreconditionError("cannot write " + g.out);
  f << text;
}

int verdict_exit(const StabilityVerdict& v) { return v.kind == VerdictKind::Unknown ? kExitUnknown : 0; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability of group symmetrizers on multiaffine polynomials"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed for randomized searches")->capture_default_str();
  app.add_option("--budget", g.budget, "Sample budget per search")->capture_default_str();
  app.add_option("--tol", g.tol, "Residual and half-plane tolerance")->capture_default_str();
  app.add_option("--out", g.out, "Write output to this path instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::string group_path;
  std::string poly_path;
  std::string element_path;
  std::string point_text;
  int survey_n = 0;
  std::uint64_t symbol_budget = 100000;
  int product_count = 200;

  auto* analyze = app.add_subcommand("analyze-group", "Orbit structure and homogeneity deciders");
  analyze->add_option("group", group_path, "Group file")->required();
  auto* sym = app.add_subcommand("symmetrize", "Apply T_G to a polynomial file");
  sym->add_option("group", group_path, "Group file")->required();
  sym->add_option("poly", poly_path, "Polynomial file")->required();
  auto* stab = app.add_subcommand("stability-check", "Search for a zero in the open upper half-plane");
  stab->add_option("poly", poly_path, "Polynomial file")->required();
  auto* grace = app.add_subcommand("grace-check", "Classify a group-algebra element");
  grace->add_option("element", element_path, "Element file")->required();
  auto* cex = app.add_subcommand("counterexample", "Certify that T_G fails to preserve stability");
  cex->add_option("group", group_path, "Group file")->required();
  auto* coin = app.add_subcommand("coincidence-check", "Diagonal coincidence property");
  coin->add_option("group", group_path, "Group file")->required();
  auto* survey = app.add_subcommand("survey", "Cross-check every subgroup of S_n");
  survey->add_option("n", survey_n, "Degree")->required();
  survey->add_option("--symbol-budget", symbol_budget, "Budget for the operator-symbol search")->capture_default_str();
  survey->add_option("--products", product_count, "Random certified products per group")->capture_default_str();
  auto* gws = app.add_subcommand("gws-check", "Diagonal point with the same value");
  gws->add_option("poly", poly_path, "Polynomial file")->required();
  gws->add_option("--point", point_text, "Point as re:im,re:im,...")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze) {
      const auto a = analyze_group(parse_group(read_file(group_path)));
      emit(g, to_json(a));
      return 0;
    }
    if (*sym) {
      const auto grp = parse_group(read_file(group_path));
      const auto f = parse_poly(read_file(poly_path));
      emit(g, format_poly(symmetrize(grp, f)), false);
      return 0;
    }
    if (*stab) {
      const auto v = check_stability(parse_poly(read_file(poly_path)), g.search());
      emit(g, to_json(v));
      return verdict_exit(v);
    }
    if (*grace) {
      const auto v = is_grace_like(parse_element(read_file(element_path)), g.search());
      emit(g, to_json(v));
      return verdict_exit(v);
    }
    if (*cex) {
      emit(g, to_json(counterexample(parse_group(read_file(group_path)), g.search())));
      return 0;
    }
    if (*coin) {
      const auto grp = parse_group(read_file(group_path));
      if (has_coincidence_property(grp)) {
        emit(g, R"({"coincidence-property": true, "schema_version": 1})");
        return 0;
      }
      emit(g, to_json(coincidence_counterexample(grp, g.search())));
      return 0;
    }
    if (*survey) {
      SurveyOptions opts;
      opts.symbol_budget = symbol_budget;
      opts.product_budget = g.budget;
      opts.product_count = product_count;
      opts.seed = g.seed;
      opts.tol = g.tol;
      const auto report = verify_equivalence(survey_n, opts);
      emit(g, to_json(report));
      return 0;
    }
    if (*gws) {
      const auto f = parse_poly(read_file(poly_path));
      const auto zeta = parse_point(point_text);
      emit(g, to_json(gws_witness(f, zeta, g.tol)));
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return kExitPrecondition;
  } catch (const ConvergenceError& e) {
    std::cerr << e.what() << "\n";
    return kExitUnknown;
  }
  return kExitParse;
}

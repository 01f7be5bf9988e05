#include "stabsym/io.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "stabsym/error.hpp"

namespace stabsym {

using json = nlohmann::json;
using cd = std::complex<double>;

std::string format_double(double x) {
  char buf[64];
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string strip_comment(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

/// Reads the "degree n" header and returns the remaining meaningful lines.
std::vector<std::string> read_with_degree(std::string_view text, int& degree, const char* what) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> body;
  bool have_degree = false;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    if (!have_degree) {
      std::istringstream head(line);
      std::string word;
      long n = -1;
      std::string extra;
      if (!(head >> word >> n) || word != "degree" || (head >> extra) || n < 1 || n > kMaxGroupDegree) {
        throw ParseError(std::string(what) + ": expected 'degree n' with 1 <= n <= " +
                         std::to_string(kMaxGroupDegree));
      }
      degree = static_cast<int>(n);
      have_degree = true;
      continue;
    }
    body.push_back(line);
  }
  if (!have_degree) throw ParseError(std::string(what) + ": missing 'degree n' line");
  return body;
}

Permutation parse_cycles(const std::string& text, int n) {
  try {
    return Permutation::from_cycles(text, n);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

json complex_json(cd z) { return {{"re", format_double(z.real())}, {"im", format_double(z.imag())}}; }

json rc_json(const RationalComplex& c) { return {{"re", format_rational(c.re())}, {"im", format_rational(c.im())}}; }

json points_json(const std::vector<cd>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(complex_json(z));
  return a;
}

json subset_json(Subset s) {
  json a = json::array();
  for (int v : points_of(s)) a.push_back(v + 1);
  return a;
}

json poly_json(const MultiAffine& f) {
  json terms = json::array();
  for (const auto& [s, c] : f.terms()) {
    json t = rc_json(c);
    t["vars"] = subset_json(s);
    terms.push_back(std::move(t));
  }
  return {{"nvars", f.nvars()}, {"terms", std::move(terms)}};
}

json univariate_json(const Univariate& p) {
  json out;
  out["degree"] = p.degree();
  json coeffs = json::array();
  if (p.exact()) {
    for (const auto& c : *p.exact()) coeffs.push_back(rc_json(c));
    out["exact"] = true;
  } else {
    for (const auto& c : p.coeffs()) coeffs.push_back(complex_json(c));
    out["exact"] = false;
  }
  out["coeffs"] = std::move(coeffs);
  if (p.certificate()) out["certificate"] = *p.certificate();
  return out;
}

json witness_json(const Witness& w) {
  return {{"point", points_json(w.point.coords)}, {"residual", format_double(w.residual)}, {"boundary", w.boundary}};
}

json region_json(const CircularRegion& r) {
  json out;
  if (r.kind == CircularRegion::Kind::Disk) {
    out["kind"] = "disk";
    out["center"] = complex_json(r.center);
    out["radius"] = format_double(r.radius);
  } else {
    out["kind"] = "half-plane";
    out["normal"] = complex_json(r.normal);
    out["offset"] = format_double(r.offset);
  }
  out["interior"] = r.interior;
  out["open"] = r.open;
  return out;
}

json verdict_json(const StabilityVerdict& v) {
  json out;
  out["kind"] = to_string(v.kind);
  if (v.kind == VerdictKind::CertifiedStable) out["certificate"] = v.certificate;
  if (v.witness) out["witness"] = witness_json(*v.witness);
  if (v.grace_witness) {
    const auto& g = *v.grace_witness;
    out["separated_witness"] = {
        {"region", region_json(g.region)}, {"z", points_json(g.z)}, {"w", points_json(g.w)}, {"value", format_double(g.value)}};
  }
  if (!v.roots.empty()) out["roots"] = points_json(v.roots);
  out["boundary"] = v.boundary;
  out["budget"] = v.budget;
  out["budget_used"] = v.budget_used;
  out["seed"] = v.seed;
  out["tol"] = format_double(v.tol);
  return out;
}

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(format_rational(q));
  return a;
}

json step_json(const ChainStep& step) {
  json out;
  out["op"] = step.name();
  json params;
  if (const auto* p = std::get_if<SpecializeStep>(&step.params)) {
    json assignment = json::array();
    for (const auto& [v, c] : p->assignment) {
      json a = rc_json(c);
      a["var"] = v + 1;
      assignment.push_back(std::move(a));
    }
    params["assignment"] = std::move(assignment);
  } else if (const auto* p = std::get_if<DiagonalStep>(&step.params)) {
    params["vars"] = subset_json(p->vars);
  } else if (const auto* p = std::get_if<ReciprocalStep>(&step.params)) {
    params["vars"] = subset_json(p->vars);
  } else {
    const auto& a = std::get<AffineSubstituteStep>(step.params);
    json vars = json::array();
    for (int v : a.vars) vars.push_back(v + 1);
    params["vars"] = std::move(vars);
    params["b"] = rationals_json(a.b);
    params["c"] = rationals_json(a.c);
  }
  out["params"] = std::move(params);
  if (const auto* m = std::get_if<MultiAffine>(&step.result)) {
    out["result"] = {{"multiaffine", poly_json(*m)}};
  } else {
    out["result"] = {{"univariate", univariate_json(std::get<Univariate>(step.result))}};
  }
  return out;
}

json group_json(const PermutationGroup& g) {
  json gens = json::array();
  for (const auto& s : g.generators()) gens.push_back(s.to_cycles());
  return {{"degree", g.degree()}, {"order", g.order()}, {"generators", std::move(gens)}};
}

json counterexample_json(const CounterexampleReport& r) {
  json out;
  out["group"] = group_json(r.group);
  out["kind"] = to_string(r.kind);
  out["profile"] = r.profile.counts;
  out["representative"] = subset_json(r.representative);
  json orbit = json::array();
  for (Subset s : r.orbit) orbit.push_back(subset_json(s));
  out["orbit"] = std::move(orbit);
  out["orbit_size"] = r.orbit.size();
  out["block_sizes"] = r.block_sizes;
  out["binomial_product"] = format_rational(r.binomial_product);
  if (r.kind == CounterexampleKind::CaseI) {
    out["m"] = r.m;
    out["k"] = r.k;
    if (r.newton) out["newton"] = {{"pass", r.newton->pass}, {"violated_index", r.newton->violated_index}};
  } else {
    json kept = json::array();
    for (int v : r.kept_vars) kept.push_back(v + 1);
    out["kept_vars"] = std::move(kept);
    out["p"] = r.kept_vars.size();
    out["b"] = rationals_json(r.b);
    out["c"] = rationals_json(r.c);
    out["C"] = format_rational(r.C);
    out["D"] = format_rational(r.D);
  }
  json input = poly_json(r.input_poly);
  if (r.input_poly.certificate()) input["certificate"] = *r.input_poly.certificate();
  out["input_poly"] = std::move(input);
  out["symmetrized"] = poly_json(r.symmetrized);
  json chain = json::array();
  for (const auto& s : r.chain) chain.push_back(step_json(s));
  out["chain"] = std::move(chain);
  out["terminal"] = univariate_json(r.terminal);
  out["terminal_root"] = complex_json(r.terminal_root);
  out["closed_form_ok"] = r.closed_form_ok;
  out["checks"] = r.checks;
  out["boundary_point"] = points_json(r.boundary_point);
  out["open_witness"] = r.open_witness ? witness_json(*r.open_witness) : json(nullptr);
  return out;
}

std::string dump(json j, int indent) {
  j["schema_version"] = kSchemaVersion;
  return j.dump(indent);
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Files

PermutationGroup parse_group(std::string_view text) {
  int n = 0;
  const auto lines = read_with_degree(text, n, "group file");
  std::vector<Permutation> gens;
  for (const auto& line : lines) gens.push_back(parse_cycles(line, n));
  return PermutationGroup::generate(gens, n);
}

std::string format_group(const PermutationGroup& g) {
  std::string out = "degree " + std::to_string(g.degree()) + "\n";
  for (const auto& s : g.elements()) out += s.to_cycles() + "\n";
  return out;
}

MultiAffine parse_poly(std::string_view text) {
  const json j = parse_json(text, "polynomial file");
  try {
    if (!j.is_object() || !j.contains("nvars") || !j.contains("terms")) {
      throw ParseError("polynomial file: expected keys 'nvars' and 'terms'");
    }
    const auto n = j.at("nvars").get<long>();
    if (n < 0 || n > kMaxSubsetDegree) throw ParseError("polynomial file: nvars out of range");
    MultiAffine f(static_cast<int>(n));
    std::set<Subset> seen;
    for (const auto& t : j.at("terms")) {
      Subset s = 0;
      for (const auto& v : t.at("vars")) {
        const auto idx = v.get<long>();
        if (idx < 1 || idx > n) throw ParseError("polynomial file: variable index out of range");
        if (s & bit(static_cast<int>(idx - 1))) throw ParseError("polynomial file: repeated variable in a term");
        s |= bit(static_cast<int>(idx - 1));
      }
      if (!seen.insert(s).second) throw ParseError("polynomial file: duplicate subset " + format_subset(s));
      const RationalComplex c(parse_rational(t.at("re").get<std::string>()),
                              parse_rational(t.at("im").get<std::string>()));
      f.add_term(s, c);
    }
    return f;
  } catch (const json::exception& e) {
    throw ParseError(std::string("polynomial file: ") + e.what());
  }
}

std::string format_poly(const MultiAffine& f) { return poly_json(f).dump(2) + "\n"; }

GroupAlgebraElement parse_element(std::string_view text) {
  int n = 0;
  const auto lines = read_with_degree(text, n, "element file");
  GroupAlgebraElement u(n);
  for (const auto& line : lines) {
    // The coefficient is the last two whitespace-separated fields.
    std::string rest = line;
    std::string parts[2];
    for (int k = 1; k >= 0; --k) {
      const auto end = rest.find_last_not_of(" \t");
      if (end == std::string::npos) throw ParseError("element file: expected '<cycles> <re> <im>'");
      rest.erase(end + 1);
      const auto start = rest.find_last_of(" \t");
      parts[k] = start == std::string::npos ? rest : rest.substr(start + 1);
      rest.erase(start == std::string::npos ? 0 : start);
    }
    if (rest.find_first_not_of(" \t") == std::string::npos) {
      throw ParseError("element file: missing permutation in '" + line + "'");
    }
    u.add(parse_cycles(rest, n), RationalComplex(parse_rational(parts[0]), parse_rational(parts[1])));
  }
  return u;
}

std::string format_element(const GroupAlgebraElement& u) {
  std::string out = "degree " + std::to_string(u.degree()) + "\n";
  for (const auto& [s, c] : u.coeffs()) {
    out += s.to_cycles() + " " + format_rational(c.re()) + " " + format_rational(c.im()) + "\n";
  }
  return out;
}

std::vector<cd> parse_point(std::string_view text) {
  std::vector<cd> out;
  std::string s(text);
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("point: expected 're:im' pairs, got '" + item + "'");
    try {
      std::size_t used_re = 0;
      std::size_t used_im = 0;
      const std::string re = item.substr(0, colon);
      const std::string im = item.substr(colon + 1);
      const double x = std::stod(re, &used_re);
      const double y = std::stod(im, &used_im);
      if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument("trailing characters");
      out.emplace_back(x, y);
    } catch (const std::logic_error&) {
      throw ParseError("point: malformed number in '" + item + "'");
    }
  }
  if (out.empty()) throw ParseError("point: no coordinates");
  return out;
}

// ---------------------------------------------------------------------------
// Reports

GroupAnalysis analyze_group(const PermutationGroup& g) {
  GroupAnalysis a;
  a.degree = g.degree();
  a.order = g.order();
  for (const auto& block : g.orbits().blocks) {
    std::vector<int> pts;
    for (int v : block) pts.push_back(v + 1);
    a.orbits.push_back(std::move(pts));
  }
  for (const auto& [profile, orbits] : subset_orbits_by_profile(g)) {
    GroupAnalysis::ProfileRow row;
    row.profile = profile.to_string();
    for (const auto& o : orbits) {
      row.orbit_sizes.push_back(o.size());
      row.subsets += o.size();
    }
    a.profiles.push_back(std::move(row));
  }
  for (int k = 0; k <= g.degree(); ++k) a.k_homogeneous.push_back(is_k_homogeneous(g, k));
  a.transitive = g.orbits().r() == 1;
  a.homogeneous = is_homogeneous(g);
  a.orbit_homogeneous = is_orbit_homogeneous(g);
  a.preserves_stability = preserves_stability(g);
  a.coincidence_property = has_coincidence_property(g);
  a.factorization = factorization_check(g);
  return a;
}

std::string to_json(const GroupAnalysis& a, int indent) {
  json out;
  out["degree"] = a.degree;
  out["order"] = a.order;
  out["orbits"] = a.orbits;
  json profiles = json::array();
  for (const auto& p : a.profiles) {
    profiles.push_back({{"profile", p.profile}, {"subsets", p.subsets}, {"orbit_count", p.orbit_sizes.size()},
                        {"orbit_sizes", p.orbit_sizes}});
  }
  out["profiles"] = std::move(profiles);
  json k_hom = json::array();
  for (bool b : a.k_homogeneous) k_hom.push_back(b);
  out["k-homogeneous"] = std::move(k_hom);
  out["transitive"] = a.transitive;
  out["homogeneous"] = a.homogeneous;
  out["orbit-homogeneous"] = a.orbit_homogeneous;
  out["preserves-stability"] = a.preserves_stability;
  out["coincidence-property"] = a.coincidence_property;
  out["factorization"] = a.factorization;
  return dump(std::move(out), indent);
}

std::string to_json(const StabilityVerdict& v, int indent) { return dump(verdict_json(v), indent); }

std::string to_json(const CounterexampleReport& r, int indent) { return dump(counterexample_json(r), indent); }

std::string to_json(const CoincidenceReport& r, int indent) {
  json out;
  out["coincidence-property"] = false;
  out["kind"] = to_string(r.kind);
  if (r.kind != CoincidenceReport::Kind::ChainCertificateOnly) {
    out["f"] = poly_json(r.f);
    out["point"] = points_json(r.point);
    out["residual"] = format_double(r.residual);
    out["diagonal_gap"] = format_double(r.gap);
  }
  if (r.kind == CoincidenceReport::Kind::Nontransitive) {
    out["block_a"] = subset_json(r.block_a);
    out["block_b"] = subset_json(r.block_b);
  }
  if (r.symbol_witness) out["symbol_witness"] = witness_json(*r.symbol_witness);
  if (r.delegated) out["counterexample"] = counterexample_json(*r.delegated);
  return dump(std::move(out), indent);
}

std::string to_json(const EquivalenceReport& r, int indent) {
  json out;
  out["n"] = r.n;
  out["options"] = {{"symbol_budget", r.options.symbol_budget},
                    {"product_budget", r.options.product_budget},
                    {"product_count", r.options.product_count},
                    {"seed", r.options.seed},
                    {"tol", format_double(r.options.tol)}};
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["index"] = row.index;
    j["order"] = row.order;
    j["generators"] = row.generators;
    j["orbit_sizes"] = row.orbit_sizes;
    j["transitive"] = row.transitive;
    j["homogeneous"] = row.homogeneous;
    j["orbit_homogeneous"] = row.orbit_homogeneous;
    j["factorization"] = row.factorization;
    j["symbol_witness"] = row.symbol_witness_found;
    j["symbol_budget_used"] = row.symbol_budget_used;
    if (row.orbit_homogeneous) {
      j["products_checked"] = row.products_checked;
      j["product_witnesses"] = row.product_witnesses;
    } else {
      j["counterexample_kind"] = row.counterexample_kind ? to_string(*row.counterexample_kind) : "none";
      j["counterexample_replayed"] = row.counterexample_replayed;
      j["terminal_root_im"] = format_double(row.terminal_root_im);
    }
    j["consistent"] = row.consistent;
    if (!row.note.empty()) j["note"] = row.note;
    rows.push_back(std::move(j));
  }
  out["subgroups"] = std::move(rows);
  out["subgroup_count"] = r.rows.size();
  out["oracle_disagreements"] = r.oracle_disagreements;
  out["inconsistencies"] = r.inconsistencies;
  return dump(std::move(out), indent);
}

std::string to_json(const SemigroupReport& r, int indent) {
  json out;
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"left", e.left},
                       {"right", e.right},
                       {"verdict", to_string(e.verdict)},
                       {"symbol_witness", e.symbol_witness},
                       {"separated_witness", e.separated_witness}});
  }
  out["pairs"] = std::move(entries);
  out["unstable"] = r.unstable;
  out["falsifications"] = r.falsifications;
  return dump(std::move(out), indent);
}

std::string to_json(const GwsResult& r, int indent) {
  json out;
  out["found"] = r.found;
  out["root"] = complex_json(r.root);
  out["diagonal"] = univariate_json(r.diagonal);
  return dump(std::move(out), indent);
}

namespace {

void flatten(const json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    bool scalars = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
    if (scalars) {
      out += path + ": " + j.dump() + "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out += path + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

}  // namespace

std::string json_to_text(std::string_view text) {
  std::string out;
  flatten(json::parse(text), "", out);
  return out;
}

}  // namespace stabsym

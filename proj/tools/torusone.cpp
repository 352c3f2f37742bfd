// torusone: command-line front end.
//
//   torusone validate FILE          checks of the defining data (exit 2 on failure)
//   torusone grading FILE           K0, K, generator degrees, mu, anticanonical class
//   torusone roots FILE             Demazure P-roots with witnesses
//   torusone classify FILE          semisimple roots and the type of the root system
//   torusone ring FILE              generators, relations and their degrees
//   torusone threefold FILE         normal form and family for s = 2
//   torusone surface L0 L1 L2       the surface X(l0,l1,l2)
//   torusone atlas --gorenstein-max N
//
// Every command takes --format json|md|csv (default json).
// Exit codes: 0 ok, 1 parse error, 2 invalid input, 3 cross-check
// failure, 4 enumeration limit (TORUSONE_MAX_ENUM).

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torusone/torusone.hpp"

using namespace torusone;

namespace {

struct Report {
  Json doc = Json::object();
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string set_string(const std::vector<Integer>& v) {
  std::vector<std::string> xs;
  for (const auto& x : v) xs.push_back(x.str());
  return "{" + join(xs, ",") + "}";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string matrix_string(const IntMatrix& m) {
  std::vector<std::string> rows;
  for (std::size_t a = 0; a < m.rows(); ++a) rows.push_back(to_string(m.row(a)));
  return "[" + join(rows, ",") + "]";
}

std::string selection_string(const std::vector<std::size_t>& C) {
  std::vector<std::string> xs;
  for (auto c : C) xs.push_back(std::to_string(c));
  return "(" + join(xs, ",") + ")";
}

Json integers_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(detail::integer_json(x));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const std::string& command, Report rep, const std::string& format) {
  if (format == "json") {
    rep.doc["schema_version"] = schema_version;
    rep.doc["command"] = command;
    std::cout << rep.doc.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    std::vector<std::string> h;
    for (const auto& x : rep.header) h.push_back(csv_field(x));
    std::cout << join(h, ",") << "\n";
    for (const auto& r : rep.rows) {
      std::vector<std::string> f;
      for (const auto& x : r) f.push_back(csv_field(x));
      std::cout << join(f, ",") << "\n";
    }
    return;
  }
  std::cout << "## " << command << "\n\n";
  for (const auto& [k, v] : rep.summary) std::cout << "- " << k << ": " << v << "\n";
  if (!rep.header.empty()) {
    if (!rep.summary.empty()) std::cout << "\n";
    std::cout << "| " << join(rep.header, " | ") << " |\n|";
    for (std::size_t i = 0; i < rep.header.size(); ++i) std::cout << "---|";
    std::cout << "\n";
    for (const auto& r : rep.rows) std::cout << "| " << join(r, " | ") << " |\n";
  }
}

InputDocument load_valid(const std::string& path) {
  InputDocument doc = read_document(path);
  require_valid(doc.A, doc.P);
  return doc;
}

Json root_json(const PData& P, const DemazureRoot& k) {
  Json j{{"u", to_json(k.u)}, {"alpha", to_json(k.alpha)}};
  if (k.is_vertical()) {
    j["kind"] = "vertical";
    j["k0"] = k.k0;
  } else {
    j["kind"] = "horizontal";
    j["i0"] = k.i0;
    j["i1"] = k.i1;
    j["C"] = k.C;
  }
  (void)P;
  return j;
}

// ---------------------------------------------------------------------------

Report cmd_validate(const std::string& path, int& exit_code) {
  InputDocument doc = read_document(path);
  ValidationReport v = validate(doc.A, doc.P);
  Report rep;
  rep.doc["ok"] = v.ok();
  rep.doc["minimally_presented"] = v.minimally_presented;
  Json checks = Json::array();
  rep.header = {"check", "passed", "detail"};
  for (const auto& c : v.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    rep.rows.push_back({c.name, yes_no(c.passed), c.detail});
  }
  rep.doc["checks"] = checks;
  rep.doc["input"] = to_json(doc);
  rep.summary = {{"ok", yes_no(v.ok())}, {"minimally presented", yes_no(v.minimally_presented)}};
  exit_code = v.ok() ? 0 : 2;
  return rep;
}

Report cmd_grading(const std::string& path) {
  InputDocument doc = load_valid(path);
  const PData& P = doc.P;
  GradingData g = compute_gradings(P);
  Report rep;
  IntVector anti = anticanonical_class(g, P);
  rep.doc["K0"] = group_json(g.K0);
  rep.doc["K"] = group_json(g.K);
  rep.doc["mu0"] = group_element_json(g.K0, g.mu0);
  rep.doc["muK"] = group_element_json(g.K, g.muK);
  rep.doc["anticanonical"] = group_element_json(g.K, anti);
  Json degs = Json::array();
  rep.header = {"variable", "deg K0", "deg K"};
  for (std::size_t v = 0; v < P.variable_count(); ++v) {
    degs.push_back({{"variable", P.variable_name(v)},
                    {"K0", group_element_json(g.K0, g.deg0[v])},
                    {"K", group_element_json(g.K, g.degK[v])}});
    rep.rows.push_back(
        {P.variable_name(v), format_group_element(g.K0, g.deg0[v]), format_group_element(g.K, g.degK[v])});
  }
  rep.doc["degrees"] = degs;
  rep.summary = {{"K0", g.K0.describe()},
                 {"K", g.K.describe()},
                 {"mu in K0", format_group_element(g.K0, g.mu0)},
                 {"mu in K", format_group_element(g.K, g.muK)},
                 {"anticanonical class", format_group_element(g.K, anti)}};
  return rep;
}

Report cmd_roots(const std::string& path) {
  InputDocument doc = load_valid(path);
  const PData& P = doc.P;
  PRoots pr = p_roots(P);
  Report rep;
  Json ws = Json::array();
  rep.header = {"kind", "u", "k0", "i0", "i1", "C", "alpha"};
  for (const auto& k : pr.witnesses) {
    ws.push_back(root_json(P, k));
    if (k.is_vertical())
      rep.rows.push_back({"vertical", to_string(k.u), std::to_string(k.k0), "", "", "", to_string(k.alpha)});
    else
      rep.rows.push_back({"horizontal", to_string(k.u), "", std::to_string(k.i0), std::to_string(k.i1),
                          selection_string(k.C), to_string(k.alpha)});
  }
  Json alphas = Json::array();
  std::vector<std::string> as;
  for (const auto& a : pr.alphas) {
    alphas.push_back(to_json(a));
    as.push_back(to_string(a));
  }
  bool ah = is_almost_homogeneous(P);
  rep.doc["witnesses"] = ws;
  rep.doc["roots"] = alphas;
  rep.doc["almost_homogeneous"] = ah;
  rep.summary = {{"witnesses", std::to_string(pr.witnesses.size())},
                 {"roots (Z^s-parts)", "{" + join(as, ",") + "}"},
                 {"almost homogeneous", yes_no(ah)}};
  return rep;
}

Report cmd_classify(const std::string& path) {
  InputDocument doc = load_valid(path);
  const PData& P = doc.P;
  RootSystemReport rs = classify(P);
  bool ah = is_almost_homogeneous(P);
  Report rep;
  Json ss = Json::array();
  rep.header = {"alpha", "kind", "witnesses"};
  for (const auto& x : rs.semisimple) {
    ss.push_back({{"alpha", to_json(x.alpha)},
                  {"kind", x.vertical ? "vertical" : "horizontal"},
                  {"witnesses", x.witnesses.size()}});
    rep.rows.push_back({to_string(x.alpha), x.vertical ? "vertical" : "horizontal", std::to_string(x.witnesses.size())});
  }
  Json groups = Json::array();
  for (const auto& gr : rs.vertical_part) {
    std::vector<std::string> names;
    for (auto k : gr.variables) names.push_back("S" + std::to_string(k));
    groups.push_back({{"variables", names}, {"multiplicity", gr.multiplicity()}});
  }
  Json roots = Json::array();
  for (const auto& a : rs.roots) roots.push_back(to_json(a));
  rep.doc["roots"] = roots;
  rep.doc["semisimple"] = ss;
  rep.doc["vertical_groups"] = groups;
  rep.doc["vertical_type"] = rs.vertical_type();
  rep.doc["horizontal_type"] = to_string(rs.horizontal.type);
  rep.doc["horizontal_case"] = rs.horizontal.detected_case;
  rep.doc["all_roots_semisimple"] = rs.all_roots_semisimple();
  rep.doc["almost_homogeneous"] = ah;
  rep.summary = {{"roots", std::to_string(rs.roots.size())},
                 {"semisimple roots", std::to_string(rs.semisimple.size())},
                 {"vertical type", rs.vertical_type()},
                 {"horizontal type", to_string(rs.horizontal.type)},
                 {"horizontal case", rs.horizontal.detected_case},
                 {"all roots semisimple", yes_no(rs.all_roots_semisimple())},
                 {"almost homogeneous", yes_no(ah)}};
  return rep;
}

Report cmd_ring(const std::string& path) {
  InputDocument doc = load_valid(path);
  const PData& P = doc.P;
  GradingData g = compute_gradings(P);
  auto names = P.variable_names();
  Report rep;
  Json rels = Json::array();
  std::vector<std::string> rs;
  for (const auto& r : relations(doc.A, P)) {
    std::string s = r.g.to_string(names);
    rels.push_back({{"blocks", r.triple}, {"relation", s}});
    rs.push_back(s);
  }
  Json gens = Json::array();
  rep.header = {"generator", "deg K0", "deg K"};
  for (std::size_t v = 0; v < P.variable_count(); ++v) {
    gens.push_back({{"name", names[v]},
                    {"K0", group_element_json(g.K0, g.deg0[v])},
                    {"K", group_element_json(g.K, g.degK[v])}});
    rep.rows.push_back({names[v], format_group_element(g.K0, g.deg0[v]), format_group_element(g.K, g.degK[v])});
  }
  rep.doc["A"] = to_json(doc.A);
  rep.doc["P"] = to_json(P.matrix());
  rep.doc["generators"] = gens;
  rep.doc["relations"] = rels;
  rep.doc["relation_degree"] = {{"K0", group_element_json(g.K0, g.mu0)}, {"K", group_element_json(g.K, g.muK)}};
  rep.summary = {{"P", matrix_string(P.matrix())},
                 {"relations", join(rs, "; ")},
                 {"relation degree in K", format_group_element(g.K, g.muK)}};
  return rep;
}

Report cmd_threefold(const std::string& path) {
  InputDocument doc = load_valid(path);
  const PData& P = doc.P;
  auto shape = threefold_shape(P);
  FanoThreefoldReport fr = fano_threefold_report(P);
  Report rep;
  rep.doc["shape"] = shape ? Json(to_string(shape->shape)) : Json(nullptr);
  if (shape) {
    rep.doc["normal_form"] = to_json(shape->normalized);
    rep.doc["dprime_as_listed"] = shape->dprime_as_listed;
  }
  rep.doc["family"] = fr.match ? Json(fr.match->family) : Json(nullptr);
  if (fr.match) {
    rep.doc["family_matrix"] = to_json(fr.match->normalized.matrix());
    rep.doc["parameters"] = fr.match->parameters;
  }
  rep.doc["reductive_almost_homogeneous"] = fr.reductive_almost_homogeneous;
  rep.doc["class_group_rank"] = fr.class_group_rank;
  rep.doc["unlisted"] = fr.unlisted();
  rep.summary = {{"shape", shape ? to_string(shape->shape) : "none"},
                 {"normal form", shape ? matrix_string(shape->normalized.matrix()) : "-"},
                 {"family", fr.match ? std::to_string(fr.match->family) : "none"},
                 {"parameters", fr.match ? fr.match->parameters : "-"},
                 {"reductive and almost homogeneous", yes_no(fr.reductive_almost_homogeneous)},
                 {"rk Cl(X)", std::to_string(fr.class_group_rank)},
                 {"unlisted", yes_no(fr.unlisted())}};
  return rep;
}

Report cmd_surface(long l0, long l1, long l2) {
  SurfaceTriple t = SurfaceTriple::make(l0, l1, l2);
  PData P = surface_p(t);
  SurfaceClosedForm cf = surface_roots_closed_form(P);
  std::vector<Integer> roots = surface_roots(t);
  Report rep;
  bool dp = is_del_pezzo(t), ah = is_almost_homogeneous_surface(t), lt = is_log_terminal(t);
  long iota = gorenstein_index(t);
  rep.doc["triple"] = {t.l0, t.l1, t.l2};
  rep.doc["d1"] = t.d1;
  rep.doc["d2"] = t.d2;
  rep.doc["P"] = to_json(P.matrix());
  rep.doc["del_pezzo"] = dp;
  rep.doc["almost_homogeneous"] = ah;
  rep.doc["log_terminal"] = lt;
  rep.doc["gorenstein_index"] = iota;
  rep.doc["roots"] = integers_json(roots);
  rep.doc["roots_closed_form"] = integers_json(cf.alphas);
  rep.doc["roots_enumerated"] = integers_json(surface_roots_enumerated(P));
  Json cases = Json::array();
  rep.header = {"case", "i0", "i1", "C", "alphas"};
  for (const auto& c : cf.cases) {
    cases.push_back({{"case", c.index},
                     {"i0", c.i0},
                     {"i1", c.i1},
                     {"C", c.C},
                     {"applicable", c.applicable},
                     {"alphas", integers_json(c.alphas)}});
    rep.rows.push_back({std::to_string(c.index), std::to_string(c.i0), std::to_string(c.i1), selection_string(c.C),
                        c.applicable ? set_string(c.alphas) : "n/a"});
  }
  rep.doc["cases"] = cases;
  rep.summary = {{"triple", t.to_string()},
                 {"(d1,d2)", "(" + std::to_string(t.d1) + "," + std::to_string(t.d2) + ")"},
                 {"P", matrix_string(P.matrix())},
                 {"del Pezzo", yes_no(dp)},
                 {"almost homogeneous", yes_no(ah)},
                 {"log terminal", yes_no(lt)},
                 {"Gorenstein index", std::to_string(iota)},
                 {"roots", set_string(roots)}};
  return rep;
}

Report cmd_atlas(long a_max) {
  auto rows = gorenstein_table(a_max);
  Report rep;
  Json table = Json::array();
  rep.header = {"iota", "triple", "roots"};
  for (const auto& r : rows) {
    table.push_back({{"iota", r.iota},
                     {"triple", {r.triple.l0, r.triple.l1, r.triple.l2}},
                     {"roots", integers_json(r.roots)}});
    rep.rows.push_back({std::to_string(r.iota), r.triple.to_string(), set_string(r.roots)});
  }
  rep.doc["gorenstein_max"] = a_max;
  rep.doc["rows"] = table;
  rep.summary = {{"Gorenstein index up to", std::to_string(a_max)}, {"rows", std::to_string(rows.size())}};
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automorphisms of varieties with a torus action of complexity one"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "md", "csv"}))
      ->capture_default_str();

  std::string file;
  std::vector<CLI::App*> file_cmds;
  for (const char* name : {"validate", "grading", "roots", "classify", "ring", "threefold"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("file", file, "input document (JSON)")->required();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md", "csv"}));
    file_cmds.push_back(sub);
  }
  long l0 = 0, l1 = 0, l2 = 0;
  auto* surface = app.add_subcommand("surface", "the surface X(l0,l1,l2)");
  surface->add_option("l0", l0)->required();
  surface->add_option("l1", l1)->required();
  surface->add_option("l2", l2)->required();
  surface->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md", "csv"}));
  long a_max = 1;
  auto* atlas = app.add_subcommand("atlas", "surfaces by Gorenstein index");
  atlas->add_option("--gorenstein-max", a_max, "largest Gorenstein index")->required();
  atlas->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    int exit_code = 0;
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Report rep;
    if (name == "validate")
      rep = cmd_validate(file, exit_code);
    else if (name == "grading")
      rep = cmd_grading(file);
    else if (name == "roots")
      rep = cmd_roots(file);
    else if (name == "classify")
      rep = cmd_classify(file);
    else if (name == "ring")
      rep = cmd_ring(file);
    else if (name == "threefold")
      rep = cmd_threefold(file);
    else if (name == "surface")
      rep = cmd_surface(l0, l1, l2);
    else
      rep = cmd_atlas(a_max);
    emit(name, std::move(rep), format);
    return exit_code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const CrossCheckError& e) {
    std::cerr << "cross-check failed: " << e.what() << "\n";
    return 3;
  } catch (const EnumerationLimit& e) {
    std::cerr << "enumeration limit: " << e.what() << "\n";
    return 4;
  }
}

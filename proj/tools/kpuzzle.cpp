#include "kpuzzle/io.hpp"
#include "kpuzzle/oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

using namespace kpz;

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DiagramArgs {
  std::string rule, lambda, mu, nu, y{"sym"}, z{"z"};
  int k{0}, n{0};
};

void add_box(CLI::App* c, DiagramArgs& a) {
  c->add_option("--k", a.k, "rows of the box (subspace dimension)")->required()->check(CLI::NonNegativeNumber);
  c->add_option("--n", a.n, "ambient dimension")->required()->check(CLI::PositiveNumber);
}

void add_rule(CLI::App* c, DiagramArgs& a) {
  c->add_option("--rule", a.rule, "T1 | T1d | T2 | T2d | T2dd | T3 | T3d | T3dd")->required();
  add_box(c, a);
  c->add_option("--lambda", a.lambda, "first diagram, e.g. 2,1 (empty string for the empty diagram)")->required();
  c->add_option("--mu", a.mu, "second diagram")->required();
  c->add_option("--y", a.y, "alphabet y: sym | rev | ones | comma list of n values");
  c->add_option("--z", a.z, "alphabet z (second alphabet of T2dd/T3dd): z | zrev | ones | comma list");
}

BoxContext box_of(const DiagramArgs& a) {
  BoxContext c{a.k, a.n};
  if (a.k > a.n) throw UsageError("need k <= n");
  return c;
}

Alphabets alphabets_of(const DiagramArgs& a) { return {parse_alphabet(a.y, a.n), parse_alphabet(a.z, a.n)}; }

void write_svgs(const std::string& dir, Rule rule, const YoungDiagram& l, const YoungDiagram& m, const YoungDiagram& nu,
                const std::vector<WeightedPuzzle>& ps) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::ofstream f(std::filesystem::path(dir) / svg_file_name(rule, l, m, nu, static_cast<int>(i)));
    f << render_svg(ps[i].puzzle);
  }
}

int run_groth(const DiagramArgs& a, const std::string& shape, const std::string& method, bool dual, bool json) {
  auto c = box_of(a);
  auto lam = YoungDiagram::parse(shape, c);
  auto al = parse_alphabet(a.y, a.n);
  RationalFunction g;
  if (method == "det") g = dual ? dual_groth_det(lam, al) : groth_det(lam, al);
  else if (method == "inductive") g = dual ? dual_groth(lam, al) : groth_inductive(lam, al);
  else if (method == "lattice") g = dual ? dual_groth_lattice(lam, al) : groth_lattice(lam, al);
  else throw UsageError("unknown method " + method);
  if (json)
    std::cout << nlohmann::json{{"schema", kSchemaVersion}, {"k", a.k}, {"n", a.n}, {"shape", lam.to_string()},
                                {"dual", dual}, {"method", method}, {"polynomial", g.to_string()}}
                     .dump(2)
              << '\n';
  else std::cout << g << '\n';
  return kOk;
}

int run_expand(const DiagramArgs& a, bool json, const std::string& svg_dir) {
  auto c = box_of(a);
  Rule rule = parse_rule(a.rule);
  auto lam = YoungDiagram::parse(a.lambda, c), mu = YoungDiagram::parse(a.mu, c);
  auto al = alphabets_of(a);
  std::vector<std::pair<YoungDiagram, RationalFunction>> terms;
  for (auto& nu : diagrams_in_box(c)) {
    auto r = coefficient_detail(CoeffQuery{rule, lam, mu, nu, al});
    if (!svg_dir.empty() && !r.puzzles.empty()) write_svgs(svg_dir, rule, lam, mu, nu, r.puzzles);
    terms.emplace_back(nu, r.value);
  }
  if (json) {
    std::cout << expansion_to_json(rule, lam, mu, terms).dump(2) << '\n';
    return kOk;
  }
  for (auto& [nu, v] : terms)
    if (!v.is_zero()) std::cout << nu.label() << ": " << v << '\n';
  return kOk;
}

int run_coeff(const DiagramArgs& a, bool json, const std::string& svg_dir) {
  auto c = box_of(a);
  Rule rule = parse_rule(a.rule);
  auto lam = YoungDiagram::parse(a.lambda, c), mu = YoungDiagram::parse(a.mu, c), nu = YoungDiagram::parse(a.nu, c);
  auto r = coefficient_detail(CoeffQuery{rule, lam, mu, nu, alphabets_of(a)});
  if (!svg_dir.empty()) write_svgs(svg_dir, rule, lam, mu, nu, r.puzzles);
  if (json)
    std::cout << nlohmann::json{{"schema", kSchemaVersion}, {"rule", rule_name(rule)}, {"k", a.k}, {"n", a.n},
                                {"lambda", lam.to_string()}, {"mu", mu.to_string()}, {"nu", nu.to_string()},
                                {"puzzles", r.puzzles.size()}, {"value", r.value.to_string()}}
                     .dump(2)
              << '\n';
  else std::cout << r.value << '\n';
  return kOk;
}

int run_puzzles(const DiagramArgs& a, bool json, const std::string& svg_dir) {
  auto c = box_of(a);
  Rule rule = parse_rule(a.rule);
  auto lam = YoungDiagram::parse(a.lambda, c), mu = YoungDiagram::parse(a.mu, c), nu = YoungDiagram::parse(a.nu, c);
  auto r = coefficient_detail(CoeffQuery{rule, lam, mu, nu, alphabets_of(a)});
  if (!svg_dir.empty()) write_svgs(svg_dir, rule, lam, mu, nu, r.puzzles);
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& wp : r.puzzles) arr.push_back(puzzle_to_json(wp.puzzle, wp.weight));
    std::cout << nlohmann::json{{"schema", kSchemaVersion}, {"rule", rule_name(rule)}, {"puzzles", arr},
                                {"sum", r.value.to_string()}}
                     .dump(2)
              << '\n';
    return kOk;
  }
  std::cout << r.puzzles.size() << " puzzle(s)\n";
  for (std::size_t i = 0; i < r.puzzles.size(); ++i)
    std::cout << '#' << i << "  K-tiles " << r.puzzles[i].k_tiles << "  weight " << r.puzzles[i].weight << '\n';
  std::cout << "sum " << r.value << '\n';
  return kOk;
}

int run_verify_ybe(bool json) {
  auto r1 = ybe_check_rank1();
  auto r2 = ybe_check_rank2();
  if (json)
    std::cout << nlohmann::json{{"schema", kSchemaVersion},
                                {"rank1", {{"components", r1.components}, {"mismatches", r1.mismatches}}},
                                {"rank2", {{"components", r2.components}, {"mismatches", r2.mismatches}}}}
                     .dump(2)
              << '\n';
  else {
    std::cout << "rank-1 " << r1.components << " components: " << (r1.ok() ? "pass" : "FAIL") << '\n';
    std::cout << "rank-2 " << r2.components << " components: " << (r2.ok() ? "pass" : "FAIL") << '\n';
  }
  return r1.ok() && r2.ok() ? kOk : kFail;
}

std::pair<int, int> parse_box(const std::string& s) {
  auto x = s.find('x');
  if (x == std::string::npos) throw UsageError("--maxbox expects HxW");
  try {
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
  } catch (const std::exception&) {
    throw UsageError("--maxbox expects HxW");
  }
}

int run_verify_cross(const std::string& rule_s, int k, const std::string& maxbox, int n, bool complement,
                     std::uint64_t seed, bool json) {
  Rule rule = parse_rule(rule_s);
  auto [h, w] = parse_box(maxbox);
  if (h > k || h < 0 || w < 0) throw UsageError("--maxbox height must be at most k");
  auto small = diagrams_within(BoxContext{k, k + w}, h, w);
  CrossOptions opt{n, complement ? Parametrization::Complement : Parametrization::Literal, seed};
  bool all = true;
  nlohmann::json rows = nlohmann::json::array();
  if (!json) {
    std::cout << std::setw(8) << "lam\\mu";
    for (auto& m : small) std::cout << std::setw(8) << m.label();
    std::cout << '\n';
  }
  for (auto& l : small) {
    if (!json) std::cout << std::setw(8) << l.label();
    for (auto& m : small) {
      auto r = cross_check(rule, l, m, opt);
      all = all && r.ok();
      if (json)
        rows.push_back({{"lambda", l.to_string()}, {"mu", m.to_string()}, {"n", r.n}, {"compared", r.compared},
                        {"mismatches", r.mismatches}, {"pass", r.ok()}});
      else std::cout << std::setw(8) << (r.ok() ? "pass" : "FAIL");
    }
    if (!json) std::cout << '\n';
  }
  if (json)
    std::cout << nlohmann::json{{"schema", kSchemaVersion}, {"rule", rule_name(rule)}, {"k", k},
                                {"parametrization", complement ? "complement" : "literal"}, {"cells", rows},
                                {"pass", all}}
                     .dump(2)
              << '\n';
  return all ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant K-theory puzzles for Grassmannians"};
  app.require_subcommand(1);
  bool json = false;
  std::string svg_dir;

  DiagramArgs g;
  std::string g_shape, g_method{"det"};
  bool g_dual = false;
  auto* groth = app.add_subcommand("groth", "print a (dual) double Grothendieck polynomial");
  add_box(groth, g);
  groth->add_option("--shape,--lambda", g_shape, "diagram, e.g. 2,1")->required();
  groth->add_flag("--dual", g_dual, "dual Grothendieck polynomial");
  groth->add_option("--y", g.y, "alphabet: sym | rev | ones | comma list of n values");
  groth->add_option("--method", g_method, "det | inductive | lattice")->check(CLI::IsMember({"det", "inductive", "lattice"}));
  groth->add_flag("--json", json, "machine-readable output");

  DiagramArgs e;
  auto* expand_cmd = app.add_subcommand("expand", "nonzero structure constants of a product");
  add_rule(expand_cmd, e);
  expand_cmd->add_flag("--json", json, "machine-readable output");
  expand_cmd->add_option("--render-svg", svg_dir, "write one SVG per puzzle into DIR");

  DiagramArgs q;
  auto* coeff_cmd = app.add_subcommand("coeff", "one structure constant as a puzzle sum");
  add_rule(coeff_cmd, q);
  coeff_cmd->add_option("--nu", q.nu, "target diagram")->required();
  coeff_cmd->add_flag("--json", json, "machine-readable output");
  coeff_cmd->add_option("--render-svg", svg_dir, "write one SVG per puzzle into DIR");

  DiagramArgs pz;
  auto* puzzles_cmd = app.add_subcommand("puzzles", "list the puzzles of one structure constant");
  add_rule(puzzles_cmd, pz);
  puzzles_cmd->add_option("--nu", pz.nu, "target diagram")->required();
  puzzles_cmd->add_flag("--json", json, "puzzles as JSON records");
  puzzles_cmd->add_option("--render-svg", svg_dir, "write one SVG per puzzle into DIR");

  auto* verify = app.add_subcommand("verify", "self-checks; exit 1 on failure");
  verify->require_subcommand(1);
  auto* ybe = verify->add_subcommand("ybe", "Yang-Baxter equations, rank 1 and rank 2");
  ybe->add_flag("--json", json, "machine-readable output");
  std::string c_rule, c_box{"2x2"};
  int c_k = 2, c_n = 0;
  bool c_complement = false;
  std::uint64_t c_seed = 7;
  auto* cross = verify->add_subcommand("cross", "puzzle coefficients against the oracle, pass/fail matrix");
  cross->add_option("--rule", c_rule, "rule")->required();
  cross->add_option("--k", c_k, "rows of the box")->check(CLI::PositiveNumber);
  cross->add_option("--maxbox", c_box, "range of lambda, mu as HxW");
  cross->add_option("--n", c_n, "ambient dimension (default: stability bound per pair)");
  cross->add_flag("--complement", c_complement, "use lambda*, mu* (stable form of dual products)");
  cross->add_option("--seed", c_seed, "random point for numeric oracles");
  cross->add_flag("--json", json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);
    std::cerr << "error: " << err.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*groth) return run_groth(g, g_shape, g_method, g_dual, json);
    if (*expand_cmd) return run_expand(e, json, svg_dir);
    if (*coeff_cmd) return run_coeff(q, json, svg_dir);
    if (*puzzles_cmd) return run_puzzles(pz, json, svg_dir);
    if (*ybe) return run_verify_ybe(json);
    if (*cross) return run_verify_cross(c_rule, c_k, c_box, c_n, c_complement, c_seed, json);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kFail;
  }
  return kUsage;
}

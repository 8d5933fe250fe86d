#include "kpuzzle/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace kpz;

namespace {

YoungDiagram D(const char* s, BoxContext c) { return YoungDiagram::parse(s, c); }
RationalFunction R(const char* s) { return parse_rational(s); }

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = t < budget_s;
  bool ok = o.ok && in_time;
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s  [%.2f s / %.0f s%s]\n", id, ok ? "PASS" : "FAIL", o.detail.c_str(), t, budget_s,
              in_time ? "" : ", over budget");
  std::fflush(stdout);
}

Outcome yang_baxter() {
  auto r1 = ybe_check_rank1(), r2 = ybe_check_rank2();
  std::ostringstream s;
  s << "Yang-Baxter rank-1 " << r1.components - r1.mismatches << '/' << r1.components << ", rank-2 "
    << r2.components - r2.mismatches << '/' << r2.components;
  return {r1.ok() && r2.ok() && r1.components == 64 && r2.components == 729, s.str()};
}

Outcome constructions() {
  BoxContext c{2, 5};
  auto y = alphabet_y(5);
  int n = 0, bad = 0;
  for (auto& l : diagrams_within(c, 2, 3)) {
    auto a = groth_det(l, y);
    if (!(groth_inductive(l, y) == a) || !(groth_lattice(l, y) == a)) ++bad;
    ++n;
  }
  return {bad == 0 && n == 10, "inductive = determinant = lattice for " + std::to_string(n - bad) + '/' +
                                   std::to_string(n) + " diagrams in the 2x3 box, n=5"};
}

Outcome dual_nonequivariant() {
  BoxContext c{2, 4};
  const char* nus[] = {"2,1", "2", "1,1", "1"};
  const long want[] = {1, -1, -1, 1};
  std::size_t puzzles = 0;
  bool ok = true;
  std::string got;
  for (int i = 0; i < 4; ++i) {
    auto r = coefficient_detail({Rule::T1d, D("2,2", c), D("2,1", c), D(nus[i], c), std::nullopt});
    puzzles += r.puzzles.size();
    ok = ok && r.value == RationalFunction(want[i]);
    got += (i ? "," : "") + r.value.to_string();
  }
  for (auto& nu : diagrams_in_box(c)) {
    bool listed = false;
    for (auto s : nus) listed = listed || nu == D(s, c);
    if (!listed) ok = ok && coefficient(Rule::T1d, D("2,2", c), D("2,1", c), nu).is_zero();
  }
  return {ok && puzzles == 4,
          "G_(2,2)G_(2,1): " + std::to_string(puzzles) + " puzzles, coefficients (" + got + ")"};
}

Outcome printed_examples() {
  BoxContext c5{2, 5}, c4{2, 4};
  std::ostringstream s;
  bool ok = true;
  auto check = [&](const char* name, CoeffResult r, std::size_t puzzles, const RationalFunction& want) {
    bool good = r.puzzles.size() == puzzles && r.value == want;
    ok = ok && good;
    s << name << ' ' << r.puzzles.size() << (good ? " ok" : " MISMATCH") << "; ";
  };
  check("T2 (2)(1)", coefficient_detail({Rule::T2, D("2", c5), D("1", c5), D("3,1", c5), std::nullopt}), 1,
        R("-y4/y2"));
  check("T2 (1)(2)", coefficient_detail({Rule::T2, D("1", c5), D("2", c5), D("3,1", c5), std::nullopt}), 1,
        R("-y4/y2"));
  check("T2 (2)(2,1)", coefficient_detail({Rule::T2, D("2", c5), D("2,1", c5), D("3,2", c5), std::nullopt}), 2,
        R("y4/(y1*y3)*(-y1 + y4 + y5)"));
  check("T2'", coefficient_detail({Rule::T2d, D("3,1", c5), D("3,2", c5), D("2", c5), std::nullopt}), 6,
        R("-(y1/(y3*y5^2))*(y1*y4 + y2*y4 - y5*y4 + y1*y5 + y2*y5)"));
  check("T2''", coefficient_detail({Rule::T2dd, D("3,1", c5), D("2,2", c5), D("1,1", c5), std::nullopt}), 5,
        R("y2^2*y3*y4/(z2*z3*z4*z5^2)*(y2 + y3 + y4 - z3 - z4 - z5)"));
  // G^(1)(y) G^(1)(y reversed)
  std::map<YoungDiagram, RationalFunction> t3 = {
      {D("1", c4), R("1 - y4/y1")}, {D("2", c4), R("y4/y1")}, {D("1,1", c4), R("y4/y1")}, {D("2,1", c4), R("-y4/y1")}};
  std::size_t puzzles = 0;
  bool t3ok = true;
  for (auto& nu : diagrams_in_box(c4)) {
    auto r = coefficient_detail({Rule::T3, D("1", c4), D("1", c4), nu, std::nullopt});
    puzzles += r.puzzles.size();
    auto it = t3.find(nu);
    t3ok = t3ok && r.value == (it == t3.end() ? RationalFunction(0) : it->second);
  }
  t3ok = t3ok && puzzles == 6;
  ok = ok && t3ok;
  s << "T3 " << puzzles << (t3ok ? " ok" : " MISMATCH");
  return {ok, "puzzle counts and sums: " + s.str()};
}

Outcome oracle_cross_check() {
  BoxContext small{2, 4};
  auto box = diagrams_within(small, 2, 2);
  struct Run {
    Rule rule;
    Parametrization param;
  };
  const Run runs[] = {{Rule::T1, Parametrization::Literal},
                      {Rule::T2, Parametrization::Literal},
                      {Rule::T2d, Parametrization::Literal},
                      {Rule::T2dd, Parametrization::Complement}};
  std::ostringstream s;
  bool ok = true;
  for (auto& run : runs) {
    int pass = 0, total = 0, compared = 0;
    for (auto& l : box)
      for (auto& m : box) {
        auto r = cross_check(run.rule, l, m, {0, run.param, 7});
        ++total;
        compared += r.compared;
        if (r.ok()) ++pass;
      }
    ok = ok && pass == total;
    s << rule_name(run.rule) << (run.param == Parametrization::Complement ? "*" : "") << ' ' << pass << '/' << total
      << " (" << compared << " coefficients); ";
  }
  return {ok, "puzzles = oracle at the stability bound: " + s.str() + "* = complemented, numeric point"};
}

Outcome frozen_halves() {
  int checked = 0, bad = 0;
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= std::min(2, n); ++k) {
      BoxContext c{k, n};
      auto z = alphabet_z(n);
      YoungDiagram e({}, c);
      auto box = diagrams_in_box(c);
      // top half with one side empty: unique puzzle iff the diagonal equals the other side, weight 1
      for (auto& mu : box)
        for (auto& s : box)
          for (bool left_empty : {true, false}) {
            auto r = evaluate_setup(left_empty ? split_top_setup(e, mu, s, z) : split_top_setup(mu, e, s, z), false);
            bool good = s == mu ? r.puzzles.size() == 1 && r.value == RationalFunction(1) : r.puzzles.empty();
            ++checked;
            if (!good) ++bad;
          }
      // bottom half with one side empty: unique puzzle iff sigma* |> nu, frozen monomial weight
      for (auto& s : box)
        for (auto& nu : box)
          for (bool rho_empty : {true, false}) {
            auto setup = rho_empty ? split_bottom_setup(s, nu, e, z) : split_bottom_setup(s, e, nu, z);
            auto r = evaluate_setup(setup, false);
            auto want = rho_empty ? split_bottom_formula(s, nu, e, z) : split_bottom_formula(s, e, nu, z);
            bool good = strip_rel(s.dual(), nu) ? r.puzzles.size() == 1 && r.value == want : r.puzzles.empty();
            ++checked;
            if (!good) ++bad;
          }
    }
  return {bad == 0, "frozen half-lozenges " + std::to_string(checked - bad) + '/' + std::to_string(checked) +
                        " for k <= 2, n <= 5"};
}

Outcome strip_sum() {
  auto z = alphabet_z(5);
  int n = 0, bad = 0;
  for (auto& mu : diagrams_within({2, 5}, 2, 2)) {
    auto [lhs, rhs] = strip_identity(mu, z);
    if (!(lhs == rhs)) ++bad;
    ++n;
  }
  return {bad == 0, "strip-sum identity " + std::to_string(n - bad) + '/' + std::to_string(n) + " in the 2x2 box, n=5"};
}

Outcome commutativity() {
  BoxContext c{2, 5};
  auto box = diagrams_within(c, 2, 2);
  int n = 0, bad = 0;
  for (auto& l : box)
    for (auto& m : box)
      for (auto& nu : diagrams_in_box(c)) {
        ++n;
        if (!(coefficient(Rule::T2, l, m, nu) == coefficient(Rule::T2, m, l, nu))) ++bad;
      }
  return {bad == 0, "T2 c(l,m,nu) = c(m,l,nu) " + std::to_string(n - bad) + '/' + std::to_string(n) + ", n=5"};
}

Outcome tree() {
  BoxContext c{2, 5};
  auto v = tree_expectation(caterpillar(c, std::vector<YoungDiagram>(6, D("1", c))));
  return {v == RationalFunction(5), "caterpillar <(G^(1))^6> in K(Gr(2,5)) = " + v.to_string()};
}

Outcome tiles() {
  const auto& cat = catalogue();
  bool rows = true;
  for (auto k : {RKind::A, RKind::B, RKind::C}) rows = rows && cat.rows.at(k).entries.size() == 11;
  std::ostringstream s;
  s << "tiles: " << cat.up.size() << " up, " << cat.down.size() << " down, rhombus rows " << cat.rows.at(RKind::A).entries.size()
    << '/' << cat.rows.at(RKind::B).entries.size() << '/' << cat.rows.at(RKind::C).entries.size();
  return {cat.up.size() == 7 && cat.down.size() == 6 && rows, s.str()};
}

}  // namespace

int main() {
  criterion(1, 10, yang_baxter);
  criterion(2, 30, constructions);
  criterion(3, 1, dual_nonequivariant);
  criterion(4, 10, printed_examples);
  criterion(5, 180, oracle_cross_check);
  criterion(6, 30, frozen_halves);
  criterion(7, 10, strip_sum);
  criterion(8, 30, commutativity);
  criterion(9, 5, tree);
  criterion(10, 1, tiles);
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}

#pragma once

#include "puzzle.hpp"

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace kpz {

enum class Rule { T1, T1d, T2, T2d, T2dd, T3, T3d, T3dd };

inline const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> r = {Rule::T1, Rule::T1d, Rule::T2, Rule::T2d,
                                      Rule::T2dd, Rule::T3, Rule::T3d, Rule::T3dd};
  return r;
}

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::T1: return "T1";
    case Rule::T1d: return "T1d";
    case Rule::T2: return "T2";
    case Rule::T2d: return "T2d";
    case Rule::T2dd: return "T2dd";
    case Rule::T3: return "T3";
    case Rule::T3d: return "T3d";
    case Rule::T3dd: return "T3dd";
  }
  return "?";
}

inline Rule parse_rule(const std::string& s) {
  for (Rule r : all_rules())
    if (s == rule_name(r)) return r;
  throw std::invalid_argument("unknown rule " + s);
}

inline bool is_dual_rule(Rule r) { return r == Rule::T1d || r == Rule::T2d || r == Rule::T3d; }
inline bool is_lozenge_rule(Rule r) { return r == Rule::T2dd || r == Rule::T3dd; }
inline bool is_counting_rule(Rule r) { return r == Rule::T1 || r == Rule::T1d; }

// Secondary alphabets: y for every rule, z for the lozenge rules.
struct Alphabets {
  Alphabet y;
  Alphabet z;
  static Alphabets symbolic(int n) { return {alphabet_y(n), alphabet_z(n)}; }
};

struct CoeffQuery {
  Rule rule;
  YoungDiagram lambda, mu, nu;
  std::optional<Alphabets> alphabets;  // symbolic y, z when absent
};

// Domain, boundary and weights realising one rule.
struct RuleSetup {
  Domain domain;
  std::vector<SideSpec> sides;
  WeightScheme scheme;
  int sign{1};  // counting rules: (-1)^{K-tile count}, fixed by the diagrams
};

inline RuleSetup rule_setup(Rule rule, const YoungDiagram& lam, const YoungDiagram& mu, const YoungDiagram& nu,
                            const Alphabets& al) {
  BoxContext c = lam.context();
  if (!(mu.context() == c) || !(nu.context() == c)) throw std::invalid_argument("diagrams from different boxes");
  const int n = c.n, k = c.k;
  YoungDiagram empty({}, c);
  auto parity = [](int e) { return (e % 2 == 0) ? 1 : -1; };
  switch (rule) {
    case Rule::T1:
      return {Domain(Shape::TriUp, n),
              {{"left", lam, false}, {"right", mu, false}, {"bottom", nu, false}},
              {WeightTable::Standard, CoordRule::UpTriangle, alphabet_ones(2 * n), alphabet_ones(2 * n)},
              parity(nu.size() - lam.size() - mu.size())};
    case Rule::T1d:
      return {Domain(Shape::TriDown, n),
              {{"left", lam, false}, {"right", mu, false}, {"top", nu, false}},
              {WeightTable::Standard, CoordRule::DownTriangle, alphabet_ones(2 * n), alphabet_ones(2 * n)},
              parity(lam.size() + mu.size() - nu.size() - k * (n - k))};
    case Rule::T2:
      return {Domain(Shape::TriUp, n),
              {{"left", lam, false}, {"right", mu, false}, {"bottom", nu, false}},
              {WeightTable::Standard, CoordRule::UpTriangle, al.y, al.y}};
    case Rule::T2d:
      return {Domain(Shape::TriDown, n),
              {{"left", lam, false}, {"right", mu, false}, {"top", nu, false}},
              {WeightTable::Standard, CoordRule::DownTriangle, al.y, al.y}};
    case Rule::T2dd:
      return {Domain(Shape::Lozenge, n),
              {{"tl", nu, false}, {"tr", empty, false}, {"br", mu, false}, {"bl", lam, false}},
              {WeightTable::Standard, CoordRule::LozengeStandard, al.y, al.z}};
    case Rule::T3:
      return {Domain(Shape::TriUp, n),
              {{"right", lam, false}, {"bottom", mu, true}, {"left", nu, true}},
              {WeightTable::Modified, CoordRule::UpTriangle, al.y, al.y}};
    case Rule::T3d:
      return {Domain(Shape::TriDown, n),
              {{"left", lam, false}, {"top", mu, true}, {"right", nu, true}},
              {WeightTable::Modified, CoordRule::DownTriangle, al.y, al.y}};
    case Rule::T3dd:
      return {Domain(Shape::Lozenge, n),
              {{"tl", mu, true}, {"tr", empty, false}, {"br", nu, true}, {"bl", lam, false}},
              {WeightTable::Modified, CoordRule::LozengeModified, al.y, al.z}};
  }
  throw std::logic_error("unhandled rule");
}

struct WeightedPuzzle {
  Puzzle puzzle;
  RationalFunction weight;
  int k_tiles;
};

struct CoeffResult {
  RationalFunction value;
  std::vector<WeightedPuzzle> puzzles;
};

inline Alphabets resolve_alphabets(const CoeffQuery& q) {
  return q.alphabets ? *q.alphabets : Alphabets::symbolic(q.lambda.n());
}

// Enumerates the setup's puzzles; counting setups drop equivariant puzzles
// (1 - w = 0 at w = 1) and weigh the rest by the sign.
inline CoeffResult evaluate_setup(const RuleSetup& setup, bool counting) {
  auto bd = encode_boundary(setup.domain, setup.sides);
  CoeffResult r{RationalFunction(0), {}};
  for (auto& p : enumerate(setup.domain, bd)) {
    if (counting && equivariant_count(setup.domain, p) > 0) continue;
    int kt = k_tile_count(setup.domain, p);
    RationalFunction w = counting ? RationalFunction(setup.sign) : weight(setup.domain, p, setup.scheme);
    r.value += w;
    r.puzzles.push_back({std::move(p), std::move(w), kt});
  }
  return r;
}

inline CoeffResult coefficient_detail(const CoeffQuery& q) {
  return evaluate_setup(rule_setup(q.rule, q.lambda, q.mu, q.nu, resolve_alphabets(q)), is_counting_rule(q.rule));
}

// Coefficient with every alphabet entry evaluated at pt; avoids expanding large weights.
inline mpq_class coefficient_at(const CoeffQuery& q, const Point& pt) {
  auto setup = rule_setup(q.rule, q.lambda, q.mu, q.nu, resolve_alphabets(q));
  auto bd = encode_boundary(setup.domain, setup.sides);
  auto eval = [&](const Alphabet& a) {
    std::vector<mpq_class> v;
    for (auto& e : a) v.push_back(e.evaluate(pt));
    return v;
  };
  auto numer = eval(setup.scheme.numer), denom = eval(setup.scheme.denom);
  const bool counting = is_counting_rule(q.rule);
  mpq_class total(0);
  for (auto& p : enumerate(setup.domain, bd)) {
    if (counting) {
      if (equivariant_count(setup.domain, p) == 0) total += setup.sign;
    } else {
      total += weight_at(setup.domain, p, setup.scheme, numer, denom);
    }
  }
  return total;
}

// T1: (-1)^{|nu|-|lambda|-|mu|} x #puzzles; T1d: (-1)^{|lambda|+|mu|-|nu|-k(n-k)} x #puzzles;
// others: sum of puzzle weights.
inline RationalFunction coefficient(const CoeffQuery& q) { return coefficient_detail(q).value; }

inline RationalFunction coefficient(Rule rule, const YoungDiagram& lam, const YoungDiagram& mu, const YoungDiagram& nu,
                                    std::optional<Alphabets> al = std::nullopt) {
  return coefficient(CoeffQuery{rule, lam, mu, nu, std::move(al)});
}

// All nu in the box with their coefficients (zeros included).
inline std::vector<std::pair<YoungDiagram, RationalFunction>> expand(Rule rule, const YoungDiagram& lam,
                                                                     const YoungDiagram& mu,
                                                                     std::optional<Alphabets> al = std::nullopt) {
  std::vector<std::pair<YoungDiagram, RationalFunction>> out;
  for (auto& nu : diagrams_in_box(lam.context())) out.emplace_back(nu, coefficient(rule, lam, mu, nu, al));
  return out;
}

// ---------------------------------------------------------------------------
// Splitting a lozenge along its horizontal diagonal
// ---------------------------------------------------------------------------
//
// Four-diagram lozenge with one alphabet z on both sides: tl = lambda and
// tr = mu read forward, br = nu and bl = rho read reversed. Its top half is an
// up triangle (lambda, mu; sigma on the diagonal), its bottom half a down
// triangle (sigma; nu, rho).

inline RuleSetup split_lozenge_setup(const YoungDiagram& lam, const YoungDiagram& mu, const YoungDiagram& nu,
                                     const YoungDiagram& rho, const Alphabet& z) {
  const int n = lam.n();
  return {Domain(Shape::Lozenge, n),
          {{"tl", lam, false}, {"tr", mu, false}, {"br", nu, true}, {"bl", rho, true}},
          {WeightTable::Standard, CoordRule::LozengeStandard, z, z}};
}

inline RuleSetup split_top_setup(const YoungDiagram& lam, const YoungDiagram& mu, const YoungDiagram& sigma,
                                 const Alphabet& z) {
  const int n = lam.n();
  return {Domain(Shape::TriUp, n),
          {{"left", lam, false}, {"right", mu, false}, {"bottom", sigma, false}},
          {WeightTable::Standard, CoordRule::UpTriangle, z, z}};
}

inline RuleSetup split_bottom_setup(const YoungDiagram& sigma, const YoungDiagram& nu, const YoungDiagram& rho,
                                    const Alphabet& z) {
  const int n = sigma.n();
  return {Domain(Shape::TriDown, n),
          {{"top", sigma, false}, {"right", nu, true}, {"left", rho, true}},
          {WeightTable::Standard, CoordRule::DownTriangle, z, z}};
}

// Frozen bottom half for rho = empty or nu = empty:
// (-1)^{|sigma*| - |rho| - |nu|} prod_{i in sigma} z_i prod_{i = n-k+1}^{n} z_i^{-1}.
inline RationalFunction split_bottom_formula(const YoungDiagram& sigma, const YoungDiagram& nu,
                                             const YoungDiagram& rho, const Alphabet& z) {
  const int n = sigma.n(), k = sigma.k();
  int e = sigma.dual().size() - rho.size() - nu.size();
  RationalFunction r(e % 2 == 0 ? 1 : -1);
  for (int i : sigma.frame()) r *= z[i - 1];
  for (int i = n - k + 1; i <= n; ++i) r /= z[i - 1];
  return r;
}

// Diagonal edges of a lozenge puzzle read as a diagram (green = in the frame);
// std::nullopt unless every edge carries exactly one colour.
inline std::optional<YoungDiagram> midline_diagram(const Domain& d, const Puzzle& p, int k) {
  std::vector<int> f;
  auto mid = d.midline();
  for (int a = 0; a < static_cast<int>(mid.size()); ++a) {
    Edge e = cell_edge(d, p, mid[a].cell, mid[a].edge);
    if (e == Green) f.push_back(a + 1);
    else if (e != Red) return std::nullopt;
  }
  if (static_cast<int>(f.size()) != k) return std::nullopt;
  return YoungDiagram::from_frame(f, BoxContext{k, d.n()});
}

// n >= 2(k + w(mu) + w(lambda) + h(lambda)) guarantees stable puzzle coefficients.
inline int stability_bound(const YoungDiagram& lam, const YoungDiagram& mu, int k) {
  return 2 * (k + mu.width() + lam.width() + lam.height());
}

// ---------------------------------------------------------------------------
// Trees of non-equivariant vertices
// ---------------------------------------------------------------------------
//
// Black vertices are up-triangle puzzles, white vertices down-triangle puzzles.
// With all three edges incoming (clockwise order a, b, c) a black vertex is
// c^{a,b}_{c*} and a white one c_{a,b}^{c*}. An internal edge carries sigma at
// its first end and sigma* at its second; the tree computes
// < prod G^{leaves} (x_1...x_k)^{1 + #white} >.

struct TreeEdge {
  std::optional<YoungDiagram> leaf;  // set for external edges
};

struct TreeVertex {
  bool white{false};
  std::array<int, 3> edges{};  // edge indices, clockwise
};

struct Tree {
  BoxContext ctx;
  std::vector<TreeEdge> edges;
  std::vector<TreeVertex> vertices;
};

inline RationalFunction tree_expectation(const Tree& t) {
  auto box = diagrams_in_box(t.ctx);
  std::vector<int> internal;
  for (int e = 0; e < static_cast<int>(t.edges.size()); ++e)
    if (!t.edges[e].leaf) internal.push_back(e);
  // First vertex slot meeting each internal edge sees sigma, the second sigma*.
  std::map<int, std::pair<int, int>> ends;  // edge -> (vertex, slot) of first end
  for (int v = 0; v < static_cast<int>(t.vertices.size()); ++v)
    for (int s = 0; s < 3; ++s) {
      int e = t.vertices[v].edges[s];
      if (!t.edges[e].leaf && !ends.count(e)) ends[e] = {v, s};
    }
  std::map<std::tuple<bool, YoungDiagram, YoungDiagram, YoungDiagram>, RationalFunction> memo;
  auto vertex_value = [&](bool white, const YoungDiagram& a, const YoungDiagram& b, const YoungDiagram& c) {
    auto key = std::make_tuple(white, a, b, c);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto v = coefficient(white ? Rule::T1d : Rule::T1, a, b, c.dual());
    memo.emplace(key, v);
    return v;
  };
  std::vector<int> choice(internal.size(), 0);
  RationalFunction total(0);
  while (true) {
    std::map<int, const YoungDiagram*> sigma;
    for (std::size_t q = 0; q < internal.size(); ++q) sigma[internal[q]] = &box[choice[q]];
    RationalFunction term(1);
    for (int v = 0; v < static_cast<int>(t.vertices.size()) && !term.is_zero(); ++v) {
      std::array<YoungDiagram, 3> lab;
      for (int s = 0; s < 3; ++s) {
        int e = t.vertices[v].edges[s];
        if (t.edges[e].leaf) lab[s] = *t.edges[e].leaf;
        else lab[s] = ends[e] == std::make_pair(v, s) ? *sigma[e] : sigma[e]->dual();
      }
      term *= vertex_value(t.vertices[v].white, lab[0], lab[1], lab[2]);
    }
    total += term;
    std::size_t q = 0;
    while (q < choice.size() && ++choice[q] == static_cast<int>(box.size())) choice[q++] = 0;
    if (q == choice.size()) break;
  }
  return total;
}

// Caterpillar of black vertices: leaves l_0..l_{m-1}, m >= 3.
inline Tree caterpillar(BoxContext ctx, const std::vector<YoungDiagram>& leaves) {
  const int m = static_cast<int>(leaves.size());
  if (m < 3) throw std::invalid_argument("caterpillar needs at least three leaves");
  Tree t{ctx, {}, {}};
  for (auto& l : leaves) t.edges.push_back({l});
  int prev = 0;
  for (int v = 0; v < m - 2; ++v) {
    int next;
    if (v == m - 3) next = m - 1;
    else {
      next = static_cast<int>(t.edges.size());
      t.edges.push_back({std::nullopt});
    }
    int leaf = v + 1;
    t.vertices.push_back({false, {prev, leaf, next}});
    prev = next;
  }
  return t;
}

// Coefficient of G^rho in G^lambda G^mu G^nu with the given association.
inline RationalFunction triple_coefficient(const YoungDiagram& lam, const YoungDiagram& mu, const YoungDiagram& nu,
                                           const YoungDiagram& rho, bool left_first,
                                           std::optional<Alphabets> al = std::nullopt) {
  RationalFunction total(0);
  for (auto& s : diagrams_in_box(lam.context())) {
    if (left_first) {
      auto a = coefficient(Rule::T2, lam, mu, s, al);
      if (!a.is_zero()) total += a * coefficient(Rule::T2, s, nu, rho, al);
    } else {
      auto a = coefficient(Rule::T2, mu, nu, s, al);
      if (!a.is_zero()) total += a * coefficient(Rule::T2, lam, s, rho, al);
    }
  }
  return total;
}

}  // namespace kpz

#pragma once

#include "coeffs.hpp"
#include "grothendieck.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace kpz {

struct NonzeroResidual : std::runtime_error {
  NonzeroResidual() : std::runtime_error("expansion does not close: nonzero residual") {}
};

// Reproducible exact rationals p/q with p, q in [1, 97].
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  mpq_class next() {
    std::uniform_int_distribution<int> d(1, 97);
    mpq_class r(d(rng_), d(rng_));
    r.canonicalize();
    return r;
  }

  // m values, distinct from each other and from everything in used.
  std::vector<mpq_class> distinct(std::size_t m, std::set<mpq_class>& used) {
    std::vector<mpq_class> v;
    while (v.size() < m) {
      mpq_class r = next();
      if (used.insert(r).second) v.push_back(r);
    }
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

using Expansion = std::map<YoungDiagram, RationalFunction>;
using NumericExpansion = std::map<YoungDiagram, mpq_class>;

struct ExpansionProblem {
  RationalFunction product;
  std::vector<std::pair<YoungDiagram, RationalFunction>> basis;
  int k{0};                  // matched variables x_1..x_k
  std::uint64_t seed{1};
};

namespace detail {

inline Bindings x_bindings(const std::vector<RationalFunction>& vals) {
  Bindings b;
  for (std::size_t i = 0; i < vals.size(); ++i) b[xvar(static_cast<std::uint32_t>(i + 1))] = vals[i];
  return b;
}

inline bool all_constant(const Matrix<RationalFunction>& a, const std::vector<RationalFunction>& b) {
  auto c = [](const RationalFunction& r) { return r.num().variables().empty() && r.den().variables().empty(); };
  for (auto& row : a)
    for (auto& e : row)
      if (!c(e)) return false;
  for (auto& e : b)
    if (!c(e)) return false;
  return true;
}

inline mpq_class constant_value(const RationalFunction& r) { return r.evaluate(Point{}); }

inline void check_residual(const RationalFunction& product,
                           const std::vector<std::pair<YoungDiagram, RationalFunction>>& basis,
                           const std::vector<RationalFunction>& c) {
  RationalFunction r = product;
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!c[j].is_zero()) r -= c[j] * basis[j].second;
  if (!r.is_zero()) throw NonzeroResidual();
}

}  // namespace detail

// Coefficients by evaluation at random rational x-points (other variables kept
// symbolic), exact elimination, and a symbolic residual check.
inline Expansion expand_in_basis(const ExpansionProblem& p, int max_draws = 8) {
  const std::size_t m = p.basis.size();
  RationalSampler rng(p.seed);
  for (int draw = 0; draw < max_draws; ++draw) {
    std::set<mpq_class> used;
    Matrix<RationalFunction> a(m);
    std::vector<RationalFunction> rhs;
    try {
      for (std::size_t r = 0; r < m; ++r) {
        auto xs = rng.distinct(static_cast<std::size_t>(p.k), used);
        auto bind = detail::x_bindings(std::vector<RationalFunction>(xs.begin(), xs.end()));
        for (auto& [nu, f] : p.basis) a[r].push_back(substitute(f, bind));
        rhs.push_back(substitute(p.product, bind));
      }
      std::vector<RationalFunction> c;
      if (detail::all_constant(a, rhs)) {
        Matrix<mpq_class> aq(m);
        std::vector<mpq_class> bq;
        for (std::size_t r = 0; r < m; ++r) {
          for (auto& e : a[r]) aq[r].push_back(detail::constant_value(e));
          bq.push_back(detail::constant_value(rhs[r]));
        }
        for (auto& v : solve(aq, bq)) c.emplace_back(v);
      } else {
        c = solve(a, rhs);
      }
      detail::check_residual(p.product, p.basis, c);
      Expansion out;
      for (std::size_t j = 0; j < m; ++j) out.emplace(p.basis[j].first, c[j]);
      return out;
    } catch (const SingularSystem&) {
    } catch (const DenominatorVanishes&) {
    } catch (const DivisionByZero&) {
    }
  }
  throw SingularSystem();
}

// Coefficients by localization x = (b_s)_{s in frame(rho)}. A primal basis
// element G^nu vanishes there unless nu is contained in rho, a dual one G_nu
// unless rho is contained in nu; either way the system is triangular in the
// size order. Symbolic throughout. The residual check applies to primal
// bases only: dual expansions close in the quotient ring, not as polynomials.
inline Expansion expand_localized(const RationalFunction& product,
                                  const std::vector<std::pair<YoungDiagram, RationalFunction>>& basis,
                                  const Alphabet& b, bool dual = false, bool check_residual = true) {
  const int m = static_cast<int>(basis.size());
  std::vector<RationalFunction> c(m, RationalFunction(0));
  auto below = [&](int j, int r) {
    return dual ? basis[j].first.contains(basis[r].first) : basis[r].first.contains(basis[j].first);
  };
  for (int q = 0; q < m; ++q) {
    const int r = dual ? m - 1 - q : q;
    std::vector<RationalFunction> xs;
    for (int s : basis[r].first.frame()) xs.push_back(b[s - 1]);
    auto bind = detail::x_bindings(xs);
    RationalFunction acc = substitute(product, bind);
    for (int j = 0; j < m; ++j)
      if (j != r && !c[j].is_zero() && below(j, r)) acc -= c[j] * substitute(basis[j].second, bind);
    RationalFunction diag = substitute(basis[r].second, bind);
    if (diag.is_zero()) throw SingularSystem();
    c[r] = acc / diag;
  }
  if (check_residual && !dual) detail::check_residual(product, basis, c);
  Expansion out;
  for (int j = 0; j < m; ++j) out.emplace(basis[j].first, c[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Numeric evaluation of (dual) Grothendieck polynomials
// ---------------------------------------------------------------------------

inline mpq_class groth_value(const YoungDiagram& lam, const std::vector<mpq_class>& x, const std::vector<mpq_class>& a) {
  const int k = lam.k();
  auto l = lam.frame();
  Matrix<mpq_class> m(k, std::vector<mpq_class>(k));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      mpq_class v(1);
      for (int e = 0; e < k - i; ++e) v *= x[j - 1];
      for (int s = 1; s < l[i - 1]; ++s) v *= 1 - x[j - 1] / a[s - 1];
      m[i - 1][j - 1] = v;
    }
  mpq_class vd(1);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) vd *= x[i] - x[j];
  if (vd == 0) throw DenominatorVanishes();
  return determinant(m) / vd;
}

inline mpq_class dual_groth_value(const YoungDiagram& lam, const std::vector<mpq_class>& x,
                                  const std::vector<mpq_class>& a) {
  const int k = lam.k(), n = lam.n();
  auto l = lam.frame();
  Matrix<mpq_class> m(k, std::vector<mpq_class>(k));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      mpq_class v(1);
      for (int e = 0; e < i - 1; ++e) v *= x[j - 1];
      for (int s = l[i - 1] + 1; s <= n; ++s) v *= 1 - x[j - 1] / a[s - 1];
      m[i - 1][j - 1] = v;
    }
  mpq_class vd(1), pre(1);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) vd *= x[j] - x[i];
  if (vd == 0) throw DenominatorVanishes();
  for (int i = 0; i < k; ++i) pre *= x[i] / a[l[i] - 1];
  return pre * determinant(m) / vd;
}

// ---------------------------------------------------------------------------
// Rule oracles
// ---------------------------------------------------------------------------

// Diagrams that can occur in a product of lambda and mu.
inline std::vector<YoungDiagram> product_support(const YoungDiagram& lam, const YoungDiagram& mu) {
  BoxContext c = lam.context();
  return diagrams_within(c, c.k, std::min(c.width(), lam.width() + mu.width()));
}

// Symbolic oracle. T1: y = 1, random x-points; T2, T3: localization with a
// residual check; dual rules: dual localization over the whole box (T1d is the
// y = 1 specialization of T2d). Dual rules are practical for small n only.
inline Expansion oracle_expand(Rule rule, const YoungDiagram& lam, const YoungDiagram& mu, std::uint64_t seed = 1) {
  const int n = lam.n();
  auto y = alphabet_y(n), yr = reversed(alphabet_y(n)), z = alphabet_z(n);
  std::vector<std::pair<YoungDiagram, RationalFunction>> basis;
  auto dual_case = [&](const Alphabet& al, const Alphabet& am, const Alphabet& ab) {
    for (auto& nu : diagrams_in_box(lam.context())) basis.emplace_back(nu, dual_groth_det(nu, ab));
    return expand_localized(dual_groth_det(lam, al) * dual_groth_det(mu, am), basis, ab, true);
  };
  switch (rule) {
    case Rule::T1: {
      auto ones = alphabet_ones(n);
      ExpansionProblem p{groth_det(lam, ones) * groth_det(mu, ones), {}, lam.k(), seed};
      for (auto& nu : product_support(lam, mu)) p.basis.emplace_back(nu, groth_det(nu, ones));
      return expand_in_basis(p);
    }
    case Rule::T2:
      for (auto& nu : product_support(lam, mu)) basis.emplace_back(nu, groth_det(nu, y));
      return expand_localized(groth_det(lam, y) * groth_det(mu, y), basis, y);
    case Rule::T3:
      for (auto& nu : product_support(lam, mu)) basis.emplace_back(nu, groth_det(nu, yr));
      return expand_localized(groth_det(lam, y) * groth_det(mu, yr), basis, yr);
    case Rule::T1d: {
      Bindings ones;
      for (int i = 1; i <= n; ++i) ones[yvar(static_cast<std::uint32_t>(i))] = RationalFunction(1);
      Expansion e = dual_case(y, y, y);
      for (auto& [nu, c] : e) c = substitute(c, ones);
      return e;
    }
    case Rule::T2d: return dual_case(y, y, y);
    case Rule::T3d: return dual_case(y, yr, yr);
    case Rule::T2dd:
    case Rule::T3dd: return dual_case(z, y, y);
  }
  throw std::logic_error("unhandled rule");
}

// Random values y_1..y_n, z_1..z_n (pairwise distinct) as a point.
inline Point random_point(int n, std::uint64_t seed) {
  RationalSampler rng(seed);
  std::set<mpq_class> used;
  auto v = rng.distinct(static_cast<std::size_t>(2 * n), used);
  Point pt;
  for (int i = 1; i <= n; ++i) {
    pt[yvar(static_cast<std::uint32_t>(i)).key()] = v[i - 1];
    pt[zvar(static_cast<std::uint32_t>(i)).key()] = v[n + i - 1];
  }
  return pt;
}

// Dual rules at a numeric point: localization over every k-subset, exact
// Gaussian elimination over Q. A screening test, not a proof.
inline NumericExpansion oracle_expand_at(Rule rule, const YoungDiagram& lam, const YoungDiagram& mu, const Point& pt) {
  const int n = lam.n();
  std::vector<mpq_class> y(n), z(n);
  for (int i = 1; i <= n; ++i) {
    y[i - 1] = pt.at(yvar(static_cast<std::uint32_t>(i)).key());
    auto it = pt.find(zvar(static_cast<std::uint32_t>(i)).key());
    if (it != pt.end()) z[i - 1] = it->second;
  }
  std::vector<mpq_class> yr(y.rbegin(), y.rend());
  const std::vector<mpq_class>* a_lam;
  const std::vector<mpq_class>* a_mu;
  const std::vector<mpq_class>* a_basis;
  switch (rule) {
    case Rule::T2d: a_lam = &y, a_mu = &y, a_basis = &y; break;
    case Rule::T3d: a_lam = &y, a_mu = &yr, a_basis = &yr; break;
    case Rule::T2dd:
    case Rule::T3dd: a_lam = &z, a_mu = &y, a_basis = &y; break;
    default: throw std::invalid_argument(std::string("no numeric oracle for ") + rule_name(rule));
  }
  auto box = diagrams_in_box(lam.context());
  const std::size_t m = box.size();
  Matrix<mpq_class> a(m);
  std::vector<mpq_class> rhs;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<mpq_class> x;
    for (int s : box[r].frame()) x.push_back((*a_basis)[s - 1]);
    for (auto& nu : box) a[r].push_back(dual_groth_value(nu, x, *a_basis));
    rhs.push_back(dual_groth_value(lam, x, *a_lam) * dual_groth_value(mu, x, *a_mu));
  }
  auto c = solve(a, rhs);
  NumericExpansion out;
  for (std::size_t j = 0; j < m; ++j) out.emplace(box[j], c[j]);
  return out;
}

// Schwartz-Zippel screening: compare both sides at random rational points.
inline bool verify_identity_randomized(const RationalFunction& lhs, const RationalFunction& rhs, int trials,
                                       std::uint64_t seed = 1, int max_redraws = 32) {
  std::set<Variable> vars = lhs.variables();
  for (auto& v : rhs.variables()) vars.insert(v);
  RationalSampler rng(seed);
  int redraws = 0;
  for (int t = 0; t < trials;) {
    std::set<mpq_class> used;
    auto vals = rng.distinct(vars.size(), used);
    Point pt;
    std::size_t i = 0;
    for (auto& v : vars) pt[v.key()] = vals[i++];
    try {
      if (lhs.evaluate(pt) != rhs.evaluate(pt)) return false;
      ++t;
    } catch (const DenominatorVanishes&) {
      if (++redraws > max_redraws) throw;
    } catch (const DivisionByZero&) {
      if (++redraws > max_redraws) throw;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Puzzle rule against oracle
// ---------------------------------------------------------------------------

// Literal: the box diagrams are used as given. Complement: they index the
// complements lambda*, mu* in the k x (n-k) box, the form in which dual
// products are stable in n.
enum class Parametrization { Literal, Complement };

struct CrossOptions {
  int n{0};  // 0: stability bound of the pair
  Parametrization param{Parametrization::Literal};
  std::uint64_t seed{7};  // numeric point for dual rules
};

struct CrossResult {
  YoungDiagram lambda, mu;
  int n{0};
  int compared{0};
  int mismatches{0};
  bool ok() const { return compared > 0 && mismatches == 0; }
};

// lam0, mu0 live in a small box with k rows; the comparison runs in Gr(k, n).
// T1, T1d, T2, T3: exact symbolic comparison over the whole box. T2d, T3d,
// T2dd, T3dd: exact comparison at a random rational point.
inline CrossResult cross_check(Rule rule, const YoungDiagram& lam0, const YoungDiagram& mu0, CrossOptions opt = {}) {
  const int k = lam0.k();
  const int n = opt.n ? opt.n : std::max(stability_bound(lam0, mu0, k), 2 * k);
  BoxContext c{k, n};
  auto lam = lam0.in_context(c), mu = mu0.in_context(c);
  if (opt.param == Parametrization::Complement) lam = lam.dual(), mu = mu.dual();
  CrossResult r{lam, mu, n, 0, 0};
  if (rule == Rule::T1 || rule == Rule::T1d || rule == Rule::T2 || rule == Rule::T3) {
    auto e = oracle_expand(rule, lam, mu, opt.seed);
    for (auto& nu : diagrams_in_box(c)) {
      auto it = e.find(nu);
      RationalFunction ov = it == e.end() ? RationalFunction(0) : it->second;
      ++r.compared;
      if (!(coefficient(rule, lam, mu, nu) == ov)) ++r.mismatches;
    }
  } else {
    auto pt = random_point(n, opt.seed);
    for (auto& [nu, ov] : oracle_expand_at(rule, lam, mu, pt)) {
      ++r.compared;
      if (coefficient_at(CoeffQuery{rule, lam, mu, nu, std::nullopt}, pt) != ov) ++r.mismatches;
    }
  }
  return r;
}

}  // namespace kpz

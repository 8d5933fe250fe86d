#pragma once

#include "algebra.hpp"
#include "young.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kpz {

struct StateSpaceTooLarge : std::length_error {
  StateSpaceTooLarge() : std::length_error("lattice state space too large (n > 16)") {}
};

// Ordered secondary alphabet (y_1, ..., y_n); entries are symbols or constants.
using Alphabet = std::vector<RationalFunction>;

inline Alphabet alphabet_of(Family f, int n) {
  Alphabet a;
  for (int i = 1; i <= n; ++i) a.push_back(RationalFunction::var(Variable{f, static_cast<std::uint32_t>(i)}));
  return a;
}
inline Alphabet alphabet_y(int n) { return alphabet_of(Family::Y, n); }
inline Alphabet alphabet_z(int n) { return alphabet_of(Family::Z, n); }
inline Alphabet alphabet_ones(int n) { return Alphabet(static_cast<std::size_t>(n), RationalFunction(1)); }
inline Alphabet reversed(Alphabet a) {
  std::reverse(a.begin(), a.end());
  return a;
}

// "sym" (y_1..y_n), "rev" (y_n..y_1), "z", "zrev", "ones", or a comma list of expressions.
inline Alphabet parse_alphabet(const std::string& s, int n) {
  if (s == "sym" || s.empty()) return alphabet_y(n);
  if (s == "rev") return reversed(alphabet_y(n));
  if (s == "z") return alphabet_z(n);
  if (s == "zrev") return reversed(alphabet_z(n));
  if (s == "ones") return alphabet_ones(n);
  Alphabet a;
  std::string tok;
  std::stringstream ss(s);
  while (std::getline(ss, tok, ',')) a.push_back(parse_rational(tok));
  if (static_cast<int>(a.size()) != n) throw std::invalid_argument("alphabet needs exactly n entries");
  for (auto& e : a)
    if (e.is_zero()) throw std::invalid_argument("alphabet entries must be nonzero");
  return a;
}

inline RationalFunction xsym(int i) { return RationalFunction::var(xvar(static_cast<std::uint32_t>(i))); }

namespace detail {

inline void check_alphabet(const YoungDiagram& lam, const Alphabet& a) {
  if (static_cast<int>(a.size()) < lam.n()) throw std::invalid_argument("alphabet shorter than n");
}

inline Bindings alphabet_bindings(const Alphabet& a) {
  Bindings b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto v = yvar(static_cast<std::uint32_t>(i + 1));
    if (!(a[i] == RationalFunction::var(v))) b[v] = a[i];
  }
  return b;
}

inline RationalFunction vandermonde(int k) {
  Polynomial v(1);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      v *= Polynomial::var(xvar(i)) - Polynomial::var(xvar(j));
  return v;
}

// prod_{m in [lo, hi]} (1 - x/a_m), 1-based
inline RationalFunction factor_run(const RationalFunction& x, const Alphabet& a, int lo, int hi) {
  RationalFunction r(1);
  for (int m = lo; m <= hi; ++m) r *= RationalFunction(1) - x / a[m - 1];
  return r;
}

}  // namespace detail

// G^lambda from the top class by Demazure operators, lowering the largest
// reducible frame entry first.
inline RationalFunction groth_inductive(const YoungDiagram& lam, const Alphabet& a) {
  detail::check_alphabet(lam, a);
  const int k = lam.k(), n = lam.n();
  Polynomial g(1);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= n - k; ++j)
      g *= Polynomial(1) - Polynomial::var(xvar(i)) * Polynomial::var(yvar(j), -1);
  RationalFunction f(g);
  std::vector<int> cur(k), target = lam.frame();
  for (int j = 0; j < k; ++j) cur[j] = n - k + 1 + j;
  while (cur != target) {
    int pick = -1;
    for (int j = k - 1; j >= 0; --j) {
      bool free_below = (j == 0) ? cur[j] > 1 : cur[j - 1] < cur[j] - 1;
      if (cur[j] > target[j] && free_below) { pick = j; break; }
    }
    if (pick < 0) throw std::logic_error("no reducible frame entry");
    --cur[pick];
    f = demazure(f, static_cast<std::uint32_t>(cur[pick]));
  }
  auto b = detail::alphabet_bindings(a);
  return b.empty() ? f : substitute(f, b);
}

// det(x_j^{k-i} prod_{m<l_i} (1 - x_j/a_m)) / prod_{i<j} (x_i - x_j)
inline RationalFunction groth_det(const YoungDiagram& lam, const Alphabet& a) {
  detail::check_alphabet(lam, a);
  const int k = lam.k();
  auto l = lam.frame();
  Matrix<RationalFunction> m(k, std::vector<RationalFunction>(k));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      m[i - 1][j - 1] = xsym(j).pow(k - i) * detail::factor_run(xsym(j), a, 1, l[i - 1] - 1);
  auto d = determinant(m);
  return RationalFunction(exact_div(d.num(), detail::vandermonde(k).num()), d.den());
}

// G_lambda(x;a) = prod x_i prod_{i in lambda} a_i^{-1} G^{lambda*}(x; a reversed)
inline RationalFunction dual_groth(const YoungDiagram& lam, const Alphabet& a) {
  detail::check_alphabet(lam, a);
  const int n = lam.n();
  Alphabet ar(a.begin(), a.begin() + n);
  std::reverse(ar.begin(), ar.end());
  RationalFunction pre(1);
  for (int i = 1; i <= lam.k(); ++i) pre *= xsym(i);
  for (int i : lam.frame()) pre /= a[i - 1];
  return pre * groth_det(lam.dual(), ar);
}

// prod_i (x_i/a_{l_i}) det(x_j^{i-1} prod_{m>l_i} (1 - x_j/a_m)) / prod_{i<j} (x_j - x_i)
inline RationalFunction dual_groth_det(const YoungDiagram& lam, const Alphabet& a) {
  detail::check_alphabet(lam, a);
  const int k = lam.k(), n = lam.n();
  auto l = lam.frame();
  Matrix<RationalFunction> m(k, std::vector<RationalFunction>(k));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      m[i - 1][j - 1] = xsym(j).pow(i - 1) * detail::factor_run(xsym(j), a, l[i - 1] + 1, n);
  auto d = determinant(m);
  auto v = detail::vandermonde(k).num();
  if (k % 4 == 2 || k % 4 == 3) v = -v;  // prod_{i<j}(x_j - x_i) = (-1)^{k(k-1)/2} prod_{i<j}(x_i - x_j)
  RationalFunction pre(1);
  for (int i = 1; i <= k; ++i) pre *= xsym(i) / a[l[i - 1] - 1];
  return pre * RationalFunction(exact_div(d.num(), v), d.den());
}

// Both sides of sum_{nu |> mu} (-1)^{|nu|-|mu|} G^nu(x;a) = prod x_i / prod_{i in mu} a_i G^mu(x;a).
inline std::pair<RationalFunction, RationalFunction> strip_identity(const YoungDiagram& mu, const Alphabet& a) {
  RationalFunction lhs(0), rhs(1);
  for (auto& nu : diagrams_in_box(mu.context()))
    if (strip_rel(nu, mu)) lhs += RationalFunction((nu.size() - mu.size()) % 2 == 0 ? 1 : -1) * groth_det(nu, a);
  for (int i = 1; i <= mu.k(); ++i) rhs *= xsym(i);
  for (int i : mu.frame()) rhs /= a[i - 1];
  return {lhs, rhs * groth_det(mu, a)};
}

// ---------------------------------------------------------------------------
// Five-vertex lattice
// ---------------------------------------------------------------------------

namespace detail {

// State vector over (C^2)^{otimes n}: bit j-1 set = particle at site j.
using LatticeState = std::unordered_map<std::uint32_t, RationalFunction>;

// Row operator <aux out| R_{a1}(x/a_1) ... R_{an}(x/a_n) |aux in>; site n meets the
// auxiliary line first. State 1 = empty (bit clear), state 2 = particle.
inline LatticeState apply_row(const LatticeState& in, const RationalFunction& x, const Alphabet& a, int n, int aux_in,
                              int aux_out) {
  std::unordered_map<std::uint64_t, RationalFunction> cur, next;
  auto key = [](std::uint32_t mask, int aux) { return (static_cast<std::uint64_t>(mask) << 1) | (aux == 2 ? 1u : 0u); };
  for (auto& [mask, amp] : in)
    if (!amp.is_zero()) cur[key(mask, aux_in)] += amp;
  for (int j = n; j >= 1; --j) {
    next.clear();
    RationalFunction z = x / a[j - 1];
    std::uint32_t bit = 1u << (j - 1);
    for (auto& [kk, amp] : cur) {
      std::uint32_t mask = static_cast<std::uint32_t>(kk >> 1);
      int aux = (kk & 1u) ? 2 : 1;
      int site = (mask & bit) ? 2 : 1;
      auto put = [&](int na, int ns, const RationalFunction& w) {
        std::uint32_t nm = ns == 2 ? (mask | bit) : (mask & ~bit);
        auto& slot = next[key(nm, na)];
        slot += amp * w;
      };
      if (aux == 1 && site == 1) put(1, 1, 1);
      else if (aux == 2 && site == 2) put(2, 2, 1);
      else if (aux == 1 && site == 2) put(2, 1, 1);
      else {  // aux 2, site 1
        put(1, 2, z);
        put(2, 1, RationalFunction(1) - z);
      }
    }
    std::swap(cur, next);
  }
  LatticeState out;
  for (auto& [kk, amp] : cur) {
    int aux = (kk & 1u) ? 2 : 1;
    if (aux == aux_out && !amp.is_zero()) out[static_cast<std::uint32_t>(kk >> 1)] += amp;
  }
  return out;
}

inline std::uint32_t frame_mask(const YoungDiagram& lam) {
  std::uint32_t m = 0;
  for (int i : lam.frame()) m |= 1u << (i - 1);
  return m;
}

}  // namespace detail

// <0| C(x_1) ... C(x_k) |lambda>
inline RationalFunction groth_lattice(const YoungDiagram& lam, const Alphabet& a) {
  detail::check_alphabet(lam, a);
  if (lam.n() > 16) throw StateSpaceTooLarge();
  detail::LatticeState s{{detail::frame_mask(lam), RationalFunction(1)}};
  for (int i = lam.k(); i >= 1; --i) s = detail::apply_row(s, xsym(i), a, lam.n(), 1, 2);
  auto it = s.find(0);
  return it == s.end() ? RationalFunction(0) : it->second;
}

// <lambda| B(x_1) ... B(x_k) |0>
inline RationalFunction dual_groth_lattice(const YoungDiagram& lam, const Alphabet& a) {
  detail::check_alphabet(lam, a);
  if (lam.n() > 16) throw StateSpaceTooLarge();
  detail::LatticeState s{{0u, RationalFunction(1)}};
  for (int i = lam.k(); i >= 1; --i) s = detail::apply_row(s, xsym(i), a, lam.n(), 2, 1);
  auto it = s.find(detail::frame_mask(lam));
  return it == s.end() ? RationalFunction(0) : it->second;
}

}  // namespace kpz

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kpz {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct NotDivisible : std::runtime_error {
  NotDivisible() : std::runtime_error("polynomial division is not exact") {}
};

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

struct DenominatorVanishes : std::domain_error {
  DenominatorVanishes() : std::domain_error("denominator vanishes under substitution") {}
};

struct SingularSystem : std::domain_error {
  SingularSystem() : std::domain_error("singular linear system") {}
};

struct ParseError : std::invalid_argument {
  explicit ParseError(const std::string& msg) : std::invalid_argument(msg) {}
};

// ---------------------------------------------------------------------------
// Variable
// ---------------------------------------------------------------------------

enum class Family : std::uint8_t { X = 0, Y = 1, Z = 2, Generic = 3 };

struct Variable {
  Family family{Family::Generic};
  std::uint32_t index{1};

  constexpr std::uint32_t key() const {
    return (static_cast<std::uint32_t>(family) << 24) | index;
  }

  static constexpr Variable from_key(std::uint32_t k) {
    return Variable{static_cast<Family>(k >> 24), k & 0xFFFFFFu};
  }

  std::string name() const {
    static constexpr char letters[] = {'x', 'y', 'z', 't'};
    return letters[static_cast<int>(family)] + std::to_string(index);
  }

  friend constexpr bool operator==(const Variable& a, const Variable& b) { return a.key() == b.key(); }
  friend constexpr auto operator<=>(const Variable& a, const Variable& b) { return a.key() <=> b.key(); }
};

inline Variable xvar(std::uint32_t i) { return {Family::X, i}; }
inline Variable yvar(std::uint32_t i) { return {Family::Y, i}; }
inline Variable zvar(std::uint32_t i) { return {Family::Z, i}; }
inline Variable tvar(std::uint32_t i) { return {Family::Generic, i}; }

// ---------------------------------------------------------------------------
// Monomial: sparse (variable key, exponent) list, sorted by key, no zeros
// ---------------------------------------------------------------------------

class Monomial {
 public:
  using Entry = std::pair<std::uint32_t, int>;

  Monomial() = default;

  static Monomial of(Variable v, int e = 1) {
    Monomial m;
    if (e != 0) m.e_.emplace_back(v.key(), e);
    return m;
  }

  static Monomial from_entries(std::vector<Entry> es) {
    std::sort(es.begin(), es.end());
    Monomial m;
    for (auto& [k, e] : es) {
      if (!m.e_.empty() && m.e_.back().first == k) m.e_.back().second += e;
      else m.e_.emplace_back(k, e);
      if (m.e_.back().second == 0) m.e_.pop_back();
    }
    return m;
  }

  const std::vector<Entry>& entries() const { return e_; }
  bool is_one() const { return e_.empty(); }

  int exponent(Variable v) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), Entry{v.key(), INT32_MIN});
    return (it != e_.end() && it->first == v.key()) ? it->second : 0;
  }

  int degree() const {
    int d = 0;
    for (auto& p : e_) d += p.second;
    return d;
  }

  bool is_ordinary() const {
    return std::all_of(e_.begin(), e_.end(), [](const Entry& p) { return p.second > 0; });
  }

  Monomial operator*(const Monomial& o) const { return combine(o, [](int a, int b) { return a + b; }); }
  Monomial operator/(const Monomial& o) const { return combine(o, [](int a, int b) { return a - b; }); }

  Monomial inverse() const {
    Monomial m = *this;
    for (auto& p : m.e_) p.second = -p.second;
    return m;
  }

  Monomial pow(int k) const {
    if (k == 0) return {};
    Monomial m = *this;
    for (auto& p : m.e_) p.second *= k;
    return m;
  }

  // Componentwise minimum (absent = 0).
  Monomial min_with(const Monomial& o) const { return combine(o, [](int a, int b) { return std::min(a, b); }); }
  Monomial max_with(const Monomial& o) const { return combine(o, [](int a, int b) { return std::max(a, b); }); }

  // True when every exponent of this is <= the matching exponent of o.
  bool divides(const Monomial& o) const {
    auto q = o / *this;
    return q.is_ordinary();
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto& [k, e] : e_) {
      h ^= (static_cast<std::size_t>(k) << 20) ^ static_cast<std::size_t>(e + 1000);
      h *= 1099511628211ull;
    }
    return h;
  }

  std::string to_string() const {
    if (e_.empty()) return "1";
    std::string s;
    for (auto& [k, e] : e_) {
      if (!s.empty()) s += '*';
      s += Variable::from_key(k).name();
      if (e != 1) s += '^' + std::to_string(e);
    }
    return s;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

 private:
  template <typename F>
  Monomial combine(const Monomial& o, F f) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t i = 0, j = 0;
    while (i < e_.size() || j < o.e_.size()) {
      std::uint32_t k;
      int a = 0, b = 0;
      if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
        k = e_[i].first; a = e_[i++].second;
      } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
        k = o.e_[j].first; b = o.e_[j++].second;
      } else {
        k = e_[i].first; a = e_[i++].second; b = o.e_[j++].second;
      }
      int c = f(a, b);
      if (c != 0) r.e_.emplace_back(k, c);
    }
    return r;
  }

  std::vector<Entry> e_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Graded lexicographic comparison: >0 when a is larger.
inline int grlex_compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    std::uint32_t k;
    int ea = 0, eb = 0;
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      k = x[i].first; ea = x[i++].second;
    } else if (i == x.size() || y[j].first < x[i].first) {
      k = y[j].first; eb = y[j++].second;
    } else {
      k = x[i].first; ea = x[i++].second; eb = y[j++].second;
    }
    (void)k;
    if (ea != eb) return ea > eb ? 1 : -1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomial: Laurent polynomial over Z, terms in descending grlex order
// ---------------------------------------------------------------------------

using Point = std::unordered_map<std::uint32_t, mpq_class>;

class Polynomial {
 public:
  using Term = std::pair<Monomial, mpz_class>;

  Polynomial() = default;
  Polynomial(long c) { if (c != 0) t_.emplace_back(Monomial{}, mpz_class(c)); }
  Polynomial(const mpz_class& c) { if (c != 0) t_.emplace_back(Monomial{}, c); }

  static Polynomial var(Variable v, int e = 1) { return monomial(Monomial::of(v, e)); }

  static Polynomial monomial(const Monomial& m, const mpz_class& c = 1) {
    Polynomial p;
    if (c != 0) p.t_.emplace_back(m, c);
    return p;
  }

  static Polynomial from_terms(std::vector<Term> ts) {
    std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
    for (auto& [m, c] : ts) acc[m] += c;
    return from_map(acc);
  }

  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
  bool is_monomial() const { return t_.size() == 1; }

  mpz_class constant_value() const {
    for (auto& [m, c] : t_)
      if (m.is_one()) return c;
    return 0;
  }

  const Term& leading() const { return t_.front(); }

  Monomial min_monomial() const {
    if (t_.empty()) return {};
    Monomial m = t_[0].first;
    for (std::size_t i = 1; i < t_.size(); ++i) m = m.min_with(t_[i].first);
    return m;
  }

  Monomial max_monomial() const {
    if (t_.empty()) return {};
    Monomial m = t_[0].first;
    for (std::size_t i = 1; i < t_.size(); ++i) m = m.max_with(t_[i].first);
    return m;
  }

  mpz_class content() const {
    mpz_class g = 0;
    for (auto& [m, c] : t_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
  }

  std::set<Variable> variables() const {
    std::set<Variable> vs;
    for (auto& [m, c] : t_)
      for (auto& [k, e] : m.entries()) vs.insert(Variable::from_key(k));
    return vs;
  }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& tc : p.t_) tc.second = -tc.second;
    return p;
  }

  Polynomial operator+(const Polynomial& o) const { return merge(o, false); }
  Polynomial operator-(const Polynomial& o) const { return merge(o, true); }

  Polynomial operator*(const Polynomial& o) const {
    if (t_.empty() || o.t_.empty()) return {};
    if (o.is_monomial()) return mul_term(o.t_[0].first, o.t_[0].second);
    if (is_monomial()) return o.mul_term(t_[0].first, t_[0].second);
    std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
    acc.reserve(t_.size() * o.t_.size());
    for (auto& [ma, ca] : t_)
      for (auto& [mb, cb] : o.t_) acc[ma * mb] += ca * cb;
    return from_map(acc);
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial mul_term(const Monomial& m, const mpz_class& c) const {
    if (c == 0) return {};
    Polynomial p;
    p.t_.reserve(t_.size());
    for (auto& [mm, cc] : t_) p.t_.emplace_back(mm * m, cc * c);
    return p;  // multiplying by a monomial preserves grlex order
  }

  Polynomial div_integer(const mpz_class& c) const {
    Polynomial p = *this;
    for (auto& tc : p.t_) mpz_divexact(tc.second.get_mpz_t(), tc.second.get_mpz_t(), c.get_mpz_t());
    return p;
  }

  Polynomial pow(unsigned k) const {
    Polynomial r(1), b = *this;
    while (k) {
      if (k & 1u) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  // Apply a monomial map (must send distinct monomials to distinct monomials or
  // be followed by recombination, which from_terms handles).
  template <typename F>
  Polynomial map_monomials(F f) const {
    std::vector<Term> ts;
    ts.reserve(t_.size());
    for (auto& [m, c] : t_) ts.emplace_back(f(m), c);
    return from_terms(std::move(ts));
  }

  Polynomial rename(const std::map<Variable, Variable>& r) const {
    return map_monomials([&](const Monomial& m) {
      std::vector<Monomial::Entry> es;
      es.reserve(m.entries().size());
      for (auto [k, e] : m.entries()) {
        auto it = r.find(Variable::from_key(k));
        es.emplace_back(it == r.end() ? k : it->second.key(), e);
      }
      return Monomial::from_entries(std::move(es));
    });
  }

  Polynomial swap_vars(Variable a, Variable b) const { return rename({{a, b}, {b, a}}); }

  int max_degree_in(Variable v) const {
    int d = INT32_MIN;
    for (auto& [m, c] : t_) d = std::max(d, m.exponent(v));
    return d;
  }

  mpq_class evaluate(const Point& pt) const {
    mpq_class s = 0;
    for (auto& [m, c] : t_) {
      mpq_class t = c;
      for (auto [k, e] : m.entries()) {
        auto it = pt.find(k);
        if (it == pt.end()) throw std::invalid_argument("no value for " + Variable::from_key(k).name());
        if (e < 0 && it->second == 0) throw DivisionByZero();
        mpq_class v = e > 0 ? it->second : mpq_class(1) / it->second;
        for (int i = 0; i < std::abs(e); ++i) t *= v;
      }
      s += t;
    }
    return s;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : t_) {
      mpz_class a = abs(c);
      if (first) s += c < 0 ? "-" : "";
      else s += c < 0 ? " - " : " + ";
      first = false;
      if (m.is_one()) s += a.get_str();
      else if (a == 1) s += m.to_string();
      else s += a.get_str() + "*" + m.to_string();
    }
    return s;
  }

  std::size_t hash() const {
    std::size_t h = 0;
    for (auto& [m, c] : t_) h = h * 31 + m.hash() + static_cast<std::size_t>(mpz_get_si(c.get_mpz_t()));
    return h;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
      if (a.t_[i].second != b.t_[i].second || !(a.t_[i].first == b.t_[i].first)) return false;
    return true;
  }

 private:
  static Polynomial from_map(std::unordered_map<Monomial, mpz_class, MonomialHash>& acc) {
    Polynomial p;
    p.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) p.t_.emplace_back(m, std::move(c));
    std::sort(p.t_.begin(), p.t_.end(),
              [](const Term& a, const Term& b) { return grlex_compare(a.first, b.first) > 0; });
    return p;
  }

  Polynomial merge(const Polynomial& o, bool negate) const {
    Polynomial p;
    p.t_.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
      int cmp = i == t_.size() ? -1 : j == o.t_.size() ? 1 : grlex_compare(t_[i].first, o.t_[j].first);
      if (cmp > 0) {
        p.t_.push_back(t_[i++]);
      } else if (cmp < 0) {
        p.t_.emplace_back(o.t_[j].first, negate ? mpz_class(-o.t_[j].second) : o.t_[j].second);
        ++j;
      } else {
        mpz_class c = negate ? mpz_class(t_[i].second - o.t_[j].second) : mpz_class(t_[i].second + o.t_[j].second);
        if (c != 0) p.t_.emplace_back(t_[i].first, std::move(c));
        ++i; ++j;
      }
    }
    return p;
  }

  std::vector<Term> t_;
};

inline Polynomial operator*(long c, const Polynomial& p) { return Polynomial(c) * p; }

// Exact division of Laurent polynomials; std::nullopt when not exact.
inline std::optional<Polynomial> try_div(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return Polynomial{};
  if (b.is_monomial()) {
    const auto& [mb, cb] = b.leading();
    for (auto& [m, c] : a.terms())
      if (!mpz_divisible_p(c.get_mpz_t(), cb.get_mpz_t())) return std::nullopt;
    return a.mul_term(mb.inverse(), 1).div_integer(cb);
  }
  // Shift both to ordinary polynomials with no monomial content.
  Monomial ma = a.min_monomial(), mb = b.min_monomial();
  Polynomial r = a.mul_term(ma.inverse(), 1);
  Polynomial d = b.mul_term(mb.inverse(), 1);
  const auto& [ld, lc] = d.leading();
  std::vector<Polynomial::Term> q;
  while (!r.is_zero()) {
    const auto& [lr, rc] = r.leading();
    Monomial t = lr / ld;
    if (!t.is_ordinary() && !t.is_one()) return std::nullopt;
    if (!mpz_divisible_p(rc.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), rc.get_mpz_t(), lc.get_mpz_t());
    r -= d.mul_term(t, c);
    q.emplace_back(std::move(t), std::move(c));
  }
  return Polynomial::from_terms(std::move(q)).mul_term(ma / mb, 1);
}

inline Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto q = try_div(a, b);
  if (!q) throw NotDivisible();
  return *q;
}

// ---------------------------------------------------------------------------
// RationalFunction: num/den with den free of monomial content, den normalized
// ---------------------------------------------------------------------------

class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}
  RationalFunction(const mpz_class& c) : num_(c), den_(1) {}
  RationalFunction(const mpq_class& c) : num_(c.get_num()), den_(c.get_den()) {}
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}
  RationalFunction(Polynomial n, Polynomial d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static RationalFunction var(Variable v, int e = 1) { return Polynomial::var(v, e); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == Polynomial(1); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  mpq_class constant_value() const {
    mpq_class q(num_.constant_value(), den_.constant_value());
    q.canonicalize();
    return q;
  }

  RationalFunction operator-() const { return raw(-num_, den_); }

  RationalFunction operator+(const RationalFunction& o) const {
    if (den_ == o.den_) return {num_ + o.num_, den_};
    return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
  }
  RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }

  RationalFunction operator*(const RationalFunction& o) const {
    if (is_polynomial() && o.is_polynomial()) return raw(num_ * o.num_, den_);
    return {num_ * o.num_, den_ * o.den_};
  }

  RationalFunction operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DivisionByZero();
    return {num_ * o.den_, den_ * o.num_};
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  RationalFunction inverse() const { return RationalFunction(1) / *this; }

  RationalFunction pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RationalFunction r(1), b = *this;
    while (k) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  RationalFunction rename(const std::map<Variable, Variable>& r) const { return {num_.rename(r), den_.rename(r)}; }

  mpq_class evaluate(const Point& pt) const {
    mpq_class d = den_.evaluate(pt);
    if (d == 0) throw DenominatorVanishes();
    return num_.evaluate(pt) / d;
  }

  std::set<Variable> variables() const {
    auto a = num_.variables();
    auto b = den_.variables();
    a.insert(b.begin(), b.end());
    return a;
  }

  // Numerator and denominator as ordinary polynomials.
  std::pair<Polynomial, Polynomial> ordinary_parts() const {
    Monomial shift = num_.min_monomial().min_with(Monomial{}).min_with(den_.min_monomial());
    return {num_.mul_term(shift.inverse(), 1), den_.mul_term(shift.inverse(), 1)};
  }

  std::string to_string() const {
    auto [n, d] = ordinary_parts();
    if (d == Polynomial(1)) return n.to_string();
    std::string ns = n.to_string();
    bool neg = !n.is_zero() && n.leading().second < 0;
    if (n.is_monomial()) {
      // keep a leading minus outside, e.g. -y4/y2
    } else if (neg) {
      ns = "-(" + (-n).to_string() + ")";
    } else {
      ns = "(" + ns + ")";
    }
    std::string ds = d.to_string();
    bool bare = d.is_constant() || (d.is_monomial() && d.leading().second == 1 && d.leading().first.entries().size() == 1);
    if (!bare) ds = "(" + ds + ")";
    return ns + "/" + ds;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  static RationalFunction raw(Polynomial n, Polynomial d) {
    RationalFunction r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
  }

  void normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) { den_ = Polynomial(1); return; }
    if (den_.is_monomial()) {
      const auto& [m, c] = den_.leading();
      num_ = num_.mul_term(m.inverse(), c < 0 ? -1 : 1);
      mpz_class a = abs(c);
      mpz_class g = num_.content();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
      num_ = num_.div_integer(g);
      den_ = Polynomial(mpz_class(a / g));
      return;
    }
    Monomial md = den_.min_monomial();
    if (!md.is_one()) {
      num_ = num_.mul_term(md.inverse(), 1);
      den_ = den_.mul_term(md.inverse(), 1);
    }
    if (auto q = try_div(num_, den_)) {
      num_ = std::move(*q);
      den_ = Polynomial(1);
      return;
    }
    mpz_class g = num_.content(), gd = den_.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gd.get_mpz_t());
    if (den_.leading().second < 0) g = -g;
    if (g != 1) {
      num_ = num_.div_integer(g);
      den_ = den_.div_integer(g);
    }
  }

  Polynomial num_;
  Polynomial den_;
};

inline RationalFunction operator*(long c, const RationalFunction& r) { return RationalFunction(c) * r; }
inline RationalFunction operator+(long c, const RationalFunction& r) { return RationalFunction(c) + r; }
inline RationalFunction operator-(long c, const RationalFunction& r) { return RationalFunction(c) - r; }

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.to_string(); }

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

using Bindings = std::map<Variable, RationalFunction>;

namespace detail {

inline bool is_monic_monomial(const RationalFunction& r) {
  return r.is_polynomial() && r.num().is_monomial() && r.num().leading().second == 1;
}

inline Polynomial power_cached(std::map<std::pair<int, int>, Polynomial>& cache, const Polynomial& base, int id,
                               int e) {
  auto key = std::make_pair(id, e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache[key] = base.pow(static_cast<unsigned>(e));
}

// Substitute into a polynomial; returns num/den with no cancellation attempted.
inline std::pair<Polynomial, Polynomial> substitute_poly(const Polynomial& p, const Bindings& b) {
  bool fast = std::all_of(b.begin(), b.end(), [](auto& kv) { return is_monic_monomial(kv.second); });
  if (fast) {
    std::unordered_map<std::uint32_t, Monomial> img;
    for (auto& [v, r] : b) img[v.key()] = r.num().leading().first;
    Polynomial q = p.map_monomials([&](const Monomial& m) {
      Monomial out;
      std::vector<Monomial::Entry> keep;
      for (auto [k, e] : m.entries()) {
        auto it = img.find(k);
        if (it == img.end()) keep.emplace_back(k, e);
        else out = out * it->second.pow(e);
      }
      return out * Monomial::from_entries(std::move(keep));
    });
    return {q, Polynomial(1)};
  }
  // Common denominator: prod q_v^{E+} p_v^{E-}; term -> c prod p_v^{e+E-} q_v^{E+-e}.
  std::vector<std::uint32_t> keys;
  std::vector<const RationalFunction*> imgs;
  for (auto& [v, r] : b) { keys.push_back(v.key()); imgs.push_back(&r); }
  std::vector<int> eplus(keys.size(), 0), eminus(keys.size(), 0);
  auto find = [&](std::uint32_t k) -> int {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    return (it != keys.end() && *it == k) ? static_cast<int>(it - keys.begin()) : -1;
  };
  for (auto& [m, c] : p.terms())
    for (auto [k, e] : m.entries()) {
      int i = find(k);
      if (i < 0) continue;
      eplus[i] = std::max(eplus[i], e);
      eminus[i] = std::max(eminus[i], -e);
    }
  std::map<std::pair<int, int>, Polynomial> cache;
  Polynomial num;
  for (auto& [m, c] : p.terms()) {
    std::vector<Monomial::Entry> keep;
    std::vector<int> ex(keys.size(), 0);
    for (auto [k, e] : m.entries()) {
      int i = find(k);
      if (i < 0) keep.emplace_back(k, e);
      else ex[i] = e;
    }
    Polynomial t = Polynomial::monomial(Monomial::from_entries(std::move(keep)), c);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      int a = ex[i] + eminus[i], bq = eplus[i] - ex[i];
      if (a > 0) t *= power_cached(cache, imgs[i]->num(), 2 * static_cast<int>(i), a);
      if (bq > 0) t *= power_cached(cache, imgs[i]->den(), 2 * static_cast<int>(i) + 1, bq);
    }
    num += t;
  }
  Polynomial den(1);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (eplus[i] > 0) den *= imgs[i]->den().pow(static_cast<unsigned>(eplus[i]));
    if (eminus[i] > 0) den *= imgs[i]->num().pow(static_cast<unsigned>(eminus[i]));
  }
  return {num, den};
}

}  // namespace detail

inline RationalFunction substitute(const RationalFunction& f, const Bindings& b) {
  auto [nn, nd] = detail::substitute_poly(f.num(), b);
  auto [dn, dd] = detail::substitute_poly(f.den(), b);
  if (dn.is_zero() || nd.is_zero() || dd.is_zero()) throw DenominatorVanishes();
  return RationalFunction(nn * dd, nd * dn);
}

inline RationalFunction substitute(const Polynomial& p, const Bindings& b) {
  return substitute(RationalFunction(p), b);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

class Parser {
 public:
  explicit Parser(std::string s) : s_(std::move(s)) {}

  RationalFunction parse() {
    auto r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& m) const {
    throw ParseError("parse error at " + std::to_string(i_) + ": " + m);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) { skip(); return i_ < s_.size() && s_[i_] == c; }
  bool starts_primary() {
    skip();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  RationalFunction expr() {
    RationalFunction r;
    bool neg = false;
    if (peek('-')) { ++i_; neg = true; }
    else if (peek('+')) { ++i_; }
    r = term();
    if (neg) r = -r;
    while (true) {
      if (peek('+')) { ++i_; r += term(); }
      else if (peek('-')) { ++i_; r -= term(); }
      else break;
    }
    return r;
  }

  RationalFunction term() {
    RationalFunction r = power();
    while (true) {
      if (peek('*')) { ++i_; r *= power(); }
      else if (peek('/')) { ++i_; r /= power(); }
      else if (starts_primary()) { r *= power(); }
      else break;
    }
    return r;
  }

  int integer_exponent() {
    skip();
    bool paren = false, neg = false;
    if (peek('(')) { ++i_; paren = true; }
    if (peek('-')) { ++i_; neg = true; }
    else if (peek('+')) { ++i_; }
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected integer exponent");
    int e = std::stoi(s_.substr(st, i_ - st));
    if (paren) {
      if (!peek(')')) fail("expected ')'");
      ++i_;
    }
    return neg ? -e : e;
  }

  RationalFunction power() {
    RationalFunction b = primary();
    if (peek('^')) {
      ++i_;
      b = b.pow(integer_exponent());
    }
    return b;
  }

  RationalFunction primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      auto r = expr();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RationalFunction(mpz_class(s_.substr(st, i_ - st)));
    }
    Family f;
    switch (c) {
      case 'x': f = Family::X; break;
      case 'y': f = Family::Y; break;
      case 'z': f = Family::Z; break;
      case 't': f = Family::Generic; break;
      default: fail("unknown symbol '" + std::string(1, c) + "'");
    }
    ++i_;
    if (i_ < s_.size() && s_[i_] == '_') ++i_;
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("variable needs an index");
    long idx = std::stol(s_.substr(st, i_ - st));
    if (idx < 1 || idx > 0xFFFFFF) fail("variable index out of range");
    return RationalFunction::var(Variable{f, static_cast<std::uint32_t>(idx)});
  }

  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline RationalFunction parse_rational(const std::string& s) { return detail::Parser(s).parse(); }

inline Polynomial parse_polynomial(const std::string& s) {
  auto r = parse_rational(s);
  if (!r.is_polynomial()) throw ParseError("not a Laurent polynomial: " + s);
  return r.num();
}

// ---------------------------------------------------------------------------
// Linear algebra
// ---------------------------------------------------------------------------

template <typename T>
using Matrix = std::vector<std::vector<T>>;

// Fraction-free (Bareiss) determinant over Laurent polynomials.
inline Polynomial determinant(Matrix<Polynomial> a) {
  const std::size_t n = a.size();
  if (n == 0) return Polynomial(1);
  int sign = 1;
  Polynomial prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return {};
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

inline RationalFunction determinant(const Matrix<RationalFunction>& a) {
  // Clear denominators row by row, then run Bareiss.
  Matrix<Polynomial> p(a.size());
  RationalFunction scale(1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Polynomial l(1);
    for (auto& e : a[i])
      if (!e.is_polynomial()) l *= e.den();
    for (auto& e : a[i]) p[i].push_back((e * RationalFunction(l)).num());
    scale *= RationalFunction(l);
  }
  return RationalFunction(determinant(p)) / scale;
}

inline mpq_class determinant(Matrix<mpq_class> a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) { std::swap(a[p], a[k]); det = -det; }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      mpq_class f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// Solve a x = b over Q; throws when singular.
inline std::vector<mpq_class> solve(Matrix<mpq_class> a, std::vector<mpq_class> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) throw SingularSystem();
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      mpq_class f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Solve a x = b over rational functions by Cramer's rule with Bareiss determinants.
inline std::vector<RationalFunction> solve(const Matrix<RationalFunction>& a, const std::vector<RationalFunction>& b) {
  RationalFunction d = determinant(a);
  if (d.is_zero()) throw SingularSystem();
  std::vector<RationalFunction> x;
  for (std::size_t j = 0; j < a.size(); ++j) {
    auto m = a;
    for (std::size_t i = 0; i < a.size(); ++i) m[i][j] = b[i];
    x.push_back(determinant(m) / d);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Divided differences
// ---------------------------------------------------------------------------

// (y_i f - y_{i+1} s_i f) / (y_i - y_{i+1})
inline RationalFunction demazure(const RationalFunction& f, std::uint32_t i, Family fam = Family::Y) {
  Variable a{fam, i}, b{fam, i + 1};
  auto sf = f.rename({{a, b}, {b, a}});
  auto ya = RationalFunction::var(a), yb = RationalFunction::var(b);
  if (f.is_polynomial()) {
    Polynomial n = Polynomial::var(a) * f.num() - Polynomial::var(b) * sf.num();
    return exact_div(n, Polynomial::var(a) - Polynomial::var(b));
  }
  return (ya * f - yb * sf) / (ya - yb);
}

// (f - s_i f) / (y_i - y_{i+1})
inline RationalFunction divided_difference(const RationalFunction& f, std::uint32_t i, Family fam = Family::Y) {
  Variable a{fam, i}, b{fam, i + 1};
  auto sf = f.rename({{a, b}, {b, a}});
  if (f.is_polynomial()) return exact_div(f.num() - sf.num(), Polynomial::var(a) - Polynomial::var(b));
  return (f - sf) / (RationalFunction::var(a) - RationalFunction::var(b));
}

}  // namespace kpz

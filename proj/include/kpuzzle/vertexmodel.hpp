#pragma once

#include "algebra.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpz {

struct InconsistentCatalogue : std::logic_error {
  explicit InconsistentCatalogue(const std::string& m) : std::logic_error(m) {}
};

// ---------------------------------------------------------------------------
// Edge states and tiles
// ---------------------------------------------------------------------------

// Bitmask of colours carried by an edge.
enum Edge : std::uint8_t { Empty = 0, Red = 1, Green = 2, RedGreen = 3 };

inline const char* edge_name(Edge e) {
  static const char* names[] = {"empty", "red", "green", "red+green"};
  return names[e];
}

enum class Orient : std::uint8_t { Up, Down };

// Up triangle edges: horizontal bottom, left (60 degrees), right (120 degrees).
// Down triangle edges: horizontal top, left (120 degrees), right (60 degrees).
struct Tile {
  int id;
  Orient orient;
  Edge h, l, r;
  friend bool operator==(const Tile&, const Tile&) = default;
};

// Colour lines are continuous: each colour enters and leaves, so any edge is
// the sum (mod 2, per colour) of the other two.
inline bool conserves(const Tile& t) { return (t.h ^ t.l ^ t.r) == 0; }

// Reference pictures, indexed as in the tile figures; 5 and 6 are the
// equivariant tiles of the two skew gluings.
inline const std::vector<Tile>& reference_tiles() {
  static const std::vector<Tile> t = {
      {0, Orient::Up, Green, Green, Empty},     {1, Orient::Up, Red, Empty, Red},
      {2, Orient::Up, Green, RedGreen, Red},    {3, Orient::Up, Red, Green, RedGreen},
      {4, Orient::Up, Empty, Empty, Empty},     {5, Orient::Up, Green, Empty, Green},
      {6, Orient::Up, Red, Red, Empty},         {7, Orient::Up, RedGreen, Green, Red},
      {8, Orient::Up, Empty, RedGreen, RedGreen},
      {0, Orient::Down, Green, Empty, Green},   {1, Orient::Down, Red, Red, Empty},
      {2, Orient::Down, Green, Red, RedGreen},  {3, Orient::Down, Red, RedGreen, Green},
      {4, Orient::Down, Empty, Empty, Empty},   {5, Orient::Down, Green, Green, Empty},
      {6, Orient::Down, Red, Empty, Red},       {7, Orient::Down, RedGreen, Red, Green},
  };
  return t;
}

inline int tile_id_of(Orient o, Edge h, Edge l, Edge r) {
  for (auto& t : reference_tiles())
    if (t.orient == o && t.h == h && t.l == l && t.r == r) return t.id;
  return -1;
}

inline const Tile& tile(Orient o, int id) {
  for (auto& t : reference_tiles())
    if (t.orient == o && t.id == id) return t;
  throw std::out_of_range("no such tile");
}

constexpr int kKTile = 8;

// Edge dictionary from R-matrix indices 1,2,3 to colours.
inline Edge edge_horizontal(int s) { static const Edge d[] = {Red, Green, Empty}; return d[s - 1]; }
inline Edge edge_60(int s) { static const Edge d[] = {RedGreen, Empty, Green}; return d[s - 1]; }
inline Edge edge_120(int s) { static const Edge d[] = {Empty, RedGreen, Red}; return d[s - 1]; }

// ---------------------------------------------------------------------------
// R-matrices
// ---------------------------------------------------------------------------

// Nonzero entry (row, col), 1-based, with weight c0 + c1 * z.
struct REntry {
  int row, col;
  int c0, c1;
};
using RTable = std::vector<REntry>;

enum class RKind { A, B, C };

inline const char* kind_name(RKind k) { return k == RKind::A ? "A" : k == RKind::B ? "B" : "C"; }

inline RationalFunction entry_weight(const REntry& e, const RationalFunction& z) {
  return RationalFunction(e.c0) + RationalFunction(e.c1) * z;
}

// Five-vertex R-matrix in the basis (1,1),(1,2),(2,1),(2,2).
inline const RTable& rank1_table() {
  static const RTable t = {{1, 1, 1, 0}, {2, 3, 0, 1}, {3, 2, 1, 0}, {3, 3, 1, -1}, {4, 4, 1, 0}};
  return t;
}

inline const RTable& rank2_table(RKind k) {
  static const RTable a = {{1, 5, 0, -1}, {1, 9, 0, 1}, {3, 3, 1, 0}, {4, 4, 1, 0}, {5, 9, 1, 0}, {6, 6, 1, 0},
                           {7, 7, 1, 0},  {8, 8, 1, 0}, {9, 1, 1, 0}, {9, 5, 0, 1}, {9, 9, 1, -1}};
  static const RTable b = {{1, 1, 1, -1}, {1, 5, 1, 0}, {1, 9, 1, 0}, {2, 2, 1, 0}, {3, 3, 1, 0}, {4, 4, 1, 0},
                           {5, 1, 0, 1},  {7, 7, 1, 0}, {8, 8, 1, 0}, {9, 1, 0, 1}, {9, 5, -1, 0}};
  static const RTable c = {{2, 2, 1, 0}, {2, 4, 1, 0}, {3, 7, -1, 0}, {4, 2, 0, 1}, {4, 4, 1, 0}, {5, 5, 1, -1},
                           {6, 6, 1, 0}, {6, 8, 0, 1}, {7, 7, 1, 0},  {8, 6, 1, 0}, {8, 8, 1, 0}};
  return k == RKind::A ? a : k == RKind::B ? b : c;
}

inline Matrix<RationalFunction> r_matrix(const RTable& t, int dim, const RationalFunction& z) {
  Matrix<RationalFunction> m(dim, std::vector<RationalFunction>(dim));
  for (auto& e : t) m[e.row - 1][e.col - 1] = entry_weight(e, z);
  return m;
}

namespace detail {

inline Matrix<RationalFunction> mat_mul(const Matrix<RationalFunction>& a, const Matrix<RationalFunction>& b) {
  const std::size_t n = a.size();
  Matrix<RationalFunction> c(n, std::vector<RationalFunction>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

// Embed a d^2 x d^2 two-site operator acting on factors (p, q) of V^{otimes 3}.
inline Matrix<RationalFunction> embed(const Matrix<RationalFunction>& r, int d, int p, int q) {
  const int n = d * d * d;
  Matrix<RationalFunction> m(n, std::vector<RationalFunction>(n));
  auto digit = [d](int idx, int pos) {
    for (int s = 2; s > pos; --s) idx /= d;
    return idx % d;
  };
  for (int out = 0; out < n; ++out)
    for (int in = 0; in < n; ++in) {
      int other = 3 - p - q;
      if (digit(out, other) != digit(in, other)) continue;
      int ro = digit(out, p) * d + digit(out, q);
      int ri = digit(in, p) * d + digit(in, q);
      m[out][in] = r[ro][ri];
    }
  return m;
}

}  // namespace detail

struct YbeReport {
  int components{0};
  int mismatches{0};
  bool ok() const { return components > 0 && mismatches == 0; }
};

inline YbeReport compare_operators(const Matrix<RationalFunction>& l, const Matrix<RationalFunction>& r) {
  YbeReport rep;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < l.size(); ++j) {
      ++rep.components;
      if (!(l[i][j] == r[i][j])) ++rep.mismatches;
    }
  return rep;
}

// R_ab(za/zb) R_ac(za/zc) R_bc(zb/zc) = R_bc(zb/zc) R_ac(za/zc) R_ab(za/zb)
inline YbeReport ybe_check_rank1(const RTable& t = rank1_table()) {
  auto za = RationalFunction::var(tvar(1)), zb = RationalFunction::var(tvar(2)), zc = RationalFunction::var(tvar(3));
  auto ab = detail::embed(r_matrix(t, 4, za / zb), 2, 0, 1);
  auto ac = detail::embed(r_matrix(t, 4, za / zc), 2, 0, 2);
  auto bc = detail::embed(r_matrix(t, 4, zb / zc), 2, 1, 2);
  return compare_operators(detail::mat_mul(detail::mat_mul(ab, ac), bc), detail::mat_mul(detail::mat_mul(bc, ac), ab));
}

// R_A,ab(y/x) R_C,ac(x/z) R_B,bc(z/y) = R_B,bc(z/y) R_C,ac(x/z) R_A,ab(y/x)
inline YbeReport ybe_check_rank2(const RTable& a = rank2_table(RKind::A), const RTable& b = rank2_table(RKind::B),
                                 const RTable& c = rank2_table(RKind::C)) {
  auto x = RationalFunction::var(tvar(1)), y = RationalFunction::var(tvar(2)), z = RationalFunction::var(tvar(3));
  auto ab = detail::embed(r_matrix(a, 9, y / x), 3, 0, 1);
  auto ac = detail::embed(r_matrix(c, 9, x / z), 3, 0, 2);
  auto bc = detail::embed(r_matrix(b, 9, z / y), 3, 1, 2);
  return compare_operators(detail::mat_mul(detail::mat_mul(ab, ac), bc), detail::mat_mul(detail::mat_mul(bc, ac), ab));
}

// ---------------------------------------------------------------------------
// Tile catalogue and rhombus weights
// ---------------------------------------------------------------------------

struct Rhombus {
  int up;
  int down;
  int c0, c1;  // weight c0 + c1 * w
  RationalFunction weight(const RationalFunction& w) const {
    return RationalFunction(c0) + RationalFunction(c1) * w;
  }
  friend bool operator==(const Rhombus&, const Rhombus&) = default;
};

// One row of the weight table: the 11 rhombi of a gluing orientation.
struct RhombusWeightRow {
  RKind kind;
  std::vector<Rhombus> entries;
};

// Column order of the weight table; each row lists the same picture rotated.
inline const std::vector<Rhombus>& table_row(RKind k) {
  static const std::vector<Rhombus> a = {{2, 2, 1, 0}, {0, 2, 1, 0}, {2, 0, 0, 1}, {0, 0, 1, 0},
                                         {7, 7, 1, -1}, {1, 1, 1, 0}, {4, 4, 1, 0}, {3, 1, 0, 1},
                                         {1, 3, 1, 0}, {3, 3, 1, 0}, {8, 4, 0, -1}};
  static const std::vector<Rhombus> b = {{3, 3, 1, 0}, {0, 3, 0, 1}, {3, 0, 1, 0}, {0, 0, 1, 0},
                                         {6, 6, 1, -1}, {1, 1, 1, 0}, {2, 2, 1, 0}, {4, 1, 0, 1},
                                         {1, 4, 1, 0}, {4, 4, 1, 0}, {8, 2, -1, 0}};
  static const std::vector<Rhombus> c = {{4, 4, 1, 0}, {0, 4, 1, 0}, {4, 0, 0, 1}, {0, 0, 1, 0},
                                         {5, 5, 1, -1}, {1, 1, 1, 0}, {3, 3, 1, 0}, {2, 1, 1, 0},
                                         {1, 2, 0, 1}, {2, 2, 1, 0}, {8, 3, -1, 0}};
  return k == RKind::A ? a : k == RKind::B ? b : c;
}

struct TileCatalogue {
  std::vector<Tile> up;          // puzzle tiles (horizontal gluing)
  std::vector<Tile> down;
  std::vector<Tile> all_up;      // union over the three gluings
  std::vector<Tile> all_down;
  std::map<RKind, RhombusWeightRow> rows;
};

namespace detail {

inline void add_unique(std::vector<Tile>& v, const Tile& t) {
  for (auto& u : v)
    if (u == t) return;
  v.push_back(t);
}

inline Tile make_tile(Orient o, Edge h, Edge l, Edge r) {
  Tile t{tile_id_of(o, h, l, r), o, h, l, r};
  if (t.id < 0 || !conserves(t)) throw InconsistentCatalogue("derived triangle not in the tile pictures");
  return t;
}

}  // namespace detail

// Split every nonzero R-matrix entry into its up and down triangles.
inline TileCatalogue derive_tiles(const RTable& ta = rank2_table(RKind::A), const RTable& tb = rank2_table(RKind::B),
                                  const RTable& tc = rank2_table(RKind::C)) {
  TileCatalogue cat;
  for (RKind kind : {RKind::B, RKind::A, RKind::C}) {
    const RTable& t = kind == RKind::A ? ta : kind == RKind::B ? tb : tc;
    RhombusWeightRow row{kind, {}};
    for (auto& e : t) {
      int ia = (e.row - 1) / 3 + 1, ib = (e.row - 1) % 3 + 1;
      int ja = (e.col - 1) / 3 + 1, jb = (e.col - 1) % 3 + 1;
      Tile up{}, dn{};
      switch (kind) {
        case RKind::A: {  // glued along the horizontal edge
          Edge ul = edge_60(ia), dl = edge_120(ib), dr = edge_60(ja), ur = edge_120(jb);
          Edge hu = static_cast<Edge>(ul ^ ur), hd = static_cast<Edge>(dl ^ dr);
          if (hu != hd) throw InconsistentCatalogue("horizontal glue mismatch");
          up = detail::make_tile(Orient::Up, hu, ul, ur);
          dn = detail::make_tile(Orient::Down, hd, dl, dr);
          break;
        }
        case RKind::C: {  // glued along up.R = down.L
          Edge ul = edge_60(ia), ub = edge_horizontal(ib), dr = edge_60(ja), dt = edge_horizontal(jb);
          Edge gu = static_cast<Edge>(ul ^ ub), gd = static_cast<Edge>(dr ^ dt);
          if (gu != gd) throw InconsistentCatalogue("120-degree glue mismatch");
          up = detail::make_tile(Orient::Up, ub, ul, gu);
          dn = detail::make_tile(Orient::Down, dt, gd, dr);
          break;
        }
        case RKind::B: {  // glued along up.L = down.R
          Edge dl = edge_120(ia), ub = edge_horizontal(ib), ur = edge_120(ja), dt = edge_horizontal(jb);
          Edge gu = static_cast<Edge>(ub ^ ur), gd = static_cast<Edge>(dl ^ dt);
          if (gu != gd) throw InconsistentCatalogue("60-degree glue mismatch");
          up = detail::make_tile(Orient::Up, ub, gu, ur);
          dn = detail::make_tile(Orient::Down, dt, dl, gd);
          break;
        }
      }
      Rhombus rh{up.id, dn.id, e.c0, e.c1};
      for (auto& o : row.entries)
        if (o.up == rh.up && o.down == rh.down && !(o == rh))
          throw InconsistentCatalogue("conflicting weights for one rhombus");
      row.entries.push_back(rh);
      detail::add_unique(cat.all_up, up);
      detail::add_unique(cat.all_down, dn);
      if (kind == RKind::A) {
        detail::add_unique(cat.up, up);
        detail::add_unique(cat.down, dn);
      }
    }
    // Reorder into table column order and confirm the weights.
    const auto& ref = table_row(kind);
    if (row.entries.size() != ref.size()) throw InconsistentCatalogue("row size differs from the weight table");
    for (auto& r : ref) {
      bool found = false;
      for (auto& d : row.entries) found = found || d == r;
      if (!found) throw InconsistentCatalogue(std::string("row ") + kind_name(kind) + " disagrees with the weight table");
    }
    row.entries = ref;
    cat.rows[kind] = row;
  }
  auto by_id = [](const Tile& a, const Tile& b) { return a.id < b.id; };
  std::sort(cat.up.begin(), cat.up.end(), by_id);
  std::sort(cat.down.begin(), cat.down.end(), by_id);
  std::sort(cat.all_up.begin(), cat.all_up.end(), by_id);
  std::sort(cat.all_down.begin(), cat.all_down.end(), by_id);
  return cat;
}

inline const TileCatalogue& catalogue() {
  static const TileCatalogue c = derive_tiles();
  return c;
}

// ---------------------------------------------------------------------------
// Weight schemes for horizontally glued rhombi
// ---------------------------------------------------------------------------

enum class WeightTable { Standard, Modified };

// Standard: first table row. Modified: the same tiles carrying the weights of
// the corresponding columns of the third row.
inline const std::vector<Rhombus>& scheme_rhombi(WeightTable t) {
  static const std::vector<Rhombus> standard = table_row(RKind::A);
  static const std::vector<Rhombus> modified = [] {
    auto r = table_row(RKind::A);
    const auto& c = table_row(RKind::C);
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i].c0 = c[i].c0;
      r[i].c1 = c[i].c1;
    }
    return r;
  }();
  return t == WeightTable::Standard ? standard : modified;
}

inline const Rhombus* find_rhombus(WeightTable t, int up, int down) {
  for (auto& r : scheme_rhombi(t))
    if (r.up == up && r.down == down) return &r;
  return nullptr;
}

}  // namespace kpz

#pragma once

#include "algebra.hpp"
#include "grothendieck.hpp"
#include "vertexmodel.hpp"
#include "young.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kpz {

struct InconsistentCardinality : std::invalid_argument {
  explicit InconsistentCardinality(const std::string& m) : std::invalid_argument(m) {}
};

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------
//
// Lattice point (a, b) sits at a*(1,0) + b*(1/2, sqrt(3)/2).
// Up cell U(a,b):   vertices (a,b), (a+1,b), (a,b+1).
// Down cell D(a,b): vertices (a+1,b), (a,b+1), (a+1,b+1).
// Edge 0 is horizontal, 1 is left, 2 is right. Shared edges:
//   D(a,b).0 = U(a,b+1).0,  D(a,b).1 = U(a,b).2,  D(a,b).2 = U(a+1,b).1.
// An elementary lozenge is D(a,b) glued to U(a,b+1).

enum class Shape { TriUp, TriDown, Lozenge };

inline const char* shape_name(Shape s) {
  return s == Shape::TriUp ? "TriUp" : s == Shape::TriDown ? "TriDown" : "Lozenge";
}

inline Shape parse_shape(const std::string& s) {
  if (s == "TriUp") return Shape::TriUp;
  if (s == "TriDown") return Shape::TriDown;
  if (s == "Lozenge") return Shape::Lozenge;
  throw std::invalid_argument("unknown domain " + s);
}

struct Cell {
  Orient orient;
  int a, b;
  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class EdgeKind { H, D60, D120 };

inline EdgeKind edge_kind(Orient o, int e) {
  if (e == 0) return EdgeKind::H;
  if (o == Orient::Up) return e == 1 ? EdgeKind::D60 : EdgeKind::D120;
  return e == 1 ? EdgeKind::D120 : EdgeKind::D60;
}

struct SideEdge {
  int cell;  // index into Domain::cells()
  int edge;
  EdgeKind kind;
};

class Domain {
 public:
  Domain(Shape s, int n) : shape_(s), n_(n) {
    if (n < 1) throw std::invalid_argument("domain size must be positive");
    height_ = s == Shape::Lozenge ? 2 * n : n;
    index_.assign(static_cast<std::size_t>(2 * n * height_), -1);
    for (int b = 0; b < height_; ++b)
      for (int a = 0; a < n; ++a)
        for (Orient o : {Orient::Up, Orient::Down})
          if (member(o, a, b)) {
            index_[slot(o, a, b)] = static_cast<int>(cells_.size());
            cells_.push_back({o, a, b});
          }
    build_sides();
    build_rows();
  }

  Shape shape() const { return shape_; }
  int n() const { return n_; }
  const std::vector<Cell>& cells() const { return cells_; }

  int index(Orient o, int a, int b) const {
    if (a < 0 || a >= n_ || b < 0 || b >= height_) return -1;
    return index_[slot(o, a, b)];
  }
  int index(const Cell& c) const { return index(c.orient, c.a, c.b); }

  // Neighbour across edge e of cell i: (cell index or -1, its edge number).
  std::pair<int, int> neighbour(int i, int e) const {
    const Cell& c = cells_[i];
    if (c.orient == Orient::Up) {
      if (e == 0) return {index(Orient::Down, c.a, c.b - 1), 0};
      if (e == 1) return {index(Orient::Down, c.a - 1, c.b), 2};
      return {index(Orient::Down, c.a, c.b), 1};
    }
    if (e == 0) return {index(Orient::Up, c.a, c.b + 1), 0};
    if (e == 1) return {index(Orient::Up, c.a, c.b), 2};
    return {index(Orient::Up, c.a + 1, c.b), 1};
  }

  std::vector<std::string> side_names() const {
    std::vector<std::string> v;
    for (auto& [k, s] : sides_) v.push_back(k);
    return v;
  }

  // Side edges in their forward reading direction:
  //   TriUp:   left (bottom to apex), right (apex to bottom-right), bottom (left to right)
  //   TriDown: top (left to right), left (top-left to bottom), right (bottom to top-right)
  //   Lozenge: tl (left to top), tr (top to right), br (bottom to right), bl (left to bottom)
  const std::vector<SideEdge>& side(const std::string& name) const {
    auto it = sides_.find(name);
    if (it == sides_.end()) throw std::invalid_argument(std::string("no side '") + name + "' on " + shape_name(shape_));
    return it->second;
  }

  // Display addressing: rows numbered 1.. from the top, columns 1.. left to right.
  std::pair<int, int> row_col(int i) const { return rowcol_[i]; }
  int rows() const { return height_; }
  int cell_at(int row, int col) const {
    if (row < 1 || row > height_) return -1;
    const auto& r = by_row_[row - 1];
    if (col < 1 || col > static_cast<int>(r.size())) return -1;
    return r[col - 1];
  }

  // Horizontal edges on the lozenge diagonal b = n, left to right.
  std::vector<SideEdge> midline() const {
    if (shape_ != Shape::Lozenge) throw std::invalid_argument("midline needs a lozenge");
    std::vector<SideEdge> v;
    for (int a = 0; a < n_; ++a) v.push_back({index(Orient::Up, a, n_), 0, EdgeKind::H});
    return v;
  }

 private:
  std::size_t slot(Orient o, int a, int b) const {
    return static_cast<std::size_t>(((o == Orient::Up ? 0 : 1) * n_ + a) * height_ + b);
  }

  bool member(Orient o, int a, int b) const {
    const int n = n_;
    switch (shape_) {
      case Shape::TriUp: return o == Orient::Up ? a + b <= n - 1 : a + b <= n - 2;
      case Shape::TriDown: return o == Orient::Up ? (a + b >= n && b <= n - 1) : (a + b >= n - 1 && b <= n - 1);
      case Shape::Lozenge:
        return o == Orient::Up ? (b >= n - a && b <= 2 * n - a - 1) : (b >= n - a - 1 && b <= 2 * n - a - 2);
    }
    return false;
  }

  void add_side(const std::string& name, std::vector<std::pair<Cell, int>> es) {
    std::vector<SideEdge> v;
    for (auto& [c, e] : es) {
      int i = index(c);
      if (i < 0) throw std::logic_error("side edge outside domain");
      v.push_back({i, e, edge_kind(c.orient, e)});
    }
    sides_[name] = v;
  }

  void build_sides() {
    const int n = n_;
    std::vector<std::pair<Cell, int>> s1, s2, s3, s4;
    switch (shape_) {
      case Shape::TriUp:
        for (int b = 0; b < n; ++b) s1.push_back({{Orient::Up, 0, b}, 1});
        for (int a = 0; a < n; ++a) s2.push_back({{Orient::Up, a, n - 1 - a}, 2});
        for (int a = 0; a < n; ++a) s3.push_back({{Orient::Up, a, 0}, 0});
        add_side("left", s1);
        add_side("right", s2);
        add_side("bottom", s3);
        break;
      case Shape::TriDown:
        for (int a = 0; a < n; ++a) s1.push_back({{Orient::Down, a, n - 1}, 0});
        for (int a = 0; a < n; ++a) s2.push_back({{Orient::Down, a, n - 1 - a}, 1});
        for (int b = 0; b < n; ++b) s3.push_back({{Orient::Down, n - 1, b}, 2});
        add_side("top", s1);
        add_side("left", s2);
        add_side("right", s3);
        break;
      case Shape::Lozenge:
        for (int b = 0; b < n; ++b) s1.push_back({{Orient::Up, 0, n + b}, 1});
        for (int a = 0; a < n; ++a) s2.push_back({{Orient::Up, a, 2 * n - 1 - a}, 2});
        for (int b = 0; b < n; ++b) s3.push_back({{Orient::Down, n - 1, b}, 2});
        for (int a = 0; a < n; ++a) s4.push_back({{Orient::Down, a, n - 1 - a}, 1});
        add_side("tl", s1);
        add_side("tr", s2);
        add_side("br", s3);
        add_side("bl", s4);
        break;
    }
  }

  void build_rows() {
    by_row_.assign(static_cast<std::size_t>(height_), {});
    for (int i = 0; i < static_cast<int>(cells_.size()); ++i) by_row_[height_ - 1 - cells_[i].b].push_back(i);
    rowcol_.assign(cells_.size(), {0, 0});
    for (int r = 0; r < height_; ++r) {
      auto& v = by_row_[r];
      // twice the x coordinate of the centroid orders a row left to right
      auto x2 = [&](int i) {
        const Cell& c = cells_[i];
        return 6 * c.a + 3 * c.b + (c.orient == Orient::Up ? 3 : 6);
      };
      std::sort(v.begin(), v.end(), [&](int p, int q) { return x2(p) < x2(q); });
      for (int c = 0; c < static_cast<int>(v.size()); ++c) rowcol_[v[c]] = {r + 1, c + 1};
    }
  }

  Shape shape_;
  int n_;
  int height_;
  std::vector<Cell> cells_;
  std::vector<int> index_;
  std::map<std::string, std::vector<SideEdge>> sides_;
  std::vector<std::vector<int>> by_row_;
  std::vector<std::pair<int, int>> rowcol_;
};

// ---------------------------------------------------------------------------
// Boundary encoding
// ---------------------------------------------------------------------------

struct SideSpec {
  std::string side;
  YoungDiagram diagram;
  bool reversed{false};
};

// Fixed edge states, indexed 3*cell + edge; -1 when free.
struct Boundary {
  std::vector<int> state;
  Edge at(int cell, int e) const { return static_cast<Edge>(state[3 * cell + e]); }
  bool fixed(int cell, int e) const { return state[3 * cell + e] >= 0; }
};

// Position p (1-based along the reading direction) is in the frame:
//   horizontal side -> green, else red; 60-degree -> green, else empty;
//   120-degree -> empty, else red.
inline Edge side_state(EdgeKind kind, bool in_frame) {
  switch (kind) {
    case EdgeKind::H: return in_frame ? Green : Red;
    case EdgeKind::D60: return in_frame ? Green : Empty;
    case EdgeKind::D120: return in_frame ? Empty : Red;
  }
  return Empty;
}

inline Boundary encode_boundary(const Domain& d, const std::vector<SideSpec>& specs) {
  Boundary bd{std::vector<int>(3 * d.cells().size(), -1)};
  std::optional<int> k;
  for (auto& s : specs) {
    const auto& side = d.side(s.side);
    if (s.diagram.n() != d.n()) throw std::invalid_argument("diagram box does not match domain size");
    if (k && *k != s.diagram.k()) throw InconsistentCardinality("diagrams imply different k");
    k = s.diagram.k();
    auto f = s.diagram.frame();
    std::set<int> fs(f.begin(), f.end());
    const int n = static_cast<int>(side.size());
    for (int p = 0; p < n; ++p) {
      int pos = s.reversed ? n - p : p + 1;
      bd.state[3 * side[p].cell + side[p].edge] = side_state(side[p].kind, fs.count(pos) > 0);
    }
  }
  return bd;
}

// Reads a side back into a frame; std::nullopt if some edge is not a valid boundary state.
inline std::optional<std::vector<int>> decode_side(const Domain& d, const std::vector<Edge>& edges, const std::string& name,
                                                   bool reversed) {
  const auto& side = d.side(name);
  std::vector<int> f;
  const int n = static_cast<int>(side.size());
  for (int p = 0; p < n; ++p) {
    int pos = reversed ? n - p : p + 1;
    Edge e = edges[p];
    bool in;
    if (e == side_state(side[p].kind, true)) in = true;
    else if (e == side_state(side[p].kind, false)) in = false;
    else return std::nullopt;
    if (in) f.push_back(pos);
  }
  std::sort(f.begin(), f.end());
  return f;
}

// ---------------------------------------------------------------------------
// Puzzles
// ---------------------------------------------------------------------------

struct Puzzle {
  Shape shape;
  int n;
  std::vector<std::int8_t> tiles;  // tile id per cell, in Domain::cells() order

  friend bool operator==(const Puzzle&, const Puzzle&) = default;
  friend bool operator<(const Puzzle& p, const Puzzle& q) { return p.tiles < q.tiles; }
};

inline const Tile& cell_tile(const Domain& d, const Puzzle& p, int i) { return tile(d.cells()[i].orient, p.tiles[i]); }

inline Edge cell_edge(const Domain& d, const Puzzle& p, int i, int e) {
  const Tile& t = cell_tile(d, p, i);
  return e == 0 ? t.h : e == 1 ? t.l : t.r;
}

inline std::vector<Edge> side_edges(const Domain& d, const Puzzle& p, const std::string& name) {
  std::vector<Edge> v;
  for (auto& s : d.side(name)) v.push_back(cell_edge(d, p, s.cell, s.edge));
  return v;
}

inline int k_tile_count(const Domain& d, const Puzzle& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.tiles.size(); ++i)
    if (d.cells()[i].orient == Orient::Up && p.tiles[i] == kKTile) ++c;
  return c;
}

// Elementary lozenges D(a,b) + U(a,b+1) as (down index, up index).
inline std::vector<std::pair<int, int>> elementary_lozenges(const Domain& d) {
  std::vector<std::pair<int, int>> v;
  for (int i = 0; i < static_cast<int>(d.cells().size()); ++i) {
    const Cell& c = d.cells()[i];
    if (c.orient != Orient::Down) continue;
    int u = d.index(Orient::Up, c.a, c.b + 1);
    if (u >= 0) v.emplace_back(i, u);
  }
  return v;
}

inline int equivariant_count(const Domain& d, const Puzzle& p) {
  int c = 0;
  for (auto [dn, up] : elementary_lozenges(d))
    if (p.tiles[dn] == 7 && p.tiles[up] == 7) ++c;
  return c;
}

// Structural validity: catalogue tiles, continuity, boundary agreement.
inline bool is_valid(const Domain& d, const Puzzle& p, const Boundary* bd = nullptr) {
  if (p.tiles.size() != d.cells().size()) return false;
  const auto& cat = catalogue();
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    const auto& set = d.cells()[i].orient == Orient::Up ? cat.up : cat.down;
    if (std::none_of(set.begin(), set.end(), [&](const Tile& t) { return t.id == p.tiles[i]; })) return false;
  }
  for (int i = 0; i < static_cast<int>(p.tiles.size()); ++i)
    for (int e = 0; e < 3; ++e) {
      auto [j, f] = d.neighbour(i, e);
      if (j >= 0 && cell_edge(d, p, i, e) != cell_edge(d, p, j, f)) return false;
      if (bd && bd->fixed(i, e) && bd->at(i, e) != cell_edge(d, p, i, e)) return false;
    }
  return true;
}

struct EnumerateOptions {
  bool reverse_scan{false};
};

namespace detail {

class Enumerator {
 public:
  Enumerator(const Domain& d, const Boundary& bd, bool reverse) : d_(d), bd_(bd) {
    const int nc = static_cast<int>(d.cells().size());
    order_.resize(nc);
    for (int i = 0; i < nc; ++i) order_[i] = i;
    // Rows bottom to top; within a row U(a,b) precedes D(a,b).
    auto key = [&](int i) {
      const Cell& c = d.cells()[i];
      return std::make_tuple(c.b, c.a, c.orient == Orient::Up ? 0 : 1);
    };
    std::sort(order_.begin(), order_.end(), [&](int p, int q) { return key(p) < key(q); });
    if (reverse) std::reverse(order_.begin(), order_.end());
    pos_.assign(nc, 0);
    for (int i = 0; i < nc; ++i) pos_[order_[i]] = i;
    // Row starts carry a frontier used to memoise dead ends.
    frontier_.assign(nc + 1, {});
    is_cut_.assign(nc + 1, false);
    for (int s = 1; s < nc; ++s) {
      if (d.cells()[order_[s]].b == d.cells()[order_[s - 1]].b) continue;
      is_cut_[s] = true;
      for (int t = 0; t < s; ++t)
        for (int e = 0; e < 3; ++e) {
          auto [j, f] = d.neighbour(order_[t], e);
          if (j >= 0 && pos_[j] >= s) frontier_[s].emplace_back(order_[t], e);
        }
    }
    assigned_.assign(nc, -1);
    const auto& cat = catalogue();
    ups_ = cat.up;
    downs_ = cat.down;
  }

  std::vector<Puzzle> run() {
    rec(0);
    std::sort(out_.begin(), out_.end());
    return out_;
  }

 private:
  int edge_constraint(int i, int e) const {
    if (bd_.fixed(i, e)) return bd_.state[3 * i + e];
    auto [j, f] = d_.neighbour(i, e);
    if (j >= 0 && assigned_[j] >= 0) {
      const Tile& t = tile(d_.cells()[j].orient, assigned_[j]);
      return f == 0 ? t.h : f == 1 ? t.l : t.r;
    }
    return -1;
  }

  std::string cut_key(int s) const {
    std::string k(frontier_[s].size(), '\0');
    for (std::size_t q = 0; q < frontier_[s].size(); ++q) {
      auto [i, e] = frontier_[s][q];
      const Tile& t = tile(d_.cells()[i].orient, assigned_[i]);
      k[q] = static_cast<char>('0' + (e == 0 ? t.h : e == 1 ? t.l : t.r));
    }
    return std::to_string(s) + ":" + k;
  }

  bool rec(int s) {
    const int nc = static_cast<int>(order_.size());
    if (s == nc) {
      Puzzle p{d_.shape(), d_.n(), std::vector<std::int8_t>(nc)};
      for (int i = 0; i < nc; ++i) p.tiles[i] = static_cast<std::int8_t>(assigned_[i]);
      out_.push_back(std::move(p));
      return true;
    }
    std::string key;
    if (is_cut_[s]) {
      key = cut_key(s);
      if (dead_.count(key)) return false;
    }
    int i = order_[s];
    int c0 = edge_constraint(i, 0), c1 = edge_constraint(i, 1), c2 = edge_constraint(i, 2);
    bool any = false;
    for (const Tile& t : d_.cells()[i].orient == Orient::Up ? ups_ : downs_) {
      if ((c0 >= 0 && c0 != t.h) || (c1 >= 0 && c1 != t.l) || (c2 >= 0 && c2 != t.r)) continue;
      assigned_[i] = t.id;
      any = rec(s + 1) || any;
      assigned_[i] = -1;
    }
    if (is_cut_[s] && !any) dead_.insert(key);
    return any;
  }

  const Domain& d_;
  const Boundary& bd_;
  std::vector<int> order_, pos_, assigned_;
  std::vector<std::vector<std::pair<int, int>>> frontier_;
  std::vector<bool> is_cut_;
  std::unordered_set<std::string> dead_;
  std::vector<Tile> ups_, downs_;
  std::vector<Puzzle> out_;
};

}  // namespace detail

// All puzzles on the domain matching the boundary, in canonical (tile-vector) order.
inline std::vector<Puzzle> enumerate(const Domain& d, const Boundary& bd, EnumerateOptions opt = {}) {
  return detail::Enumerator(d, bd, opt.reverse_scan).run();
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

// Which (i, j) an elementary lozenge D(a,b)+U(a,b+1) reads, with w = numer_i / denom_j.
enum class CoordRule {
  UpTriangle,       // (a+b+2, a+1)
  DownTriangle,     // (a+b+2-n, a+1)
  LozengeStandard,  // (a+b+2-n, a+1)
  LozengeModified,  // (2n-a-b-1, a+1)
};

inline std::pair<int, int> rhombus_coordinates(CoordRule r, int a, int b, int n) {
  switch (r) {
    case CoordRule::UpTriangle: return {a + b + 2, a + 1};
    case CoordRule::DownTriangle:
    case CoordRule::LozengeStandard: return {a + b + 2 - n, a + 1};
    case CoordRule::LozengeModified: return {2 * n - a - b - 1, a + 1};
  }
  return {0, 0};
}

struct WeightScheme {
  WeightTable table{WeightTable::Standard};
  CoordRule coords{CoordRule::UpTriangle};
  Alphabet numer;
  Alphabet denom;

  std::pair<int, int> ij(int a, int b, int n) const { return rhombus_coordinates(coords, a, b, n); }

  RationalFunction w(int a, int b, int n) const {
    auto [i, j] = ij(a, b, n);
    if (i < 1 || j < 1 || i > static_cast<int>(numer.size()) || j > static_cast<int>(denom.size()))
      throw std::out_of_range("rhombus coordinate outside the alphabets");
    return numer[i - 1] / denom[j - 1];
  }
};

// Product of the elementary lozenge weights; unpaired triangles weigh 1.
inline RationalFunction weight(const Domain& d, const Puzzle& p, const WeightScheme& s) {
  RationalFunction w(1);
  for (auto [dn, up] : elementary_lozenges(d)) {
    const Rhombus* r = find_rhombus(s.table, p.tiles[up], p.tiles[dn]);
    if (!r) throw std::logic_error("glued pair missing from the weight table");
    if (r->c1 == 0) {
      if (r->c0 != 1) w *= RationalFunction(r->c0);
      continue;
    }
    const Cell& c = d.cells()[dn];
    w *= r->weight(s.w(c.a, c.b, d.n()));
  }
  return w;
}

// Weight evaluated at a point: alphabets are evaluated once, then multiplied in Q.
inline mpq_class weight_at(const Domain& d, const Puzzle& p, const WeightScheme& s, const std::vector<mpq_class>& numer,
                           const std::vector<mpq_class>& denom) {
  mpq_class w(1);
  for (auto [dn, up] : elementary_lozenges(d)) {
    const Rhombus* r = find_rhombus(s.table, p.tiles[up], p.tiles[dn]);
    if (!r) throw std::logic_error("glued pair missing from the weight table");
    if (r->c1 == 0) {
      w *= r->c0;
      continue;
    }
    const Cell& c = d.cells()[dn];
    auto [i, j] = s.ij(c.a, c.b, d.n());
    if (i < 1 || j < 1 || i > static_cast<int>(numer.size()) || j > static_cast<int>(denom.size()))
      throw std::out_of_range("rhombus coordinate outside the alphabets");
    w *= r->c0 + r->c1 * (numer[i - 1] / denom[j - 1]);
  }
  return w;
}

}  // namespace kpz

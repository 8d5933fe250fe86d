#pragma once

#include "coeffs.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpz {

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::json puzzle_to_json(const Puzzle& p, const std::optional<RationalFunction>& w = std::nullopt) {
  Domain d(p.shape, p.n);
  nlohmann::json cells = nlohmann::json::array();
  for (int i = 0; i < static_cast<int>(p.tiles.size()); ++i) {
    auto [row, col] = d.row_col(i);
    const Tile& t = cell_tile(d, p, i);
    cells.push_back({{"row", row},
                     {"col", col},
                     {"orient", t.orient == Orient::Up ? "up" : "down"},
                     {"tile", t.id},
                     {"edges", {edge_name(t.h), edge_name(t.l), edge_name(t.r)}}});
  }
  nlohmann::json j = {{"schema", kSchemaVersion},
                      {"domain", shape_name(p.shape)},
                      {"n", p.n},
                      {"cells", cells},
                      {"k_tiles", k_tile_count(d, p)}};
  if (w) j["weight"] = w->to_string();
  return j;
}

inline Puzzle puzzle_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<int>() != kSchemaVersion) throw std::invalid_argument("unsupported schema version");
    Shape s = parse_shape(j.at("domain").get<std::string>());
    int n = j.at("n").get<int>();
    Domain d(s, n);
    Puzzle p{s, n, std::vector<std::int8_t>(d.cells().size(), -1)};
    for (auto& c : j.at("cells")) {
      int i = d.cell_at(c.at("row").get<int>(), c.at("col").get<int>());
      if (i < 0) throw std::invalid_argument("cell outside domain");
      Orient o = c.at("orient").get<std::string>() == "up" ? Orient::Up : Orient::Down;
      if (o != d.cells()[i].orient) throw std::invalid_argument("cell orientation mismatch");
      int id = c.at("tile").get<int>();
      tile(o, id);
      p.tiles[i] = static_cast<std::int8_t>(id);
    }
    for (auto t : p.tiles)
      if (t < 0) throw std::invalid_argument("missing cell");
    if (!is_valid(d, p)) throw std::invalid_argument("tiles do not match across edges");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed puzzle JSON: ") + e.what());
  }
}

inline nlohmann::json expansion_to_json(Rule rule, const YoungDiagram& lam, const YoungDiagram& mu,
                                        const std::vector<std::pair<YoungDiagram, RationalFunction>>& terms) {
  nlohmann::json cs = nlohmann::json::array();
  for (auto& [nu, c] : terms)
    if (!c.is_zero()) cs.push_back({{"nu", nu.to_string()}, {"value", c.to_string()}});
  return {{"schema", kSchemaVersion}, {"rule", rule_name(rule)}, {"k", lam.k()}, {"n", lam.n()},
          {"lambda", lam.to_string()}, {"mu", mu.to_string()}, {"coefficients", cs}};
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

struct RenderStyle {
  std::string red{"#d62728"};
  std::string green{"#2ca02c"};
  std::string k_fill{"#f4c542"};
  std::string equivariant_fill{"#9ecae1"};
  std::string cell_fill{"#ffffff"};
  std::string outline{"#444444"};
  double scale{40.0};  // pixels per lattice unit
  double line_width{3.0};
};

namespace detail {

// Lattice point (a, b) in exact half-units: (2a + b, b).
struct HalfPoint {
  int x2, y;
};

inline std::array<HalfPoint, 3> cell_vertices(const Cell& c) {
  if (c.orient == Orient::Up) return {{{2 * c.a + c.b, c.b}, {2 * c.a + 2 + c.b, c.b}, {2 * c.a + c.b + 1, c.b + 1}}};
  return {{{2 * c.a + 2 + c.b, c.b}, {2 * c.a + c.b + 1, c.b + 1}, {2 * c.a + c.b + 3, c.b + 1}}};
}

// Endpoints of edge e (0 horizontal, 1 left, 2 right).
inline std::pair<HalfPoint, HalfPoint> cell_edge_ends(const Cell& c, int e) {
  auto v = cell_vertices(c);
  if (c.orient == Orient::Up) {
    if (e == 0) return {v[0], v[1]};
    if (e == 1) return {v[0], v[2]};
    return {v[1], v[2]};
  }
  if (e == 0) return {v[1], v[2]};
  if (e == 1) return {v[1], v[0]};
  return {v[0], v[2]};
}

class SvgCanvas {
 public:
  SvgCanvas(double scale, int height) : s_(scale), h_(height) {}
  double px(double x2) const { return margin + s_ * x2 / 2.0; }
  double py(double y) const { return margin + s_ * (h_ - y) * std::sqrt(3.0) / 2.0; }
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }
  static constexpr double margin = 10.0;

 private:
  double s_;
  int h_;
};

}  // namespace detail

// One polygon per cell; each coloured edge state is a segment from the edge
// midpoint to the cell centroid, so colour lines run continuously.
inline std::string render_svg(const Puzzle& p, const RenderStyle& st = {}) {
  Domain d(p.shape, p.n);
  const int height = d.rows();
  int max_x2 = 0;
  for (auto& c : d.cells())
    for (auto& v : detail::cell_vertices(c)) max_x2 = std::max(max_x2, v.x2);
  detail::SvgCanvas cv(st.scale, height);
  using detail::SvgCanvas;
  const double width = 2 * SvgCanvas::margin + st.scale * max_x2 / 2.0;
  const double hpx = 2 * SvgCanvas::margin + st.scale * height * std::sqrt(3.0) / 2.0;

  std::set<int> equivariant;
  for (auto [dn, up] : elementary_lozenges(d))
    if (p.tiles[dn] == 7 && p.tiles[up] == 7) equivariant.insert({dn, up});

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << SvgCanvas::num(width) << "\" height=\""
    << SvgCanvas::num(hpx) << "\" viewBox=\"0 0 " << SvgCanvas::num(width) << ' ' << SvgCanvas::num(hpx) << "\">\n";
  o << "<g stroke=\"" << st.outline << "\" stroke-width=\"1\">\n";
  for (int i = 0; i < static_cast<int>(d.cells().size()); ++i) {
    const Cell& c = d.cells()[i];
    std::string fill = st.cell_fill;
    if (c.orient == Orient::Up && p.tiles[i] == kKTile) fill = st.k_fill;
    else if (equivariant.count(i)) fill = st.equivariant_fill;
    o << "<polygon points=\"";
    auto v = detail::cell_vertices(c);
    for (int q = 0; q < 3; ++q)
      o << (q ? " " : "") << SvgCanvas::num(cv.px(v[q].x2)) << ',' << SvgCanvas::num(cv.py(v[q].y));
    o << "\" fill=\"" << fill << "\"/>\n";
  }
  o << "</g>\n<g stroke-linecap=\"round\" fill=\"none\">\n";
  for (int i = 0; i < static_cast<int>(d.cells().size()); ++i) {
    const Cell& c = d.cells()[i];
    auto v = detail::cell_vertices(c);
    const double cx2 = (v[0].x2 + v[1].x2 + v[2].x2) / 3.0, cy = (v[0].y + v[1].y + v[2].y) / 3.0;
    for (int e = 0; e < 3; ++e) {
      Edge s = cell_edge(d, p, i, e);
      auto [u, w] = detail::cell_edge_ends(c, e);
      const double mx2 = (u.x2 + w.x2) / 2.0, my = (u.y + w.y) / 2.0;
      auto seg = [&](const std::string& colour, double width_px) {
        o << "<polyline points=\"" << SvgCanvas::num(cv.px(mx2)) << ',' << SvgCanvas::num(cv.py(my)) << ' '
          << SvgCanvas::num(cv.px(cx2)) << ',' << SvgCanvas::num(cv.py(cy)) << "\" stroke=\"" << colour
          << "\" stroke-width=\"" << SvgCanvas::num(width_px) << "\"/>\n";
      };
      // red+green: a wide red stroke under a narrow green one
      if (s & Red) seg(st.red, (s & Green) ? 2 * st.line_width : st.line_width);
      if (s & Green) seg(st.green, st.line_width);
    }
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

// <rule>_<lambda>_<mu>_<nu>_<index>.svg
inline std::string svg_file_name(Rule rule, const YoungDiagram& lam, const YoungDiagram& mu, const YoungDiagram& nu,
                                 int index) {
  return std::string(rule_name(rule)) + "_" + lam.slug() + "_" + mu.slug() + "_" + nu.slug() + "_" +
         std::to_string(index) + ".svg";
}

}  // namespace kpz

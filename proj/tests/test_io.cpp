#include "kpuzzle/io.hpp"

#include <gtest/gtest.h>

#include <regex>

using namespace kpz;

namespace {

YoungDiagram D(const char* s, BoxContext c) { return YoungDiagram::parse(s, c); }

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::vector<WeightedPuzzle> sample_puzzles() {
  std::vector<WeightedPuzzle> out;
  BoxContext c{2, 5};
  for (auto rule : {Rule::T2, Rule::T2d, Rule::T2dd, Rule::T3})
    for (auto& nu : diagrams_in_box(c))
      for (auto& wp : coefficient_detail({rule, D("3,1", c), D("2,1", c), nu, std::nullopt}).puzzles) out.push_back(wp);
  return out;
}

}  // namespace

TEST(Io, JsonRoundTrip) {
  auto ps = sample_puzzles();
  ASSERT_FALSE(ps.empty());
  for (auto& wp : ps) {
    auto j = puzzle_to_json(wp.puzzle, wp.weight);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(puzzle_from_json(nlohmann::json::parse(j.dump())), wp.puzzle);
    EXPECT_EQ(parse_rational(j["weight"].get<std::string>()), wp.weight);
  }
}

TEST(Io, MalformedJsonIsRejected) {
  BoxContext c{2, 5};
  auto wp = coefficient_detail({Rule::T2, D("2", c), D("1", c), D("3,1", c), std::nullopt}).puzzles.at(0);
  auto j = puzzle_to_json(wp.puzzle);
  auto bad = j;
  bad["schema"] = 2;
  EXPECT_THROW(puzzle_from_json(bad), std::invalid_argument);
  bad = j;
  bad["cells"].erase(0);
  EXPECT_THROW(puzzle_from_json(bad), std::invalid_argument);
  bad = j;
  bad.erase("n");
  EXPECT_THROW(puzzle_from_json(bad), std::invalid_argument);
  bad = j;
  for (auto& cell : bad["cells"])
    if (cell["orient"] == "up") cell["tile"] = cell["tile"] == 4 ? 0 : 4;
  EXPECT_THROW(puzzle_from_json(bad), std::invalid_argument);
}

TEST(Io, SvgOneCell) {
  auto ps = enumerate(Domain(Shape::TriUp, 1), encode_boundary(Domain(Shape::TriUp, 1), {}));
  ASSERT_FALSE(ps.empty());
  auto svg = render_svg(ps[0]);
  EXPECT_EQ(count(svg, "<polygon"), 1);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
}

TEST(Io, SvgCellCountAndKTile) {
  BoxContext c{2, 5};
  auto r = coefficient_detail({Rule::T2, D("2", c), D("1", c), D("3,1", c), std::nullopt});
  ASSERT_EQ(r.puzzles.size(), 1u);
  RenderStyle st;
  auto svg = render_svg(r.puzzles[0].puzzle, st);
  EXPECT_EQ(count(svg, "<polygon"), 25);
  EXPECT_EQ(count(svg, "fill=\"" + st.k_fill + "\""), r.puzzles[0].k_tiles);
  EXPECT_EQ(svg, render_svg(r.puzzles[0].puzzle, st));
}

TEST(Io, SvgMarksEquivariantRhombi) {
  BoxContext c{2, 5};
  auto r = coefficient_detail({Rule::T2, D("2", c), D("2,1", c), D("3,2", c), std::nullopt});
  RenderStyle st;
  int marked = 0, pairs = 0;
  Domain d(Shape::TriUp, 5);
  for (auto& wp : r.puzzles) {
    marked += count(render_svg(wp.puzzle, st), "fill=\"" + st.equivariant_fill + "\"");
    pairs += equivariant_count(d, wp.puzzle);
  }
  EXPECT_EQ(marked, 2 * pairs);
}

TEST(Io, SvgFileName) {
  BoxContext c{2, 5};
  EXPECT_EQ(svg_file_name(Rule::T2, D("2", c), D("", c), D("3,1", c), 4), "T2_2_0_3-1_4.svg");
}

TEST(Io, ExpansionJsonSkipsZeros) {
  BoxContext c{2, 4};
  auto terms = expand(Rule::T1d, D("2,2", c), D("2,1", c));
  auto j = expansion_to_json(Rule::T1d, D("2,2", c), D("2,1", c), terms);
  EXPECT_EQ(j["coefficients"].size(), 4u);
  EXPECT_EQ(j["rule"], "T1d");
}

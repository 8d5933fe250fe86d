#include "kpuzzle/vertexmodel.hpp"

#include <gtest/gtest.h>

using namespace kpz;

TEST(VertexModel, YangBaxterRank1) {
  auto r = ybe_check_rank1();
  EXPECT_EQ(r.components, 64);
  EXPECT_EQ(r.mismatches, 0);
}

TEST(VertexModel, YangBaxterRank2) {
  auto r = ybe_check_rank2();
  EXPECT_EQ(r.components, 729);
  EXPECT_EQ(r.mismatches, 0);
}

TEST(VertexModel, PerturbedTableBreaksYangBaxter) {
  auto t = rank2_table(RKind::A);
  ASSERT_FALSE(t.empty());
  t[0].c1 += 1;
  EXPECT_GT(ybe_check_rank2(t).mismatches, 0);
}

TEST(VertexModel, TileCatalogue) {
  const auto& cat = catalogue();
  EXPECT_EQ(cat.up.size(), 7u);
  EXPECT_EQ(cat.down.size(), 6u);
  for (auto k : {RKind::A, RKind::B, RKind::C}) EXPECT_EQ(cat.rows.at(k).entries.size(), 11u);
}

TEST(VertexModel, TilesConserveColour) {
  for (auto& t : reference_tiles())
    if (t.id != kKTile) {
      EXPECT_TRUE(conserves(t)) << t.id;
    }
}

TEST(VertexModel, RhombusWeights) {
  auto w = parse_rational("y1/y2");
  const auto* eq = find_rhombus(WeightTable::Standard, 7, 7);
  ASSERT_NE(eq, nullptr);
  EXPECT_EQ(eq->weight(w), parse_rational("1 - y1/y2"));
  const auto* k = find_rhombus(WeightTable::Standard, kKTile, 4);
  ASSERT_NE(k, nullptr);
  EXPECT_EQ(k->weight(w), -w);
}

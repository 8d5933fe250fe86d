#include "kpuzzle/young.hpp"

#include <gtest/gtest.h>

using namespace kpz;

namespace {

YoungDiagram D(const char* s, BoxContext c) { return YoungDiagram::parse(s, c); }

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Young, ParseAndValidate) {
  BoxContext c{2, 5};
  EXPECT_EQ(D("3,1", c).rows(), (std::vector<int>{3, 1}));
  EXPECT_TRUE(D("", c).empty());
  EXPECT_THROW(D("4", c), DoesNotFit);
  EXPECT_THROW(D("1,2", c), DoesNotFit);
  EXPECT_THROW(D("1,1,1", c), DoesNotFit);
  EXPECT_THROW(D("a", c), std::invalid_argument);
}

TEST(Young, FrameRoundTrip) {
  for (auto& l : diagrams_in_box({3, 6})) EXPECT_EQ(YoungDiagram::from_frame(l.frame(), l.context()), l);
  EXPECT_EQ(D("3,1", {2, 5}).frame(), (std::vector<int>{2, 5}));
}

TEST(Young, BoxCounts) {
  for (int n = 1; n <= 7; ++n)
    for (int k = 0; k <= n; ++k) EXPECT_EQ(static_cast<long>(diagrams_in_box({k, n}).size()), binom(n, k));
}

TEST(Young, DualIsInvolutionAndComplement) {
  BoxContext c{2, 5};
  EXPECT_EQ(D("3,1", c).dual(), D("2", c));
  for (auto& l : diagrams_in_box(c)) {
    EXPECT_EQ(l.dual().dual(), l);
    EXPECT_EQ(l.size() + l.dual().size(), c.k * c.width());
  }
}

TEST(Young, StripRelation) {
  BoxContext c{2, 5};
  EXPECT_TRUE(strip_rel(D("2,1", c), D("1", c)));
  EXPECT_TRUE(strip_rel(D("1", c), D("1", c)));
  EXPECT_FALSE(strip_rel(D("2", c), D("", c)));
  EXPECT_FALSE(strip_rel(D("1,1", c), D("", c)));
  EXPECT_FALSE(strip_rel(D("1", c), D("2", c)));
}

TEST(Young, Containment) {
  BoxContext c{2, 5};
  EXPECT_TRUE(D("3,1", c).contains(D("2,1", c)));
  EXPECT_FALSE(D("2,2", c).contains(D("3", c)));
}

TEST(Young, DiagramsWithin) {
  BoxContext c{2, 6};
  auto v = diagrams_within(c, 2, 2);
  EXPECT_EQ(v.size(), 6u);
  for (auto& l : v) EXPECT_TRUE(l.width() <= 2 && l.height() <= 2);
}

TEST(Young, Labels) {
  BoxContext c{2, 5};
  EXPECT_EQ(D("3,1", c).label(), "(3,1)");
  EXPECT_EQ(D("", c).label(), "()");
  EXPECT_EQ(D("3,1", c).slug(), "3-1");
  EXPECT_EQ(D("", c).slug(), "0");
}

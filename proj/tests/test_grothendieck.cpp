#include "kpuzzle/grothendieck.hpp"

#include <gtest/gtest.h>

using namespace kpz;

TEST(Grothendieck, ThreeConstructionsAgree) {
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k < n; ++k) {
      auto y = alphabet_y(n);
      for (auto& l : diagrams_in_box({k, n})) {
        auto a = groth_det(l, y);
        EXPECT_EQ(groth_inductive(l, y), a) << l;
        EXPECT_EQ(groth_lattice(l, y), a) << l;
      }
    }
}

TEST(Grothendieck, DualConstructionsAgree) {
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k < n; ++k) {
      auto y = alphabet_y(n);
      for (auto& l : diagrams_in_box({k, n})) {
        auto a = dual_groth(l, y);
        EXPECT_EQ(dual_groth_det(l, y), a) << l;
        EXPECT_EQ(dual_groth_lattice(l, y), a) << l;
      }
    }
}

TEST(Grothendieck, SmallCases) {
  BoxContext c{1, 2};
  EXPECT_EQ(groth_det(YoungDiagram({}, c), alphabet_y(2)), RationalFunction(1));
  EXPECT_EQ(groth_det(YoungDiagram({1}, c), alphabet_y(2)), parse_rational("1 - x1/y1"));
  EXPECT_EQ(dual_groth(YoungDiagram({1}, c), alphabet_y(2)), parse_rational("x1/y2"));
}

TEST(Grothendieck, TopClassIsFullProduct) {
  BoxContext c{2, 4};
  auto top = YoungDiagram({2, 2}, c);
  EXPECT_EQ(groth_det(top, alphabet_y(4)),
            parse_rational("(1 - x1/y1)*(1 - x1/y2)*(1 - x2/y1)*(1 - x2/y2)"));
}

TEST(Grothendieck, VanishesAtNonContainingFixedPoints) {
  BoxContext c{2, 4};
  auto y = alphabet_y(4);
  for (auto& nu : diagrams_in_box(c))
    for (auto& rho : diagrams_in_box(c)) {
      Bindings b;
      auto f = rho.frame();
      for (int i = 0; i < 2; ++i) b[xvar(i + 1)] = y[f[i] - 1];
      EXPECT_EQ(substitute(groth_det(nu, y), b).is_zero(), !rho.contains(nu)) << nu << rho;
    }
}

TEST(Grothendieck, StripIdentity) {
  auto z = alphabet_z(5);
  for (auto& mu : diagrams_within({2, 5}, 2, 2)) {
    auto [lhs, rhs] = strip_identity(mu, z);
    EXPECT_EQ(lhs, rhs) << mu;
  }
}

TEST(Grothendieck, AlphabetParsing) {
  EXPECT_EQ(parse_alphabet("rev", 3), reversed(alphabet_y(3)));
  EXPECT_EQ(parse_alphabet("1,2,3", 3)[1], RationalFunction(2));
  EXPECT_THROW(parse_alphabet("1,2", 3), std::invalid_argument);
  EXPECT_THROW(parse_alphabet("1,0,2", 3), std::invalid_argument);
}

TEST(Grothendieck, LatticeSizeLimit) {
  BoxContext c{1, 17};
  EXPECT_THROW(groth_lattice(YoungDiagram({}, c), alphabet_y(17)), StateSpaceTooLarge);
}

#include "kpuzzle/coeffs.hpp"

#include <gtest/gtest.h>

using namespace kpz;

namespace {

YoungDiagram D(const char* s, BoxContext c) { return YoungDiagram::parse(s, c); }
RationalFunction R(const char* s) { return parse_rational(s); }

}  // namespace

TEST(Coeffs, RuleNames) {
  for (auto r : all_rules()) EXPECT_EQ(parse_rule(rule_name(r)), r);
  EXPECT_THROW(parse_rule("T4"), std::invalid_argument);
}

TEST(Coeffs, NonEquivariantDualExample) {
  BoxContext c{2, 4};
  const char* nus[] = {"2,1", "2", "1,1", "1"};
  const int want[] = {1, -1, -1, 1};
  int puzzles = 0;
  for (int i = 0; i < 4; ++i) {
    auto r = coefficient_detail({Rule::T1d, D("2,2", c), D("2,1", c), D(nus[i], c), std::nullopt});
    EXPECT_EQ(r.value, RationalFunction(want[i])) << nus[i];
    puzzles += static_cast<int>(r.puzzles.size());
  }
  EXPECT_EQ(puzzles, 4);
}

TEST(Coeffs, EquivariantExamples) {
  BoxContext c{2, 5};
  EXPECT_EQ(coefficient(Rule::T2, D("2", c), D("1", c), D("3,1", c)), R("-y4/y2"));
  auto r = coefficient_detail({Rule::T2, D("2", c), D("2,1", c), D("3,2", c), std::nullopt});
  EXPECT_EQ(r.puzzles.size(), 2u);
  EXPECT_EQ(r.value, R("y4/(y1*y3)*(-y1 + y4 + y5)"));
}

TEST(Coeffs, IdentityElement) {
  BoxContext c{2, 5};
  YoungDiagram e({}, c);
  for (auto rule : {Rule::T1, Rule::T2})
    for (auto& l : diagrams_in_box(c))
      for (auto& nu : diagrams_in_box(c))
        EXPECT_EQ(coefficient(rule, l, e, nu), RationalFunction(l == nu ? 1 : 0)) << l << nu;
}

TEST(Coeffs, EquivariantSpecialisesToNonEquivariant) {
  BoxContext c{2, 4};
  Alphabets ones{alphabet_ones(4), alphabet_ones(4)};
  for (auto& l : diagrams_in_box(c))
    for (auto& m : diagrams_in_box(c))
      for (auto& nu : diagrams_in_box(c)) {
        EXPECT_EQ(coefficient(Rule::T2, l, m, nu, ones), coefficient(Rule::T1, l, m, nu)) << l << m << nu;
        EXPECT_EQ(coefficient(Rule::T2d, l, m, nu, ones), coefficient(Rule::T1d, l, m, nu)) << l << m << nu;
      }
}

TEST(Coeffs, TwoAlphabetRuleAtEqualAlphabets) {
  BoxContext c{2, 5};
  Alphabets same{alphabet_y(5), alphabet_y(5)};
  for (auto& nu : diagrams_in_box(c))
    EXPECT_EQ(coefficient(Rule::T2dd, D("3,1", c), D("2,2", c), nu, same),
              coefficient(Rule::T2d, D("3,1", c), D("2,2", c), nu))
        << nu;
}

TEST(Coeffs, ModifiedLozengeRuleMatchesStandard) {
  BoxContext c{2, 5};
  for (auto& nu : diagrams_in_box(c))
    EXPECT_EQ(coefficient(Rule::T3dd, D("3,1", c), D("2,2", c), nu),
              coefficient(Rule::T2dd, D("3,1", c), D("2,2", c), nu))
        << nu;
}

TEST(Coeffs, NumericAgreesWithSymbolic) {
  BoxContext c{2, 5};
  Point pt;
  for (int i = 1; i <= 5; ++i) {
    pt[yvar(i).key()] = mpq_class(i + 1) / 3;
    pt[zvar(i).key()] = mpq_class(2 * i + 7) / 5;
  }
  for (auto rule : all_rules())
    for (auto& nu : diagrams_in_box(c)) {
      CoeffQuery q{rule, D("2,1", c), D("1", c), nu, std::nullopt};
      EXPECT_EQ(coefficient_at(q, pt), coefficient(q).evaluate(pt)) << rule_name(rule) << nu;
    }
}

TEST(Coeffs, Associativity) {
  BoxContext c{2, 4};
  auto one = D("1", c), two = D("2", c);
  EXPECT_EQ(triple_coefficient(one, one, two, D("2,2", c), true), triple_coefficient(one, one, two, D("2,2", c), false));
}

TEST(Coeffs, StabilityBound) {
  BoxContext c{2, 4};
  EXPECT_EQ(stability_bound(D("2,1", c), D("1", c), 2), 2 * (2 + 1 + 2 + 2));
}

TEST(Coeffs, TreeExample) {
  BoxContext c{2, 5};
  EXPECT_EQ(tree_expectation(caterpillar(c, std::vector<YoungDiagram>(6, D("1", c)))), RationalFunction(5));
  EXPECT_THROW(caterpillar(c, {D("1", c), D("1", c)}), std::invalid_argument);
}

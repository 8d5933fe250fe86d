#include "kpuzzle/oracle.hpp"

#include <gtest/gtest.h>

using namespace kpz;

namespace {

YoungDiagram D(const char* s, BoxContext c) { return YoungDiagram::parse(s, c); }
RationalFunction R(const char* s) { return parse_rational(s); }

}  // namespace

TEST(Oracle, SamplerIsReproducible) {
  RationalSampler a(3), b(3);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.next(), b.next());
  std::set<mpq_class> used;
  auto v = RationalSampler(5).distinct(30, used);
  EXPECT_EQ(std::set<mpq_class>(v.begin(), v.end()).size(), 30u);
}

TEST(Oracle, ExpandInBasis) {
  BoxContext c{2, 4};
  auto ones = alphabet_ones(4);
  ExpansionProblem p{groth_det(D("1", c), ones) * groth_det(D("1", c), ones), {}, 2, 1};
  for (auto& nu : diagrams_in_box(c)) p.basis.emplace_back(nu, groth_det(nu, ones));
  auto e = expand_in_basis(p);
  for (auto& nu : diagrams_in_box(c)) {
    RationalFunction want = nu == D("2", c) || nu == D("1,1", c) ? 1 : nu == D("2,1", c) ? -1 : 0;
    EXPECT_EQ(e[nu], want) << nu;
  }
}

TEST(Oracle, IncompleteBasisIsDetected) {
  BoxContext c{2, 4};
  auto ones = alphabet_ones(4);
  ExpansionProblem p{groth_det(D("1", c), ones) * groth_det(D("1", c), ones), {}, 2, 1};
  for (auto& nu : diagrams_in_box(c))
    if (!(nu == D("2,1", c))) p.basis.emplace_back(nu, groth_det(nu, ones));
  EXPECT_THROW(expand_in_basis(p), std::exception);
}

TEST(Oracle, LocalizedExpansion) {
  BoxContext c{2, 4};
  auto y = alphabet_y(4);
  auto e = oracle_expand(Rule::T2, D("1", c), D("1", c));
  EXPECT_EQ(e[D("1", c)], R("1 - y3/y2"));
  EXPECT_EQ(e[D("2", c)], R("y3/y2"));
  EXPECT_EQ(e[D("2,1", c)], R("-y3/y2"));
}

TEST(Oracle, NumericAgreesWithSymbolicForDualRules) {
  BoxContext c{2, 4};
  auto pt = random_point(4, 11);
  for (auto rule : {Rule::T2d, Rule::T3d}) {
    auto sym = oracle_expand(rule, D("1", c), D("1", c));
    auto num = oracle_expand_at(rule, D("1", c), D("1", c), pt);
    for (auto& [nu, v] : num) EXPECT_EQ(sym[nu].evaluate(pt), v) << rule_name(rule) << nu;
  }
}

TEST(Oracle, RandomizedIdentity) {
  EXPECT_TRUE(verify_identity_randomized(R("(y1 + y2)^2"), R("y1^2 + 2*y1*y2 + y2^2"), 5));
  EXPECT_FALSE(verify_identity_randomized(R("(y1 + y2)^2"), R("y1^2 + y2^2"), 5));
  EXPECT_TRUE(verify_identity_randomized(R("1/(y1 - y2)"), R("-1/(y2 - y1)"), 5));
}

TEST(Oracle, CrossCheckPasses) {
  BoxContext small{2, 4};
  for (auto rule : {Rule::T1, Rule::T2, Rule::T3, Rule::T1d}) {
    auto r = cross_check(rule, D("1", small), D("1", small), {6});
    EXPECT_TRUE(r.ok()) << rule_name(rule) << " mismatches " << r.mismatches;
  }
  for (auto rule : {Rule::T2d, Rule::T3d, Rule::T2dd, Rule::T3dd}) {
    auto r = cross_check(rule, D("1", small), D("1", small), {0, Parametrization::Complement});
    EXPECT_TRUE(r.ok()) << rule_name(rule) << " mismatches " << r.mismatches;
  }
}

TEST(Oracle, TwoAlphabetRuleNeedsFullHeightFirstFactor) {
  BoxContext c{2, 5};
  auto lit = cross_check(Rule::T2dd, D("", c), D("", c), {5});
  EXPECT_FALSE(lit.ok());
  auto full = cross_check(Rule::T2dd, D("1,1", c), D("", c), {5});
  EXPECT_TRUE(full.ok());
}

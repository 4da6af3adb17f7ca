#include <gtest/gtest.h>

#include <set>

#include "thetaforms/registry.hpp"

using namespace thetaforms;

namespace {

RegistryError parse_error(std::string_view text) {
  try {
    parse_registry(text);
  } catch (const RegistryError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << text;
  return RegistryError(0, 0, "");
}

TEST(RegistryParser, EmptyAndCommentOnlyFiles) {
  EXPECT_TRUE(parse_registry("").empty());
  EXPECT_TRUE(parse_registry("# nothing\n\n   \n# more\n").empty());
}

TEST(RegistryParser, SeriesEntry) {
  const auto specs = parse_registry("2.4: series: phi(q) = phi(q^4) + 2*q*psi(q^8)\n");
  ASSERT_EQ(specs.size(), 1u);
  const IdentitySpec& id = specs[0];
  EXPECT_EQ(id.name, "2.4");
  EXPECT_EQ(id.mode, Mode::series);
  EXPECT_EQ(id.line, 1u);
  ASSERT_TRUE(id.lhs && id.rhs);
  EXPECT_EQ(id.lhs->kind, SeriesExpr::Kind::named);
  EXPECT_EQ(id.lhs->name, "phi");
  EXPECT_EQ(id.rhs->kind, SeriesExpr::Kind::add);
  EXPECT_EQ(evaluate(*id.lhs, 200), evaluate(*id.rhs, 200));
}

TEST(RegistryParser, ContinuationLinesAndComments) {
  const auto specs = parse_registry(
      "# header\n"
      "a: series: phi(q)\n"
      "    = phi(q^4)   # trailing comment\n"
      "    + 2*q*psi(q^8)\n"
      "\n"
      "b: series: psi(q)^2 = phi(q)*psi(q^2)\n");
  ASSERT_EQ(specs.size(), 2u);
  EXPECT_EQ(specs[0].line, 2u);
  EXPECT_EQ(specs[1].line, 6u);
  EXPECT_EQ(evaluate(*specs[0].lhs, 100), evaluate(*specs[0].rhs, 100));
}

TEST(RegistryParser, SiftAndThetaArguments) {
  const auto specs = parse_registry("x: sift: 3*S[8,1](phi(q)*phi(q^8)^2) = S[8,1](f(-q,q^3)^0*phi(q)^3)\n");
  ASSERT_EQ(specs.size(), 1u);
  EXPECT_EQ(specs[0].mode, Mode::sift);
  const auto e = parse_series_expression("S[3,2](f(q^2,-q^7))");
  EXPECT_EQ(e->kind, SeriesExpr::Kind::sift);
  EXPECT_EQ(e->t, 3u);
  EXPECT_EQ(e->s, 2u);
  EXPECT_EQ(e->kids[0]->kind, SeriesExpr::Kind::theta);
  EXPECT_EQ(e->kids[0]->power, 2);
  EXPECT_EQ(e->kids[0]->sign2, -1);
  EXPECT_EQ(e->kids[0]->power2, 7);
}

TEST(RegistryParser, EtaQuotientLiteral) {
  const auto e = parse_series_expression("eta[1^-2, 2^5, 4^-2]");
  ASSERT_EQ(e->kind, SeriesExpr::Kind::eta);
  EXPECT_EQ(e->eta.exponents.at(2), 5);
  EXPECT_EQ(e->eta.exponents.at(4), -2);
  EXPECT_EQ(evaluate(*e, 100), evaluate(*parse_series_expression("phi(q)"), 100));
}

TEST(RegistryParser, TernaryEntryWithConditions) {
  const auto specs = parse_registry(
      "t: ternary: (1,8,8,0,0,0)(M) = 2*(1,6,6,0,0,0)(M) - wt(2,3,6,0,0,0)(M/3^2)\n"
      "    where M = 1,2 mod 4 and 3 || M and (M|7) = -1\n");
  ASSERT_EQ(specs.size(), 1u);
  const IdentitySpec& id = specs[0];
  ASSERT_EQ(id.tlhs.size(), 1u);
  ASSERT_EQ(id.trhs.size(), 2u);
  EXPECT_EQ(id.trhs[0].coefficient, 2);
  EXPECT_EQ(id.trhs[1].coefficient, -1);
  EXPECT_EQ(id.trhs[1].count->kind, CountTerm::Kind::weighted);
  EXPECT_EQ(id.trhs[1].count->divisor, 9);
  ASSERT_EQ(id.conditions.size(), 3u);
  EXPECT_EQ(id.conditions[0].kind, Condition::Kind::residue);
  EXPECT_TRUE(id.conditions[0].holds(5));
  EXPECT_TRUE(id.conditions[0].holds(6));
  EXPECT_FALSE(id.conditions[0].holds(7));
  EXPECT_EQ(id.conditions[1].kind, Condition::Kind::exact);
  EXPECT_TRUE(id.conditions[1].holds(3));
  EXPECT_FALSE(id.conditions[1].holds(9));
  EXPECT_FALSE(id.conditions[1].holds(5));
  EXPECT_EQ(id.conditions[2].kind, Condition::Kind::jacobi);
  EXPECT_TRUE(id.conditions[2].holds(3));   // (3|7) = -1
  EXPECT_FALSE(id.conditions[2].holds(2));  // (2|7) = 1
}

TEST(RegistryParser, SGenusTermsAndCharacters) {
  const auto specs = parse_registry("w: ternary: 15*(1,8,8,0,0,0)(M/15^2) = eps[15,1,15]*W[15,1](M) + eps(2,15,30,0,0,0)[3]*W[15,4](M)\n");
  ASSERT_EQ(specs[0].trhs.size(), 2u);
  const TernaryTerm& t0 = specs[0].trhs[0];
  ASSERT_EQ(t0.eps.size(), 1u);
  EXPECT_FALSE(t0.eps[0].by_form);
  EXPECT_EQ(t0.eps[0].w, 15);
  EXPECT_EQ(t0.count->kind, CountTerm::Kind::sgenus);
  EXPECT_EQ(t0.count->index, 1);
  EXPECT_TRUE(specs[0].trhs[1].eps[0].by_form);
}

TEST(RegistryParser, ModularEquationAndOptions) {
  const auto specs = parse_registry("e: modeq3(theta=2.9): m - 1 = 2*beta^(3/8)/alpha^(1/8)\n");
  ASSERT_EQ(specs.size(), 1u);
  EXPECT_EQ(specs[0].mode, Mode::modeq3);
  EXPECT_EQ(specs[0].options.at("theta"), "2.9");
  ASSERT_TRUE(specs[0].mrhs);
}

TEST(RegistryParser, EtaValenceEntry) {
  const auto specs = parse_registry("v: eta-valence(level=84): eta[14^10, 4^4, 1^4, 28^-4, 7^-4, 2^-10] = 1\n");
  ASSERT_EQ(specs[0].elhs.size(), 1u);
  ASSERT_EQ(specs[0].erhs.size(), 1u);
  EXPECT_FALSE(specs[0].erhs[0].quotient.has_value());
  EXPECT_EQ(specs[0].elhs[0].quotient->exponents.at(14), 10);
}

TEST(RegistryParser, ErrorsCarryLineAndColumn) {
  const RegistryError unknown = parse_error("ok: series: phi(q) = phi(q)\nbad: series: zeta(q) = phi(q)\n");
  EXPECT_EQ(unknown.line(), 2u);
  EXPECT_EQ(unknown.column(), 14u);
  EXPECT_NE(std::string(unknown.what()).find("zeta"), std::string::npos);

  const RegistryError sextuple = parse_error("x: ternary: (1,8,8,0,0)(M) = 0\n");
  EXPECT_EQ(sextuple.line(), 1u);
  EXPECT_GT(sextuple.column(), 12u);

  const RegistryError dup = parse_error("a: series: 1 = 1\na: series: 2 = 2\n");
  EXPECT_EQ(dup.line(), 2u);
  EXPECT_NE(std::string(dup.what()).find("duplicate"), std::string::npos);

  const RegistryError sift = parse_error("s: sift: S[4,4](phi(q)) = 0\n");
  EXPECT_EQ(sift.line(), 1u);

  const RegistryError level = parse_error("v: eta-valence: eta[2^24, 1^-24] = 1\n");
  EXPECT_EQ(level.line(), 1u);

  const RegistryError mode = parse_error("m: sideways: 1 = 1\n");
  EXPECT_EQ(mode.line(), 1u);
  EXPECT_EQ(parse_error("  continued: series: 1 = 1\n").line(), 1u);
}

TEST(RegistryParser, BundledRegistryLoads) {
  const auto specs = load_registry(default_registry_path());
  EXPECT_GE(specs.size(), 130u);
  std::set<std::string> names;
  for (const auto& s : specs) names.insert(s.name);
  for (const char* n : {"1.7", "2.18", "3.2", "4.1", "5.4", "6.8-S15", "control-phi7", "2.modeq-a"})
    EXPECT_TRUE(names.count(n)) << n;
  EXPECT_THROW(load_registry("/nonexistent/registry.reg"), std::runtime_error);
}

TEST(RegistryParser, ExpressionRendering) {
  const auto e = parse_series_expression("4*q*psi(q^2)^2 - phi(-q)");
  const auto again = parse_series_expression(e->to_string());
  EXPECT_EQ(evaluate(*e, 80), evaluate(*again, 80));
}

}  // namespace

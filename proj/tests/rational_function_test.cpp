#include <gtest/gtest.h>

#include "thetaforms/rational_function.hpp"

using namespace thetaforms;

namespace {

Rational eval(const Poly& f, const Rational& x) {
  Rational r = 0;
  for (auto it = f.coefficients().rbegin(); it != f.coefficients().rend(); ++it) r = r * x + *it;
  return r;
}

Rational eval(const RationalFunction& f, const Rational& x) {
  Rational r = eval(f.numerator(), x) / eval(f.denominator(), x);
  r.canonicalize();
  return r;
}

const RationalFunction p = RationalFunction::variable();
RationalFunction c(long v) { return RationalFunction::constant(v); }

TEST(Polynomials, DivisionWithRemainder) {
  const Poly a({Rational(-1), Rational(0), Rational(1)});  // p^2 - 1
  const Poly b({Rational(-1), Rational(1)});               // p - 1
  const auto [q, r] = divmod(a, b);
  EXPECT_EQ(q, Poly({Rational(1), Rational(1)}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(a, Poly({Rational(2), Rational(2)})), Poly({Rational(1), Rational(1)}));
  EXPECT_THROW(divmod(a, Poly()), std::domain_error);
  EXPECT_EQ(Poly().degree(), -1);
}

TEST(RationalFunctions, CanonicalForm) {
  const RationalFunction f = (p * p - c(1)) / (c(2) * p - c(2));  // (p + 1) / 2
  EXPECT_EQ(f.denominator(), Poly::constant(1));
  EXPECT_EQ(f.numerator(), Poly({Rational(1, 2), Rational(1, 2)}));
  const RationalFunction g = c(1) / (c(-4) * p - c(6));
  EXPECT_GT(g.denominator().leading(), 0);
  EXPECT_EQ(g.denominator(), Poly({Rational(3), Rational(2)}));
  EXPECT_EQ(f - f, RationalFunction());
  EXPECT_THROW(c(1) / RationalFunction(), std::domain_error);
}

TEST(RationalFunctions, ArithmeticAgreesWithPointEvaluation) {
  const RationalFunction f = (p + c(3)) / (p * p + c(1)), g = (c(2) * p - c(1)) / (p + c(5));
  for (long num = -7; num <= 7; ++num) {
    const Rational x(num, 3);
    EXPECT_EQ(eval(f + g, x), eval(f, x) + eval(g, x));
    EXPECT_EQ(eval(f * g, x), eval(f, x) * eval(g, x));
    EXPECT_EQ(eval(pow(f, 3), x), eval(f, x) * eval(f, x) * eval(f, x));
    if (eval(g, x) != 0) EXPECT_EQ(eval(f / g, x), eval(f, x) / eval(g, x));
  }
  EXPECT_EQ(pow(g, -2) * pow(g, 2), c(1));
}

TEST(Parametrization, ValuesAtSamplePoints) {
  EXPECT_EQ(eval(param_alpha(), 1), 1);
  EXPECT_EQ(eval(param_beta(), 1), 1);
  EXPECT_EQ(eval(param_m(), 1), 3);
  EXPECT_EQ(eval(param_alpha(), 0), 0);
  const Rational x(1, 2);
  Rational a = x * (2 + x) * (2 + x) * (2 + x) / ((1 + 2 * x) * (1 + 2 * x) * (1 + 2 * x));
  a.canonicalize();
  EXPECT_EQ(eval(param_alpha(), x), a);
}

TEST(Parametrization, SatisfiesDegreeThreeRelation) {
  // (alpha beta)^(1/4) + ((1 - alpha)(1 - beta))^(1/4) = 1
  const RationalFunction a = param_alpha(), b = param_beta();
  const RationalFunction quarter = rational_root(a * b, 4);
  EXPECT_EQ(quarter, p * (p + c(2)) / (c(2) * p + c(1)));
  EXPECT_EQ((c(1) - a) * (c(1) - b), pow(c(1) - quarter, 4));
  EXPECT_EQ(param_m(), c(1) + c(2) * p);
}

TEST(ExactRoots, EighthRootOfMultiplierMonomial) {
  // beta^3 / alpha = p^8
  const RationalFunction r = pow(param_beta(), 3) / param_alpha();
  EXPECT_EQ(r, pow(p, 8));
  EXPECT_EQ(rational_root(r, 8), p);
  const RationalFunction s = c(16) * pow(p + c(2), 4) / pow(c(1) + c(2) * p, 8);
  EXPECT_EQ(rational_root(s, 4), c(2) * (p + c(2)) / pow(c(1) + c(2) * p, 2));
  EXPECT_EQ(rational_root(c(1), 8), c(1));
}

TEST(ExactRoots, RejectsNonPowers) {
  EXPECT_THROW(rational_root(pow(p, 3), 2), std::domain_error);
  EXPECT_THROW(rational_root(p + c(1), 2), std::domain_error);
  EXPECT_THROW(rational_root(c(2), 2), std::domain_error);
  EXPECT_THROW(rational_root(c(-1), 2), std::domain_error);
  EXPECT_THROW(rational_root(p, 0), std::invalid_argument);
}

}  // namespace

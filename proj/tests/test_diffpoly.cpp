#include <gtest/gtest.h>

#include "nambu/calculus.hpp"
#include "nambu/diffpoly.hpp"
#include "nambu/multivector.hpp"

using namespace nambu;

namespace {

using PolyVector = MultiVector<Poly>;

PolyVector vector_field(int d, std::initializer_list<std::pair<int, Poly>> comps) {
  PolyVector v(d, 1);
  for (const auto& [i, p] : comps) v.add({i}, p);
  return v;
}

Point point_of(std::initializer_list<long> xs) {
  Point p{};
  std::size_t i = 0;
  for (long x : xs) p[i++] = Rational{x};
  return p;
}

}  // namespace

TEST(Rational, ParseAndArithmetic) {
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
  EXPECT_EQ(Rational::parse("7"), Rational{7});
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_TRUE((Rational(4, 2)).is_integer());
  EXPECT_EQ(pow(Rational(2, 3), 3), Rational(8, 27));
}

TEST(Poly, PartialAndEvaluate) {
  const Poly x1 = coordinate(1), x2 = coordinate(2);
  const Poly p = x1 * x1 * x2 + x2 * Rational{3};
  EXPECT_EQ(partial(p, 1), x1 * x2 * Rational{2});
  EXPECT_EQ(partial(p, 2), x1 * x1 + Poly(Rational{3}));
  EXPECT_EQ(evaluate(p, point_of({2, 5})), Rational{35});
  EXPECT_TRUE(independent_of(p, 3));
  EXPECT_FALSE(independent_of(p, 2));
}

TEST(Grassmann, MaskSigns) {
  EXPECT_EQ(grassmann::mask_of({2, 1}).second, -1);
  EXPECT_EQ(grassmann::mask_of({1, 2, 3}).second, 1);
  EXPECT_EQ(grassmann::mask_of({1, 1}).second, 0);
  PolyVector b(3, 2);
  b.add({2, 1}, Poly(Rational{1}));
  EXPECT_EQ(b.component({1, 2}), Poly(Rational{-1}));
  EXPECT_EQ(b.component({2, 1}), Poly(Rational{1}));
}

TEST(Schouten, VectorFieldsGiveLieBracket) {
  // Lie bracket [x1 d1, d1] = -d1
  const PolyVector x = vector_field(2, {{1, coordinate(1)}});
  const PolyVector y = vector_field(2, {{1, Poly(Rational{1})}});
  const PolyVector br = schouten(x, y);
  EXPECT_EQ(br, vector_field(2, {{1, Poly(Rational{-1})}}));
  EXPECT_EQ(schouten(y, x), vector_field(2, {{1, Poly(Rational{1})}}));
}

TEST(Schouten, BivectorWithVectorIsMinusLieDerivative) {
  PolyVector p(2, 2);
  p.add({1, 2}, Poly(Rational{1}));
  const PolyVector x = vector_field(2, {{1, coordinate(1)}});
  // L_{x1 d1}(d1 ^ d2) = -d1 ^ d2, hence [[P, X]] = +d1 ^ d2
  EXPECT_EQ(schouten(p, x), p);
}

TEST(Schouten, NambuBivectorIsPoisson) {
  const DiffPolyVector p = nambu_bivector(3);
  EXPECT_TRUE(schouten(p, p).is_zero());
}

TEST(Schouten, TrivectorInTwoDimensionsIsRejected) {
  const DiffPolyVector p = nambu_bivector(2);
  EXPECT_THROW((void)schouten(p, p), std::invalid_argument);
}

TEST(Wedge, Antisymmetry) {
  const PolyVector a = vector_field(3, {{1, coordinate(2)}, {3, Poly(Rational{2})}});
  const PolyVector b = vector_field(3, {{2, coordinate(1)}});
  PolyVector minus = wedge(b, a);
  minus *= Rational{-1};
  EXPECT_EQ(wedge(a, b), minus);
  EXPECT_TRUE(wedge(a, a).is_zero());
}

TEST(DiffPoly, TotalDerivativeChainRule) {
  const DiffPoly r = jet(Field::Rho);
  const DiffPoly a = jet(Field::A1, MultiIndex::from_indices({2}));
  const DiffPoly d1 = partial(r * a, 1);
  EXPECT_EQ(d1, jet(Field::Rho, MultiIndex::from_indices({1})) * a +
                    r * jet(Field::A1, MultiIndex::from_indices({1, 2})));
}

TEST(PointJetEvaluator, MatchesSymbolicEvaluation) {
  const DiffPolyVector p4 = nambu_bivector(4);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const NambuData data = random_nambu_data(4, seed);
    const Point pt = random_points(4, seed, 1).front();
    PointJetEvaluator at(data, pt);
    for (const auto& [mask, comp] : p4.components()) {
      ASSERT_EQ(at.evaluate(comp), evaluate(evaluate_jet(comp, data), pt)) << "seed " << seed;
      const int k = static_cast<int>(seed % 4) + 1;
      ASSERT_EQ(at.evaluate_partial(comp, k), at.evaluate(partial(comp, k))) << "seed " << seed;
    }
  }
}

TEST(PointJetEvaluator, RationalDataTakesTheGeneralPath) {
  NambuData data = random_nambu_data(3, 7);
  data.rho *= Rational(1, 3);
  Point pt = point_of({1, -2, 3});
  pt[0] = Rational(1, 2);
  PointJetEvaluator at(data, pt);
  const DiffPoly c = nambu_bivector(3).component({1, 2});
  EXPECT_EQ(at.evaluate(c), evaluate(evaluate_jet(c, data), pt));
  EXPECT_EQ(at.evaluate_partial(c, 3), evaluate(evaluate_jet(partial(c, 3), data), pt));
}

TEST(NambuData, ValidatesCasimirCount) {
  NambuData d = random_nambu_data(4, 3);
  d.casimirs.pop_back();
  EXPECT_THROW(d.validate(), std::invalid_argument);
  EXPECT_EQ(random_nambu_data(3, 5).rho, random_nambu_data(3, 5).rho);
}

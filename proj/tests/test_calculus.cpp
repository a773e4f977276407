#include <gtest/gtest.h>

#include <vector>

#include "nambu/calculus.hpp"
#include "nambu/catalog.hpp"

using namespace nambu;

namespace {

/// phi(g)^i at a point by summing over every index tuple, repeated indices included.
Rational brute_force_phi(const MicroGraph& g, const NambuData& data, const Point& pt, int component) {
  const int d = g.dimension();
  const int slots = 3 * d;
  std::vector<int> idx(static_cast<std::size_t>(slots), 1);
  Rational total;
  for (;;) {
    int sign = 1;
    for (int v = 0; v < 3 && sign != 0; ++v) {
      sign *= levi_civita(std::span<const int>(idx.data() + v * d, static_cast<std::size_t>(d)));
    }
    if (sign != 0) {
      std::vector<std::vector<int>> received(static_cast<std::size_t>(MicroGraph::vertex_count(d)));
      int out = 0;
      for (int v = 1; v <= 3; ++v) {
        for (int s = 1; s <= d; ++s) {
          const int i = idx[static_cast<std::size_t>((v - 1) * d + s - 1)];
          const int t = g.target(v, s);
          if (t == 0) {
            out = i;
          } else {
            received[static_cast<std::size_t>(t)].push_back(i);
          }
        }
      }
      if (out == component) {
        Rational prod{sign};
        for (int id = 1; id < MicroGraph::vertex_count(d) && !prod.is_zero(); ++id) {
          const Poly& f = data.field(vertex_field(id));
          prod *= evaluate(partial(f, MultiIndex::from_indices(received[static_cast<std::size_t>(id)])), pt);
        }
        total += prod;
      }
    }
    int k = 0;
    while (k < slots && idx[static_cast<std::size_t>(k)] == d) idx[static_cast<std::size_t>(k++)] = 1;
    if (k == slots) break;
    ++idx[static_cast<std::size_t>(k)];
  }
  return total;
}

void expect_phi_matches_oracle(const MicroGraph& g, std::uint64_t seed) {
  const int d = g.dimension();
  const NambuData data = random_nambu_data(d, seed);
  const Point pt = random_points(d, seed, 1).front();
  const DiffPolyVector symbolic = phi(g);
  PointJetEvaluator at(data, pt);
  const PointVector pointwise = phi_at(g, at);
  const PolyVectorField instantiated = phi_eval(g, data);
  for (int i = 1; i <= d; ++i) {
    const Rational expected = brute_force_phi(g, data, pt, i);
    EXPECT_EQ(at.evaluate(symbolic.component({i})), expected) << g.render() << " component " << i;
    EXPECT_EQ(pointwise.component({i}), expected) << g.render();
    EXPECT_EQ(evaluate(instantiated.component({i}), pt), expected) << g.render();
  }
}

}  // namespace

TEST(Phi, TwoDimensionalGraphsMatchBruteForce) {
  std::uint64_t seed = 1;
  for (const auto& g : enumerate_micrographs(2)) expect_phi_matches_oracle(g, seed++);
}

TEST(Phi, ThreeDimensionalDescendantsMatchBruteForce) {
  const auto& items = catalog().descendants_3d.items;
  for (std::size_t k = 0; k < items.size(); k += 8) expect_phi_matches_oracle(items[k].graph, 100 + k);
}

TEST(Phi, RelabelingInvariance) {
  const MicroGraph g = parse_encoding("(0,1,4 ; 1,6,5 ; 1,2,6)", 3);
  EXPECT_EQ(phi(g), phi(canonicalize(g)));
}

TEST(Phi, PropertyRandomSeedsAgreeAcrossBackends) {
  const auto all = enumerate_micrographs(3);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const MicroGraph& g = all[(seed * 7919) % all.size()];
    const NambuData data = random_nambu_data(3, seed);
    const Point pt = random_points(3, seed, 1).front();
    PointJetEvaluator at(data, pt);
    const DiffPolyVector symbolic = phi(g);
    const PointVector direct = phi_at(g, at);
    for (int i = 1; i <= 3; ++i) ASSERT_EQ(at.evaluate(symbolic.component({i})), direct.component({i})) << g.render();
  }
}

TEST(NambuBivector, ThreeDimensionalComponents) {
  const DiffPolyVector p = nambu_bivector(3);
  const DiffPoly rho = jet(Field::Rho);
  auto da = [](int k) { return jet(Field::A1, MultiIndex::from_indices({k})); };
  EXPECT_EQ(p.component({1, 2}), rho * da(3));
  EXPECT_EQ(p.component({2, 3}), rho * da(1));
  EXPECT_EQ(p.component({1, 3}), -(rho * da(2)));
  EXPECT_EQ(nambu_bivector(2).component({1, 2}), rho);
}

TEST(NambuBivector, CasimirsAreCentral) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const NambuData data = random_nambu_data(4, seed);
    const PolyVectorField p = nambu_bivector(data);
    for (const Poly& a : data.casimirs) {
      for (int i = 1; i <= 4; ++i) {
        Poly contraction;
        for (int j = 1; j <= 4; ++j) contraction += p.component({i, j}) * partial(a, j);
        EXPECT_TRUE(contraction.is_zero());
      }
    }
  }
}

TEST(SkewPair, AntisymmetricUnderCasimirSwap) {
  const MicroGraph g = parse_encoding("(0,1,4,7 ; 1,3,5,8 ; 1,2,6,9)", 4);
  const SkewPair a = skew_pair(g);
  const SkewPair b = skew_pair(swap_casimirs(g));
  DiffPolyVector sum = a.value;
  sum += b.value;
  EXPECT_TRUE(sum.is_zero());
  EXPECT_EQ(swap_casimir_jets(a.value), b.value);
  EXPECT_THROW(skew_pair(parse_encoding("(0,1,4 ; 1,3,5 ; 1,2,6)", 3)), std::invalid_argument);
}

TEST(Projection, SolutionThreeDimensionalProjectsToScaledSunflower) {
  WeightedGraphSum x3;
  for (const auto& it : catalog().solution_3d.items) x3.add(it.graph, it.coefficient);
  const ProjectionReport r = project_casimir(phi(x3), phi(sunflower()), {1, 2});
  ASSERT_TRUE(r.factor.has_value());
  EXPECT_EQ(*r.factor, Rational{8});
  EXPECT_EQ(r.last_component_monomials, 0u);
  EXPECT_TRUE(r.instantiated_agree);
  EXPECT_EQ(r.seeds.size(), 2u);
}

TEST(Projection, DropsJetsAlongTheLastCoordinate) {
  DiffPolyVector x(3, 1);
  x.add({1}, jet(Field::A1, MultiIndex::from_indices({3})) * jet(Field::Rho));
  x.add({2}, jet(Field::Rho, MultiIndex::from_indices({3})));
  x.add({3}, jet(Field::A1, MultiIndex::from_indices({1})));
  const ProjectedFormula p = project_last_casimir(x);
  EXPECT_EQ(p.head.component({1}), jet(Field::Rho));
  EXPECT_TRUE(p.head.component({2}).is_zero());
  EXPECT_TRUE(p.last_component.is_zero());
}

TEST(Proportionality, FactorOrNothing) {
  const DiffPolyVector a = phi(gamma1());
  DiffPolyVector b = a;
  b *= Rational(-3, 2);
  EXPECT_EQ(proportionality_factor(b, a), Rational(-3, 2));
  EXPECT_FALSE(proportionality_factor(phi(gamma2()), a).has_value());
}

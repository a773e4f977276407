#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "nambu/catalog.hpp"
#include "nambu/flow.hpp"

using namespace nambu;

namespace {

const FlowDerivation& derivation() {
  static const FlowDerivation d = orient_tetrahedron();
  return d;
}

WedgeGraph relabel_internal(const WedgeGraph& g, const std::array<int, 4>& perm) {
  // perm[v-2] is the new label of internal vertex v
  auto map = [&](int t) { return t < 2 ? t : perm[static_cast<std::size_t>(t - 2)]; };
  WedgeGraph out;
  for (int v = 2; v <= 5; ++v) {
    auto& slot = out.out[static_cast<std::size_t>(perm[static_cast<std::size_t>(v - 2)] - 2)];
    slot[0] = static_cast<std::uint8_t>(map(g.target(v, 0)));
    slot[1] = static_cast<std::uint8_t>(map(g.target(v, 1)));
  }
  return out;
}

}  // namespace

TEST(Tetrahedron, SixEdges) {
  const UndirectedGraph t = tetrahedron();
  EXPECT_EQ(t.vertices, 4);
  EXPECT_EQ(t.edges.size(), 6u);
}

TEST(WedgeGraph, TokensRoundTrip) {
  const WedgeGraph g = WedgeGraph::from_tokens({0, 1, 2, 4, 2, 5, 2, 3});
  EXPECT_EQ(g.render(), "[(0,1),(2,4),(2,5),(2,3)]");
  EXPECT_EQ(WedgeGraph::from_tokens(g.tokens()), g);
}

TEST(WedgeCanonical, InvariantUnderRelabelingWithSigns) {
  for (const auto& g : tetrahedron_orientations()) {
    const CanonicalWedge c = canonicalize(g);
    std::array<int, 4> perm{2, 3, 4, 5};
    do {
      const CanonicalWedge r = canonicalize(relabel_internal(g, perm));
      ASSERT_EQ(r.graph, c.graph);
      ASSERT_EQ(r.sign, c.sign);
    } while (std::next_permutation(perm.begin(), perm.end()));
    WedgeGraph swapped = g;
    std::swap(swapped.out[0][0], swapped.out[0][1]);
    ASSERT_EQ(canonicalize(swapped).sign, -c.sign);
  }
}

TEST(Orientations, CountAndClasses) {
  EXPECT_EQ(tetrahedron_orientations().size(), 896u);
  const auto classes = orientation_classes();
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes[0].render(), "[(0,1),(2,4),(2,5),(2,3)]");
  EXPECT_EQ(classes[1].render(), "[(0,3),(1,4),(2,5),(2,3)]");
}

TEST(FlowDerivation, UniqueWeightsOneToMinusSix) {
  const FlowDerivation& d = derivation();
  EXPECT_EQ(d.kernel_dimension, 1u);
  ASSERT_EQ(d.formula.terms.size(), 2u);
  const Rational ratio = d.formula.terms[1].weight / d.formula.terms[0].weight;
  EXPECT_EQ(ratio, Rational{-6});
  EXPECT_FALSE(d.sunflower_factor.is_zero());
}

TEST(FlowDerivation, TwoDimensionalFlowIsTrivialized) {
  const FlowDerivation& d = derivation();
  const DiffPolyVector q2 = gamma3_flow(d.formula, 2);
  const DiffPolyVector b = schouten(nambu_bivector(2), phi(sunflower()));
  EXPECT_EQ(q2, b * d.sunflower_factor);
}

TEST(FlowDerivation, ThreeDimensionalFlowIsCocycleAtPoints) {
  const FlowFormula& f = builtin_flow();
  const DiffPolyVector q3 = gamma3_flow(f, 3);
  const DiffPolyVector pq = schouten(nambu_bivector(3), q3);
  EXPECT_TRUE(pq.is_zero());
}

TEST(FlowBackends, SymbolicAndPointwiseAgree) {
  const FlowFormula& f = builtin_flow();
  for (int d = 2; d <= 3; ++d) {
    const DiffPolyVector q = gamma3_flow(f, d);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const NambuData data = random_nambu_data(d, seed);
      const Point pt = random_points(d, seed, 1).front();
      PointJetEvaluator at(data, pt);
      const PointVector direct = gamma3_flow_at(f, data, pt);
      ASSERT_EQ(q.map([&](const DiffPoly& c) { return at.evaluate(c); }), direct) << "d=" << d << " seed=" << seed;
    }
  }
}

TEST(BuiltinFlow, IsTheNormalizedDerivation) {
  FlowFormula f = derivation().formula;
  const FlowFormula& shipped = builtin_flow();
  ASSERT_EQ(shipped.terms.size(), f.terms.size());
  WeightedGraphSum x3;
  for (const auto& it : catalog().solution_3d.items) x3.add(it.graph, it.coefficient);
  const DiffPolyVector target = schouten(nambu_bivector(3), phi(x3));
  const auto scale = normalize_flow(f, target);
  ASSERT_TRUE(scale.has_value());
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    EXPECT_EQ(shipped.terms[i].graph, f.terms[i].graph);
    EXPECT_EQ(shipped.terms[i].weight, f.terms[i].weight);
  }
}

TEST(FlowJson, RoundTrip) {
  const FlowFormula& f = builtin_flow();
  const FlowFormula back = flow_from_json(flow_to_json(f, "round trip"));
  ASSERT_EQ(back.terms.size(), f.terms.size());
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    EXPECT_EQ(back.terms[i].graph, f.terms[i].graph);
    EXPECT_EQ(back.terms[i].weight, f.terms[i].weight);
  }
  EXPECT_THROW(flow_from_json(R"({"schema_version": 2, "terms": []})"), std::runtime_error);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <set>

#include "nambu/micrograph.hpp"

using namespace nambu;

namespace {

MicroGraph g3(const char* s) { return parse_encoding(s, 3); }
MicroGraph g4(const char* s) { return parse_encoding(s, 4); }

}  // namespace

TEST(LeviCivita, SignsAndRepeats) {
  const std::array<int, 3> id{1, 2, 3};
  const std::array<int, 3> odd{2, 1, 3};
  const std::array<int, 3> cyc{2, 3, 1};
  const std::array<int, 3> rep{1, 1, 3};
  EXPECT_EQ(levi_civita(id), 1);
  EXPECT_EQ(levi_civita(odd), -1);
  EXPECT_EQ(levi_civita(cyc), 1);
  EXPECT_EQ(levi_civita(rep), 0);
  const std::array<int, 4> p4{4, 3, 2, 1};
  EXPECT_EQ(levi_civita(p4), 1);
}

TEST(Encoding, ParsesBothGrammars) {
  const MicroGraph a = parse_encoding("(0,1,4 ; 1,3,5 ; 1,2,6)", 3);
  const MicroGraph b = parse_encoding("(0, 1, 4, 1, 3, 5, 1, 2, 6)", 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.render(), "(0,1,4 ; 1,3,5 ; 1,2,6)");
  EXPECT_EQ(a.render_flat(), "(0, 1, 4, 1, 3, 5, 1, 2, 6)");
  EXPECT_EQ(parse_encoding(a.render(), 3), a);
}

TEST(Encoding, RejectsArityMismatch) {
  EXPECT_THROW(parse_encoding("(0,1,4 ; 1,3,5 ; 2)", 3), EncodingError);
  EXPECT_THROW(parse_encoding("(0,1,4,1,3,5,1,2)", 3), EncodingError);
  EXPECT_THROW(parse_encoding("(0,1 ; 1,3)", 2), EncodingError);
}

TEST(Encoding, RejectsOutOfRangeAndMalformed) {
  EXPECT_THROW(parse_encoding("(0,1 ; 1,4 ; 1,2)", 2), EncodingError);  // 4 is no vertex in 2D
  EXPECT_THROW(parse_encoding("(0,1,4 ; 1,3,5 ; 1,2,x)", 3), EncodingError);
  EXPECT_THROW(parse_encoding("0,1 ; 1,3 ; 1,2", 2), EncodingError);
  EXPECT_THROW(parse_encoding("(0,1 ; 1,3 ; 1,2)", 5), EncodingError);
}

TEST(Encoding, CasimirSlotRule) {
  // slot 3 of vertex 2 must target 5
  EXPECT_THROW(g3("(0,1,4 ; 1,3,6 ; 1,2,6)"), EncodingError);
  // 4D: slots 3,4 are {3+v, 6+v} in either order
  EXPECT_NO_THROW(g4("(0,1,7,4 ; 1,3,8,5 ; 1,2,9,6)"));
  EXPECT_THROW(g4("(0,1,4,4 ; 1,3,5,8 ; 1,2,6,9)"), EncodingError);
  EXPECT_THROW(g4("(0,1,4,8 ; 1,3,5,7 ; 1,2,6,9)"), EncodingError);
}

TEST(Encoding, ExactlyOneSinkEdge) {
  EXPECT_THROW(parse_encoding("(0,0 ; 1,3 ; 1,2)", 2), EncodingError);
  EXPECT_THROW(parse_encoding("(1,1 ; 1,3 ; 1,2)", 2), EncodingError);
}

TEST(Canonical, RelabelingInvariance) {
  const MicroGraph g = g3("(0,1,4 ; 1,6,5 ; 1,2,6)");
  const MicroGraph c = canonicalize(g);
  std::array<int, 3> perm{1, 2, 3};
  do {
    EXPECT_EQ(canonicalize(relabel(g, perm)), c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(canonicalize(c), c);
}

TEST(Canonical, PublishedRepresentativeNeedNotBeMinimal) {
  // Same class, two encodings: the published one and its relabeling (vertex 2 <-> 3).
  const MicroGraph published = g3("(0,1,4 ; 1,6,5 ; 1,2,6)");
  const MicroGraph partner = g3("(0,1,4 ; 1,3,5 ; 1,5,6)");
  EXPECT_EQ(canonicalize(published), canonicalize(partner));
  EXPECT_EQ(canonicalize(published), partner);
}

TEST(Descend, SunflowerFamilies) {
  EXPECT_EQ(descend(gamma1()).size(), 16u);
  EXPECT_EQ(descend(gamma2()).size(), 32u);
  EXPECT_EQ(descend_to(gamma1(), 4).size(), 81u);
  EXPECT_EQ(descend_to(gamma2(), 4).size(), 243u);
  // four edges join distinct epsilon vertices, each may move to the new Casimir: 2^4
  EXPECT_EQ(descend(g3("(0,1,4 ; 1,3,5 ; 1,2,6)")).size(), 16u);
}

TEST(Descend, FirstDescendantAndOrder) {
  const auto d = descend(gamma1());
  EXPECT_EQ(d.front(), g3("(0,1,4 ; 1,3,5 ; 1,2,6)"));
  // slot-major: the last expandable slot (vertex 3, slot 2) varies fastest
  EXPECT_EQ(d[1], g3("(0,1,4 ; 1,3,5 ; 1,5,6)"));
  EXPECT_EQ(d.back(), g3("(0,1,4 ; 4,6,5 ; 4,5,6)"));
}

TEST(Descend, KeepsTadpolesSinkAndCasimirEdges) {
  for (const auto& g : descend(g3("(0,1,4 ; 4,3,5 ; 4,2,6)"))) {
    EXPECT_EQ(g.target(1, 1), 0);
    EXPECT_EQ(g.target(1, 2), 1);
    EXPECT_EQ(g.target(2, 1), 4);
    EXPECT_EQ(g.target(3, 1), 4);
  }
}

TEST(Descend, FootnoteExampleContainsItsSkewPartnerFree) {
  // 4D descendants of item 1 carry a1 before a2 in the Casimir slots
  for (const auto& g : descend(g3("(0,1,4 ; 1,3,5 ; 1,2,6)"))) {
    for (int v = 1; v <= 3; ++v) {
      EXPECT_EQ(g.target(v, 3), 3 + v);
      EXPECT_EQ(g.target(v, 4), 6 + v);
    }
  }
}

TEST(Descend, RejectsDimensionFour) {
  EXPECT_THROW(descend(g4("(0,1,4,7 ; 1,3,5,8 ; 1,2,6,9)")), std::invalid_argument);
}

TEST(SwapCasimirs, InvolutionAndFirstSkewPair) {
  const MicroGraph g = g4("(0,1,4,7 ; 1,3,5,8 ; 1,2,6,9)");
  EXPECT_EQ(swap_casimirs(g), g4("(0,1,7,4 ; 1,3,8,5 ; 1,2,9,6)"));
  EXPECT_EQ(swap_casimirs(swap_casimirs(g)), g);
  EXPECT_THROW(swap_casimirs(g3("(0,1,4 ; 1,3,5 ; 1,2,6)")), std::invalid_argument);
}

TEST(Enumerate, TwoDimensionalMatchesBurnside) {
  const auto all = enumerate_micrographs(2);
  EXPECT_EQ(all.size(), count_micrograph_orbits(2));
  std::set<MicroGraph> unique(all.begin(), all.end());
  EXPECT_EQ(unique.size(), all.size());
  for (const auto& g : all) EXPECT_EQ(canonicalize(g), g);
}

TEST(Enumerate, ThreeDimensionalMatchesBurnside) {
  EXPECT_EQ(enumerate_micrographs(3).size(), count_micrograph_orbits(3));
}

TEST(Enumerate, ContainsSunflowerClasses) {
  const auto all = enumerate_micrographs(2);
  EXPECT_TRUE(std::binary_search(all.begin(), all.end(), canonicalize(gamma1())));
  EXPECT_TRUE(std::binary_search(all.begin(), all.end(), canonicalize(gamma2())));
}

TEST(WeightedSum, MergesByCanonicalForm) {
  WeightedGraphSum s;
  const MicroGraph a = g3("(0,1,4 ; 1,6,5 ; 1,2,6)");
  s.add(a, 3);
  s.add(g3("(0,1,4 ; 1,3,5 ; 1,5,6)"), 2);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.terms()[0].graph, a);
  EXPECT_EQ(s.terms()[0].coefficient, Rational{5});
  s.add(a, -5);
  EXPECT_EQ(s.size(), 0u);
  EXPECT_EQ(sunflower().size(), 2u);
}

TEST(DescendantClasses, GammaFamilies) {
  std::set<MicroGraph> c1, c2;
  for (const auto& g : descend(gamma1())) c1.insert(canonicalize(g));
  for (const auto& g : descend(gamma2())) c2.insert(canonicalize(g));
  EXPECT_EQ(c1.size(), 10u);
  EXPECT_EQ(c2.size(), 32u);
}

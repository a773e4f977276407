#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "nambu/catalog.hpp"

using namespace nambu;

TEST(Fnv1a64, KnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Catalog, CountsFromManifest) {
  const PublishedCatalog& c = catalog();
  EXPECT_EQ(c.descendants_3d.items.size(), 41u);
  EXPECT_EQ(c.descendants_4d.items.size(), 324u);
  EXPECT_EQ(c.independent_4d.indices.size(), 123u);
  EXPECT_EQ(c.skew_independent_4d.indices.size(), 64u);
  EXPECT_EQ(c.solution_3d.items.size(), 10u);
  EXPECT_EQ(c.solution_4d.items.size(), 27u);
  EXPECT_EQ(c.kernel_dimensions.at(2), 1u);
  EXPECT_EQ(c.kernel_dimensions.at(3), 3u);
  EXPECT_EQ(c.kernel_dimensions.at(4), 7u);
}

TEST(Catalog, SunflowerMatchesBuiltIn) {
  const Dataset s = dataset("sunflower");
  ASSERT_EQ(s.items.size(), 2u);
  EXPECT_EQ(s.items[0].graph, gamma1());
  EXPECT_EQ(s.items[1].graph, gamma2());
  EXPECT_EQ(s.items[0].coefficient, Rational{1});
  EXPECT_EQ(s.items[1].coefficient, Rational{2});
}

TEST(Catalog, DescendantsAreTheSunflowerDescendantsAsMultisets) {
  auto canon_sorted = [](const std::vector<MicroGraph>& gs) {
    std::vector<MicroGraph> out;
    for (const auto& g : gs) out.push_back(canonicalize(g));
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<MicroGraph> listed;
  for (const auto& it : catalog().descendants_3d.items) listed.push_back(it.graph);
  std::vector<MicroGraph> computed;
  for (const auto& g : {gamma1(), gamma2()})
    for (const auto& h : descend(g)) computed.push_back(h);
  std::set<MicroGraph> computed_classes;
  for (const auto& g : canon_sorted(computed)) computed_classes.insert(g);
  for (const auto& g : canon_sorted(listed)) EXPECT_TRUE(computed_classes.count(g)) << g.render();
}

TEST(Catalog, SolutionPartnersAreCasimirSwaps) {
  for (const auto& it : dataset("solution-4d").items) {
    ASSERT_TRUE(it.partner.has_value());
    EXPECT_EQ(*it.partner, swap_casimirs(it.graph));
  }
}

TEST(Catalog, ZeroViewsSelectBoldItems) {
  EXPECT_EQ(dataset("zero-4d").items.size(), 54u);
  EXPECT_EQ(dataset("zero-3d").items.size(), 12u);
  for (const auto& it : dataset("zero-3d").items) EXPECT_TRUE(it.bold);
}

TEST(Catalog, NamesResolveAndUnknownThrows) {
  for (const auto& n : dataset_names()) EXPECT_NO_THROW(dataset(n)) << n;
  EXPECT_THROW(dataset("descendants-5d"), std::out_of_range);
}

TEST(Catalog, RenderedListParsesBack) {
  const std::string text = render_dataset(dataset("solution-3d"));
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  EXPECT_EQ(lines, 10u);
  const auto first = text.substr(0, text.find('\n'));
  const auto open = first.find('(');
  EXPECT_EQ(parse_encoding(first.substr(open), 3), dataset("solution-3d").items[0].graph);
  EXPECT_EQ(render_dataset(dataset("independent-4d")).substr(0, 2), "1 ");
}

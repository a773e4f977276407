#include <gtest/gtest.h>

#include <random>

#include "nambu/catalog.hpp"
#include "nambu/linsolve.hpp"

using namespace nambu;

namespace {

DiffPolyVector vector_of(int d, std::initializer_list<std::pair<int, DiffPoly>> comps) {
  DiffPolyVector v(d, 1);
  for (const auto& [i, p] : comps) v.add({i}, p);
  return v;
}

/// Random integer matrix of rank at most r: product of n x r and r x m factors.
std::vector<SparseRow> low_rank_rows(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t r) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<std::vector<long>> a(n, std::vector<long>(r)), b(r, std::vector<long>(m));
  for (auto& row : a)
    for (auto& v : row) v = coef(rng);
  for (auto& row : b)
    for (auto& v : row) v = coef(rng);
  std::vector<SparseRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    SparseRow row;
    for (std::size_t j = 0; j < m; ++j) {
      long s = 0;
      for (std::size_t k = 0; k < r; ++k) s += a[i][k] * b[k][j];
      if (s != 0) row.emplace_back(j, Rational{s});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST(Rank, DuplicateFormulaCountsOnce) {
  const DiffPolyVector f = phi(gamma1());
  const RankResult r = rank_independent({f, f});
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.independent, (std::vector<std::size_t>{1}));
}

TEST(Rank, GreedyKeepsFirstOccurrence) {
  const DiffPoly a = jet(Field::Rho), b = jet(Field::A1, MultiIndex::from_indices({1}));
  const auto f1 = vector_of(2, {{1, a}});
  const auto f2 = vector_of(2, {{2, b}});
  const auto f3 = vector_of(2, {{1, a * Rational{2}}, {2, b * Rational{-1}}});
  const RankResult r = rank_independent({DiffPolyVector(2, 1), f1, f3, f2});
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.independent, (std::vector<std::size_t>{2, 3}));
  EXPECT_THROW(rank_independent({}), std::invalid_argument);
  EXPECT_THROW(rank_independent({f1, DiffPolyVector(3, 1)}), std::invalid_argument);
}

TEST(Rank, StreamingMatchesStoredAndReversedOracle) {
  std::vector<DiffPolyVector> formulas;
  for (const auto& it : catalog().descendants_3d.items) formulas.push_back(phi(it.graph));
  const RankResult stored = rank_independent(formulas);
  const RankResult streamed = rank_independent_streaming(formulas.size(), [&](std::size_t i) { return formulas[i]; });
  EXPECT_EQ(stored.rank, streamed.rank);
  EXPECT_EQ(stored.independent, streamed.independent);
  EXPECT_EQ(rank_reversed_columns(formulas), stored.rank);
}

TEST(Echelon, PropertyRankOfLowRankProducts) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + static_cast<std::size_t>(trial % 5);
    const auto rows = low_rank_rows(rng, 8, 7, r);
    IncrementalEchelon forward, backward;
    for (const auto& row : rows) forward.add_row(row);
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) backward.add_row(*it);
    ASSERT_LE(forward.rank(), r);
    ASSERT_EQ(forward.rank(), backward.rank());
  }
}

TEST(StreamingSolver, UniqueKernelAndInfeasible) {
  StreamingSolver unique(2);
  unique.add_equation({{0, Rational{1}}, {1, Rational{1}}}, Rational{3});
  unique.add_equation({{0, Rational{1}}, {1, Rational{-1}}}, Rational{1});
  SolveReport r = unique.report();
  EXPECT_EQ(r.status, SolveStatus::UniqueAffine);
  EXPECT_EQ(r.particular, (std::vector<Rational>{Rational{2}, Rational{1}}));

  StreamingSolver kernel(3);
  kernel.add_equation({{0, Rational{1}}, {2, Rational{-2}}}, Rational{4});
  r = kernel.report();
  EXPECT_EQ(r.status, SolveStatus::AffineWithKernel);
  EXPECT_EQ(r.kernel_dimension(), 2u);
  EXPECT_EQ(to_string(r.status), "affine-with-kernel");

  StreamingSolver bad(1);
  bad.add_equation({{0, Rational{2}}}, Rational{2});
  bad.add_equation({{0, Rational{4}}}, Rational{3});
  EXPECT_TRUE(bad.infeasible());
  EXPECT_EQ(bad.report().status, SolveStatus::Infeasible);
  EXPECT_EQ(bad.rank(), 1u);
}

TEST(StreamingSolver, PropertySolutionsSatisfyTheSystem) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5;
    ExactMatrix a;
    a.columns = n;
    a.rows = low_rank_rows(rng, 6, n, 1 + static_cast<std::size_t>(trial % 5));
    // b = A x0 is always consistent
    std::vector<Rational> x0(n), b;
    for (auto& v : x0) v = Rational{coef(rng)};
    for (const auto& row : a.rows) {
      Rational s;
      for (const auto& [c, v] : row) s += v * x0[c];
      b.push_back(s);
    }
    const SolveReport r = solve(a, b, n);
    ASSERT_NE(r.status, SolveStatus::Infeasible);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      Rational s;
      for (const auto& [c, v] : a.rows[i]) s += v * r.particular[c];
      ASSERT_EQ(s, b[i]);
      for (const auto& k : r.kernel) {
        Rational t;
        for (const auto& [c, v] : a.rows[i]) t += v * k[c];
        ASSERT_TRUE(t.is_zero());
      }
    }
    EXPECT_EQ(r.rank + r.kernel_dimension(), n);
  }
}

TEST(MatrixCsv, HeaderAndEntries) {
  ExactMatrix m;
  m.columns = 2;
  m.rows = {{{1, Rational(1, 2)}}};
  EXPECT_EQ(m.to_csv(), "row,col,value\n0,1,1/2\n");
}

TEST(Brackets, CoordinateFormulaMatchesSchouten) {
  const DiffPolyVector p = nambu_bivector(3);
  const auto& items = catalog().descendants_3d.items;
  for (std::size_t k = 0; k < items.size(); k += 10) {
    const DiffPolyVector x = phi(items[k].graph);
    EXPECT_EQ(bracket_with_vector_coordinates(p, x), schouten(p, x)) << items[k].graph.render();
  }
}

TEST(Brackets, PointwiseMatchesSymbolic) {
  const DiffPolyVector p = nambu_bivector(4);
  const DiffPolyVector x = skew_pair(catalog().descendants_4d.items.front().graph).value;
  const DiffPolyVector br = schouten(p, x);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const NambuData data = random_nambu_data(4, seed);
    for (const Point& pt : random_points(4, seed, 2)) {
      PointJetEvaluator at(data, pt);
      EXPECT_EQ(bracket_with_vector_at(at, x), br.map([&](const DiffPoly& c) { return at.evaluate(c); }));
    }
  }
}

TEST(Systems, JetAndEvalBackendsAgreeInThreeDimensions) {
  const auto& items = catalog().descendants_3d.items;
  std::vector<DiffPolyVector> ansatz, brackets;
  for (std::size_t k = 0; k < 12; ++k) {
    ansatz.push_back(phi(items[k].graph));
    brackets.push_back(schouten(nambu_bivector(3), ansatz.back()));
  }
  const SolveReport jet = solve(assemble_jet_system(brackets, nullptr));
  SamplingOptions opt;
  const TrivialitySystem eval_sys = assemble_eval_system(3, 2, ansatz.size(), vector_bracket_columns(ansatz), nullptr, opt);
  const SolveReport eval = solve(eval_sys);
  EXPECT_EQ(jet.rank, eval.rank);
  EXPECT_EQ(jet.kernel_dimension(), eval.kernel_dimension());
  EXPECT_EQ(eval.backend, "eval");
  EXPECT_EQ(eval.seeds.size(), eval_sys.rank_after_instance.size());
  EXPECT_EQ(solve(assemble_eval_system(3, brackets, nullptr, opt)).rank, jet.rank);
}

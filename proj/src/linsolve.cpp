#include "nambu/linsolve.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <array>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace nambu {

std::string ExactMatrix::to_csv() const {
  std::ostringstream os;
  os << "row,col,value\n";
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) os << r << ',' << c << ',' << v << '\n';
  return os.str();
}

IntegerRow IncrementalEchelon::to_integer(const SparseRow& row) {
  mpz_class l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.raw().get_den_mpz_t());
  IntegerRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    if (v.is_zero()) continue;
    out.emplace_back(c, mpz_class(l / v.raw().get_den()) * v.raw().get_num());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::optional<std::size_t> IncrementalEchelon::add_row(const SparseRow& row) {
  return add_integer_row(to_integer(row));
}

namespace {

void remove_content(IntegerRow& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g == 1) return;
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

std::optional<std::size_t> IncrementalEchelon::add_integer_row(IntegerRow row) {
  std::size_t pos = 0;
  IntegerRow merged;
  while (pos < row.size()) {
    const std::size_t col = row[pos].first;
    auto it = pivots_.find(col);
    if (it == pivots_.end()) {
      ++pos;
      continue;
    }
    // row <- p*row - c*pivot with p, c the leading coefficients divided by their gcd
    const IntegerRow& piv = it->second;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), piv.front().second.get_mpz_t(), row[pos].second.get_mpz_t());
    const mpz_class p = piv.front().second / g;
    const mpz_class c = row[pos].second / g;

    merged.clear();
    merged.reserve(row.size() + piv.size());
    for (std::size_t k = 0; k < pos; ++k) merged.emplace_back(row[k].first, row[k].second * p);
    std::size_t a = pos + 1;
    std::size_t b = 1;
    while (a < row.size() || b < piv.size()) {
      if (b == piv.size() || (a < row.size() && row[a].first < piv[b].first)) {
        merged.emplace_back(row[a].first, row[a].second * p);
        ++a;
      } else if (a == row.size() || piv[b].first < row[a].first) {
        merged.emplace_back(piv[b].first, -(piv[b].second * c));
        ++b;
      } else {
        mpz_class v = row[a].second * p - piv[b].second * c;
        if (v != 0) merged.emplace_back(row[a].first, std::move(v));
        ++a;
        ++b;
      }
    }
    row.swap(merged);
    remove_content(row);
  }
  if (row.empty()) return std::nullopt;
  remove_content(row);
  const std::size_t lead = row.front().first;
  pivots_.emplace(lead, std::move(row));
  return lead;
}

namespace {

struct ColumnKey {
  IndexMask mask;
  JetMonomial mono;
  friend bool operator==(const ColumnKey&, const ColumnKey&) = default;
};
struct ColumnKeyHash {
  std::size_t operator()(const ColumnKey& k) const noexcept { return k.mono.hash() * 31 + k.mask; }
};

using ColumnDictionary = std::unordered_map<ColumnKey, std::size_t, ColumnKeyHash>;

SparseRow formula_row(const DiffPolyVector& f, ColumnDictionary& dict) {
  SparseRow row;
  for (const auto& [mask, comp] : f.components()) {
    for (const auto& [mono, coef] : comp.sorted_terms()) {
      auto [it, inserted] = dict.try_emplace(ColumnKey{mask, mono}, dict.size());
      row.emplace_back(it->second, coef);
    }
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

/// Rows of the formulas over a shared, first-appearance column dictionary.
std::vector<SparseRow> formula_rows(const std::vector<DiffPolyVector>& formulas, std::size_t& columns) {
  ColumnDictionary dict;
  std::vector<SparseRow> rows;
  rows.reserve(formulas.size());
  for (const auto& f : formulas) rows.push_back(formula_row(f, dict));
  columns = dict.size();
  return rows;
}

void check_shapes(const std::vector<DiffPolyVector>& formulas) {
  if (formulas.empty()) throw std::invalid_argument("rank: empty input");
  for (const auto& f : formulas) {
    if (f.dimension() != formulas.front().dimension() || f.degree() != formulas.front().degree())
      throw std::invalid_argument("rank: formulas differ in dimension or degree");
  }
}

}  // namespace

RankResult rank_independent(const std::vector<DiffPolyVector>& formulas) {
  check_shapes(formulas);
  std::size_t columns = 0;
  const auto rows = formula_rows(formulas, columns);
  IncrementalEchelon ech;
  RankResult r;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (ech.add_row(rows[i])) r.independent.push_back(i + 1);
  }
  r.rank = ech.rank();
  return r;
}

RankResult rank_independent_streaming(std::size_t count, const std::function<DiffPolyVector(std::size_t)>& formula) {
  ColumnDictionary dict;
  IncrementalEchelon ech;
  RankResult r;
  std::optional<std::pair<int, int>> shape;
  for (std::size_t i = 0; i < count; ++i) {
    const DiffPolyVector f = formula(i);
    if (!shape) shape.emplace(f.dimension(), f.degree());
    if (shape->first != f.dimension() || shape->second != f.degree())
      throw std::invalid_argument("rank: formulas differ in dimension or degree");
    if (ech.add_integer_row(IncrementalEchelon::to_integer(formula_row(f, dict)))) r.independent.push_back(i + 1);
  }
  r.rank = ech.rank();
  return r;
}

std::size_t rank_reversed_columns(const std::vector<DiffPolyVector>& formulas) {
  check_shapes(formulas);
  std::size_t columns = 0;
  auto rows = formula_rows(formulas, columns);
  IncrementalEchelon ech;
  for (auto& row : rows) {
    for (auto& [c, v] : row) c = columns - 1 - c;
    std::reverse(row.begin(), row.end());
    ech.add_row(row);
  }
  return ech.rank();
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::UniqueAffine: return "unique-affine";
    case SolveStatus::AffineWithKernel: return "affine-with-kernel";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

void StreamingSolver::add_equation(const SparseRow& coeffs, const Rational& rhs) {
  ++equations_;
  SparseRow row;
  row.reserve(coeffs.size() + 1);
  for (const auto& [c, v] : coeffs) {
    if (c >= unknowns_) throw std::out_of_range("equation column beyond the unknowns");
    if (!v.is_zero()) row.emplace_back(c, v);
  }
  if (!rhs.is_zero()) row.emplace_back(unknowns_, rhs);
  if (auto pivot = echelon_.add_row(row); pivot && *pivot == unknowns_) inconsistent_ = true;
}

namespace {

/// Back-substitution over the echelon rows; free variables take the given values.
std::vector<Rational> back_substitute(const std::map<std::size_t, IntegerRow>& pivots, std::size_t n,
                                      const std::vector<Rational>& free_values, bool with_rhs) {
  std::vector<Rational> x = free_values;
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const std::size_t p = it->first;
    if (p >= n) continue;
    const IntegerRow& row = it->second;
    Rational acc;
    for (std::size_t k = 1; k < row.size(); ++k) {
      const auto& [c, v] = row[k];
      if (c == n) {
        if (with_rhs) acc += Rational(mpq_class(v));
      } else {
        acc -= Rational(mpq_class(v)) * x[c];
      }
    }
    x[p] = acc / Rational(mpq_class(row.front().second));
  }
  return x;
}

}  // namespace

SolveReport StreamingSolver::report() const {
  SolveReport r;
  r.unknowns = unknowns_;
  r.rank = rank();
  r.equations = equations_;
  const auto& piv = echelon_.pivots();
  std::vector<std::size_t> free_vars;
  for (std::size_t c = 0; c < unknowns_; ++c)
    if (!piv.count(c)) free_vars.push_back(c);
  for (std::size_t f : free_vars) {
    std::vector<Rational> seed(unknowns_);
    seed[f] = Rational{1};
    r.kernel.push_back(back_substitute(piv, unknowns_, seed, false));
  }
  if (inconsistent_) {
    r.status = SolveStatus::Infeasible;
    return r;
  }
  r.particular = back_substitute(piv, unknowns_, std::vector<Rational>(unknowns_), true);
  r.status = r.kernel.empty() ? SolveStatus::UniqueAffine : SolveStatus::AffineWithKernel;
  return r;
}

SolveReport solve(const ExactMatrix& a, const std::vector<Rational>& rhs, std::size_t unknowns) {
  if (rhs.size() != a.rows.size()) throw std::invalid_argument("solve: rhs length mismatch");
  StreamingSolver s(unknowns);
  for (std::size_t r = 0; r < a.rows.size(); ++r) s.add_equation(a.rows[r], rhs[r]);
  return s.report();
}

TrivialitySystem assemble_jet_system(const std::vector<DiffPolyVector>& brackets, const DiffPolyVector* q) {
  TrivialitySystem sys;
  sys.backend = "jet";
  sys.unknowns = brackets.size();
  sys.matrix.columns = brackets.size() + 1;
  std::unordered_map<ColumnKey, std::size_t, ColumnKeyHash> row_of;
  auto feed = [&](const DiffPolyVector& f, std::size_t column) {
    for (const auto& [mask, comp] : f.components()) {
      for (const auto& [mono, coef] : comp.sorted_terms()) {
        auto [it, inserted] = row_of.try_emplace(ColumnKey{mask, mono}, sys.matrix.rows.size());
        if (inserted) sys.matrix.rows.emplace_back();
        sys.matrix.rows[it->second].emplace_back(column, coef);
      }
    }
  };
  for (std::size_t i = 0; i < brackets.size(); ++i) feed(brackets[i], i);
  if (q) feed(*q, brackets.size());
  return sys;
}

namespace {

/// values[i] = column(i) at the point; columns are dealt round-robin to the workers, each
/// with its own evaluator cache, so the result does not depend on the thread count.
void evaluate_columns(const ColumnAt& column, const NambuData& data, const Point& pt, int threads,
                      std::vector<PointVector>& values) {
  const std::size_t n = values.size();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    PointJetEvaluator at(data, pt);
    for (std::size_t i = 0; i < n; ++i) values[i] = column(i, at);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          PointJetEvaluator at(data, pt);
          for (std::size_t i = w; i < n; i += workers) values[i] = column(i, at);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t base, int k) {
  std::uint64_t x = base * 0x100000001b3ULL + static_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TrivialitySystem assemble_eval_system(int dimension, int degree, std::size_t unknowns, const ColumnAt& column,
                                      const PointFlow* q, const SamplingOptions& options) {
  TrivialitySystem sys;
  sys.backend = "eval";
  sys.unknowns = unknowns;
  sys.matrix.columns = unknowns + 1;
  std::vector<IndexMask> masks;
  for (unsigned m = 1; m < (1u << dimension); ++m)
    if (grassmann::popcount(static_cast<IndexMask>(m)) == degree) masks.push_back(static_cast<IndexMask>(m));

  IncrementalEchelon ech;
  int unchanged = 0;
  std::vector<PointVector> values(unknowns);
  for (int k = 0; k < options.max_instances; ++k) {
    const std::uint64_t seed = instance_seed(options.seed, k);
    sys.seeds.push_back(seed);
    const std::size_t before = ech.rank();
    const NambuData data = random_nambu_data(dimension, seed, options.data);
    for (const Point& pt : random_points(dimension, seed, options.points_per_instance)) {
      evaluate_columns(column, data, pt, options.threads, values);
      const PointVector rhs = q ? (*q)(data, pt) : PointVector(dimension, degree);
      for (IndexMask m : masks) {
        SparseRow row;
        for (std::size_t i = 0; i < unknowns; ++i) {
          Rational v = values[i].component_mask(m);
          if (!v.is_zero()) row.emplace_back(i, std::move(v));
        }
        Rational b = rhs.component_mask(m);
        if (!b.is_zero()) row.emplace_back(unknowns, b);
        if (row.empty()) continue;
        ech.add_row(row);
        sys.matrix.rows.push_back(std::move(row));
      }
    }
    sys.rank_after_instance.push_back(ech.rank());
    unchanged = ech.rank() == before ? unchanged + 1 : 0;
    if (k + 1 >= options.min_instances && unchanged >= options.stable_instances) break;
  }
  return sys;
}

TrivialitySystem assemble_eval_system(int dimension, const std::vector<DiffPolyVector>& brackets,
                                      const PointFlow* q, const SamplingOptions& options) {
  const int degree = brackets.empty() ? 2 : brackets.front().degree();
  return assemble_eval_system(
      dimension, degree, brackets.size(),
      [&](std::size_t i, PointJetEvaluator& at) { return brackets[i].map([&](const DiffPoly& c) { return at.evaluate(c); }); },
      q, options);
}

ColumnAt vector_bracket_columns(const std::vector<DiffPolyVector>& ansatz) {
  return [&ansatz](std::size_t i, PointJetEvaluator& at) { return bracket_with_vector_at(at, ansatz[i]); };
}

SolveReport solve(const TrivialitySystem& system) {
  StreamingSolver s(system.unknowns);
  for (const auto& row : system.matrix.rows) {
    SparseRow coeffs;
    Rational rhs;
    for (const auto& [c, v] : row) {
      if (c == system.unknowns) {
        rhs = v;
      } else {
        coeffs.emplace_back(c, v);
      }
    }
    s.add_equation(coeffs, rhs);
  }
  SolveReport r = s.report();
  r.backend = system.backend;
  r.seeds = system.seeds;
  return r;
}

DiffPolyVector bracket_with_vector_coordinates(const DiffPolyVector& p, const DiffPolyVector& x) {
  const int d = p.dimension();
  if (x.dimension() != d || p.degree() != 2 || x.degree() != 1)
    throw std::invalid_argument("bracket_with_vector_coordinates: expects a bivector and a vector field");
  std::vector<DiffPoly> xs(static_cast<std::size_t>(d + 1));
  std::vector<std::vector<DiffPoly>> dx(static_cast<std::size_t>(d + 1), std::vector<DiffPoly>(static_cast<std::size_t>(d + 1)));
  for (int i = 1; i <= d; ++i) {
    xs[i] = x.component({i});
    for (int k = 1; k <= d; ++k) dx[k][i] = partial(xs[i], k);
  }
  DiffPolyVector out(d, 2);
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      DiffPoly lie;
      for (int k = 1; k <= d; ++k) {
        lie += xs[k] * partial(p.component({i, j}), k);
        lie -= p.component({k, j}) * dx[k][i];
        lie -= p.component({i, k}) * dx[k][j];
      }
      out.add({i, j}, -lie);
    }
  }
  return out;
}

PointVector bracket_with_vector_at(PointJetEvaluator& at, const DiffPolyVector& x) {
  const int d = at.data().dimension;
  if (x.dimension() != d || x.degree() != 1) throw std::invalid_argument("bracket_with_vector_at: expects a vector field");
  static const std::array<DiffPolyVector, kMaxDim + 1> bivectors = [] {
    std::array<DiffPolyVector, kMaxDim + 1> b;
    for (int n = 2; n <= kMaxDim; ++n) b[static_cast<std::size_t>(n)] = nambu_bivector(n);
    return b;
  }();
  const DiffPolyVector& p = bivectors[static_cast<std::size_t>(d)];
  auto pv = [&](int a, int b) { return at.evaluate(p.component({a, b})); };
  std::vector<Rational> xs(static_cast<std::size_t>(d + 1));
  std::vector<std::vector<Rational>> dx(static_cast<std::size_t>(d + 1), std::vector<Rational>(static_cast<std::size_t>(d + 1)));
  for (int i = 1; i <= d; ++i) {
    const DiffPoly xi = x.component({i});
    xs[i] = at.evaluate(xi);
    for (int k = 1; k <= d; ++k) dx[k][i] = at.evaluate_partial(xi, k);
  }
  PointVector out(d, 2);
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      Rational lie;
      for (int k = 1; k <= d; ++k) {
        lie += xs[k] * at.evaluate_partial(p.component({i, j}), k);
        lie -= pv(k, j) * dx[k][i];
        lie -= pv(i, k) * dx[k][j];
      }
      out.add({i, j}, -lie);
    }
  }
  return out;
}

PointVector bracket_with_vector_at(const NambuData& data, const Point& point, const DiffPolyVector& x) {
  PointJetEvaluator at(data, point);
  return bracket_with_vector_at(at, x);
}

}  // namespace nambu

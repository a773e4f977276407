#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nambu/calculus.hpp"
#include "nambu/rational.hpp"

namespace nambu {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;
using IntegerRow = std::vector<std::pair<std::size_t, mpz_class>>;

/// Sparse matrix with rational entries; rows sorted by column, no stored zeros.
struct ExactMatrix {
  std::size_t columns = 0;
  std::vector<SparseRow> rows;

  /// "row,col,value" lines (0-based indices, value as p/q), header first.
  [[nodiscard]] std::string to_csv() const;
};

/// Row echelon form built one row at a time with integer (fraction-free) rows. The pivot
/// of a row is its first nonzero column; rows are reduced by existing pivots in column
/// order and divided by the gcd of their entries.
class IncrementalEchelon {
 public:
  /// Reduces the row and keeps it when independent. Returns the pivot column or nullopt.
  std::optional<std::size_t> add_row(const SparseRow& row);
  std::optional<std::size_t> add_integer_row(IntegerRow row);

  [[nodiscard]] std::size_t rank() const { return pivots_.size(); }
  /// Pivot rows keyed by pivot column.
  [[nodiscard]] const std::map<std::size_t, IntegerRow>& pivots() const { return pivots_; }

  static IntegerRow to_integer(const SparseRow& row);

 private:
  std::map<std::size_t, IntegerRow> pivots_;
};

struct RankResult {
  std::size_t rank = 0;
  std::vector<std::size_t> independent;  // 1-based positions in the input list
};

/// Greedy independent subset, in input order, of formulas of equal shape.
RankResult rank_independent(const std::vector<DiffPolyVector>& formulas);

/// Greedy independent subset of formulas produced one at a time; each formula is turned
/// into a row and dropped, so only the echelon form stays in memory. Columns are keyed
/// by (component, monomial) in first-appearance order.
RankResult rank_independent_streaming(std::size_t count, const std::function<DiffPolyVector(std::size_t)>& formula);

/// Same rank computed with the column order reversed (oracle for rank_independent).
std::size_t rank_reversed_columns(const std::vector<DiffPolyVector>& formulas);

enum class SolveStatus { UniqueAffine, AffineWithKernel, Infeasible };
std::string to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::size_t equations = 0;
  std::vector<Rational> particular;          // free variables set to 0
  std::vector<std::vector<Rational>> kernel;  // one basis vector per free variable
  std::vector<std::uint64_t> seeds;           // instances used by the instantiated backend
  std::string backend;

  [[nodiscard]] std::size_t kernel_dimension() const { return kernel.size(); }
};

/// Exact solver for A c = b fed one equation at a time. Column `unknowns` holds b.
class StreamingSolver {
 public:
  explicit StreamingSolver(std::size_t unknowns) : unknowns_(unknowns) {}

  /// Adds sum_i coeffs[i] c_i = rhs.
  void add_equation(const SparseRow& coeffs, const Rational& rhs);
  [[nodiscard]] std::size_t rank() const { return echelon_.rank() - (inconsistent_ ? 1 : 0); }
  [[nodiscard]] bool infeasible() const { return inconsistent_; }
  [[nodiscard]] std::size_t equations() const { return equations_; }
  [[nodiscard]] std::size_t unknowns() const { return unknowns_; }

  [[nodiscard]] SolveReport report() const;

 private:
  std::size_t unknowns_;
  std::size_t equations_ = 0;
  bool inconsistent_ = false;
  IncrementalEchelon echelon_;
};

/// Solves a stored system.
SolveReport solve(const ExactMatrix& a, const std::vector<Rational>& rhs, std::size_t unknowns);

/// Linear system of Eq. [[P, sum c_i X_i]] = Q in one of two backends.
struct TrivialitySystem {
  ExactMatrix matrix;           // columns 0..n-1: ansatz, column n: right-hand side
  std::size_t unknowns = 0;
  std::string backend;          // "jet" or "eval"
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> rank_after_instance;
};

/// Jet backend: one equation per (component, jet monomial).
/// `brackets[i]` is [[P, X_i]]; `q` is the right-hand side (nullptr = homogeneous).
TrivialitySystem assemble_jet_system(const std::vector<DiffPolyVector>& brackets, const DiffPolyVector* q);

/// Right-hand side at a point of instantiated data.
using PointFlow = std::function<PointVector(const NambuData&, const Point&)>;
/// Value of the i-th ansatz column at a point; the evaluator carries the data and the point.
using ColumnAt = std::function<PointVector(std::size_t, PointJetEvaluator&)>;

struct SamplingOptions {
  std::uint64_t seed = 1;
  int min_instances = 3;
  int max_instances = 40;
  int points_per_instance = 4;
  int stable_instances = 2;     // extra instances that must leave the rank unchanged
  int threads = 1;              // workers evaluating columns at each point
  RandomDataOptions data;
};

/// Seed of the k-th instance drawn for a sampling run.
std::uint64_t instance_seed(std::uint64_t base, int k);

/// Instantiated backend: one equation per (component, sample point); NambuData instances
/// are added until the rank stays unchanged for `stable_instances` consecutive instances.
/// `degree` is the multivector degree of the column values.
TrivialitySystem assemble_eval_system(int dimension, int degree, std::size_t unknowns, const ColumnAt& column,
                                      const PointFlow* q, const SamplingOptions& options);

/// Same with columns given as precomputed symbolic brackets.
TrivialitySystem assemble_eval_system(int dimension, const std::vector<DiffPolyVector>& brackets,
                                      const PointFlow* q, const SamplingOptions& options);

/// Columns [[P, X_i]] of a vector-field ansatz, evaluated pointwise without forming the brackets.
ColumnAt vector_bracket_columns(const std::vector<DiffPolyVector>& ansatz);

SolveReport solve(const TrivialitySystem& system);

/// [[P, X]] for a vector field X by the coordinate formula
/// -(X^k d_k P^{ij} - P^{kj} d_k X^i - P^{ik} d_k X^j); shares no code with schouten().
DiffPolyVector bracket_with_vector_coordinates(const DiffPolyVector& p, const DiffPolyVector& x);

/// Same formula at a point of instantiated data, with X and its first derivatives
/// evaluated at the point.
PointVector bracket_with_vector_at(PointJetEvaluator& at, const DiffPolyVector& x);
PointVector bracket_with_vector_at(const NambuData& data, const Point& point, const DiffPolyVector& x);

}  // namespace nambu

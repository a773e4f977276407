#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "nambu/linear_combination.hpp"
#include "nambu/monomial.hpp"
#include "nambu/nambu_data.hpp"
#include "nambu/poly.hpp"

namespace nambu {

/// Differential polynomial in the jet variables of rho, a1, a2.
using DiffPoly = LinearCombination<JetMonomial>;

/// The single jet variable d_I(f) as a differential polynomial.
inline DiffPoly jet(Field f, const MultiIndex& derivative = {}) {
  return DiffPoly(JetMonomial(JetVar(f, derivative)), Rational{1});
}

/// Total derivative d/dx_i (chain rule over jet variables).
DiffPoly partial(const DiffPoly& p, int i);

/// Substitutes every jet variable by the matching derivative of the concrete data.
class JetEvaluator {
 public:
  explicit JetEvaluator(const NambuData& data);

  /// d_I(f) as a polynomial; cached.
  const Poly& derivative(JetVar v);
  Poly evaluate(const DiffPoly& p);

 private:
  const NambuData& data_;
  std::unordered_map<std::uint16_t, Poly> cache_;
};

/// Substitutes jet variables by numbers, the values of the derivatives at one point.
/// Values are tabulated by jet code; integral data at an integral point takes an mpz fast path.
class PointJetEvaluator {
 public:
  PointJetEvaluator(const NambuData& data, const Point& point);

  const Rational& value(JetVar v);
  Rational evaluate(const DiffPoly& p);
  /// Value of partial(p, coordinate) without forming the derivative symbolically.
  Rational evaluate_partial(const DiffPoly& p, int coordinate);
  [[nodiscard]] const Point& point() const { return point_; }
  [[nodiscard]] const NambuData& data() const { return data_; }

 private:
  void fill(JetVar v);
  const mpz_class& integer_value(JetVar v) {
    if (!known_[v.code()]) fill(v);
    return integer_values_[v.code()];
  }

  const NambuData& data_;
  Point point_;
  bool integral_ = false;
  std::vector<std::uint8_t> known_;
  std::vector<Rational> values_;
  std::vector<mpz_class> integer_values_;
};

Poly evaluate_jet(const DiffPoly& p, const NambuData& data);

/// Canonical text form: one "coefficient * factor*factor..." term per line, sorted.
std::string to_string(const DiffPoly& p);

}  // namespace nambu

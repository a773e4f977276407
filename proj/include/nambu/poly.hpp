#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nambu/linear_combination.hpp"
#include "nambu/monomial.hpp"

namespace nambu {

/// Polynomial in the coordinates x1..x4 with exact rational coefficients.
using Poly = LinearCombination<CoordMonomial>;

/// A point of R^d with rational coordinates (unused trailing entries are zero).
using Point = std::array<Rational, kMaxDim>;

inline Poly coordinate(int i) { return Poly(CoordMonomial::variable(i), Rational{1}); }

/// d/dx_i.
Poly partial(const Poly& p, int i);
/// Iterated partial derivative along a multi-index.
Poly partial(const Poly& p, const MultiIndex& mi);

Rational evaluate(const Poly& p, const Point& x);

/// Replaces x_i by the constant value.
Poly substitute(const Poly& p, int i, const Rational& value);

/// True when no monomial contains x_i.
bool independent_of(const Poly& p, int i);

/// "3/2*x1^2*x3 - x2 + 5", terms in graded order.
std::string to_string(const Poly& p);

}  // namespace nambu

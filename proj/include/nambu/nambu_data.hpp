#pragma once

#include <cstdint>
#include <vector>

#include "nambu/poly.hpp"

namespace nambu {

/// Concrete functional data of a Nambu-Poisson bracket on R^d: the inverse density
/// rho and the d-2 Casimirs (a1, then a2 when d = 4).
struct NambuData {
  int dimension = 2;
  Poly rho;
  std::vector<Poly> casimirs;

  /// Throws std::invalid_argument when the Casimir count does not match d - 2.
  void validate() const;
  [[nodiscard]] const Poly& field(Field f) const;
};

/// Settings for seeded random instances.
struct RandomDataOptions {
  int max_degree = 3;
  int coefficient_bound = 5;   // coefficients drawn from {-b..b} \ {0}
  int terms = 0;               // monomials per function; 0 = every monomial of degree <= max_degree
  /// Coordinates the data may depend on; 0 means all of 1..d.
  int depends_on_first = 0;
};

/// Polynomial instance drawn from a deterministic generator keyed by seed.
NambuData random_nambu_data(int dimension, std::uint64_t seed, const RandomDataOptions& options = {});

/// Random polynomial in the first `variables` coordinates.
Poly random_poly(int variables, std::uint64_t seed, const RandomDataOptions& options = {});

/// Integer points with coordinates in [-bound, bound], drawn deterministically from seed.
std::vector<Point> random_points(int dimension, std::uint64_t seed, int count, int bound = 4);

}  // namespace nambu

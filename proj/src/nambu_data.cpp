#include "nambu/nambu_data.hpp"

#include <random>
#include <stdexcept>

namespace nambu {

void NambuData::validate() const {
  if (dimension < 2 || dimension > 4) throw std::invalid_argument("Nambu data: dimension must be 2, 3 or 4");
  if (static_cast<int>(casimirs.size()) != dimension - 2)
    throw std::invalid_argument("Nambu data: expected " + std::to_string(dimension - 2) + " Casimir(s), got " +
                                std::to_string(casimirs.size()));
}

const Poly& NambuData::field(Field f) const {
  switch (f) {
    case Field::Rho: return rho;
    case Field::A1:
      if (casimirs.empty()) throw std::invalid_argument("Nambu data: a1 requested but no Casimir supplied");
      return casimirs[0];
    case Field::A2:
      if (casimirs.size() < 2) throw std::invalid_argument("Nambu data: a2 requested but not supplied");
      return casimirs[1];
  }
  throw std::invalid_argument("unknown field");
}

namespace {

void monomials_up_to(int variables, int degree, int first, CoordMonomial current, std::vector<CoordMonomial>& out) {
  out.push_back(current);
  if (degree == 0) return;
  for (int i = first; i <= variables; ++i) monomials_up_to(variables, degree - 1, i, current.times_variable(i), out);
}

Rational draw_coefficient(std::mt19937_64& rng, int bound) {
  const auto span = static_cast<std::uint64_t>(2 * bound);
  long v = static_cast<long>(rng() % span) - bound;  // -b .. b-1
  if (v >= 0) ++v;                                  // skip zero
  return Rational{v};
}

}  // namespace

Poly random_poly(int variables, std::uint64_t seed, const RandomDataOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<CoordMonomial> all;
  monomials_up_to(variables, options.max_degree, 1, CoordMonomial{}, all);
  Poly p;
  if (options.terms <= 0 || options.terms >= static_cast<int>(all.size())) {
    for (const auto& m : all) p.add_term(m, draw_coefficient(rng, options.coefficient_bound));
    return p;
  }
  while (static_cast<int>(p.size()) < options.terms) {
    const auto& m = all[rng() % all.size()];
    if (!p.coefficient(m).is_zero()) continue;
    p.add_term(m, draw_coefficient(rng, options.coefficient_bound));
  }
  return p;
}

NambuData random_nambu_data(int dimension, std::uint64_t seed, const RandomDataOptions& options) {
  NambuData data;
  data.dimension = dimension;
  const int vars = options.depends_on_first > 0 ? options.depends_on_first : dimension;
  std::seed_seq seq{seed, std::uint64_t{0x4e414d4255}, static_cast<std::uint64_t>(dimension)};
  std::vector<std::uint64_t> sub(3);
  seq.generate(sub.begin(), sub.end());
  data.rho = random_poly(vars, sub[0], options);
  for (int k = 0; k < dimension - 2; ++k) data.casimirs.push_back(random_poly(vars, sub[1 + k], options));
  return data;
}

std::vector<Point> random_points(int dimension, std::uint64_t seed, int count, int bound) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<long> coord(-bound, bound);
  std::vector<Point> out(static_cast<std::size_t>(count));
  for (auto& pt : out)
    for (int i = 0; i < dimension; ++i) pt[static_cast<std::size_t>(i)] = Rational{coord(rng)};
  return out;
}

}  // namespace nambu

#include "nambu/calculus.hpp"

#include <stdexcept>

namespace nambu {

DiffPolyVector phi(const MicroGraph& g) {
  const int d = g.dimension();
  const int n = MicroGraph::vertex_count(d);
  std::array<DiffPoly, kMaxDim + 1> acc;
  for_each_phi_term(g, [&](int sign, int sink, std::span<const MultiIndex> received) {
    JetMonomial m;
    for (int id = 1; id < n; ++id) m.insert(JetVar(vertex_field(id), received[id]));
    acc[sink].add_term(m, Rational{sign});
  });
  DiffPolyVector out(d, 1);
  for (int i = 1; i <= d; ++i) out.add({i}, acc[i]);
  return out;
}

DiffPolyVector phi(const WeightedGraphSum& s) {
  if (s.terms().empty()) return DiffPolyVector(2, 1);
  DiffPolyVector out(s.terms().front().graph.dimension(), 1);
  for (const auto& t : s.terms()) out += phi(t.graph) * t.coefficient;
  return out;
}

PolyVectorField phi_eval(const MicroGraph& g, const NambuData& data) {
  if (data.dimension != g.dimension()) throw std::invalid_argument("phi_eval: dimension mismatch");
  JetEvaluator ev(data);
  return phi_generic<Poly>(g, [&](Field f, const MultiIndex& mi) -> const Poly& { return ev.derivative(JetVar(f, mi)); });
}

PointVector phi_at(const MicroGraph& g, PointJetEvaluator& at) {
  if (at.data().dimension != g.dimension()) throw std::invalid_argument("phi_at: dimension mismatch");
  return phi_generic<Rational>(g, [&](Field f, const MultiIndex& mi) -> const Rational& { return at.value(JetVar(f, mi)); });
}

DiffPolyVector nambu_bivector(int dimension) {
  if (dimension < 2 || dimension > 4) throw std::invalid_argument("nambu_bivector: dimension must be 2, 3 or 4");
  DiffPolyVector out(dimension, 2);
  std::array<int, 4> p{1, 2, 3, 4};
  do {
    if (p[0] > p[1]) continue;
    const int sign = levi_civita(std::span<const int>(p.data(), static_cast<std::size_t>(dimension)));
    JetMonomial m(JetVar(Field::Rho, {}));
    for (int k = 2; k < dimension; ++k)
      m.insert(JetVar(k == 2 ? Field::A1 : Field::A2, MultiIndex::from_indices({p[static_cast<std::size_t>(k)]})));
    out.add({p[0], p[1]}, DiffPoly(m, Rational{sign}));
  } while (std::next_permutation(p.begin(), p.begin() + dimension));
  return out;
}

PolyVectorField nambu_bivector(const NambuData& data) {
  data.validate();
  JetEvaluator ev(data);
  return nambu_bivector(data.dimension).map([&](const DiffPoly& c) { return ev.evaluate(c); });
}

DiffPoly swap_casimir_jets(const DiffPoly& p) {
  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    JetMonomial swapped;
    for (int i = 0; i < m.degree(); ++i) {
      const JetVar v = m[i];
      Field f = v.field();
      if (f == Field::A1) f = Field::A2;
      else if (f == Field::A2) f = Field::A1;
      swapped.insert(JetVar(f, v.derivative()));
    }
    out.add_term(swapped, c);
  }
  return out;
}

DiffPolyVector swap_casimir_jets(const DiffPolyVector& x) {
  return x.map([](const DiffPoly& c) { return swap_casimir_jets(c); });
}

SkewPair skew_pair(const MicroGraph& g) {
  if (g.dimension() != 4) throw std::invalid_argument("skew_pair needs a 4D micro-graph");
  DiffPolyVector value = phi(g) - phi(swap_casimirs(g));
  value *= Rational(1, 2);
  return {g, std::move(value)};
}

namespace {

/// Image of one monomial under a^{last} := x_d with data independent of x_d; nullopt when it vanishes.
std::optional<JetMonomial> project_monomial(const JetMonomial& m, int d, Field last) {
  JetMonomial out;
  for (int i = 0; i < m.degree(); ++i) {
    const JetVar v = m[i];
    if (v.field() == last) {
      if (v.order() == 1 && v.count(d) == 1) continue;  // d_d(x_d) = 1
      if (v.order() == 0) throw std::invalid_argument("projection: undifferentiated last Casimir");
      return std::nullopt;
    }
    if (v.count(d) > 0) return std::nullopt;
    out.insert(v);
  }
  return out;
}

}  // namespace

ProjectedFormula project_last_casimir(const DiffPolyVector& x) {
  const int d = x.dimension();
  if (d < 3) throw std::invalid_argument("projection needs dimension 3 or 4");
  if (x.degree() != 1) throw std::invalid_argument("projection expects a vector field");
  const Field last = d == 3 ? Field::A1 : Field::A2;
  ProjectedFormula out{DiffPolyVector(d - 1, 1), DiffPoly{}};
  for (int i = 1; i <= d; ++i) {
    DiffPoly comp;
    const DiffPoly source = x.component({i});
    for (const auto& [m, c] : source.terms()) {
      if (auto pm = project_monomial(m, d, last)) comp.add_term(*pm, c);
    }
    if (i < d) {
      out.head.add({i}, comp);
    } else {
      out.last_component = std::move(comp);
    }
  }
  return out;
}

std::optional<Rational> proportionality_factor(const DiffPolyVector& a, const DiffPolyVector& b) {
  if (b.is_zero()) return std::nullopt;
  const auto& [mask, comp] = *b.components().begin();
  const auto& [mono, coef] = *comp.terms().begin();
  Rational c = a.component_mask(mask).coefficient(mono) / coef;
  if (a == b * c) return c;
  return std::nullopt;
}

ProjectionReport project_casimir(const DiffPolyVector& x, const DiffPolyVector& expected,
                                 const std::vector<std::uint64_t>& seeds) {
  const int d = x.dimension();
  if (expected.dimension() != d - 1) throw std::invalid_argument("project_casimir: expected formula dimension");
  ProjectionReport r;
  r.from_dimension = d;
  r.claim = "projection " + std::to_string(d) + "D -> " + std::to_string(d - 1) + "D";
  const ProjectedFormula proj = project_last_casimir(x);
  r.residual_monomial_count = (proj.head - expected).term_count();
  r.equal = r.residual_monomial_count == 0;
  r.factor = proportionality_factor(proj.head, expected);
  r.last_component_monomials = proj.last_component.size();

  // Instantiated check: data of the first d-1 coordinates, last Casimir = x_d.
  const Rational scale = r.factor.value_or(Rational{1});
  for (std::uint64_t seed : seeds) {
    NambuData low = random_nambu_data(d - 1, seed);
    NambuData high = low;
    high.dimension = d;
    high.casimirs.push_back(coordinate(d));
    for (const Point& pt : random_points(d, seed, 3)) {
      PointJetEvaluator at_high(high, pt);
      PointJetEvaluator at_low(low, pt);
      for (int i = 1; i < d; ++i) {
        const Rational lhs = at_high.evaluate(x.component({i}));
        const Rational rhs = at_low.evaluate(expected.component({i})) * scale;
        if (lhs != rhs) r.instantiated_agree = false;
      }
    }
    r.seeds.push_back(seed);
  }
  return r;
}

}  // namespace nambu

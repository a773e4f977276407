#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nambu/diffpoly.hpp"
#include "nambu/micrograph.hpp"
#include "nambu/multivector.hpp"
#include "nambu/nambu_data.hpp"

namespace nambu {

using DiffPolyVector = MultiVector<DiffPoly>;
using PolyVectorField = MultiVector<Poly>;
using PointVector = MultiVector<Rational>;

/// Field carried by a vertex id of a micro-graph.
inline Field vertex_field(int id) {
  if (MicroGraph::kind(id) == VertexKind::Epsilon) return Field::Rho;
  return MicroGraph::casimir_level(id) == 1 ? Field::A1 : Field::A2;
}

/// Visits every nonzero term of phi(g): f(sign, sink_index, multi_indices), where
/// multi_indices[id] lists the derivative received by vertex id (entries for ids 1..vertex_count-1).
template <class F>
void for_each_phi_term(const MicroGraph& g, F&& f) {
  const int d = g.dimension();
  const int n = MicroGraph::vertex_count(d);
  // All permutations of 1..d with their signs.
  std::vector<std::pair<std::array<int, 4>, int>> perms;
  std::array<int, 4> p{1, 2, 3, 4};
  do {
    perms.emplace_back(p, levi_civita(std::span<const int>(p.data(), static_cast<std::size_t>(d))));
  } while (std::next_permutation(p.begin(), p.begin() + d));

  std::array<MultiIndex, 10> received{};
  for (const auto& [p1, s1] : perms) {
    for (const auto& [p2, s2] : perms) {
      for (const auto& [p3, s3] : perms) {
        const std::array<const std::array<int, 4>*, 3> assign{&p1, &p2, &p3};
        received.fill(MultiIndex{});
        int sink_index = 0;
        for (int v = 1; v <= 3; ++v) {
          for (int s = 1; s <= d; ++s) {
            const int t = g.target(v, s);
            const int idx = (*assign[v - 1])[s - 1];
            if (t == 0) {
              sink_index = idx;
            } else {
              received[t] = received[t].with(idx);
            }
          }
        }
        f(s1 * s2 * s3, sink_index, std::span<const MultiIndex>(received.data(), static_cast<std::size_t>(n)));
      }
    }
  }
}

/// phi(g) as a vector field with differential-polynomial components.
DiffPolyVector phi(const MicroGraph& g);
/// Linear extension to weighted sums.
DiffPolyVector phi(const WeightedGraphSum& s);

/// phi(g) with the jet d_I(f) replaced by provider(field, I); V is Poly or Rational.
template <class V, class Provider>
MultiVector<V> phi_generic(const MicroGraph& g, Provider&& provider) {
  const int d = g.dimension();
  const int n = MicroGraph::vertex_count(d);
  MultiVector<V> out(d, 1);
  std::array<V, kMaxDim + 1> acc{};
  for_each_phi_term(g, [&](int sign, int sink, std::span<const MultiIndex> received) {
    V prod(Rational{sign});
    for (int id = 1; id < n && !prod.is_zero(); ++id) prod = prod * provider(vertex_field(id), received[id]);
    acc[sink] += prod;
  });
  for (int i = 1; i <= d; ++i) out.add({i}, acc[i]);
  return out;
}

/// Instantiated phi: equals evaluate_jet(phi(g), data).
PolyVectorField phi_eval(const MicroGraph& g, const NambuData& data);
/// phi(g) at a point of the instantiated data.
PointVector phi_at(const MicroGraph& g, PointJetEvaluator& at);

/// Nambu bivector P^{ij} = sum eps^{ij k l} rho d_k(a1) d_l(a2) with jets.
DiffPolyVector nambu_bivector(int dimension);
/// Nambu bivector of concrete data.
PolyVectorField nambu_bivector(const NambuData& data);

/// 1/2 (phi(g) - phi(swap_casimirs(g))) for a 4D micro-graph.
struct SkewPair {
  MicroGraph base;
  DiffPolyVector value;
};
SkewPair skew_pair(const MicroGraph& g);

/// Exchanges a1 and a2 in every jet variable.
DiffPoly swap_casimir_jets(const DiffPoly& p);
DiffPolyVector swap_casimir_jets(const DiffPolyVector& x);

/// Substitutes the last Casimir of a d-dimensional formula by x_d and drops every jet
/// differentiated in x_d (data independent of the last coordinate). Returns the
/// (d-1)-dimensional formula built from components 1..d-1, and reports component d.
struct ProjectedFormula {
  DiffPolyVector head;      // components 1..d-1, as a (d-1)-dimensional vector field
  DiffPoly last_component;  // component d after substitution
};
ProjectedFormula project_last_casimir(const DiffPolyVector& x);

/// Outcome of comparing a projected solution with the lower-dimensional one.
struct ProjectionReport {
  std::string claim;
  int from_dimension = 0;
  bool equal = false;                 // projected head == expected exactly
  std::optional<Rational> factor;     // c with projected head == c * expected, when one exists
  std::size_t residual_monomial_count = 0;  // monomials of (projected head - expected)
  std::size_t last_component_monomials = 0;
  std::vector<std::uint64_t> seeds;   // instantiated cross-checks, all of which passed when listed
  bool instantiated_agree = true;
};

/// Jet-exact comparison of project_last_casimir(x) with expected, plus instantiated checks
/// on restricted random data for each seed.
ProjectionReport project_casimir(const DiffPolyVector& x, const DiffPolyVector& expected,
                                 const std::vector<std::uint64_t>& seeds);

/// c with a == c * b when such a rational exists (b nonzero), otherwise nullopt.
std::optional<Rational> proportionality_factor(const DiffPolyVector& a, const DiffPolyVector& b);

}  // namespace nambu

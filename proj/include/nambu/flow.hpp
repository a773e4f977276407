#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nambu/calculus.hpp"
#include "nambu/first_jet.hpp"

namespace nambu {

/// Simple undirected graph with an ordered edge list.
struct UndirectedGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Complete graph on 4 vertices (0..3), edges in lexicographic order.
UndirectedGraph tetrahedron();

/// Bivector graph built of four wedges. Sinks are 0 and 1, internal vertices 2..5;
/// out[v-2] = {L, R} are the ordered targets of internal vertex v.
struct WedgeGraph {
  static constexpr int kInternal = 4;
  std::array<std::array<std::uint8_t, 2>, kInternal> out{};

  [[nodiscard]] int target(int v, int side) const { return out[v - 2][side]; }
  [[nodiscard]] std::vector<int> tokens() const;
  /// "[(L,R),(L,R),(L,R),(L,R)]" for internal vertices 2..5.
  [[nodiscard]] std::string render() const;
  static WedgeGraph from_tokens(const std::vector<int>& tokens);

  friend bool operator==(const WedgeGraph&, const WedgeGraph&) = default;
  friend bool operator<(const WedgeGraph& a, const WedgeGraph& b) { return a.tokens() < b.tokens(); }
};

/// Canonical representative under relabeling internal vertices, swapping (L,R) of any vertex
/// (sign -1 each) and swapping the two sinks (sign -1, the output is sink-antisymmetrized).
/// sign is 0 when the graph equals minus itself.
struct CanonicalWedge {
  WedgeGraph graph;
  int sign = 1;
};
CanonicalWedge canonicalize(const WedgeGraph& g);

/// Every orientation of the tetrahedron's 6 edges plus attachment of the two sink edges
/// such that each internal vertex has out-degree 2, with both (L,R) orders per vertex.
std::vector<WedgeGraph> tetrahedron_orientations();

/// Nonzero canonical classes of tetrahedron_orientations(), sorted.
std::vector<WedgeGraph> orientation_classes();

struct FlowTerm {
  WedgeGraph graph;
  Rational weight;
};

/// Weighted sum of wedge graphs, evaluated with built-in sink antisymmetrization.
struct FlowFormula {
  std::vector<FlowTerm> terms;
};

/// Derivatives d_I P^{ab} of the Nambu bivector in some ring.
template <class V>
class BivectorJets {
 public:
  virtual ~BivectorJets() = default;
  virtual const V& get(int a, int b, const MultiIndex& mi) = 0;
};

/// Symbolic derivatives of P in dimension d.
class SymbolicBivectorJets : public BivectorJets<DiffPoly> {
 public:
  explicit SymbolicBivectorJets(int dimension);
  const DiffPoly& get(int a, int b, const MultiIndex& mi) override;

 private:
  DiffPolyVector p_;
  std::map<std::tuple<int, int, std::array<std::uint8_t, kMaxDim>>, DiffPoly> cache_;
};

/// Values of the derivatives of P for concrete data at one point.
class PointBivectorJets : public BivectorJets<Rational> {
 public:
  PointBivectorJets(const NambuData& data, const Point& point);
  const Rational& get(int a, int b, const MultiIndex& mi) override;

 private:
  PolyVectorField p_;
  Point point_;
  std::map<std::tuple<int, int, std::array<std::uint8_t, kMaxDim>>, Rational> cache_;
};

/// Derivatives of P at one point as first-order jets (value and gradient), read from the
/// symbolic bivector through a point evaluator.
class FirstJetBivectorJets : public BivectorJets<FirstJet> {
 public:
  explicit FirstJetBivectorJets(PointJetEvaluator& at);
  const FirstJet& get(int a, int b, const MultiIndex& mi) override;

 private:
  PointJetEvaluator& at_;
  SymbolicBivectorJets symbolic_;
  std::map<std::tuple<int, int, std::array<std::uint8_t, kMaxDim>>, FirstJet> cache_;
};

/// Gamma^{ij} - Gamma^{ji} summed over edge indices; each internal vertex contributes
/// d_{incoming}(P^{L R}).
template <class V>
MultiVector<V> evaluate_wedge(const WedgeGraph& g, int d, BivectorJets<V>& jets) {
  // edge e = 2*(v-2) + side; sink edges take the output indices
  std::array<int, 8> idx{};
  std::array<int, 8> free_edges{};
  int nfree = 0;
  int sink_edge[2] = {-1, -1};
  for (int v = 2; v <= 5; ++v) {
    for (int side = 0; side < 2; ++side) {
      const int e = 2 * (v - 2) + side;
      const int t = g.target(v, side);
      if (t < 2) {
        sink_edge[t] = e;
      } else {
        free_edges[nfree++] = e;
      }
    }
  }
  std::array<std::array<V, kMaxDim + 1>, kMaxDim + 1> raw{};
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      if (i == j) continue;
      idx[sink_edge[0]] = i;
      idx[sink_edge[1]] = j;
      std::array<int, 8> counter{};
      for (int k = 0; k < nfree; ++k) counter[k] = 1;
      while (true) {
        for (int k = 0; k < nfree; ++k) idx[free_edges[k]] = counter[k];
        V prod;
        bool zero = false;
        for (int v = 2; v <= 5 && !zero; ++v) {
          const int a = idx[2 * (v - 2)];
          const int b = idx[2 * (v - 2) + 1];
          if (a == b) {
            zero = true;
            break;
          }
          MultiIndex in;
          for (int w = 2; w <= 5; ++w)
            for (int side = 0; side < 2; ++side)
              if (g.target(w, side) == v) in = in.with(idx[2 * (w - 2) + side]);
          const V& f = jets.get(a, b, in);
          if (f.is_zero()) {
            zero = true;
          } else if (v == 2) {
            prod = f;
          } else {
            prod = prod * f;
            zero = prod.is_zero();
          }
        }
        if (!zero) raw[i][j] += prod;
        int k = nfree - 1;
        while (k >= 0 && counter[k] == d) counter[k--] = 1;
        if (k < 0) break;
        ++counter[k];
      }
    }
  }
  MultiVector<V> out(d, 2);
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) out.add({i, j}, raw[i][j] - raw[j][i]);
  return out;
}

template <class V>
MultiVector<V> evaluate_flow(const FlowFormula& f, int d, BivectorJets<V>& jets) {
  MultiVector<V> out(d, 2);
  for (const auto& t : f.terms) out += evaluate_wedge(t.graph, d, jets) * t.weight;
  return out;
}

/// Q(P) with jets for the Nambu bivector of dimension d.
DiffPolyVector gamma3_flow(const FlowFormula& f, int dimension);
/// Q(P) at a point of instantiated data.
PointVector gamma3_flow_at(const FlowFormula& f, const NambuData& data, const Point& point);

/// [[P, Q(P)]] at a point of instantiated data, from first-order jets of P and Q.
PointVector flow_cocycle_at(const FlowFormula& f, PointJetEvaluator& at);

/// Result of deriving the flow weights.
struct FlowDerivation {
  std::vector<WedgeGraph> classes;   // ansatz, nonzero orientation classes
  FlowFormula formula;               // unit-free weights, integers with gcd 1
  std::size_t kernel_dimension = 0;  // of the constraint system; 1 means unique up to scale
  Rational sunflower_factor;         // Q_2D = factor * [[P, phi(sunflower)]] for this formula
  std::size_t equations = 0;
};

/// Weights of the orientation classes from: [[P,Q]] = 0 on 3D Nambu brackets (jet-exact) and
/// Q_2D proportional to [[P, phi(sunflower)]] with a nonzero factor. Throws std::runtime_error
/// when the constraint space is not one-dimensional.
FlowDerivation orient_tetrahedron();

/// Rescales f so that its 3D flow equals `target3d` exactly; returns the scale, or nullopt
/// when the two are not proportional.
std::optional<Rational> normalize_flow(FlowFormula& f, const DiffPolyVector& target3d);

std::string flow_to_json(const FlowFormula& f, const std::string& note = {});
FlowFormula flow_from_json(const std::string& text);

/// The shipped, normalized flow (data/flow.json), unless replaced.
const FlowFormula& builtin_flow();
/// Makes builtin_flow() return `f` from now on. Not thread-safe; call before any work starts.
void replace_builtin_flow(FlowFormula f);

}  // namespace nambu

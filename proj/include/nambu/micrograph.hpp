#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nambu/rational.hpp"

namespace nambu {

/// Raised for malformed or invalid micro-graph encodings.
class EncodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sign of the permutation (i_1..i_n) of 1..n, 0 when an index repeats.
int levi_civita(std::span<const int> indices);

enum class VertexKind { Sink, Epsilon, Casimir };

/// A 1-vector Nambu micro-graph in dimension d in {2,3,4}.
///
/// Vertex ids follow the encoding convention: 0 is the sink, 1..3 carry
/// epsilon*rho, 3+v is the Casimir a1 attached to vertex v and 6+v the Casimir a2.
/// Epsilon vertex v has d ordered out-slots; the slot order is the argument order of
/// its Levi-Civita symbol.
class MicroGraph {
 public:
  static constexpr int kEpsilonCount = 3;
  using Slots = std::array<std::uint8_t, 4>;

  MicroGraph() = default;
  /// Validates; throws EncodingError.
  MicroGraph(int dimension, const std::array<std::vector<int>, kEpsilonCount>& slots);

  [[nodiscard]] int dimension() const { return dim_; }
  /// Target of slot s (1-based) of epsilon vertex v (1-based).
  [[nodiscard]] int target(int v, int s) const { return slots_[v - 1][s - 1]; }
  [[nodiscard]] std::vector<int> slots(int v) const;
  /// All 3*d targets, vertex-major.
  [[nodiscard]] std::vector<int> tokens() const;

  [[nodiscard]] static int vertex_count(int dimension) { return 1 + kEpsilonCount * (dimension - 1); }
  [[nodiscard]] static VertexKind kind(int id) {
    return id == 0 ? VertexKind::Sink : (id <= 3 ? VertexKind::Epsilon : VertexKind::Casimir);
  }
  /// 1 for a1 vertices (4..6), 2 for a2 vertices (7..9).
  [[nodiscard]] static int casimir_level(int id) { return id <= 6 ? 1 : 2; }
  /// Epsilon vertex a Casimir id belongs to.
  [[nodiscard]] static int casimir_owner(int id) { return (id - 1) % 3 + 1; }

  /// "(0,1,4 ; 1,3,5 ; 1,2,6)".
  [[nodiscard]] std::string render() const;
  /// "(0, 1, 4, 1, 3, 5, 1, 2, 6)".
  [[nodiscard]] std::string render_flat() const;

  friend bool operator==(const MicroGraph&, const MicroGraph&) = default;
  friend bool operator<(const MicroGraph& a, const MicroGraph& b) { return a.tokens() < b.tokens(); }

 private:
  void validate() const;

  int dim_ = 2;
  std::array<Slots, kEpsilonCount> slots_{};
};

/// Accepts "(t11,..,t1d ; t21,.. ; t31,..)" or the flat comma form with 3*d tokens.
MicroGraph parse_encoding(std::string_view text, int dimension);

/// Relabels epsilon vertex v as perm[v-1], moving its Casimirs in lock-step.
MicroGraph relabel(const MicroGraph& g, const std::array<int, 3>& perm);

/// Lexicographically minimal encoding over the six relabelings.
MicroGraph canonicalize(const MicroGraph& g);

/// One Leibniz step d -> d+1 (d in {2,3}); see descend_to.
std::vector<MicroGraph> descend(const MicroGraph& g);

/// Descendants in the target dimension: every vertex gains its missing Casimir slots,
/// and each edge u -> v between distinct epsilon vertices is replaced by one copy per
/// target in {v} and the Casimirs of v that are new relative to g. Tadpoles, sink edges
/// and Casimir edges are kept. Full Cartesian product, slot-major, no deduplication.
std::vector<MicroGraph> descend_to(const MicroGraph& g, int target_dimension);

/// Exchanges the a1 and a2 Casimir families (d = 4 only).
MicroGraph swap_casimirs(const MicroGraph& g);

/// Every valid 1-vector micro-graph in dimension d, one per canonical form, sorted.
std::vector<MicroGraph> enumerate_micrographs(int dimension);

/// Count of canonical classes by Burnside's lemma over slot-recursive generation;
/// independent of canonicalize().
std::size_t count_micrograph_orbits(int dimension);

/// Linear combination of micro-graphs with distinct canonical forms.
class WeightedGraphSum {
 public:
  struct Term {
    MicroGraph graph;
    Rational coefficient;
  };

  /// Merges into the term with the same canonical form (keeps the first representative).
  void add(const MicroGraph& g, const Rational& c);
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

 private:
  std::vector<Term> terms_;
  std::vector<MicroGraph> canonical_;
};

/// Gamma1 = (0,1 ; 1,3 ; 1,2) and Gamma2 = (0,2 ; 1,3 ; 1,2) in 2D.
MicroGraph gamma1();
MicroGraph gamma2();
/// 1*Gamma1 + 2*Gamma2.
WeightedGraphSum sunflower();

}  // namespace nambu

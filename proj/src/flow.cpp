#include "nambu/flow.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "nambu/linsolve.hpp"
#include "nambu/resources.hpp"

namespace nambu {

UndirectedGraph tetrahedron() {
  UndirectedGraph g;
  g.vertices = 4;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) g.edges.emplace_back(a, b);
  return g;
}

std::vector<int> WedgeGraph::tokens() const {
  std::vector<int> t;
  t.reserve(8);
  for (const auto& lr : out) {
    t.push_back(lr[0]);
    t.push_back(lr[1]);
  }
  return t;
}

std::string WedgeGraph::render() const {
  std::string s = "[";
  for (int k = 0; k < kInternal; ++k) {
    if (k) s += ",";
    s += "(" + std::to_string(out[k][0]) + "," + std::to_string(out[k][1]) + ")";
  }
  return s + "]";
}

WedgeGraph WedgeGraph::from_tokens(const std::vector<int>& tokens) {
  if (tokens.size() != 8) throw std::invalid_argument("wedge graph needs 8 targets");
  WedgeGraph g;
  for (int k = 0; k < 8; ++k) {
    const int t = tokens[static_cast<std::size_t>(k)];
    if (t < 0 || t > 5 || t == k / 2 + 2) throw std::invalid_argument("wedge graph: bad target");
    g.out[k / 2][k % 2] = static_cast<std::uint8_t>(t);
  }
  return g;
}

CanonicalWedge canonicalize(const WedgeGraph& g) {
  std::array<int, 4> perm{2, 3, 4, 5};
  std::vector<int> best;
  int best_sign = 0;
  bool zero = false;
  do {
    for (int sink_swap = 0; sink_swap < 2; ++sink_swap) {
      auto map_id = [&](int t) { return t < 2 ? (sink_swap ? 1 - t : t) : perm[t - 2]; };
      for (int lr = 0; lr < 16; ++lr) {
        WedgeGraph h;
        for (int v = 2; v <= 5; ++v) {
          const bool flip = (lr >> (v - 2)) & 1;
          auto& dst = h.out[perm[v - 2] - 2];
          dst[0] = static_cast<std::uint8_t>(map_id(g.target(v, flip ? 1 : 0)));
          dst[1] = static_cast<std::uint8_t>(map_id(g.target(v, flip ? 0 : 1)));
        }
        const int sign = ((std::popcount(static_cast<unsigned>(lr)) + sink_swap) & 1) ? -1 : 1;
        auto t = h.tokens();
        if (best.empty() || t < best) {
          best = std::move(t);
          best_sign = sign;
          zero = false;
        } else if (t == best && sign != best_sign) {
          zero = true;
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {WedgeGraph::from_tokens(best), zero ? 0 : best_sign};
}

std::vector<WedgeGraph> tetrahedron_orientations() {
  const UndirectedGraph tet = tetrahedron();
  std::vector<WedgeGraph> out;
  for (unsigned dir = 0; dir < (1u << tet.edges.size()); ++dir) {
    std::array<std::vector<int>, 4> targets;
    for (std::size_t e = 0; e < tet.edges.size(); ++e) {
      auto [a, b] = tet.edges[e];
      if ((dir >> e) & 1) std::swap(a, b);
      targets[static_cast<std::size_t>(a)].push_back(b + 2);
    }
    std::vector<int> deficient;  // one entry per missing out-edge
    bool ok = true;
    for (int v = 0; v < 4; ++v) {
      const int missing = 2 - static_cast<int>(targets[static_cast<std::size_t>(v)].size());
      if (missing < 0) ok = false;
      for (int k = 0; k < missing; ++k) deficient.push_back(v);
    }
    if (!ok || deficient.size() != 2) continue;
    std::vector<std::array<int, 2>> attachments{{deficient[0], deficient[1]}};
    if (deficient[0] != deficient[1]) attachments.push_back({deficient[1], deficient[0]});
    for (const auto& att : attachments) {
      auto full = targets;
      full[static_cast<std::size_t>(att[0])].push_back(0);
      full[static_cast<std::size_t>(att[1])].push_back(1);
      for (int lr = 0; lr < 16; ++lr) {
        WedgeGraph g;
        for (int v = 0; v < 4; ++v) {
          const auto& t = full[static_cast<std::size_t>(v)];
          const bool flip = (lr >> v) & 1;
          g.out[static_cast<std::size_t>(v)] = {static_cast<std::uint8_t>(t[flip ? 1 : 0]),
                                                static_cast<std::uint8_t>(t[flip ? 0 : 1])};
        }
        out.push_back(g);
      }
    }
  }
  return out;
}

std::vector<WedgeGraph> orientation_classes() {
  std::set<WedgeGraph> classes;
  for (const auto& g : tetrahedron_orientations()) {
    const CanonicalWedge c = canonicalize(g);
    if (c.sign != 0) classes.insert(c.graph);
  }
  return {classes.begin(), classes.end()};
}

SymbolicBivectorJets::SymbolicBivectorJets(int dimension) : p_(nambu_bivector(dimension)) {}

const DiffPoly& SymbolicBivectorJets::get(int a, int b, const MultiIndex& mi) {
  const auto key = std::make_tuple(a, b, mi.counts());
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  DiffPoly v = p_.component({a, b});
  for (int i : mi.indices()) v = partial(v, i);
  return cache_.emplace(key, std::move(v)).first->second;
}

PointBivectorJets::PointBivectorJets(const NambuData& data, const Point& point)
    : p_(nambu_bivector(data)), point_(point) {}

const Rational& PointBivectorJets::get(int a, int b, const MultiIndex& mi) {
  const auto key = std::make_tuple(a, b, mi.counts());
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Rational v = evaluate(partial(p_.component({a, b}), mi), point_);
  return cache_.emplace(key, std::move(v)).first->second;
}

FirstJetBivectorJets::FirstJetBivectorJets(PointJetEvaluator& at) : at_(at), symbolic_(at.data().dimension) {}

const FirstJet& FirstJetBivectorJets::get(int a, int b, const MultiIndex& mi) {
  const auto key = std::make_tuple(a, b, mi.counts());
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const DiffPoly& c = symbolic_.get(a, b, mi);
  FirstJet::Gradient grad{};
  for (int k = 1; k <= at_.data().dimension; ++k) grad[static_cast<std::size_t>(k - 1)] = at_.evaluate_partial(c, k);
  return cache_.emplace(key, FirstJet(at_.evaluate(c), grad)).first->second;
}

PointVector flow_cocycle_at(const FlowFormula& f, PointJetEvaluator& at) {
  const int d = at.data().dimension;
  if (d < 3) return PointVector(d, d);  // no nonzero trivectors
  FirstJetBivectorJets jets(at);
  const MultiVector<FirstJet> q = evaluate_flow(f, d, jets);
  MultiVector<FirstJet> p(d, 2);
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) p.add({i, j}, jets.get(i, j, MultiIndex{}));
  return schouten(p, q).map([](const FirstJet& v) { return v.value(); });
}

DiffPolyVector gamma3_flow(const FlowFormula& f, int dimension) {
  if (dimension < 2 || dimension > 4) throw std::invalid_argument("gamma3_flow: dimension out of range");
  SymbolicBivectorJets jets(dimension);
  return evaluate_flow(f, dimension, jets);
}

PointVector gamma3_flow_at(const FlowFormula& f, const NambuData& data, const Point& point) {
  PointBivectorJets jets(data, point);
  return evaluate_flow(f, data.dimension, jets);
}

namespace {

/// Scales a vector to coprime integers with a positive first nonzero entry; returns the factor used.
Rational make_primitive(std::vector<Rational>& v) {
  mpz_class l = 1;
  mpz_class g = 0;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
  for (const auto& x : v) {
    mpz_class n = x.raw().get_num() * (l / x.raw().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return Rational{1};
  Rational s(mpq_class(l, g));
  for (const auto& x : v) {
    if (!x.is_zero()) {
      if (x.sign() < 0) s = -s;
      break;
    }
  }
  for (auto& x : v) x *= s;
  return s;
}

}  // namespace

FlowDerivation orient_tetrahedron() {
  FlowDerivation out;
  out.classes = orientation_classes();
  const std::size_t k = out.classes.size();

  const DiffPolyVector p2 = nambu_bivector(2);
  const DiffPolyVector p3 = nambu_bivector(3);
  std::vector<DiffPolyVector> cocycle3;  // [[P, Q_k]] in 3D
  std::vector<DiffPolyVector> flow2;     // Q_k in 2D, then -[[P, phi(sunflower)]]
  for (const auto& g : out.classes) {
    FlowFormula single{{{g, Rational{1}}}};
    cocycle3.push_back(schouten(p3, gamma3_flow(single, 3)));
    flow2.push_back(gamma3_flow(single, 2));
  }
  flow2.push_back(schouten(p2, phi(sunflower())) * Rational{-1});

  StreamingSolver solver(k + 1);
  for (const auto* sys : {&cocycle3, &flow2}) {
    const TrivialitySystem ts = assemble_jet_system(*sys, nullptr);
    for (const auto& row : ts.matrix.rows) solver.add_equation(row, Rational{});
  }
  const SolveReport r = solver.report();
  out.kernel_dimension = r.kernel_dimension();
  out.equations = r.equations;
  if (r.kernel_dimension() != 1)
    throw std::runtime_error("flow derivation: constraint space has dimension " + std::to_string(r.kernel_dimension()));

  std::vector<Rational> w = r.kernel.front();
  make_primitive(w);
  if (w[k].is_zero()) throw std::runtime_error("flow derivation: only the trivial 2D flow is compatible");
  out.sunflower_factor = w[k];
  for (std::size_t i = 0; i < k; ++i)
    if (!w[i].is_zero()) out.formula.terms.push_back({out.classes[i], w[i]});
  return out;
}

std::optional<Rational> normalize_flow(FlowFormula& f, const DiffPolyVector& target3d) {
  auto c = proportionality_factor(target3d, gamma3_flow(f, 3));
  if (!c) return std::nullopt;
  for (auto& t : f.terms) t.weight *= *c;
  return c;
}

std::string flow_to_json(const FlowFormula& f, const std::string& note) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  if (!note.empty()) j["note"] = note;
  j["sinks"] = {0, 1};
  j["internal_vertices"] = {2, 3, 4, 5};
  auto& terms = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : f.terms) {
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& lr : t.graph.out) edges.push_back({lr[0], lr[1]});
    terms.push_back({{"edges", edges}, {"weight", t.weight.str()}});
  }
  return j.dump(2) + "\n";
}

FlowFormula flow_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("schema_version").get<int>() != 1) throw std::runtime_error("flow json: unsupported schema version");
  FlowFormula f;
  for (const auto& t : j.at("terms")) {
    std::vector<int> tokens;
    for (const auto& lr : t.at("edges")) {
      tokens.push_back(lr.at(0).get<int>());
      tokens.push_back(lr.at(1).get<int>());
    }
    f.terms.push_back({WedgeGraph::from_tokens(tokens), Rational::parse(t.at("weight").get<std::string>())});
  }
  return f;
}

namespace {
std::optional<FlowFormula>& flow_override() {
  static std::optional<FlowFormula> f;
  return f;
}
}  // namespace

void replace_builtin_flow(FlowFormula f) { flow_override() = std::move(f); }

const FlowFormula& builtin_flow() {
  if (flow_override()) return *flow_override();
  static const FlowFormula f = flow_from_json(read_data_file("flow.json"));
  return f;
}

}  // namespace nambu

#include "nambu/micrograph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace nambu {

int levi_civita(std::span<const int> indices) {
  const int n = static_cast<int>(indices.size());
  unsigned seen = 0;
  int inversions = 0;
  for (int a = 0; a < n; ++a) {
    const int i = indices[a];
    if (i < 1 || i > n || (seen & (1u << i))) return 0;
    seen |= 1u << i;
    for (int b = a + 1; b < n; ++b) inversions += indices[b] < i;
  }
  return (inversions & 1) ? -1 : 1;
}

MicroGraph::MicroGraph(int dimension, const std::array<std::vector<int>, kEpsilonCount>& slots) : dim_(dimension) {
  if (dimension < 2 || dimension > 4)
    throw EncodingError("dimension must be 2, 3 or 4, got " + std::to_string(dimension));
  for (int v = 0; v < kEpsilonCount; ++v) {
    if (static_cast<int>(slots[v].size()) != dimension) {
      throw EncodingError("vertex " + std::to_string(v + 1) + " has " + std::to_string(slots[v].size()) +
                          " slots, expected " + std::to_string(dimension));
    }
    for (int s = 0; s < dimension; ++s) {
      const int t = slots[v][s];
      if (t < 0 || t >= vertex_count(dimension)) {
        throw EncodingError("target " + std::to_string(t) + " out of range in dimension " +
                            std::to_string(dimension));
      }
      slots_[v][s] = static_cast<std::uint8_t>(t);
    }
  }
  validate();
}

void MicroGraph::validate() const {
  int sink_edges = 0;
  for (int v = 1; v <= kEpsilonCount; ++v) {
    for (int s = 1; s <= dim_; ++s) sink_edges += target(v, s) == 0;
    if (dim_ == 3 && target(v, 3) != 3 + v) {
      throw EncodingError("slot 3 of vertex " + std::to_string(v) + " must target its Casimir " +
                          std::to_string(3 + v));
    }
    if (dim_ == 4) {
      const int a = target(v, 3);
      const int b = target(v, 4);
      const bool ok = (a == 3 + v && b == 6 + v) || (a == 6 + v && b == 3 + v);
      if (!ok) {
        throw EncodingError("slots 3 and 4 of vertex " + std::to_string(v) + " must target " +
                            std::to_string(3 + v) + " and " + std::to_string(6 + v));
      }
    }
  }
  if (sink_edges != 1) throw EncodingError("exactly one edge must reach the sink, found " + std::to_string(sink_edges));
}

std::vector<int> MicroGraph::slots(int v) const {
  return {slots_[v - 1].begin(), slots_[v - 1].begin() + dim_};
}

std::vector<int> MicroGraph::tokens() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(kEpsilonCount * dim_));
  for (int v = 1; v <= kEpsilonCount; ++v)
    for (int s = 1; s <= dim_; ++s) out.push_back(target(v, s));
  return out;
}

std::string MicroGraph::render() const {
  std::string out = "(";
  for (int v = 1; v <= kEpsilonCount; ++v) {
    if (v > 1) out += " ; ";
    for (int s = 1; s <= dim_; ++s) {
      if (s > 1) out += ',';
      out += std::to_string(target(v, s));
    }
  }
  return out + ")";
}

std::string MicroGraph::render_flat() const {
  std::string out = "(";
  const auto t = tokens();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

int parse_token(std::string_view tok) {
  tok = trim(tok);
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0) {
    throw EncodingError("bad token '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

MicroGraph parse_encoding(std::string_view text, int dimension) {
  if (dimension < 2 || dimension > 4) throw EncodingError("dimension must be 2, 3 or 4");
  auto body = trim(text);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')')
    throw EncodingError("encoding must be enclosed in parentheses: '" + std::string(text) + "'");
  body = body.substr(1, body.size() - 2);

  std::array<std::vector<int>, MicroGraph::kEpsilonCount> slots;
  const auto groups = split(body, ';');
  if (groups.size() > 1) {
    if (groups.size() != MicroGraph::kEpsilonCount)
      throw EncodingError("expected 3 groups separated by ';', got " + std::to_string(groups.size()));
    for (int v = 0; v < MicroGraph::kEpsilonCount; ++v) {
      for (auto tok : split(groups[v], ',')) slots[v].push_back(parse_token(tok));
      if (static_cast<int>(slots[v].size()) != dimension) {
        throw EncodingError("group " + std::to_string(v + 1) + " has " + std::to_string(slots[v].size()) +
                            " tokens, expected " + std::to_string(dimension));
      }
    }
  } else {
    const auto toks = split(body, ',');
    if (static_cast<int>(toks.size()) != MicroGraph::kEpsilonCount * dimension) {
      throw EncodingError("flat encoding has " + std::to_string(toks.size()) + " tokens, expected " +
                          std::to_string(MicroGraph::kEpsilonCount * dimension));
    }
    for (std::size_t i = 0; i < toks.size(); ++i) slots[i / dimension].push_back(parse_token(toks[i]));
  }
  return MicroGraph(dimension, slots);
}

MicroGraph relabel(const MicroGraph& g, const std::array<int, 3>& perm) {
  auto map_id = [&](int id) {
    if (id == 0) return 0;
    const int owner = MicroGraph::casimir_owner(id);
    return id - owner + perm[owner - 1];
  };
  std::array<std::vector<int>, 3> slots;
  for (int v = 1; v <= 3; ++v) {
    auto& dst = slots[perm[v - 1] - 1];
    for (int t : g.slots(v)) dst.push_back(map_id(t));
  }
  return MicroGraph(g.dimension(), slots);
}

MicroGraph canonicalize(const MicroGraph& g) {
  std::array<int, 3> perm{1, 2, 3};
  MicroGraph best = g;
  auto best_tokens = g.tokens();
  do {
    MicroGraph h = relabel(g, perm);
    auto t = h.tokens();
    if (t < best_tokens) {
      best_tokens = std::move(t);
      best = h;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<MicroGraph> descend(const MicroGraph& g) {
  if (g.dimension() >= 4) throw std::invalid_argument("cannot descend beyond dimension 4");
  return descend_to(g, g.dimension() + 1);
}

std::vector<MicroGraph> descend_to(const MicroGraph& g, int target_dimension) {
  const int d = g.dimension();
  if (target_dimension < d || target_dimension > 4)
    throw std::invalid_argument("descend target dimension must lie in [" + std::to_string(d) + ", 4]");

  // New Casimir levels: 1 for a1, 2 for a2; a level l vertex of w has id 3*l + w.
  std::vector<int> new_levels;
  for (int l = d - 1; l <= target_dimension - 2; ++l) new_levels.push_back(l);

  std::vector<std::vector<int>> choices;  // per slot, vertex-major
  for (int v = 1; v <= 3; ++v) {
    for (int s = 1; s <= d; ++s) {
      const int t = g.target(v, s);
      std::vector<int> c{t};
      if (MicroGraph::kind(t) == VertexKind::Epsilon && t != v)
        for (int l : new_levels) c.push_back(3 * l + t);
      choices.push_back(std::move(c));
    }
  }

  std::vector<MicroGraph> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    std::array<std::vector<int>, 3> slots;
    for (int v = 1; v <= 3; ++v) {
      for (int s = 1; s <= d; ++s) {
        const auto k = static_cast<std::size_t>((v - 1) * d + (s - 1));
        slots[v - 1].push_back(choices[k][pick[k]]);
      }
      for (int l : new_levels) slots[v - 1].push_back(3 * l + v);
    }
    out.emplace_back(target_dimension, slots);

    // odometer; the last slot varies fastest
    std::size_t k = choices.size();
    while (k > 0) {
      --k;
      if (++pick[k] < choices[k].size()) break;
      pick[k] = 0;
      if (k == 0) return out;
    }
    if (choices.empty()) return out;
  }
}

MicroGraph swap_casimirs(const MicroGraph& g) {
  if (g.dimension() != 4) throw std::invalid_argument("swap_casimirs needs dimension 4");
  std::array<std::vector<int>, 3> slots;
  for (int v = 1; v <= 3; ++v) {
    for (int t : g.slots(v)) {
      if (MicroGraph::kind(t) == VertexKind::Casimir) t = MicroGraph::casimir_level(t) == 1 ? t + 3 : t - 3;
      slots[v - 1].push_back(t);
    }
  }
  return MicroGraph(4, slots);
}

namespace {

/// Calls f(tokens) for every valid raw encoding, filling free slots recursively.
/// Casimir slots are fixed in the order (a1, a2).
template <class F>
void for_each_raw_encoding(int d, F&& f) {
  const int n = MicroGraph::vertex_count(d);
  std::vector<int> tokens(static_cast<std::size_t>(3 * d));
  for (int v = 1; v <= 3; ++v)
    for (int s = 3; s <= d; ++s) tokens[static_cast<std::size_t>((v - 1) * d + s - 1)] = 3 * (s - 2) + v;

  auto rec = [&](auto&& self, int pos, int sinks) -> void {
    if (pos == 3 * d) {
      if (sinks == 1) f(tokens);
      return;
    }
    const int slot = pos % d + 1;
    if (slot > 2) {
      self(self, pos + 1, sinks);
      return;
    }
    for (int t = 0; t < n; ++t) {
      if (t == 0 && sinks == 1) continue;
      tokens[static_cast<std::size_t>(pos)] = t;
      self(self, pos + 1, sinks + (t == 0));
    }
  };
  rec(rec, 0, 0);
}

MicroGraph from_tokens(int d, const std::vector<int>& tokens) {
  std::array<std::vector<int>, 3> slots;
  for (int v = 0; v < 3; ++v) slots[v].assign(tokens.begin() + v * d, tokens.begin() + (v + 1) * d);
  return MicroGraph(d, slots);
}

}  // namespace

std::vector<MicroGraph> enumerate_micrographs(int dimension) {
  if (dimension < 2 || dimension > 4) throw std::invalid_argument("dimension must be 2, 3 or 4");
  std::vector<MicroGraph> out;
  for_each_raw_encoding(dimension, [&](const std::vector<int>& t) {
    MicroGraph g = from_tokens(dimension, t);
    if (canonicalize(g) == g) out.push_back(g);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_micrograph_orbits(int dimension) {
  if (dimension < 2 || dimension > 4) throw std::invalid_argument("dimension must be 2, 3 or 4");
  const int d = dimension;
  std::vector<std::array<int, 3>> group;
  std::array<int, 3> p{0, 1, 2};
  do group.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  // Burnside: number of orbits = average number of fixed encodings.
  std::size_t fixed_total = 0;
  for_each_raw_encoding(d, [&](const std::vector<int>& t) {
    for (const auto& sigma : group) {
      bool fixed = true;
      for (int v = 0; v < 3 && fixed; ++v) {
        for (int s = 0; s < d && fixed; ++s) {
          const int target = t[static_cast<std::size_t>(v * d + s)];
          const int image = target == 0 ? 0 : ((target - 1) / 3) * 3 + sigma[(target - 1) % 3] + 1;
          fixed = t[static_cast<std::size_t>(sigma[v] * d + s)] == image;
        }
      }
      fixed_total += fixed;
    }
  });
  return fixed_total / group.size();
}

void WeightedGraphSum::add(const MicroGraph& g, const Rational& c) {
  const MicroGraph key = canonicalize(g);
  auto it = std::find(canonical_.begin(), canonical_.end(), key);
  if (it == canonical_.end()) {
    if (c.is_zero()) return;
    canonical_.push_back(key);
    terms_.push_back({g, c});
    return;
  }
  const auto i = static_cast<std::size_t>(it - canonical_.begin());
  terms_[i].coefficient += c;
  if (terms_[i].coefficient.is_zero()) {
    terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(i));
    canonical_.erase(it);
  }
}

MicroGraph gamma1() { return parse_encoding("(0,1 ; 1,3 ; 1,2)", 2); }
MicroGraph gamma2() { return parse_encoding("(0,2 ; 1,3 ; 1,2)", 2); }

WeightedGraphSum sunflower() {
  WeightedGraphSum s;
  s.add(gamma1(), Rational{1});
  s.add(gamma2(), Rational{2});
  return s;
}

}  // namespace nambu

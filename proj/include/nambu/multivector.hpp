#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nambu/monomial.hpp"
#include "nambu/rational.hpp"

namespace nambu {

/// Bit set of coordinate indices; bit (i-1) stands for x_i.
using IndexMask = std::uint8_t;

namespace grassmann {

inline int popcount(IndexMask m) { return std::popcount(static_cast<unsigned>(m)); }

/// Sign of xi_I * xi_J relative to xi_{I u J}; 0 when I and J overlap.
inline int product_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (int j = 0; j < kMaxDim; ++j) {
    if (b & (1u << j)) swaps += popcount(static_cast<IndexMask>(a >> (j + 1)));
  }
  return (swaps & 1) ? -1 : 1;
}

/// Sign picked up by moving xi_k to the right end of xi_I (k in I).
inline int right_sign(IndexMask m, int k) { return (popcount(static_cast<IndexMask>(m >> k)) & 1) ? -1 : 1; }
/// Sign picked up by moving xi_k to the left end of xi_I (k in I).
inline int left_sign(IndexMask m, int k) {
  return (popcount(static_cast<IndexMask>(m & ((1u << (k - 1)) - 1))) & 1) ? -1 : 1;
}

/// Mask and permutation sign for an index tuple; sign 0 on repeats.
inline std::pair<IndexMask, int> mask_of(const std::vector<int>& indices) {
  IndexMask m = 0;
  int inversions = 0;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    const int i = indices[a];
    if (i < 1 || i > kMaxDim) throw std::out_of_range("coordinate index out of range");
    if (m & (1u << (i - 1))) return {0, 0};
    m |= static_cast<IndexMask>(1u << (i - 1));
    for (std::size_t b = a + 1; b < indices.size(); ++b) inversions += indices[b] < i;
  }
  return {m, (inversions & 1) ? -1 : 1};
}

inline std::vector<int> indices_of(IndexMask m) {
  std::vector<int> out;
  for (int i = 1; i <= kMaxDim; ++i)
    if (m & (1u << (i - 1))) out.push_back(i);
  return out;
}

}  // namespace grassmann

/// A p-vector field on R^d whose components live in the ring R (Poly or DiffPoly).
/// Only strictly increasing index tuples are stored; permuted keys are sign-adjusted.
template <class R>
class MultiVector {
 public:
  MultiVector() = default;
  MultiVector(int dimension, int degree) : dim_(dimension), degree_(degree) {
    if (dimension < 1 || dimension > kMaxDim) throw std::invalid_argument("dimension out of range");
    if (degree < 0 || degree > dimension) throw std::invalid_argument("multivector degree out of range");
  }

  [[nodiscard]] int dimension() const { return dim_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] const std::map<IndexMask, R>& components() const { return comps_; }
  [[nodiscard]] bool is_zero() const { return comps_.empty(); }

  /// Component with the given (possibly unsorted) indices.
  [[nodiscard]] R component(const std::vector<int>& indices) const {
    check_indices(indices);
    auto [mask, sign] = grassmann::mask_of(indices);
    if (sign == 0) return R{};
    auto it = comps_.find(mask);
    if (it == comps_.end()) return R{};
    return sign > 0 ? it->second : R{} - it->second;
  }
  [[nodiscard]] R component_mask(IndexMask mask) const {
    auto it = comps_.find(mask);
    return it == comps_.end() ? R{} : it->second;
  }

  /// Adds value into the component named by the index tuple (antisymmetric extension).
  void add(const std::vector<int>& indices, const R& value) {
    check_indices(indices);
    auto [mask, sign] = grassmann::mask_of(indices);
    if (sign == 0) {
      if (!value.is_zero()) throw std::invalid_argument("nonzero value on a repeated index tuple");
      return;
    }
    add_mask(mask, sign > 0 ? value : R{} - value);
  }
  void add_mask(IndexMask mask, const R& value) {
    if (value.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(mask, value);
    if (!inserted) {
      it->second += value;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }
  void set(const std::vector<int>& indices, const R& value) {
    auto [mask, sign] = grassmann::mask_of(indices);
    comps_.erase(mask);
    add(indices, value);
  }

  MultiVector& operator+=(const MultiVector& o) {
    check_compatible(o);
    for (const auto& [m, v] : o.comps_) add_mask(m, v);
    return *this;
  }
  MultiVector& operator-=(const MultiVector& o) {
    check_compatible(o);
    for (const auto& [m, v] : o.comps_) add_mask(m, R{} - v);
    return *this;
  }
  MultiVector& operator*=(const Rational& s) {
    if (s.is_zero()) {
      comps_.clear();
      return *this;
    }
    for (auto& [m, v] : comps_) v *= s;
    return *this;
  }
  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend MultiVector operator*(MultiVector a, const Rational& s) { return a *= s; }
  friend MultiVector operator*(const Rational& s, MultiVector a) { return a *= s; }
  friend bool operator==(const MultiVector& a, const MultiVector& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

  /// Total number of stored monomials over all components.
  [[nodiscard]] std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& [m, v] : comps_) n += v.size();
    return n;
  }

  /// Applies f to every component, dropping zero results.
  template <class F>
  [[nodiscard]] auto map(F&& f) const {
    using Out = decltype(f(std::declval<const R&>()));
    MultiVector<Out> out(dim_, degree_);
    for (const auto& [m, v] : comps_) out.add_mask(m, f(v));
    return out;
  }

 private:
  void check_indices(const std::vector<int>& indices) const {
    if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("index tuple length != degree");
    for (int i : indices)
      if (i < 1 || i > dim_) throw std::out_of_range("component index out of range for dimension");
  }
  void check_compatible(const MultiVector& o) const {
    if (o.dim_ != dim_ || o.degree_ != degree_) throw std::invalid_argument("multivector shape mismatch");
  }

  int dim_ = 1;
  int degree_ = 0;
  std::map<IndexMask, R> comps_;
};

/// Exterior product X ^ Y.
template <class R>
MultiVector<R> wedge(const MultiVector<R>& x, const MultiVector<R>& y) {
  if (x.dimension() != y.dimension()) throw std::invalid_argument("wedge: dimension mismatch");
  MultiVector<R> out(x.dimension(), x.degree() + y.degree());
  for (const auto& [mx, vx] : x.components()) {
    for (const auto& [my, vy] : y.components()) {
      const int s = grassmann::product_sign(mx, my);
      if (s == 0) continue;
      R prod = vx * vy;
      if (s < 0) prod *= Rational{-1};
      out.add_mask(static_cast<IndexMask>(mx | my), prod);
    }
  }
  return out;
}

/// Component-wise d/dx_i; relies on an ADL-visible partial(const R&, int).
template <class R>
MultiVector<R> partial(const MultiVector<R>& x, int i) {
  return x.map([i](const R& v) { return partial(v, i); });
}

/// Schouten bracket of a p-vector and a q-vector, via odd coordinates xi:
///   [[X, Y]] = sum_k (X <-d/dxi_k)(d/dx_k Y) - (d/dx_k X)(d/dxi_k-> Y).
/// On vector fields it is the Lie bracket; [[X, P]] = L_X P for a vector X.
template <class R>
MultiVector<R> schouten(const MultiVector<R>& x, const MultiVector<R>& y) {
  const int d = x.dimension();
  if (y.dimension() != d) throw std::invalid_argument("schouten: dimension mismatch");
  const int p = x.degree();
  const int q = y.degree();
  if (p + q - 1 < 0 || p + q - 1 > d) throw std::invalid_argument("schouten: unsupported arity");
  MultiVector<R> out(d, p + q - 1);
  for (int k = 1; k <= d; ++k) {
    const auto bit = static_cast<IndexMask>(1u << (k - 1));
    MultiVector<R> dy = partial(y, k);
    MultiVector<R> dx = partial(x, k);
    for (const auto& [mx, vx] : x.components()) {
      if (!(mx & bit)) continue;
      const auto rest = static_cast<IndexMask>(mx & ~bit);
      const int s1 = grassmann::right_sign(mx, k);
      for (const auto& [my, vy] : dy.components()) {
        const int s2 = grassmann::product_sign(rest, my);
        if (s2 == 0) continue;
        R prod = vx * vy;
        if (s1 * s2 < 0) prod *= Rational{-1};
        out.add_mask(static_cast<IndexMask>(rest | my), prod);
      }
    }
    for (const auto& [my, vy] : y.components()) {
      if (!(my & bit)) continue;
      const auto rest = static_cast<IndexMask>(my & ~bit);
      const int s1 = grassmann::left_sign(my, k);
      for (const auto& [mx, vx] : dx.components()) {
        const int s2 = grassmann::product_sign(mx, rest);
        if (s2 == 0) continue;
        R prod = vx * vy;
        // minus sign of the second term
        if (s1 * s2 > 0) prod *= Rational{-1};
        out.add_mask(static_cast<IndexMask>(mx | rest), prod);
      }
    }
  }
  return out;
}

}  // namespace nambu

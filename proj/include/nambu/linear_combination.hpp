#pragma once

#include <algorithm>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nambu/rational.hpp"

namespace nambu {

/// Sparse exact linear combination of commuting monomials.
///
/// Monomial must be hashable, equality-comparable, ordered by operator< (used only
/// for canonical iteration) and closed under operator*. Zero coefficients are never
/// stored, so two values are equal iff their term maps coincide.
template <class Monomial>
class LinearCombination {
 public:
  using Term = std::pair<Monomial, Rational>;
  using Map = std::unordered_map<Monomial, Rational>;

  LinearCombination() = default;
  explicit LinearCombination(const Rational& constant) {
    if (!constant.is_zero()) terms_.emplace(Monomial{}, constant);
  }
  LinearCombination(const Monomial& m, const Rational& c) {
    if (!c.is_zero()) terms_.emplace(m, c);
  }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] const Map& terms() const { return terms_; }

  /// Coefficient of m (zero when absent).
  [[nodiscard]] Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational{} : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Adds c * a * b, term by term.
  void add_product(const LinearCombination& a, const LinearCombination& b, const Rational& c = Rational{1}) {
    for (const auto& [ma, ca] : a.terms_) {
      Rational cac = ca * c;
      for (const auto& [mb, cb] : b.terms_) add_term(ma * mb, cac * cb);
    }
  }

  /// Terms sorted by the monomial order.
  [[nodiscard]] std::vector<Term> sorted_terms() const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    return out;
  }

  LinearCombination& operator+=(const LinearCombination& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  LinearCombination& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
  friend LinearCombination operator-(LinearCombination a) { return a *= Rational{-1}; }
  friend LinearCombination operator*(LinearCombination a, const Rational& s) { return a *= s; }
  friend LinearCombination operator*(const Rational& s, LinearCombination a) { return a *= s; }
  friend LinearCombination operator*(const LinearCombination& a, const LinearCombination& b) {
    LinearCombination out;
    out.add_product(a, b);
    return out;
  }
  friend bool operator==(const LinearCombination& a, const LinearCombination& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

}  // namespace nambu

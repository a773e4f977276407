#pragma once

#include <array>

#include "nambu/monomial.hpp"
#include "nambu/rational.hpp"

namespace nambu {

/// A value at a point together with its gradient there. Sums and products follow the
/// Leibniz rule, so any polynomial expression in first-order jets has an exact value and
/// an exact gradient.
class FirstJet {
 public:
  using Gradient = std::array<Rational, kMaxDim>;

  FirstJet() = default;
  FirstJet(Rational value, Gradient gradient) : value_(std::move(value)), grad_(std::move(gradient)) {}
  explicit FirstJet(const Rational& constant) : value_(constant) {}

  [[nodiscard]] const Rational& value() const { return value_; }
  [[nodiscard]] const Rational& gradient(int coordinate) const { return grad_[static_cast<std::size_t>(coordinate - 1)]; }
  [[nodiscard]] bool is_zero() const {
    if (!value_.is_zero()) return false;
    for (const auto& g : grad_)
      if (!g.is_zero()) return false;
    return true;
  }

  FirstJet& operator+=(const FirstJet& o) {
    value_ += o.value_;
    for (std::size_t k = 0; k < grad_.size(); ++k) grad_[k] += o.grad_[k];
    return *this;
  }
  FirstJet& operator-=(const FirstJet& o) {
    value_ -= o.value_;
    for (std::size_t k = 0; k < grad_.size(); ++k) grad_[k] -= o.grad_[k];
    return *this;
  }
  FirstJet& operator*=(const Rational& s) {
    value_ *= s;
    for (auto& g : grad_) g *= s;
    return *this;
  }
  friend FirstJet operator*(const FirstJet& a, const FirstJet& b) {
    FirstJet out;
    out.value_ = a.value_ * b.value_;
    for (std::size_t k = 0; k < out.grad_.size(); ++k) out.grad_[k] = a.value_ * b.grad_[k] + b.value_ * a.grad_[k];
    return out;
  }
  friend FirstJet operator+(FirstJet a, const FirstJet& b) { return a += b; }
  friend FirstJet operator-(FirstJet a, const FirstJet& b) { return a -= b; }
  friend FirstJet operator*(FirstJet a, const Rational& s) { return a *= s; }
  friend FirstJet operator-(FirstJet a) { return a *= Rational{-1}; }
  friend bool operator==(const FirstJet&, const FirstJet&) = default;

 private:
  Rational value_;
  Gradient grad_{};
};

/// d/dx_k truncated to first order: the value is exact, the gradient is dropped (second
/// derivatives are not tracked). Enough for one Schouten bracket, which differentiates once.
inline FirstJet partial(const FirstJet& j, int coordinate) { return FirstJet(j.gradient(coordinate)); }

}  // namespace nambu

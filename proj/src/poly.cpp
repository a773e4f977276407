#include "nambu/poly.hpp"

#include <sstream>

namespace nambu {

Poly partial(const Poly& p, int i) {
  if (i < 1 || i > kMaxDim) throw std::out_of_range("partial: coordinate index out of range");
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    const int e = m.exponent(i);
    if (e == 0) continue;
    out.add_term(m.divided_by_variable(i), c * Rational{e});
  }
  return out;
}

Poly partial(const Poly& p, const MultiIndex& mi) {
  Poly out = p;
  for (int i : mi.indices()) out = partial(out, i);
  return out;
}

Rational evaluate(const Poly& p, const Point& x) {
  Rational sum;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (int i = 1; i <= kMaxDim; ++i) {
      const int e = m.exponent(i);
      if (e) t *= pow(x[i - 1], static_cast<unsigned>(e));
    }
    sum += t;
  }
  return sum;
}

Poly substitute(const Poly& p, int i, const Rational& value) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    CoordMonomial rest = m;
    const int e = m.exponent(i);
    for (int k = 0; k < e; ++k) rest = rest.divided_by_variable(i);
    out.add_term(rest, c * pow(value, static_cast<unsigned>(e)));
  }
  return out;
}

bool independent_of(const Poly& p, int i) {
  for (const auto& [m, c] : p.terms())
    if (m.exponent(i) != 0) return false;
  return true;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.sorted_terms()) {
    const bool neg = c.sign() < 0;
    const Rational a = neg ? -c : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const bool unit = m == CoordMonomial{};
    if (unit) {
      os << a;
    } else {
      if (!a.is_one()) os << a << "*";
      os << m.str();
    }
  }
  return os.str();
}

}  // namespace nambu

#include "nambu/diffpoly.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace nambu {

DiffPoly partial(const DiffPoly& p, int i) {
  if (i < 1 || i > kMaxDim) throw std::out_of_range("partial: coordinate index out of range");
  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    for (int pos = 0; pos < m.degree(); ++pos) {
      // equal neighbours give the same monomial; count them once with multiplicity
      if (pos > 0 && m[pos] == m[pos - 1]) continue;
      int mult = 1;
      while (pos + mult < m.degree() && m[pos + mult] == m[pos]) ++mult;
      out.add_term(m.with_differentiated(pos, i), mult == 1 ? c : c * Rational{mult});
    }
  }
  return out;
}

JetEvaluator::JetEvaluator(const NambuData& data) : data_(data) { data_.validate(); }

const Poly& JetEvaluator::derivative(JetVar v) {
  auto it = cache_.find(v.code());
  if (it != cache_.end()) return it->second;
  Poly p = partial(data_.field(v.field()), v.derivative());
  return cache_.emplace(v.code(), std::move(p)).first->second;
}

Poly JetEvaluator::evaluate(const DiffPoly& p) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Poly term(c);
    for (int k = 0; k < m.degree() && !term.is_zero(); ++k) term = term * derivative(m[k]);
    out += term;
  }
  return out;
}

namespace {

constexpr std::size_t kJetCodes = std::size_t{1} << 14;

bool integral_poly(const Poly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.second.is_integer(); });
}

}  // namespace

PointJetEvaluator::PointJetEvaluator(const NambuData& data, const Point& point)
    : data_(data), point_(point), known_(kJetCodes, 0), values_(kJetCodes) {
  data_.validate();
  integral_ = std::all_of(point_.begin(), point_.end(), [](const Rational& r) { return r.is_integer(); }) &&
              integral_poly(data_.rho) &&
              std::all_of(data_.casimirs.begin(), data_.casimirs.end(), integral_poly);
  if (integral_) integer_values_.resize(kJetCodes);
}

void PointJetEvaluator::fill(JetVar v) {
  const std::size_t code = v.code();
  values_[code] = nambu::evaluate(partial(data_.field(v.field()), v.derivative()), point_);
  if (integral_) integer_values_[code] = values_[code].numerator();
  known_[code] = 1;
}

const Rational& PointJetEvaluator::value(JetVar v) {
  if (!known_[v.code()]) fill(v);
  return values_[v.code()];
}

Rational PointJetEvaluator::evaluate(const DiffPoly& p) {
  if (!integral_) {
    Rational sum;
    for (const auto& [m, c] : p.terms()) {
      Rational t = c;
      for (int k = 0; k < m.degree() && !t.is_zero(); ++k) t *= value(m[k]);
      sum += t;
    }
    return sum;
  }
  mpq_class sum = 0;
  mpz_class prod;
  for (const auto& [m, c] : p.terms()) {
    prod = 1;
    for (int k = 0; k < m.degree(); ++k) {
      const JetVar v = m[k];
      if (!known_[v.code()]) fill(v);
      prod *= integer_values_[v.code()];
      if (prod == 0) break;
    }
    if (prod != 0) sum += c.raw() * prod;
  }
  return Rational(sum);
}

Rational PointJetEvaluator::evaluate_partial(const DiffPoly& p, int coordinate) {
  if (!integral_) {
    Rational sum;
    for (const auto& [m, c] : p.terms()) {
      for (int j = 0; j < m.degree(); ++j) {
        Rational t = c * value(m[j].differentiated(coordinate));
        for (int k = 0; k < m.degree() && !t.is_zero(); ++k)
          if (k != j) t *= value(m[k]);
        sum += t;
      }
    }
    return sum;
  }
  mpq_class sum = 0;
  std::array<mpz_class, JetMonomial::kCapacity + 1> prefix;
  mpz_class suffix, term;
  for (const auto& [m, c] : p.terms()) {
    const int n = m.degree();
    prefix[0] = 1;
    for (int k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * integer_value(m[k]);
    suffix = 1;
    mpz_class acc = 0;
    for (int j = n - 1; j >= 0; --j) {
      term = prefix[j] * suffix;
      if (term != 0) acc += term * integer_value(m[j].differentiated(coordinate));
      suffix *= integer_value(m[j]);
    }
    if (acc != 0) sum += c.raw() * acc;
  }
  return Rational(sum);
}

Poly evaluate_jet(const DiffPoly& p, const NambuData& data) {
  JetEvaluator ev(data);
  return ev.evaluate(p);
}

std::string to_string(const DiffPoly& p) {
  if (p.is_zero()) return "0\n";
  std::vector<DiffPoly::Term> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(),
            [](const DiffPoly::Term& a, const DiffPoly::Term& b) { return canonical_less(a.first, b.first); });
  std::ostringstream os;
  for (const auto& [m, c] : terms) os << c << " * " << m.str() << "\n";
  return os.str();
}

}  // namespace nambu

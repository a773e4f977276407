#include "nambu/monomial.hpp"

#include <sstream>

namespace nambu {

MultiIndex MultiIndex::from_indices(const std::vector<int>& indices) {
  MultiIndex m;
  for (int i : indices) {
    if (i < 1 || i > kMaxDim) throw std::out_of_range("multi-index entry out of range");
    ++m.counts_[i - 1];
  }
  return m;
}

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= kMaxDim; ++i) out.insert(out.end(), counts_[i - 1], i);
  return out;
}

std::string field_name(Field f) {
  switch (f) {
    case Field::Rho: return "rho";
    case Field::A1: return "a1";
    case Field::A2: return "a2";
  }
  return "?";
}

JetVar::JetVar(Field field, const MultiIndex& derivative) {
  unsigned code = static_cast<unsigned>(field) << 12;
  for (int i = 1; i <= kMaxDim; ++i) {
    const int c = derivative.count(i);
    if (c > kMaxCount) throw std::overflow_error("jet derivative order too high");
    code |= static_cast<unsigned>(c) << (3 * (kMaxDim - i));
  }
  code_ = static_cast<std::uint16_t>(code);
}

MultiIndex JetVar::derivative() const {
  std::vector<int> idx;
  for (int i = 1; i <= kMaxDim; ++i) idx.insert(idx.end(), count(i), i);
  return MultiIndex::from_indices(idx);
}

int JetVar::order() const {
  int n = 0;
  for (int i = 1; i <= kMaxDim; ++i) n += count(i);
  return n;
}

JetVar JetVar::differentiated(int coordinate) const {
  if (count(coordinate) == kMaxCount) throw std::overflow_error("jet derivative order too high");
  JetVar v = *this;
  v.code_ = static_cast<std::uint16_t>(code_ + (1u << (3 * (kMaxDim - coordinate))));
  return v;
}

std::string JetVar::str() const {
  std::string s = field_name(field());
  const auto idx = derivative().indices();
  if (!idx.empty()) {
    s += "_";
    for (int i : idx) s += std::to_string(i);
  }
  return s;
}

bool canonical_less(JetVar a, JetVar b) {
  if (a.field() != b.field()) return a.field() < b.field();
  return a.derivative() < b.derivative();
}

void JetMonomial::insert(JetVar v) {
  if (size_ == kCapacity) throw std::overflow_error("jet monomial degree exceeds capacity");
  int pos = size_;
  while (pos > 0 && vars_[pos - 1] > v.code()) {
    vars_[pos] = vars_[pos - 1];
    --pos;
  }
  vars_[pos] = v.code();
  ++size_;
}

JetMonomial JetMonomial::with_differentiated(int position, int coordinate) const {
  const unsigned shift = 3 * (kMaxDim - coordinate);
  if (((vars_[position] >> shift) & 7) == JetVar::kMaxCount) throw std::overflow_error("jet derivative order too high");
  JetMonomial m = *this;
  std::uint16_t v = static_cast<std::uint16_t>(vars_[position] + (1u << shift));
  // v only grows, so bubble it right.
  int pos = position;
  while (pos + 1 < size_ && m.vars_[pos + 1] < v) {
    m.vars_[pos] = m.vars_[pos + 1];
    ++pos;
  }
  m.vars_[pos] = v;
  return m;
}

JetMonomial operator*(const JetMonomial& a, const JetMonomial& b) {
  if (a.size_ + b.size_ > JetMonomial::kCapacity) throw std::overflow_error("jet monomial degree exceeds capacity");
  JetMonomial m;
  std::merge(a.vars_.begin(), a.vars_.begin() + a.size_, b.vars_.begin(), b.vars_.begin() + b.size_, m.vars_.begin());
  m.size_ = static_cast<std::uint8_t>(a.size_ + b.size_);
  return m;
}

bool canonical_less(const JetMonomial& a, const JetMonomial& b) {
  std::vector<JetVar> va, vb;
  for (int i = 0; i < a.size_; ++i) va.push_back(a[i]);
  for (int i = 0; i < b.size_; ++i) vb.push_back(b[i]);
  std::sort(va.begin(), va.end(), [](JetVar x, JetVar y) { return canonical_less(x, y); });
  std::sort(vb.begin(), vb.end(), [](JetVar x, JetVar y) { return canonical_less(x, y); });
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end(),
                                      [](JetVar x, JetVar y) { return canonical_less(x, y); });
}

std::size_t JetMonomial::hash() const {
  std::uint64_t h = 1469598103934665603ULL ^ size_;
  for (int i = 0; i < size_; ++i) {
    h ^= vars_[i];
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::string JetMonomial::str() const {
  if (size_ == 0) return "1";
  std::vector<JetVar> v;
  for (int i = 0; i < size_; ++i) v.push_back((*this)[i]);
  std::sort(v.begin(), v.end(), [](JetVar x, JetVar y) { return canonical_less(x, y); });
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += "*";
    s += v[i].str();
  }
  return s;
}

int CoordMonomial::degree() const {
  int n = 0;
  for (int i = 1; i <= kMaxDim; ++i) n += exponent(i);
  return n;
}

std::string CoordMonomial::str() const {
  std::string s;
  for (int i = 1; i <= kMaxDim; ++i) {
    const int e = exponent(i);
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

}  // namespace nambu

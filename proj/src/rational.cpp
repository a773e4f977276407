#include "nambu/rational.hpp"

#include <stdexcept>

namespace nambu {

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\n')) s.pop_back();
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

void Rational::add_product(const Rational& a, const Rational& b) {
  if (a.value_.get_den() == 1 && b.value_.get_den() == 1 && value_.get_den() == 1) {
    mpz_addmul(value_.get_num_mpz_t(), a.value_.get_num_mpz_t(), b.value_.get_num_mpz_t());
    return;
  }
  value_ += a.value_ * b.value_;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational r{1};
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace nambu

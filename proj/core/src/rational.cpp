#include "chromem/rational.hpp"

#include <ostream>

#include "chromem/errors.hpp"

namespace chromem {

Rational::Rational(long num, long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_mpq(mpq_class q) {
  Rational r;
  r.q_ = std::move(q);
  r.q_.canonicalize();
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw InputError("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw InputError("rational with zero denominator: '" + s + "'");
  return from_mpq(mpq_class(n, d));
}

long Rational::numerator_long() const {
  if (!q_.get_num().fits_slong_p()) throw InputError("numerator out of range: " + str());
  return q_.get_num().get_si();
}

long Rational::denominator_long() const {
  if (!q_.get_den().fits_slong_p()) throw InputError("denominator out of range: " + str());
  return q_.get_den().get_si();
}

Rational Rational::floor() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return from_mpq(mpq_class(f));
}

Rational Rational::ceil() const {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return from_mpq(mpq_class(c));
}

Rational Rational::abs() const { return from_mpq(mpq_class(::abs(q_))); }

Rational Rational::reciprocal() const {
  if (q_ == 0) throw InputError("reciprocal of zero");
  return from_mpq(mpq_class(1 / q_));
}

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
  return from_mpq(mpq_class(n, d));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw InputError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::str() const { return q_.get_str(); }

std::size_t Rational::hash() const {
  return std::hash<std::string>{}(q_.get_str());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace chromem

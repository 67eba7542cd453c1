#include "ambig/rational.h"

#include <ostream>
#include <stdexcept>

namespace ambig {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  std::string_view num = body, den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("not an exact rational: '" + std::string(text) +
                                "'");
  }
  mpz_class n(std::string(num), 10), d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  }
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const { return q_.get_str(10); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

std::size_t Rational::hash() const {
  // Low limbs and signs are enough to spread small fractions.
  std::size_t h = mpz_get_ui(q_.get_num_mpz_t()) * 0x9e3779b97f4a7c15ULL;
  h ^= mpz_get_ui(q_.get_den_mpz_t()) + 0x632be59bd9b4e019ULL + (h << 6) +
       (h >> 2);
  return h ^ static_cast<std::size_t>(sign() + 1);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace ambig

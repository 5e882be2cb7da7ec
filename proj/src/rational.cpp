#include "modgrowth/rational.hpp"

#include <ostream>
#include <sstream>

#include "modgrowth/checked.hpp"
#include "modgrowth/error.hpp"

namespace modgrowth {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  *this = reduce(n, d);
}

Rational Rational::reduce(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational q;
  q.num_ = checked::narrow(n);
  q.den_ = checked::narrow(d);
  return q;
}

Rational Rational::operator+(const Rational& o) const {
  return reduce(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce first so the products stay small.
  __int128 g1 = gcd128(num_, o.den_);
  __int128 g2 = gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return reduce((num_ / g1) * static_cast<__int128>(o.num_ / g2),
                (den_ / g2) * static_cast<__int128>(o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw DomainError("rational division by zero");
  return *this * reduce(o.den_, o.num_);
}

Rational Rational::operator-() const {
  Rational q;
  q.num_ = checked::neg(num_);
  q.den_ = den_;
  return q;
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  __int128 lhs = static_cast<__int128>(x.num_) * y.den_;
  __int128 rhs = static_cast<__int128>(y.num_) * x.den_;
  return lhs <=> rhs;
}

std::string Rational::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
  os << q.num();
  if (q.den() != 1) os << '/' << q.den();
  return os;
}

}  // namespace modgrowth

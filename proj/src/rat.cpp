#include "atlas/rat.hpp"

#include <cstdlib>
#include <ostream>

namespace atlas {

i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

namespace {
i128 gcd_i128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<i64>(v);
}
}  // namespace

Rat::Rat(i64 n, i64 d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i64 g = gcd_i64(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Rat Rat::from_i128(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd_i128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rat r;
  r.num = narrow(n);
  r.den = narrow(d);
  return r;
}

Rat Rat::operator+(const Rat& o) const {
  return from_i128((i128)num * o.den + (i128)o.num * den, (i128)den * o.den);
}
Rat Rat::operator-(const Rat& o) const {
  return from_i128((i128)num * o.den - (i128)o.num * den, (i128)den * o.den);
}
Rat Rat::operator*(const Rat& o) const {
  return from_i128((i128)num * o.num, (i128)den * o.den);
}
Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw std::domain_error("division by zero");
  return from_i128((i128)num * o.den, (i128)den * o.num);
}
bool Rat::operator<(const Rat& o) const {
  return (i128)num * o.den < (i128)o.num * den;
}

Rat Rat::mod(i64 m) const {
  // value - m*floor(value/m), exact.
  i128 md = (i128)m * den;
  i128 r = (i128)num % md;
  if (r < 0) r += md;
  return from_i128(r, den);
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

int jacobi(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi: n must be positive odd");
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int chi_p(i64 m, i64 p) {
  if (p == 2) {
    i64 r = m % 4;
    if (r < 0) r += 4;
    if (r != 1 && r != 3) throw std::domain_error("chi_2 of a non-unit");
    return r == 1 ? 1 : -1;
  }
  int s = jacobi(m, p);
  if (s == 0) throw std::domain_error("chi_p of a non-unit");
  return s;
}

int val_p(i64 n, i64 p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

i64 unit_part(i64 n, i64 p) {
  if (n == 0) throw std::domain_error("unit part of zero");
  while (n % p == 0) n /= p;
  return n;
}

}  // namespace atlas

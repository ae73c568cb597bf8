#ifndef ATLAS_RAT_HPP
#define ATLAS_RAT_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace atlas {

using i64 = std::int64_t;
using i128 = __int128;

i64 gcd_i64(i64 a, i64 b);

// Exact rational with canonical form: den > 0, gcd(num, den) = 1.
// Arithmetic goes through 128-bit intermediates and throws on overflow.
struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d);

  static Rat from_i128(i128 n, i128 d);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return Rat(-num, den); }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  // Representative in [0, m) of this value mod m (m = 1 or 2 in practice).
  Rat mod(i64 m) const;

  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

// Legendre/Jacobi symbol (a/n) for odd n > 0.
int jacobi(i64 a, i64 n);

// chi_p of a unit: Legendre symbol for odd p, (m mod 4 -> +-1) for p = 2.
int chi_p(i64 m, i64 p);

// p-adic valuation and unit part.
int val_p(i64 n, i64 p);
i64 unit_part(i64 n, i64 p);

}  // namespace atlas

#endif

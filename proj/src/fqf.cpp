#include "atlas/fqf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace atlas {

namespace {
i64 mod_pos(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

// inverse of a mod n, gcd(a, n) = 1
i64 inv_mod(i64 a, i64 n) {
  i64 t = 0, newt = 1, r = n, newr = mod_pos(a, n);
  while (newr != 0) {
    i64 q = r / newr;
    std::swap(t, newt);
    newt -= q * t;
    std::swap(r, newr);
    newr -= q * r;
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  return mod_pos(t, n);
}
}  // namespace

int JordanDecomposition::length() const {
  int l = 0;
  for (const auto& s : scales) l += s.rank();
  return l;
}

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<i64> orders, QMat values)
    : orders_(std::move(orders)), values_(std::move(values)) {
  if (values_.size() != orders_.size())
    throw std::domain_error("fqf: value matrix size mismatch");
  for (const auto& row : values_)
    if (row.size() != orders_.size()) throw std::domain_error("fqf: value matrix not square");
  for (i64 n : orders_)
    if (n < 2) throw std::domain_error("fqf: generator orders must be > 1");
  canonicalize_values();
}

void FiniteQuadraticForm::canonicalize_values() {
  int n = ngens();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        values_[i][j] = values_[i][j].mod(2);
      else
        values_[i][j] = values_[i][j].mod(1);
    }
  // symmetry
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (values_[i][j] != values_[j][i]) throw std::domain_error("fqf: asymmetric values");
  // denominators must divide generator orders (2x for the diagonal)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      i64 lim = (i == j) ? 2 * orders_[i] : gcd_i64(orders_[i], orders_[j]);
      if (lim % values_[i][j].den != 0)
        throw std::domain_error("fqf: value denominator incompatible with orders");
    }
  // q(n_i g_i) = 0: n_i^2 q(g_i) = 0 mod 2, and b(n_i g_i, g_i) = 0 mod 1
  for (int i = 0; i < n; ++i) {
    Rat t = (Rat(orders_[i]) * Rat(orders_[i]) * values_[i][i]).mod(2);
    if (!t.is_zero()) throw std::domain_error("fqf: q value incompatible with generator order");
    Rat u = (Rat(orders_[i]) * values_[i][i]).mod(1);
    if (!u.is_zero()) throw std::domain_error("fqf: b value incompatible with generator order");
  }
}

FiniteQuadraticForm FiniteQuadraticForm::from_presentation(const IMat& relations, const QMat& values) {
  int n = (int)values.size();
  if ((int)relations.size() != n)
    throw std::domain_error("fqf presentation: relation matrix has wrong height");
  // group = Z^n / R Z^n; SNF: U R V = D, new generators given by rows of U^{-1},
  // i.e. in new coordinates z = U x the group is  +/- Z/d_i.
  SmithResult s = smith_normal_form(relations);
  int m = n;
  // value matrix in new generators: new gen i = sum_j (U^{-1})_{ji} e_j.
  QMat uq = qmat_from_imat(s.u);
  QMat uinv = qmat_inverse(uq);
  QMat w(m, std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Rat acc(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) acc = acc + uinv[a][i] * uinv[b][j] * values[a][b];
      w[i][j] = acc;
    }
  std::vector<i64> orders;
  QMat vals;
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    i64 d = s.d[i][i];
    if (d == 0) throw std::domain_error("fqf presentation: infinite group");
    if (d > 1) keep.push_back(i);
  }
  for (int i : keep) orders.push_back(s.d[i][i]);
  vals.resize(keep.size());
  for (size_t a = 0; a < keep.size(); ++a) {
    vals[a].resize(keep.size());
    for (size_t b = 0; b < keep.size(); ++b) vals[a][b] = w[keep[a]][keep[b]];
  }
  return FiniteQuadraticForm(std::move(orders), std::move(vals));
}

i64 FiniteQuadraticForm::group_order() const {
  i64 o = 1;
  for (i64 n : orders_) {
    i128 p = (i128)o * n;
    if (p > INT64_MAX) throw std::overflow_error("group order overflow");
    o = (i64)p;
  }
  return o;
}

i64 FiniteQuadraticForm::exponent() const {
  i64 e = 1;
  for (i64 n : orders_) e = e / gcd_i64(e, n) * n;
  return e;
}

std::vector<i64> FiniteQuadraticForm::reduce(std::vector<i64> x) const {
  for (int i = 0; i < ngens(); ++i) x[i] = mod_pos(x[i], orders_[i]);
  return x;
}

i64 FiniteQuadraticForm::element_order(const FqfElement& x) const {
  i64 o = 1;
  for (int i = 0; i < ngens(); ++i) {
    i64 c = mod_pos(x.coords[i], orders_[i]);
    if (c == 0) continue;
    i64 oi = orders_[i] / gcd_i64(c, orders_[i]);
    o = o / gcd_i64(o, oi) * oi;
  }
  return o;
}

Rat FiniteQuadraticForm::q(const FqfElement& x) const {
  int n = ngens();
  Rat acc(0);
  for (int i = 0; i < n; ++i) {
    i64 ci = mod_pos(x.coords[i], orders_[i]);
    if (ci == 0) continue;
    acc = acc + Rat(ci) * Rat(ci) * values_[i][i];
    for (int j = i + 1; j < n; ++j) {
      i64 cj = mod_pos(x.coords[j], orders_[j]);
      if (cj == 0) continue;
      acc = acc + Rat(2) * Rat(ci) * Rat(cj) * values_[i][j];
    }
  }
  return acc.mod(2);
}

Rat FiniteQuadraticForm::b(const FqfElement& x, const FqfElement& y) const {
  int n = ngens();
  Rat acc(0);
  for (int i = 0; i < n; ++i) {
    i64 ci = mod_pos(x.coords[i], orders_[i]);
    if (ci == 0) continue;
    for (int j = 0; j < n; ++j) {
      i64 cj = mod_pos(y.coords[j], orders_[j]);
      if (cj == 0) continue;
      acc = acc + Rat(ci) * Rat(cj) * values_[i][j];  // diagonal b = q as rational
    }
  }
  return acc.mod(1);
}

bool FiniteQuadraticForm::is_nondegenerate() const {
  int n = ngens();
  if (n == 0) return true;
  // columns of [C^T | diag(orders)] must span Z^n, where C_ij = n_j b(g_i,g_j)
  IMat m(n, std::vector<i64>(2 * n, 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Rat v = values_[i][j].mod(1) * Rat(orders_[j]);
      if (!v.is_integer()) throw std::logic_error("fqf: b-value denominator exceeds order");
      m[j][i] = v.num;  // row j, col i: coefficient of c_i in condition j
    }
  for (int j = 0; j < n; ++j) m[j][n + j] = orders_[j];
  SmithResult s = smith_normal_form(m);
  for (int i = 0; i < n; ++i)
    if (s.d[i][i] != 1) return false;
  return true;
}

bool FiniteQuadraticForm::is_even() const {
  // scan order-2 elements: on the 2-part, x of order 2 means coords in
  // (n_i/2) * Z; equivalent to: no scale-1 odd Jordan summand.
  for (i64 p : primes())
    if (p == 2) {
      const JordanDecomposition& jd = jordan(2);
      for (const auto& sc : jd.scales)
        if (sc.k == 1 && !sc.odd_units.empty()) return false;
    }
  return true;
}

std::vector<FqfElement> FiniteQuadraticForm::all_elements() const {
  i64 total = group_order();
  if (total > 2000000) throw std::domain_error("fqf: group too large to enumerate");
  std::vector<FqfElement> out;
  out.reserve(total);
  std::vector<i64> c(ngens(), 0);
  while (true) {
    out.push_back({c});
    int i = 0;
    for (; i < ngens(); ++i) {
      if (++c[i] < orders_[i]) break;
      c[i] = 0;
    }
    if (i == ngens()) break;
  }
  return out;
}

std::vector<FqfElement> FiniteQuadraticForm::isotropic_elements(i64 n) const {
  // elements of order exactly n with q = 0 mod 2Z
  std::vector<FqfElement> out;
  int g = ngens();
  // x_i ranges over multiples of n_i/gcd(n_i, n)
  std::vector<i64> step(g), count(g);
  for (int i = 0; i < g; ++i) {
    i64 d = gcd_i64(orders_[i], n);
    step[i] = orders_[i] / d;
    count[i] = d;
  }
  std::vector<i64> idx(g, 0);
  while (true) {
    FqfElement x;
    x.coords.resize(g);
    for (int i = 0; i < g; ++i) x.coords[i] = idx[i] * step[i];
    if (element_order(x) == n && q(x).is_zero()) out.push_back(x);
    int i = 0;
    for (; i < g; ++i) {
      if (++idx[i] < count[i]) break;
      idx[i] = 0;
    }
    if (i == g) break;
  }
  return out;
}

FiniteQuadraticForm FiniteQuadraticForm::negate() const {
  QMat v = values_;
  for (auto& row : v)
    for (auto& x : row) x = -x;
  return FiniteQuadraticForm(orders_, v);
}

std::vector<i64> FiniteQuadraticForm::primes() const {
  std::set<i64> ps;
  for (i64 n : orders_) {
    i64 m = n;
    for (i64 p = 2; p * p <= m; ++p)
      while (m % p == 0) {
        ps.insert(p);
        m /= p;
      }
    if (m > 1) ps.insert(m);
  }
  return std::vector<i64>(ps.begin(), ps.end());
}

FiniteQuadraticForm FiniteQuadraticForm::primary_part(i64 p) const {
  // generators h_i = (n_i / p^{v_i}) g_i of order p^{v_i}
  std::vector<i64> orders;
  std::vector<i64> mult;
  std::vector<int> keep;
  for (int i = 0; i < ngens(); ++i) {
    i64 n = orders_[i];
    int v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    if (v > 0) {
      keep.push_back(i);
      orders.push_back(orders_[i] / n);
      mult.push_back(n);
    }
  }
  QMat vals(keep.size(), std::vector<Rat>(keep.size(), Rat(0)));
  for (size_t a = 0; a < keep.size(); ++a)
    for (size_t b = 0; b < keep.size(); ++b) {
      Rat v = Rat(mult[a]) * Rat(mult[b]) * values_[keep[a]][keep[b]];
      vals[a][b] = (a == b) ? v.mod(2) : v.mod(1);
    }
  return FiniteQuadraticForm(std::move(orders), std::move(vals));
}

FqfElement FiniteQuadraticForm::apply(const FqfAutomorphism& a, const FqfElement& x) const {
  int n = ngens();
  FqfElement y;
  y.coords.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    i128 acc = 0;
    for (int j = 0; j < n; ++j) acc += (i128)a.matrix[i][j] * x.coords[j];
    y.coords[i] = mod_pos((i64)(acc % orders_[i]), orders_[i]);
  }
  return y;
}

FqfAutomorphism FiniteQuadraticForm::compose(const FqfAutomorphism& a, const FqfAutomorphism& b) const {
  int n = ngens();
  FqfAutomorphism c;
  c.matrix.assign(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      i128 acc = 0;
      for (int t = 0; t < n; ++t) acc += (i128)a.matrix[i][t] * b.matrix[t][j];
      c.matrix[i][j] = mod_pos((i64)(acc % orders_[i]), orders_[i]);
    }
  return c;
}

FqfAutomorphism FiniteQuadraticForm::identity_automorphism() const {
  FqfAutomorphism a;
  a.matrix = identity_imat(ngens());
  return a;
}

FqfAutomorphism FiniteQuadraticForm::minus_identity() const {
  FqfAutomorphism a;
  a.matrix = identity_imat(ngens());
  for (int i = 0; i < ngens(); ++i) a.matrix[i][i] = orders_[i] - 1;
  return a;
}

bool FiniteQuadraticForm::automorphism_equal(const FqfAutomorphism& a, const FqfAutomorphism& b) const {
  int n = ngens();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mod_pos(a.matrix[i][j], orders_[i]) != mod_pos(b.matrix[i][j], orders_[i])) return false;
  return true;
}

bool FiniteQuadraticForm::is_valid_automorphism(const FqfAutomorphism& a) const {
  int n = ngens();
  if ((int)a.matrix.size() != n) return false;
  for (const auto& row : a.matrix)
    if ((int)row.size() != n) return false;
  // well-defined: n_j * (image of g_j) = 0, i.e. n_j * M_ij = 0 mod n_i
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (((i128)a.matrix[i][j] * orders_[j]) % orders_[i] != 0) return false;
  // preserves q on generators and b on pairs
  for (int j = 0; j < n; ++j) {
    FqfElement ej;
    ej.coords.assign(n, 0);
    ej.coords[j] = 1;
    FqfElement im;
    im.coords.resize(n);
    for (int i = 0; i < n; ++i) im.coords[i] = mod_pos(a.matrix[i][j], orders_[i]);
    if (q(im) != values_[j][j].mod(2)) return false;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      FqfElement xi, xj;
      xi.coords.assign(n, 0);
      xj.coords.assign(n, 0);
      for (int t = 0; t < n; ++t) {
        xi.coords[t] = mod_pos(a.matrix[t][i], orders_[t]);
        xj.coords[t] = mod_pos(a.matrix[t][j], orders_[t]);
      }
      if (b(xi, xj) != values_[i][j].mod(1)) return false;
    }
  // surjectivity: columns + relation lattice span Z^n with elementary divisors = orders
  IMat m(n, std::vector<i64>(2 * n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a.matrix[i][j];
  for (int i = 0; i < n; ++i) m[i][n + i] = orders_[i];
  SmithResult s = smith_normal_form(m);
  for (int i = 0; i < n; ++i)
    if (s.d[i][i] != 1) return false;
  return true;
}

std::optional<MirrorData> FiniteQuadraticForm::is_mirror(const FqfElement& xi) const {
  i64 n = element_order(xi);
  if (n <= 1) return std::nullopt;
  // must lie in a single primary part
  i64 p = 0;
  {
    i64 m = n;
    for (i64 d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        p = d;
        while (m % d == 0) m /= d;
        break;
      }
    if (p == 0) p = m, m = 1;
    if (m != 1) throw std::domain_error("mirror: element mixes primary parts");
  }
  Rat v = q(xi);
  if (v.is_zero()) return std::nullopt;
  if (p == 2) {
    // v = c / 2^t with c odd (t >= 0); xi^2 = 2c/2^{t+1}
    i64 den = v.den;
    int t = 0;
    while (den % 2 == 0) {
      den /= 2;
      ++t;
    }
    if (den != 1) return std::nullopt;  // mixed denominator: not a 2-adic mirror value
    if (v.num % 2 == 0) return std::nullopt;
    int k = t + 1;
    // need 2^k xi = 0
    i64 pk = 1;
    for (int i = 0; i < k; ++i) pk *= 2;
    if (pk % n != 0) return std::nullopt;
    i64 m = mod_pos(v.num, 2 * pk);
    return MirrorData{2, k, m};
  }
  // p odd: v = c/p^k (k >= 1), gcd(c, p) = 1; m = c * inv(2) mod p^k
  i64 den = v.den;
  int k = 0;
  while (den % p == 0) {
    den /= p;
    ++k;
  }
  if (den != 1 || k == 0) return std::nullopt;
  if (v.num % p == 0) return std::nullopt;
  i64 pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  if (pk % n != 0) return std::nullopt;
  i64 m = mod_pos(v.num % pk * inv_mod(2, pk), pk);
  return MirrorData{p, k, m};
}

FqfAutomorphism FiniteQuadraticForm::reflection(const FqfElement& xi0) const {
  FqfElement xi;
  xi.coords = reduce(xi0.coords);
  auto md = is_mirror(xi);
  if (!md) throw std::domain_error("reflection: element is not a mirror");
  i64 p = md->p;
  i64 pk = 1;
  for (int i = 0; i < md->k; ++i) pk *= p;
  i64 minv = inv_mod(md->m, pk);
  int n = ngens();
  FqfAutomorphism a = identity_automorphism();
  for (int j = 0; j < n; ++j) {
    FqfElement ej;
    ej.coords.assign(n, 0);
    ej.coords[j] = 1;
    // lambda_j = 2 b(g_j, xi) / xi^2 = b(g_j,xi) * p^k / m  (mod p^k)
    Rat bj = b(ej, xi);
    Rat lam = bj * Rat(pk);
    if (!lam.is_integer())
      throw std::domain_error("reflection: functional not integral (invalid mirror)");
    i64 l = mod_pos(lam.num % pk * minv, pk);
    for (int i = 0; i < n; ++i) {
      i128 val = (i128)a.matrix[i][j] - (i128)l * xi.coords[i];
      a.matrix[i][j] = mod_pos((i64)(val % orders_[i]), orders_[i]);
    }
  }
  return a;
}

MirrorNorms FiniteQuadraticForm::norms_of_mirror(const FqfElement& xi, i64 p) const {
  auto md = is_mirror(xi);
  if (!md) throw std::domain_error("norms_of_mirror: not a mirror");
  MirrorNorms out;
  out.delta_p = (md->p == p) ? -1 : 1;
  if (p == 2 && md->p == 2) {
    // xi^2 = 2m/2^k mod 2Z; xi^2 = 0 mod Z iff k <= 1
    if (md->k <= 1) {
      out.abs_p = std::nullopt;
      return out;
    }
    out.abs_p = chi_p(md->m, 2);
    return out;
  }
  if (md->p == p) {
    out.abs_p = chi_p(md->m, p);
  } else {
    // chi_p(r^k)
    i64 rk = 1;
    for (int i = 0; i < md->k; ++i) rk *= md->p;
    out.abs_p = chi_p(rk, p);
  }
  return out;
}

FiniteQuadraticForm orthogonal_sum(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g) {
  std::vector<i64> orders = f.orders();
  orders.insert(orders.end(), g.orders().begin(), g.orders().end());
  int nf = f.ngens(), ng = g.ngens();
  QMat vals(nf + ng, std::vector<Rat>(nf + ng, Rat(0)));
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) vals[i][j] = f.values()[i][j];
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < ng; ++j) vals[nf + i][nf + j] = g.values()[i][j];
  return FiniteQuadraticForm(std::move(orders), std::move(vals));
}

FiniteQuadraticForm cyclic_form(i64 num, i64 den) {
  Rat v = Rat(num, den).mod(2);
  if (v.is_zero() || v.den == 1) throw std::domain_error("cyclic_form: degenerate value");
  if (v.den % 2 == 1 && v.num % 2 != 0)
    throw std::domain_error("cyclic_form: odd numerator over odd order");
  return FiniteQuadraticForm({v.den}, {{v}});
}

}  // namespace atlas

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "atlas/fqf.hpp"

namespace atlas {

namespace {

i64 mod_pos(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

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

i64 ipow(i64 p, int k) {
  i64 r = 1;
  while (k-- > 0) r *= p;
  return r;
}

// denominator p-valuation of a rational
int den_val(const Rat& r, i64 p) {
  i64 d = r.den;
  int v = 0;
  while (d % p == 0) {
    d /= p;
    ++v;
  }
  return v;
}

struct WorkGen {
  FqfElement x;
  i64 ord;
};

// Jordan decomposition of the p-primary form fp (all generator orders are
// powers of p). Splits off cyclic summands, plus u/v blocks for p = 2.
JordanDecomposition decompose(const FiniteQuadraticForm& fp, i64 p) {
  JordanDecomposition out;
  out.p = p;
  std::map<int, JordanScale> scales;

  std::vector<WorkGen> gens;
  for (int i = 0; i < fp.ngens(); ++i) {
    FqfElement e;
    e.coords.assign(fp.ngens(), 0);
    e.coords[i] = 1;
    gens.push_back({e, fp.order_of_generator(i)});
  }

  auto refresh = [&](std::vector<WorkGen>& g) {
    std::vector<WorkGen> keep;
    for (auto& w : g) {
      w.x.coords = fp.reduce(w.x.coords);
      w.ord = fp.element_order(w.x);
      if (w.ord > 1) keep.push_back(w);
    }
    g = std::move(keep);
  };

  while (!gens.empty()) {
    refresh(gens);
    if (gens.empty()) break;
    i64 t_ord = 0;
    for (const auto& w : gens) t_ord = std::max(t_ord, w.ord);
    int t = 0;
    for (i64 v = t_ord; v > 1; v /= p) ++t;

    // try to find a cyclic pivot of order p^t whose q-value has the full
    // denominator (p^t for odd p, 2^t or 2^{t+1}-reduced-to-odd/2^t for p=2)
    int pivot = -1;
    for (size_t i = 0; i < gens.size() && pivot < 0; ++i) {
      if (gens[i].ord != t_ord) continue;
      Rat qv = fp.q(gens[i].x);
      if (p == 2) {
        if (den_val(qv, 2) == t && qv.num % 2 != 0) pivot = (int)i;
      } else {
        if (den_val(qv, p) == t) pivot = (int)i;
      }
    }
    if (pivot < 0 && p != 2) {
      // replace g_i by g_i + g_j where the pair has full b-denominator
      for (size_t i = 0; i < gens.size() && pivot < 0; ++i) {
        if (gens[i].ord != t_ord) continue;
        for (size_t j = 0; j < gens.size(); ++j) {
          if (j == i || gens[j].ord != t_ord) continue;
          if (den_val(fp.b(gens[i].x, gens[j].x), p) == t) {
            for (int c = 0; c < fp.ngens(); ++c) gens[i].x.coords[c] += gens[j].x.coords[c];
            gens[i].x.coords = fp.reduce(gens[i].x.coords);
            pivot = (int)i;
            break;
          }
        }
      }
      if (pivot < 0) throw std::logic_error("jordan: no pivot found (degenerate form?)");
    }

    if (pivot >= 0) {
      WorkGen g = gens[pivot];
      gens.erase(gens.begin() + pivot);
      Rat qg = fp.q(g.x);
      // record block
      i64 pt = ipow(p, t);
      if (p == 2) {
        i64 c = qg.num * (2 * pt / qg.den);
        scales[t].odd_units.push_back(mod_pos(c, 2 * pt) | 0);
        // oddness sanity
        if (mod_pos(c, 2) == 0) throw std::logic_error("jordan: even unit in odd block");
      } else {
        i64 c = qg.num * ((2 * pt) / qg.den) % (2 * pt);  // q = c / p^t with c even repr mod 2p^t
        i64 a = mod_pos(c, 2 * pt) / 1;
        // a_unit = c/2 mod p^t
        i64 unit = mod_pos((a % pt) * inv_mod(2, pt), pt);
        if (unit % p == 0) throw std::logic_error("jordan: non-unit in odd-p block");
        scales[t].odd_units.push_back(unit);
      }
      // orthogonalize the rest against g
      Rat bg = qg.mod(1);  // b(g,g) as rational mod 1 shares numerator with q
      // lambda = b(h,g) / b(g,g) computed p-adically: b(h,g) * p^t * inv(c) where
      // b(g,g) = c'/p^t (c' = q numerator scaled)
      // use exact rational: mu = b(h,g)/b(g,g) must be p-integral mod p^t
      for (auto& h : gens) {
        Rat bh = fp.b(h.x, g.x);
        if (bh.is_zero()) continue;
        // write b(g,g) = c/p^s (s = t for pivot); mu = bh / b(g,g)
        Rat bgg = fp.b(g.x, g.x);
        if (bgg.is_zero()) throw std::logic_error("jordan: pivot with zero self-pairing");
        // mu must be a p-adic integer: bh * p^t has integer numerator over unit den
        Rat mu = bh / bgg;
        // mu = num/den with den prime to p (else pivot was not maximal)
        if (mu.den % p == 0) throw std::logic_error("jordan: non-integral orthogonalization");
        i64 l = mod_pos(mu.num % g.ord * inv_mod(mod_pos(mu.den, g.ord), g.ord), g.ord);
        for (int c = 0; c < fp.ngens(); ++c) h.x.coords[c] -= l * g.x.coords[c];
        h.x.coords = fp.reduce(h.x.coords);
      }
      continue;
    }

    // p = 2, no odd pivot at top scale: split a 2x2 even block
    int gi = -1, gj = -1;
    for (size_t i = 0; i < gens.size() && gi < 0; ++i) {
      if (gens[i].ord != t_ord) continue;
      for (size_t j = 0; j < gens.size(); ++j) {
        if (j == i) continue;
        if (den_val(fp.b(gens[i].x, gens[j].x), 2) == t) {
          gi = (int)i;
          gj = (int)j;
          break;
        }
      }
    }
    if (gi < 0) throw std::logic_error("jordan: no even-block pair found (degenerate form?)");
    WorkGen g = gens[gi], h = gens[gj];
    {
      std::vector<WorkGen> rest;
      for (size_t i = 0; i < gens.size(); ++i)
        if ((int)i != gi && (int)i != gj) rest.push_back(gens[i]);
      gens = std::move(rest);
    }
    Rat b00 = fp.b(g.x, g.x), b11 = fp.b(h.x, h.x), b01 = fp.b(g.x, h.x);
    Rat det = b00 * b11 - b01 * b01;
    i64 p2t = ipow(2, 2 * t);
    Rat dscaled = det * Rat(p2t);
    if (!dscaled.is_integer() || dscaled.num % 2 == 0)
      throw std::logic_error("jordan: even block with non-unit determinant");
    i64 dm8 = mod_pos(dscaled.num, 8);
    if (dm8 == 7)
      scales[t].n_u++;
    else if (dm8 == 3)
      scales[t].n_v++;
    else
      throw std::logic_error("jordan: unexpected even block determinant");
    // orthogonalize rest against the pair: solve [b00 b01; b01 b11] [a;b] = [bx0; bx1]
    for (auto& x : gens) {
      Rat c0 = fp.b(x.x, g.x), c1 = fp.b(x.x, h.x);
      if (c0.is_zero() && c1.is_zero()) continue;
      Rat alpha = (c0 * b11 - c1 * b01) / det;
      Rat beta = (c1 * b00 - c0 * b01) / det;
      if (alpha.den % 2 == 0 || beta.den % 2 == 0)
        throw std::logic_error("jordan: non-integral pair orthogonalization");
      i64 la = mod_pos(alpha.num % t_ord * inv_mod(mod_pos(alpha.den, t_ord), t_ord), t_ord);
      i64 lb = mod_pos(beta.num % t_ord * inv_mod(mod_pos(beta.den, t_ord), t_ord), t_ord);
      for (int c = 0; c < fp.ngens(); ++c)
        x.x.coords[c] -= la * g.x.coords[c] + lb * h.x.coords[c];
      x.x.coords = fp.reduce(x.x.coords);
    }
  }

  i64 total = 1;
  for (auto& [k, sc] : scales) {
    sc.k = k;
    std::sort(sc.odd_units.begin(), sc.odd_units.end());
    out.scales.push_back(sc);
    for (size_t i = 0; i < sc.odd_units.size(); ++i) total *= ipow(p, k);
    for (int i = 0; i < sc.n_u + sc.n_v; ++i) total *= ipow(p, 2 * k);
  }
  if (total != fp.group_order()) throw std::logic_error("jordan: block sizes do not multiply up");
  return out;
}

}  // namespace

const JordanDecomposition& FiniteQuadraticForm::jordan(i64 p) const {
  auto it = jordan_cache_.find(p);
  if (it != jordan_cache_.end()) return it->second;
  FiniteQuadraticForm fp = primary_part(p);
  return jordan_cache_.emplace(p, decompose(fp, p)).first->second;
}

int FiniteQuadraticForm::length(i64 p) const { return jordan(p).length(); }

LengthDet FiniteQuadraticForm::length_and_det(i64 p) const {
  const JordanDecomposition& jd = jordan(p);
  LengthDet out;
  out.length = jd.length();
  if (p == 2) {
    // defined only if the 2-part is even
    for (const auto& sc : jd.scales)
      if (sc.k == 1 && !sc.odd_units.empty()) {
        out.det_unit = std::nullopt;
        return out;
      }
    i64 u = 1;
    for (const auto& sc : jd.scales) {
      for (i64 c : sc.odd_units) u = mod_pos(u * c, 8);
      for (int i = 0; i < sc.n_u; ++i) u = mod_pos(u * 7, 8);  // det(u_k) = -1
      for (int i = 0; i < sc.n_v; ++i) u = mod_pos(u * 3, 8);  // det(v_k) = 3
    }
    out.det_unit = u;
    return out;
  }
  i64 u = 1;
  for (const auto& sc : jd.scales)
    for (i64 a : sc.odd_units) u = mod_pos(u * 2 % p * (a % p), p);
  out.det_unit = u == 0 ? 1 : u;  // length 0: class of 1
  if (out.length == 0) out.det_unit = 1;
  return out;
}

namespace {

// exact Gauss-sum bookkeeping: value = mag2 == 0 ? 0 : sqrt(mag2) * zeta8^oct
struct GaussVal {
  i64 mag2 = 1;  // squared magnitude (integer)
  int oct = 0;   // phase in eighths of a turn... stored in units of pi/4
  bool zero = false;

  GaussVal mul(const GaussVal& o) const {
    if (zero || o.zero) return {0, 0, true};
    i128 m = (i128)mag2 * o.mag2;
    if (m > INT64_MAX) throw std::overflow_error("gauss magnitude overflow");
    return {(i64)m, (oct + o.oct) % 8, false};
  }
};

// Gauss phase of sum_x e^{i pi q(x)} over a cyclic block <2a/p^k>, p odd:
// (a | p^k) * eps_{p^k}, magnitude p^{k/2}
GaussVal gauss_cyclic_oddp(i64 p, int k, i64 a_unit) {
  if (k <= 0) return {1, 0, false};
  i64 pk = ipow(p, k);
  int s = jacobi(a_unit, pk);
  int oct = (pk % 4 == 1) ? 0 : 2;  // eps = 1 or i
  if (s < 0) oct = (oct + 4) % 8;
  return {pk, oct, false};
}

// <c/2^k>, c odd: phase per parity of k
GaussVal gauss_cyclic_2(int k, i64 c) {
  if (k <= 0) return {1, 0, false};
  int br;
  if (k % 2 == 0)
    br = (int)mod_pos(c, 8);
  else
    br = (mod_pos(c, 4) == 1) ? 1 : 7;
  return {ipow(2, k), br, false};
}

GaussVal gauss_u(int k) { return {ipow(2, 2 * k), 0, false}; }
GaussVal gauss_v(int k) { return {ipow(2, 2 * k), (k % 2) ? 4 : 0, false}; }

// Gauss value of x -> p^j q(x) summed over the block's group.
GaussVal gauss_scaled_block(i64 p, int k, int j, bool is2, bool isu, bool isv, i64 unit) {
  if (p == 2 && !isu && !isv) {
    // cyclic <c/2^k> scaled by 2^j on Z/2^k
    if (j < k) {
      GaussVal g = gauss_cyclic_2(k - j, unit);
      g.mag2 *= ipow(2, 2 * j);
      return g;
    }
    if (j == k) return {0, 0, true};  // sum vanishes
    return {ipow(2, 2 * k), 0, false};
  }
  if (isu) {
    // sum = 2^k * 2^{min(j,k)}
    i64 m = ipow(2, k) * ipow(2, std::min(j, k));
    return {m * m, 0, false};
  }
  if (isv) {
    if (j >= k) return {ipow(2, 4 * k) / ipow(2, 2 * std::max(0, k - j)), 0, false};
    GaussVal g = gauss_v(k - j);
    g.mag2 *= ipow(2, 4 * j);
    return g;
  }
  // p odd cyclic
  if (j < k) {
    GaussVal g = gauss_cyclic_oddp(p, k - j, unit);
    g.mag2 *= ipow(p, 2 * j);
    return g;
  }
  return {ipow(p, 2 * k), 0, false};
}

}  // namespace

int FiniteQuadraticForm::brown() const {
  int br = 0;
  for (i64 p : primes()) {
    const JordanDecomposition& jd = jordan(p);
    for (const auto& sc : jd.scales) {
      if (p == 2) {
        for (i64 c : sc.odd_units) {
          GaussVal g = gauss_cyclic_2(sc.k, c);
          br = (br + g.oct) % 8;
        }
        br = (br + 4 * (sc.k % 2) * sc.n_v) % 8;
      } else {
        for (i64 a : sc.odd_units) {
          GaussVal g = gauss_cyclic_oddp(p, sc.k, a);
          br = (br + g.oct) % 8;
        }
      }
    }
  }
  return br;
}

bool FiniteQuadraticForm::isomorphic_to(const FiniteQuadraticForm& other) const {
  // group invariants
  std::vector<i64> a = orders_, b = other.orders_;
  // compare primary invariants via jordan scale ranks
  auto ps = primes(), qs = other.primes();
  if (ps != qs) {
    // allow differing generator presentations but same primes
    if (std::set<i64>(ps.begin(), ps.end()) != std::set<i64>(qs.begin(), qs.end())) return false;
  }
  if (group_order() != other.group_order()) return false;
  for (i64 p : ps) {
    const JordanDecomposition& x = jordan(p);
    const JordanDecomposition& y = other.jordan(p);
    int maxk = 0;
    for (const auto& sc : x.scales) maxk = std::max(maxk, sc.k);
    for (const auto& sc : y.scales) maxk = std::max(maxk, sc.k);
    // ranks and parity per scale
    for (int k = 1; k <= maxk; ++k) {
      auto find = [&](const JordanDecomposition& jd) -> JordanScale {
        for (const auto& sc : jd.scales)
          if (sc.k == k) return sc;
        return JordanScale{k, {}, 0, 0};
      };
      JordanScale sx = find(x), sy = find(y);
      if (sx.rank() != sy.rank()) return false;
      if (sx.odd_units.empty() != sy.odd_units.empty()) return false;
      if (p != 2) {
        // det class per scale is a complete invariant for odd p
        i64 ux = 1, uy = 1;
        for (i64 u : sx.odd_units) ux = ux * u % p;
        for (i64 u : sy.odd_units) uy = uy * u % p;
        if ((sx.odd_units.size() != sy.odd_units.size()) ||
            (!sx.odd_units.empty() && chi_p(ux, p) != chi_p(uy, p)))
          return false;
      }
    }
    if (p == 2) {
      // scaled Gauss-sum family
      for (int j = 0; j <= maxk + 1; ++j) {
        auto total = [&](const JordanDecomposition& jd) {
          GaussVal acc{1, 0, false};
          for (const auto& sc : jd.scales) {
            for (i64 c : sc.odd_units) acc = acc.mul(gauss_scaled_block(2, sc.k, j, true, false, false, c));
            for (int i = 0; i < sc.n_u; ++i) acc = acc.mul(gauss_scaled_block(2, sc.k, j, true, true, false, 0));
            for (int i = 0; i < sc.n_v; ++i) acc = acc.mul(gauss_scaled_block(2, sc.k, j, true, false, true, 0));
          }
          return acc;
        };
        GaussVal gx = total(x), gy = total(y);
        if (gx.zero != gy.zero) return false;
        if (!gx.zero && (gx.oct != gy.oct || gx.mag2 != gy.mag2)) return false;
      }
    }
  }
  return true;
}

}  // namespace atlas

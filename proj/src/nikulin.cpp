#include "atlas/nikulin.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace atlas {

namespace {
i64 ipow3(int k) {
  i64 r = 1;
  while (k-- > 0) r *= 3;
  return r;
}
}  // namespace

i64 GenusDescriptor::det() const {
  i64 d = disc.group_order();
  return (sig_minus % 2 == 0) ? d : -d;
}

std::string ExtensionKernel::signature_str() const {
  if (invariant_factors.empty()) return "";
  std::string s = "(";
  for (size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(invariant_factors[i]);
  }
  return s + ")";
}

FiniteQuadraticForm quotient_form(const FiniteQuadraticForm& f,
                                  const std::vector<FqfElement>& kernel_gens) {
  if (kernel_gens.empty()) return f;
  for (const auto& k : kernel_gens) {
    if (!f.q(k).is_zero()) throw std::domain_error("quotient_form: kernel not isotropic");
    for (const auto& k2 : kernel_gens)
      if (!f.b(k, k2).is_zero()) throw std::domain_error("quotient_form: kernel not isotropic");
  }
  int n = f.ngens();
  i64 e = f.exponent();
  int r = (int)kernel_gens.size();
  // solution lattice of  sum_i x_i b(g_i, k_j) in Z  for all j
  IMat c(r, std::vector<i64>(n, 0));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < n; ++i) {
      FqfElement ei;
      ei.coords.assign(n, 0);
      ei.coords[i] = 1;
      Rat v = f.b(ei, kernel_gens[j]) * Rat(e);
      if (!v.is_integer()) throw std::logic_error("quotient_form: pairing not e-integral");
      c[j][i] = v.num % e;
    }
  SmithResult s = smith_normal_form(c);
  // y = V^{-1} x; condition D y = 0 mod e: y_i multiple of e / gcd(d_i, e)
  // solution lattice columns: V * diag(m_i)
  std::vector<i64> m(n, 1);
  for (int i = 0; i < std::min(r, n); ++i) {
    i64 d = s.d[i][i] % e;
    i64 g = gcd_i64(d, e);
    m[i] = e / (g == 0 ? e : g);
  }
  IMat sol(n, std::vector<i64>(n, 0));  // columns generate K^perp lifts
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sol[i][j] = s.v[i][j] * m[j];
  // relation lattice: diag(orders) and kernel generators, expressed in sol-coords
  QMat solq = qmat_from_imat(sol);
  QMat solinv = qmat_inverse(solq);
  int extra = r;
  IMat rel(n, std::vector<i64>(n + extra, 0));
  for (int col = 0; col < n; ++col)
    for (int i = 0; i < n; ++i) {
      Rat acc = solinv[i][col] * Rat(f.orders()[col]);
      if (!acc.is_integer()) throw std::logic_error("quotient_form: order relation not in solution lattice");
      rel[i][col] = acc.num;
    }
  for (int j = 0; j < extra; ++j)
    for (int i = 0; i < n; ++i) {
      Rat acc(0);
      for (int t = 0; t < n; ++t) acc = acc + solinv[i][t] * Rat(kernel_gens[j].coords[t]);
      if (!acc.is_integer()) throw std::logic_error("quotient_form: kernel not in solution lattice");
      rel[i][n + j] = acc.num;
    }
  // square up the relation matrix via SNF (from_presentation needs square);
  // use HNF-like reduction: SNF of rel gives the quotient directly.
  SmithResult rs = smith_normal_form(rel);
  // group = Z^n / (rel columns); in coordinates z = U x it is + Z/d_i
  // new generator i = sol * U^{-1} e_i
  QMat uinv = qmat_inverse(qmat_from_imat(rs.u));
  // value matrix on sol-basis
  QMat w(n, std::vector<Rat>(n, Rat(0)));
  const QMat& vals = f.values();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat acc(0);
      for (int a = 0; a < n; ++a)
        for (int bidx = 0; bidx < n; ++bidx)
          acc = acc + Rat(sol[a][i]) * Rat(sol[bidx][j]) * vals[a][bidx];
      w[i][j] = acc;
    }
  // transform to z coordinates and keep d_i > 1
  std::vector<i64> orders;
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    i64 d = rs.d[i][i];
    if (d == 0) throw std::logic_error("quotient_form: infinite quotient");
    if (d > 1) keep.push_back(i), orders.push_back(d);
  }
  QMat w2(keep.size(), std::vector<Rat>(keep.size(), Rat(0)));
  for (size_t a = 0; a < keep.size(); ++a)
    for (size_t b = 0; b < keep.size(); ++b) {
      Rat acc(0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          acc = acc + uinv[i][keep[a]] * uinv[j][keep[b]] * w[i][j];
      w2[a][b] = acc;
    }
  return FiniteQuadraticForm(std::move(orders), std::move(w2));
}

namespace {
int chi_class_sign(i64 value, i64 p) { return chi_p(value, p); }
}  // namespace

bool embeds_primitively_in_L(const GenusDescriptor& g) {
  if (g.sig_plus > 3 || g.sig_minus > 19) return false;
  int delta = 22 - g.rank();
  if (delta < 0) return false;
  const FiniteQuadraticForm& d = g.disc;
  i64 total = d.group_order();
  for (i64 p : d.primes()) {
    LengthDet ld = d.length_and_det(p);
    if (ld.length > delta) return false;
    if (ld.length < delta) continue;
    if (p == 2) {
      if (!d.is_even()) continue;  // odd 2-part clause
      // |S| det_2 S = +-1 mod squares
      i64 n2 = d.primary_part(2).group_order();
      i64 unit = (total / n2) % 8;
      unit = unit * (*ld.det_unit % 8) % 8;
      if (unit == 1 || unit == 7) continue;
      return false;
    }
    // odd p: |S| det_p S = (-1)^{sig_plus - 1} mod squares
    i64 np = d.primary_part(p).group_order();
    i64 rest = total / np;
    int lhs = chi_class_sign(rest % p * (*ld.det_unit % p) % p, p);
    int rhs = (g.sig_plus - 1) % 2 == 0 ? 1 : chi_class_sign(p - 1, p);
    if (lhs != rhs) return false;
  }
  return true;
}

FiniteQuadraticForm discr_sh(const FiniteQuadraticForm& discr_s) {
  return orthogonal_sum(discr_s, cyclic_form(1, 2));
}

FiniteQuadraticForm extension_disc(const SingularitySet& s, const ExtensionKernel& k) {
  SetDiscriminant d = discr_of_set(s);
  FiniteQuadraticForm sh = discr_sh(d.form);
  if (k.gens.empty()) return sh;
  std::vector<FqfElement> lifted;
  for (const auto& g : k.gens) {
    FqfElement x;
    x.coords = g.coords;
    x.coords.push_back(0);  // h coordinate
    lifted.push_back(x);
  }
  return quotient_form(sh, lifted);
}

GenusDescriptor transcendental_genus_from_disc(int mu, const FiniteQuadraticForm& disc_ext) {
  GenusDescriptor g;
  g.sig_plus = 2;
  g.sig_minus = 19 - mu;
  g.disc = disc_ext.negate();
  return g;
}

GenusDescriptor transcendental_genus(const SingularitySet& s, const ExtensionKernel& k) {
  return transcendental_genus_from_disc(s.mu(), extension_disc(s, k));
}

namespace {

// canonical generator of the cyclic subgroup <x>: lexicographically smallest
// coordinate vector among the multiples c*x with gcd(c, n) = 1
std::vector<i64> canonical_cyclic(const FiniteQuadraticForm& f, const FqfElement& x, i64 n) {
  std::vector<i64> best;
  for (i64 c = 1; c < n; ++c) {
    if (gcd_i64(c, n) != 1) continue;
    std::vector<i64> y(x.coords.size());
    for (size_t i = 0; i < y.size(); ++i) y[i] = c * x.coords[i];
    y = f.reduce(y);
    if (best.empty() || y < best) best = y;
  }
  return best;
}

}  // namespace

std::vector<ExtensionKernel> kernel_candidates(const SingularitySet& s, i64 n) {
  if (n % 2 == 0) throw std::domain_error("kernel_candidates: kernel order must be odd");
  SetDiscriminant d = discr_of_set(s);
  std::vector<FqfElement> elts = d.form.isotropic_elements(n);
  // no new roots in any nonzero multiple
  std::vector<FqfElement> good;
  for (const auto& x : elts) {
    bool ok = true;
    for (i64 c = 1; c < n && ok; ++c) {
      FqfElement y;
      y.coords.resize(x.coords.size());
      for (size_t i = 0; i < x.coords.size(); ++i) y.coords[i] = c * x.coords[i];
      y.coords = d.form.reduce(y.coords);
      if (d.form.element_order(y) == 1) continue;
      if (coset_min_norm_total(s, d, y) == Rat(2)) ok = false;
    }
    if (ok) good.push_back(x);
  }
  // dedupe subgroups
  std::set<std::vector<i64>> subgroups;
  for (const auto& x : good) subgroups.insert(canonical_cyclic(d.form, x, n));
  // orbits under sym generators and -id
  std::vector<SymGenerator> gens = sym_prime_generators(s, d);
  std::set<std::vector<i64>> seen;
  std::vector<ExtensionKernel> out;
  for (const auto& key : subgroups) {
    if (seen.count(key)) continue;
    // BFS orbit
    std::vector<std::vector<i64>> frontier{key};
    seen.insert(key);
    while (!frontier.empty()) {
      std::vector<std::vector<i64>> next;
      for (const auto& cur : frontier) {
        FqfElement x{cur};
        std::vector<FqfElement> images;
        for (const auto& g : gens) images.push_back(d.form.apply(g.action, x));
        {
          FqfElement neg;
          neg.coords.resize(cur.size());
          for (size_t i = 0; i < cur.size(); ++i) neg.coords[i] = -cur[i];
          neg.coords = d.form.reduce(neg.coords);
          images.push_back(neg);
        }
        for (const auto& im : images) {
          auto k2 = canonical_cyclic(d.form, im, n);
          if (!seen.count(k2)) {
            seen.insert(k2);
            next.push_back(k2);
          }
        }
      }
      frontier = std::move(next);
    }
    ExtensionKernel k;
    k.gens.push_back(FqfElement{key});
    k.order = n;
    k.invariant_factors = {n};
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<ExtensionKernel> kernel_candidates_3k(const SingularitySet& s, int kdim) {
  SetDiscriminant d = discr_of_set(s);
  // 3-torsion elements
  std::vector<FqfElement> tor;
  {
    int g = d.form.ngens();
    std::vector<i64> step(g), count(g);
    for (int i = 0; i < g; ++i) {
      i64 dd = gcd_i64(d.form.orders()[i], (i64)3);
      step[i] = d.form.orders()[i] / dd;
      count[i] = dd;
    }
    std::vector<i64> idx(g, 0);
    while (true) {
      FqfElement x;
      x.coords.resize(g);
      for (int i = 0; i < g; ++i) x.coords[i] = idx[i] * step[i];
      tor.push_back(x);
      int i = 0;
      for (; i < g; ++i) {
        if (++idx[i] < count[i]) break;
        idx[i] = 0;
      }
      if (i == g) break;
    }
  }
  auto elt_ok = [&](const FqfElement& x) {
    if (d.form.element_order(x) == 1) return true;
    if (!d.form.q(x).is_zero()) return false;
    return coset_min_norm_total(s, d, x) != Rat(2);
  };
  auto bkey = [&](const std::vector<FqfElement>& sub) {
    // canonical key: sorted list of all elements of the subgroup
    std::set<std::vector<i64>> all;
    int m = (int)sub.size();
    std::vector<int> c(m, 0);
    while (true) {
      std::vector<i64> acc(d.form.ngens(), 0);
      for (int i = 0; i < m; ++i)
        for (int t = 0; t < d.form.ngens(); ++t) acc[t] += c[i] * sub[i].coords[t];
      all.insert(d.form.reduce(acc));
      int i = 0;
      for (; i < m; ++i) {
        if (++c[i] < 3) break;
        c[i] = 0;
      }
      if (i == m) break;
    }
    std::vector<std::vector<i64>> v(all.begin(), all.end());
    return v;
  };

  // enumerate subgroups of dimension kdim over F3 spanned by isotropic tuples
  std::set<std::vector<std::vector<i64>>> found;
  std::vector<FqfElement> pool;
  for (const auto& x : tor)
    if (d.form.element_order(x) == 3 && d.form.q(x).is_zero()) pool.push_back(x);
  std::function<void(size_t, std::vector<FqfElement>&)> rec = [&](size_t start,
                                                                  std::vector<FqfElement>& cur) {
    if ((int)cur.size() == kdim) {
      auto key = bkey(cur);
      if ((int)key.size() != ipow3(kdim)) return;
      // all pairwise b = 0 and all elements pass the root test
      for (const auto& e : key) {
        FqfElement x{e};
        if (!elt_ok(x)) return;
        for (const auto& e2 : key) {
          FqfElement y{e2};
          if (!d.form.b(x, y).is_zero()) return;
        }
      }
      found.insert(key);
      return;
    }
    for (size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1, cur);
      cur.pop_back();
    }
  };
  std::vector<FqfElement> cur;
  rec(0, cur);

  // orbits under the symmetry action
  std::vector<SymGenerator> gens = sym_prime_generators(s, d);
  std::set<std::vector<std::vector<i64>>> seen;
  std::vector<ExtensionKernel> out;
  for (const auto& key : found) {
    if (seen.count(key)) continue;
    std::vector<std::vector<std::vector<i64>>> frontier{key};
    seen.insert(key);
    while (!frontier.empty()) {
      std::vector<std::vector<std::vector<i64>>> next;
      for (const auto& curk : frontier)
        for (const auto& g : gens) {
          std::set<std::vector<i64>> img;
          for (const auto& e : curk) img.insert(d.form.apply(g.action, FqfElement{e}).coords);
          std::vector<std::vector<i64>> k2(img.begin(), img.end());
          if (!seen.count(k2)) {
            seen.insert(k2);
            next.push_back(k2);
          }
        }
      frontier = std::move(next);
    }
    // build kernel from an independent generating subset of key
    ExtensionKernel k;
    for (const auto& e : key) {
      if (e == std::vector<i64>(d.form.ngens(), 0)) continue;
      // greedily add if it enlarges the span
      std::vector<FqfElement> test = k.gens;
      test.push_back(FqfElement{e});
      if ((int)bkey(test).size() > (int)bkey(k.gens).size()) k.gens = test;
      if ((int)k.gens.size() == kdim) break;
    }
    k.order = ipow3(kdim);
    k.invariant_factors.assign(kdim, 3);
    out.push_back(std::move(k));
  }
  return out;
}

TorusAdmissibility torus_admissible(const SingularitySet& s) {
  TorusAdmissibility out;
  int w = s.weight();
  bool has_free_a2 = false;
  for (const auto& t : s.parts)
    if (t.kind == RootKind::A && t.n == 2) has_free_a2 = true;
  bool criterion = (w == 6) || (w == 7 && has_free_a2);
  auto cands = kernel_candidates(s, 3);
  if (w == 6 || w == 7) {
    if (cands.size() > 1)
      throw std::logic_error("torus_admissible: multiple beta orbits for " + s.spec_plain());
    if (criterion != !cands.empty())
      throw std::logic_error("torus_admissible: weight criterion mismatch for " + s.spec_plain());
  }
  out.admissible = criterion && !cands.empty();
  if (out.admissible) {
    out.beta = cands[0];
    // inner components = those where beta has a nonzero coordinate
    SetDiscriminant d = discr_of_set(s);
    const auto& coords = out.beta->gens[0].coords;
    for (size_t i = 0; i < s.parts.size(); ++i) {
      int off = d.gen_offset[i];
      int ng = discr_component_ngens(s.parts[i]);
      bool nz = false;
      for (int t = 0; t < ng; ++t)
        if (coords[off + t] % d.form.orders()[off + t] != 0) nz = true;
      if (nz) out.inner_components.push_back((int)i);
    }
  }
  return out;
}

}  // namespace atlas

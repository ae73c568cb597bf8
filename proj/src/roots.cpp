#include "atlas/roots.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "atlas/dynkin.hpp"

namespace atlas {

int RootType::weight() const {
  if (kind == RootKind::A && n % 3 == 2) return (n + 1) / 3;
  if (kind == RootKind::E && n == 6) return 2;
  return 0;
}

std::string RootType::str() const {
  const char* k = kind == RootKind::A ? "A" : kind == RootKind::D ? "D" : "E";
  return std::string(k) + std::to_string(n);
}

bool RootType::operator<(const RootType& o) const {
  // canonical order: E before D before A, index descending
  auto key = [](const RootType& t) {
    int kindrank = t.kind == RootKind::E ? 0 : t.kind == RootKind::D ? 1 : 2;
    return std::pair<int, int>(kindrank, -t.n);
  };
  return key(*this) < key(o);
}

int SingularitySet::mu() const {
  int m = 0;
  for (const auto& t : parts) m += t.rank();
  return m;
}

int SingularitySet::weight() const {
  int w = 0;
  for (const auto& t : parts) w += t.weight();
  return w;
}

void SingularitySet::canonicalize() {
  // keep inner flags attached to the right parts through the sort
  std::vector<std::pair<RootType, int>> tagged;
  std::set<int> inn(inner.begin(), inner.end());
  for (size_t i = 0; i < parts.size(); ++i) tagged.push_back({parts[i], inn.count((int)i) ? 1 : 0});
  std::stable_sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
    if (!(a.first == b.first)) return a.first < b.first;
    return a.second > b.second;  // inner copies first among equals
  });
  parts.clear();
  inner.clear();
  for (size_t i = 0; i < tagged.size(); ++i) {
    parts.push_back(tagged[i].first);
    if (tagged[i].second) inner.push_back((int)i);
  }
}

namespace {
std::string render_run(const RootType& t, int count) {
  std::string s;
  if (count > 1) s += std::to_string(count);
  s += t.str();
  return s;
}

std::string render_parts(const std::vector<RootType>& parts) {
  std::string out;
  size_t i = 0;
  while (i < parts.size()) {
    size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    if (!out.empty()) out += "+";
    out += render_run(parts[i], (int)(j - i));
    i = j;
  }
  return out;
}
}  // namespace

std::string SingularitySet::spec_plain() const { return parts.empty() ? "0" : render_parts(parts); }

std::string SingularitySet::spec() const {
  if (inner.empty()) return spec_plain();
  std::vector<RootType> in, out;
  std::set<int> inn(inner.begin(), inner.end());
  for (size_t i = 0; i < parts.size(); ++i)
    (inn.count((int)i) ? in : out).push_back(parts[i]);
  std::string s = "(" + render_parts(in) + ")";
  if (!out.empty()) s += "+" + render_parts(out);
  return s;
}

SingularitySet make_set(std::vector<RootType> parts) {
  SingularitySet s;
  s.parts = std::move(parts);
  std::sort(s.parts.begin(), s.parts.end());
  return s;
}

SingularitySet parse_set_spec(const std::string& text) {
  SingularitySet out;
  std::string t;
  for (char c : text)
    if (!isspace((unsigned char)c) && c != '*' && c != '^') t += c;
  if (t.empty() || t == "0") return out;
  std::vector<std::pair<std::string, bool>> groups;  // (chunk, is_inner)
  size_t pos = 0;
  bool seen_paren = false;
  while (pos < t.size()) {
    if (t[pos] == '(') {
      if (seen_paren) throw std::domain_error("set spec: multiple parenthesized groups");
      size_t close = t.find(')', pos);
      if (close == std::string::npos) throw std::domain_error("set spec: unbalanced paren");
      groups.push_back({t.substr(pos + 1, close - pos - 1), true});
      seen_paren = true;
      pos = close + 1;
      if (pos < t.size() && t[pos] == '+') ++pos;
    } else {
      size_t next = t.find('+', pos);
      size_t paren = t.find('(', pos);
      size_t stop = std::min(next == std::string::npos ? t.size() : next,
                             paren == std::string::npos ? t.size() : paren);
      if (stop > pos) groups.push_back({t.substr(pos, stop - pos), false});
      pos = (stop < t.size() && t[stop] == '+') ? stop + 1 : stop;
    }
  }
  std::vector<std::pair<RootType, bool>> all;
  for (auto& [chunk, isin] : groups) {
    size_t p = 0;
    while (p < chunk.size()) {
      size_t next = chunk.find('+', p);
      std::string term = chunk.substr(p, next == std::string::npos ? std::string::npos : next - p);
      p = next == std::string::npos ? chunk.size() : next + 1;
      if (term.empty()) continue;
      size_t q = 0;
      int mult = 0;
      while (q < term.size() && isdigit((unsigned char)term[q])) mult = mult * 10 + (term[q++] - '0');
      if (mult == 0) mult = 1;
      if (q >= term.size()) throw std::domain_error("set spec: missing type letter in '" + term + "'");
      char kc = term[q++];
      RootKind kind;
      if (kc == 'A')
        kind = RootKind::A;
      else if (kc == 'D')
        kind = RootKind::D;
      else if (kc == 'E')
        kind = RootKind::E;
      else
        throw std::domain_error(std::string("set spec: unknown type '") + kc + "'");
      if (q >= term.size()) throw std::domain_error("set spec: missing index in '" + term + "'");
      int idx = 0;
      while (q < term.size() && isdigit((unsigned char)term[q])) idx = idx * 10 + (term[q++] - '0');
      if (q != term.size()) throw std::domain_error("set spec: trailing junk in '" + term + "'");
      RootType rt{kind, idx};
      if (kind == RootKind::A && idx < 1) throw std::domain_error("set spec: A index out of range");
      if (kind == RootKind::D && idx < 4) throw std::domain_error("set spec: D index out of range");
      if (kind == RootKind::E && (idx < 6 || idx > 8))
        throw std::domain_error("set spec: E index out of range");
      for (int i = 0; i < mult; ++i) all.push_back({rt, isin});
    }
  }
  for (auto& [rt, isin] : all) {
    out.parts.push_back(rt);
    if (isin) out.inner.push_back((int)out.parts.size() - 1);
  }
  out.canonicalize();
  return out;
}

IntegerLattice gram_of(const RootType& t) {
  Diagram d = diagram_of(t);
  IMat g(d.n, std::vector<i64>(d.n, 0));
  for (int i = 0; i < d.n; ++i) {
    g[i][i] = -2;
    for (int j : d.adj[i]) g[i][j] = 1;
  }
  return {g};
}

IntegerLattice gram_of(const SingularitySet& s) {
  IntegerLattice acc{{}};
  for (const auto& t : s.parts) acc = lattice_direct_sum(acc, gram_of(t));
  return acc;
}

int discr_component_ngens(const RootType& t) {
  switch (t.kind) {
    case RootKind::A:
      return 1;
    case RootKind::D:
      return t.n % 2 == 0 ? 2 : 1;
    case RootKind::E:
      return t.n == 8 ? 0 : 1;
  }
  return 0;
}

FiniteQuadraticForm discr_component(const RootType& t) {
  if (t.kind == RootKind::A) {
    // cyclic of order n+1, q(g) = -n/(n+1)
    return FiniteQuadraticForm({t.n + 1}, {{Rat(-t.n, t.n + 1)}});
  }
  if (t.kind == RootKind::D) {
    if (t.n % 2 == 1) return FiniteQuadraticForm({4}, {{Rat(-t.n, 4)}});
    QMat v(2, std::vector<Rat>(2, Rat(0)));
    v[0][0] = Rat(-t.n, 4);  // s
    v[1][1] = Rat(-1);       // v
    v[0][1] = v[1][0] = Rat(1, 2);
    return FiniteQuadraticForm({2, 2}, v);
  }
  if (t.n == 6) return FiniteQuadraticForm({3}, {{Rat(-4, 3)}});
  if (t.n == 7) return FiniteQuadraticForm({2}, {{Rat(-3, 2)}});
  return FiniteQuadraticForm();
}

SetDiscriminant discr_of_set(const SingularitySet& s) {
  SetDiscriminant out;
  for (const auto& t : s.parts) {
    out.gen_offset.push_back(out.form.ngens());
    out.form = orthogonal_sum(out.form, discr_component(t));
  }
  return out;
}

Rat coset_min_norm(const RootType& t, const std::vector<i64>& cls) {
  if (t.kind == RootKind::A) {
    i64 k = cls.at(0) % (t.n + 1);
    if (k < 0) k += t.n + 1;
    return Rat(k * (t.n + 1 - k), t.n + 1);
  }
  if (t.kind == RootKind::D) {
    if (t.n % 2 == 1) {
      i64 k = cls.at(0) % 4;
      if (k < 0) k += 4;
      if (k == 0) return Rat(0);
      if (k == 2) return Rat(1);
      return Rat(t.n, 4);
    }
    i64 a = cls.at(0) % 2, b = cls.at(1) % 2;
    if (a < 0) a += 2;
    if (b < 0) b += 2;
    if (a == 0 && b == 0) return Rat(0);
    if (a == 0) return Rat(1);  // vector class
    return Rat(t.n, 4);        // spinor classes
  }
  if (t.n == 8) return Rat(0);
  i64 k = cls.at(0) % (t.n == 6 ? 3 : 2);
  if (k < 0) k += (t.n == 6 ? 3 : 2);
  if (k == 0) return Rat(0);
  return t.n == 6 ? Rat(4, 3) : Rat(3, 2);
}

Rat coset_min_norm_total(const SingularitySet& s, const SetDiscriminant& d, const FqfElement& x) {
  Rat total(0);
  for (size_t i = 0; i < s.parts.size(); ++i) {
    int off = d.gen_offset[i];
    int ng = discr_component_ngens(s.parts[i]);
    std::vector<i64> cls(x.coords.begin() + off, x.coords.begin() + off + ng);
    total = total + coset_min_norm(s.parts[i], cls);
  }
  return total;
}

namespace {

// BFS factorization of a target automorphism of a small form into reflections.
std::optional<std::vector<Rat>> bfs_factor(const FiniteQuadraticForm& f, const FqfAutomorphism& target,
                                           int max_depth) {
  if (f.ngens() == 0) return std::vector<Rat>{};
  auto key_of = [&](const FqfAutomorphism& a) {
    std::string k;
    for (const auto& row : a.matrix)
      for (i64 v : row) k += std::to_string(v) + ",";
    return k;
  };
  // reflections of f
  std::vector<std::pair<FqfAutomorphism, Rat>> refls;
  for (const auto& x : f.all_elements()) {
    auto md = f.is_mirror(x);
    if (!md) continue;
    FqfAutomorphism r = f.reflection(x);
    bool dup = false;
    for (auto& [ra, rq] : refls)
      if (f.automorphism_equal(ra, r)) {
        dup = true;
        break;
      }
    if (!dup) refls.push_back({r, f.q(x)});
  }
  FqfAutomorphism id = f.identity_automorphism();
  std::map<std::string, std::pair<int, int>> parent;  // key -> (parent refl idx, depth marker)
  std::vector<FqfAutomorphism> frontier{id};
  std::vector<std::string> fkeys{key_of(id)};
  parent[fkeys[0]] = {-1, -1};
  std::string tkey = key_of(target);
  std::map<std::string, FqfAutomorphism> seen;
  seen[fkeys[0]] = id;
  if (tkey == fkeys[0]) return std::vector<Rat>{};
  std::vector<std::pair<FqfAutomorphism, std::vector<Rat>>> level;
  level.push_back({id, {}});
  for (int depth = 0; depth < max_depth; ++depth) {
    std::vector<std::pair<FqfAutomorphism, std::vector<Rat>>> next;
    for (auto& [a, qs] : level)
      for (size_t ri = 0; ri < refls.size(); ++ri) {
        FqfAutomorphism c = f.compose(refls[ri].first, a);
        std::string k = key_of(c);
        if (seen.count(k)) continue;
        seen[k] = c;
        std::vector<Rat> nq = qs;
        nq.push_back(refls[ri].second);
        if (k == tkey) return nq;
        next.push_back({c, std::move(nq)});
      }
    level = std::move(next);
    if (level.empty()) break;
  }
  return std::nullopt;
}

FqfAutomorphism block_action(const FiniteQuadraticForm& total, int off, const FqfAutomorphism& local,
                             int ng) {
  FqfAutomorphism a = total.identity_automorphism();
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < ng; ++j) a.matrix[off + i][off + j] = local.matrix[i][j];
  return a;
}

}  // namespace

std::vector<SymGenerator> sym_prime_generators(const SingularitySet& s) {
  SetDiscriminant d = discr_of_set(s);
  return sym_prime_generators(s, d);
}

std::vector<SymGenerator> sym_prime_generators(const SingularitySet& s, const SetDiscriminant& d) {
  std::vector<SymGenerator> out;
  const FiniteQuadraticForm& F = d.form;

  static std::map<std::string, std::vector<Rat>> factor_cache;

  auto finish = [&](SymGenerator g, const std::string& cache_key, const FiniteQuadraticForm& sub,
                    const FqfAutomorphism& local) {
    auto cit = factor_cache.find(cache_key);
    if (cit != factor_cache.end()) {
      g.mirror_q = cit->second;
      out.push_back(std::move(g));
      return;
    }
    // factor `local` into reflections of `sub`; q-values transfer verbatim
    auto qs = bfs_factor(sub, local, 6);
    if (!qs) {
      // retry with an h-type auxiliary <1/2> summand appended (2-adic quirks)
      FiniteQuadraticForm sub2 = orthogonal_sum(sub, cyclic_form(1, 2));
      FqfAutomorphism loc2;
      loc2.matrix = identity_imat(sub2.ngens());
      for (int i = 0; i < sub.ngens(); ++i)
        for (int j = 0; j < sub.ngens(); ++j) loc2.matrix[i][j] = local.matrix[i][j];
      qs = bfs_factor(sub2, loc2, 8);
      if (!qs) throw std::logic_error("sym generator: no mirror factorization found for " + g.label);
    }
    factor_cache[cache_key] = *qs;
    g.mirror_q = *qs;
    out.push_back(std::move(g));
  };

  for (size_t i = 0; i < s.parts.size(); ++i) {
    const RootType& t = s.parts[i];
    int ng = discr_component_ngens(t);
    FiniteQuadraticForm sub = discr_component(t);
    bool flip = (t.kind == RootKind::A && t.n >= 2) || (t.kind == RootKind::D) ||
                (t.kind == RootKind::E && t.n == 6);
    if (flip) {
      SymGenerator g;
      g.comp_a = (int)i;
      g.label = t.str() + "#" + std::to_string(i) + " symmetry";
      FqfAutomorphism local;
      if (t.kind == RootKind::D && t.n % 2 == 0) {
        // s <-> c = s + v, v fixed
        local.matrix = {{1, 0}, {1, 1}};
        g.kind = SymGenerator::Kind::Flip;
      } else {
        local = sub.minus_identity();
        g.kind = SymGenerator::Kind::Flip;
      }
      g.action = block_action(F, d.gen_offset[i], local, ng);
      finish(std::move(g), "flip:" + t.str(), sub, local);
    }
    if (t.kind == RootKind::D && t.n == 4) {
      // triality generator: v -> s -> c -> v
      SymGenerator g;
      g.kind = SymGenerator::Kind::Rotation;
      g.comp_a = (int)i;
      g.label = "D4#" + std::to_string(i) + " rotation";
      FqfAutomorphism local;
      local.matrix = {{1, 1}, {1, 0}};
      g.action = block_action(F, d.gen_offset[i], local, ng);
      finish(std::move(g), "rot:" + t.str(), sub, local);
    }
  }
  // transpositions of adjacent isomorphic components
  for (size_t i = 0; i + 1 < s.parts.size(); ++i) {
    if (!(s.parts[i] == s.parts[i + 1])) continue;
    const RootType& t = s.parts[i];
    SymGenerator g;
    g.kind = SymGenerator::Kind::Swap;
    g.comp_a = (int)i;
    g.comp_b = (int)(i + 1);
    g.label = t.str() + " swap #" + std::to_string(i) + "," + std::to_string(i + 1);
    int ng = discr_component_ngens(t);
    FqfAutomorphism a = F.identity_automorphism();
    int o1 = d.gen_offset[i], o2 = d.gen_offset[i + 1];
    for (int r = 0; r < ng; ++r) {
      a.matrix[o1 + r][o1 + r] = 0;
      a.matrix[o2 + r][o2 + r] = 0;
      a.matrix[o1 + r][o2 + r] = 1;
      a.matrix[o2 + r][o1 + r] = 1;
    }
    g.action = a;
    if (ng == 0) {
      g.mirror_q = {};
      out.push_back(std::move(g));
      continue;
    }
    // factor within the pair subform
    FiniteQuadraticForm pair = orthogonal_sum(discr_component(t), discr_component(t));
    FqfAutomorphism local;
    local.matrix.assign(2 * ng, std::vector<i64>(2 * ng, 0));
    for (int r = 0; r < ng; ++r) {
      local.matrix[r][ng + r] = 1;
      local.matrix[ng + r][r] = 1;
    }
    finish(std::move(g), "swap:" + t.str(), pair, local);
  }
  return out;
}

}  // namespace atlas

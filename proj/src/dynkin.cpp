#include "atlas/dynkin.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace atlas {

Diagram diagram_of(const RootType& t) {
  Diagram d;
  d.n = t.rank();
  d.adj.assign(d.n, {});
  auto link = [&](int a, int b) {
    d.adj[a].push_back(b);
    d.adj[b].push_back(a);
  };
  switch (t.kind) {
    case RootKind::A:
      for (int i = 0; i + 1 < d.n; ++i) link(i, i + 1);
      break;
    case RootKind::D:
      // vertices 0,1 prongs; 2 centre; 3.. tail
      link(0, 2);
      link(1, 2);
      for (int i = 2; i + 1 < d.n; ++i) link(i, i + 1);
      break;
    case RootKind::E: {
      // branch vertex 0 with legs (n-5, 2, 1) -> E6 (2,2,1), E7 (3,2,1), E8 (4,2,1)
      int l1 = t.n - 4;  // 2,3,4
      int v = 1;
      int prev = 0;
      for (int i = 0; i < l1; ++i) {
        link(prev, v);
        prev = v++;
      }
      prev = 0;
      for (int i = 0; i < 2; ++i) {
        link(prev, v);
        prev = v++;
      }
      link(0, v);
      break;
    }
  }
  return d;
}

std::optional<RootType> classify_connected(const Diagram& d, const std::vector<int>& verts) {
  int m = (int)verts.size();
  if (m == 0) return std::nullopt;
  std::map<int, int> deg;
  for (int v : verts) deg[v] = 0;
  for (int v : verts)
    for (int w : d.adj[v])
      if (deg.count(w)) deg[v]++;
  int branches = 0, branch = -1;
  for (auto& [v, dg] : deg) {
    if (dg > 3) return std::nullopt;
    if (dg == 3) {
      ++branches;
      branch = v;
    }
  }
  if (branches == 0) return RootType{RootKind::A, m};
  if (branches > 1) return std::nullopt;
  // legs from the branch vertex
  std::vector<int> legs;
  for (int s : d.adj[branch]) {
    if (!deg.count(s)) continue;
    int len = 1, prev = branch, cur = s;
    while (true) {
      int next = -1;
      for (int w : d.adj[cur])
        if (w != prev && deg.count(w)) {
          next = w;
          break;
        }
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.rbegin(), legs.rend());
  if (legs.size() != 3) return std::nullopt;
  int a = legs[0], b = legs[1], c = legs[2];
  if (c != 1) return std::nullopt;
  if (b == 1) return RootType{RootKind::D, a + 3};
  if (b == 2 && a >= 2 && a <= 4) return RootType{RootKind::E, a + 4};
  return std::nullopt;
}

std::optional<std::vector<RootType>> classify_subset(const Diagram& d, const std::vector<int>& verts) {
  std::set<int> in(verts.begin(), verts.end());
  std::set<int> seen;
  std::vector<RootType> out;
  for (int v : verts) {
    if (seen.count(v)) continue;
    std::vector<int> comp, stack{v};
    seen.insert(v);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (int w : d.adj[x])
        if (in.count(w) && !seen.count(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
    }
    auto t = classify_connected(d, comp);
    if (!t) return std::nullopt;
    out.push_back(*t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
std::map<RootType, std::vector<std::vector<RootType>>>& multiset_cache() {
  static std::map<RootType, std::vector<std::vector<RootType>>> c;
  return c;
}
std::map<RootType, std::vector<std::vector<RootType>>>& deletion_cache() {
  static std::map<RootType, std::vector<std::vector<RootType>>> c;
  return c;
}
}  // namespace

const std::vector<std::vector<RootType>>& induced_multisets(const RootType& t) {
  auto& cache = multiset_cache();
  auto it = cache.find(t);
  if (it != cache.end()) return it->second;
  Diagram d = diagram_of(t);
  std::set<std::vector<RootType>> found;
  int n = d.n;
  if (n > 25) throw std::domain_error("induced_multisets: rank too large");
  for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
    std::vector<int> verts;
    for (int i = 0; i < n; ++i)
      if (mask & (1ull << i)) verts.push_back(i);
    auto cls = classify_subset(d, verts);
    if (cls) found.insert(*cls);
  }
  return cache.emplace(t, std::vector<std::vector<RootType>>(found.begin(), found.end()))
      .first->second;
}

const std::vector<std::vector<RootType>>& vertex_deletion_multisets(const RootType& t) {
  auto& cache = deletion_cache();
  auto it = cache.find(t);
  if (it != cache.end()) return it->second;
  Diagram d = diagram_of(t);
  std::set<std::vector<RootType>> found;
  for (int del = 0; del < d.n; ++del) {
    std::vector<int> verts;
    for (int i = 0; i < d.n; ++i)
      if (i != del) verts.push_back(i);
    auto cls = classify_subset(d, verts);
    if (cls) found.insert(*cls);
  }
  return cache.emplace(t, std::vector<std::vector<RootType>>(found.begin(), found.end()))
      .first->second;
}

namespace {

// can `need` (sorted multiset) be partitioned into hosts, where host i accepts
// any member of options(i)?
bool assign_parts(const std::vector<RootType>& need,
                  const std::vector<RootType>& hosts, size_t hi,
                  std::map<std::string, bool>& memo) {
  if (need.empty()) return true;
  if (hi >= hosts.size()) return false;
  std::string key = std::to_string(hi) + "|";
  for (const auto& t : need) key += t.str() + ",";
  auto mit = memo.find(key);
  if (mit != memo.end()) return mit->second;
  bool ok = false;
  // choose the sub-multiset hosted by component hi
  const auto& opts = induced_multisets(hosts[hi]);
  for (const auto& opt : opts) {
    // opt must be a sub-multiset of need
    std::vector<RootType> rest;
    {
      std::multiset<RootType> pool(need.begin(), need.end());
      bool sub = true;
      for (const auto& x : opt) {
        auto pit = pool.find(x);
        if (pit == pool.end()) {
          sub = false;
          break;
        }
        pool.erase(pit);
      }
      if (!sub) continue;
      rest.assign(pool.begin(), pool.end());
    }
    if (assign_parts(rest, hosts, hi + 1, memo)) {
      ok = true;
      break;
    }
  }
  memo[key] = ok;
  return ok;
}

}  // namespace

bool degenerates_to(const SingularitySet& s1, const SingularitySet& s2) {
  if (s1.mu() > s2.mu()) return false;
  std::map<std::string, bool> memo;
  return assign_parts(s1.parts, s2.parts, 0, memo);
}

std::vector<SingularitySet> perturbations(const SingularitySet& s) {
  std::set<std::vector<RootType>> acc;
  acc.insert({});
  for (const auto& host : s.parts) {
    const auto& opts = induced_multisets(host);
    std::set<std::vector<RootType>> next;
    for (const auto& base : acc)
      for (const auto& opt : opts) {
        std::vector<RootType> merged = base;
        merged.insert(merged.end(), opt.begin(), opt.end());
        std::sort(merged.begin(), merged.end());
        next.insert(std::move(merged));
      }
    acc = std::move(next);
  }
  std::vector<SingularitySet> out;
  for (const auto& parts : acc) out.push_back(make_set(parts));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SingularitySet> corank_one_perturbations(const SingularitySet& s) {
  std::set<std::vector<RootType>> acc;
  for (size_t i = 0; i < s.parts.size(); ++i) {
    if (i > 0 && s.parts[i] == s.parts[i - 1]) continue;  // same options
    for (const auto& repl : vertex_deletion_multisets(s.parts[i])) {
      std::vector<RootType> parts;
      for (size_t j = 0; j < s.parts.size(); ++j)
        if (j != i) parts.push_back(s.parts[j]);
      parts.insert(parts.end(), repl.begin(), repl.end());
      std::sort(parts.begin(), parts.end());
      acc.insert(std::move(parts));
    }
  }
  std::vector<SingularitySet> out;
  for (const auto& parts : acc) out.push_back(make_set(parts));
  return out;
}

namespace {

// diagram automorphism group as vertex permutations (small by inspection)
std::vector<std::vector<int>> diagram_autos(const RootType& t) {
  Diagram d = diagram_of(t);
  int n = d.n;
  std::vector<int> idperm(n);
  for (int i = 0; i < n; ++i) idperm[i] = i;
  std::vector<std::vector<int>> out{idperm};
  auto add_perm = [&](std::vector<int> p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  };
  if (t.kind == RootKind::A && t.n >= 2) {
    std::vector<int> rev(n);
    for (int i = 0; i < n; ++i) rev[i] = n - 1 - i;
    add_perm(rev);
  } else if (t.kind == RootKind::D) {
    std::vector<int> sw = idperm;
    std::swap(sw[0], sw[1]);
    add_perm(sw);
    if (t.n == 4) {
      // S3 on the three outer vertices {0,1,3}
      std::vector<int> outer{0, 1, 3};
      std::sort(outer.begin(), outer.end());
      do {
        std::vector<int> p = idperm;
        p[0] = outer[0];
        p[1] = outer[1];
        p[3] = outer[2];
        add_perm(p);
      } while (std::next_permutation(outer.begin(), outer.end()));
    }
  } else if (t.kind == RootKind::E && t.n == 6) {
    // swap the two long legs: vertices legs: 1,2 and 3,4
    std::vector<int> p = idperm;
    std::swap(p[1], p[3]);
    std::swap(p[2], p[4]);
    add_perm(p);
  }
  // close under composition
  bool grew = true;
  while (grew) {
    grew = false;
    size_t sz = out.size();
    for (size_t i = 0; i < sz; ++i)
      for (size_t j = 0; j < sz; ++j) {
        std::vector<int> c(n);
        for (int v = 0; v < n; ++v) c[v] = out[i][out[j][v]];
        if (std::find(out.begin(), out.end(), c) == out.end()) {
          out.push_back(c);
          grew = true;
          if (out.size() > 24) throw std::logic_error("diagram auto group too large");
        }
      }
  }
  return out;
}

// all induced embeddings of multiset `want` into host component, as canonical
// orbit representatives under Aut(host diagram); each embedding recorded as a
// sorted list of (vertex-set) sorted lexicographically.
int embedding_orbits(const std::vector<RootType>& want, const RootType& host) {
  Diagram d = diagram_of(host);
  int n = d.n;
  if (n > 22) throw std::domain_error("embedding_orbits: host too large");
  auto autos = diagram_autos(host);
  std::set<std::vector<std::vector<int>>> reps;
  // enumerate subsets realizing the multiset, then split into parts
  for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
    std::vector<int> verts;
    for (int i = 0; i < n; ++i)
      if (mask & (1ull << i)) verts.push_back(i);
    if ((int)verts.size() != [&] {
          int s = 0;
          for (auto& t : want) s += t.rank();
          return s;
        }())
      continue;
    auto cls = classify_subset(d, verts);
    if (!cls || *cls != want) continue;
    // canonical form: component vertex-sets, canonicalized under autos
    // (embeddings differing by permuting isomorphic parts give the same set
    //  decomposition, so the vertex partition into components suffices)
    std::vector<std::vector<int>> best;
    bool first = true;
    for (const auto& a : autos) {
      std::vector<int> im;
      for (int v : verts) im.push_back(a[v]);
      std::sort(im.begin(), im.end());
      // recompute component split for canonical comparison
      std::set<int> in(im.begin(), im.end());
      std::vector<std::vector<int>> comps;
      std::set<int> seen;
      for (int v : im) {
        if (seen.count(v)) continue;
        std::vector<int> comp, stack{v};
        seen.insert(v);
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          comp.push_back(x);
          for (int w : d.adj[x])
            if (in.count(w) && !seen.count(w)) {
              seen.insert(w);
              stack.push_back(w);
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(comp);
      }
      std::sort(comps.begin(), comps.end());
      if (first || comps < best) {
        best = comps;
        first = false;
      }
    }
    reps.insert(best);
  }
  return (int)reps.size();
}

void assign_classes(const std::vector<RootType>& need, const std::vector<RootType>& hosts,
                    size_t hi, std::vector<std::vector<RootType>>& chosen, std::set<std::string>& shapes) {
  if (hi == hosts.size()) {
    if (!need.empty()) return;
    // canonical shape key: per host (with equal hosts sorted), the multiset placed
    std::vector<std::pair<std::string, std::string>> items;
    for (size_t i = 0; i < hosts.size(); ++i) {
      std::string ms;
      for (auto& t : chosen[i]) ms += t.str() + ",";
      items.push_back({hosts[i].str(), ms});
    }
    std::sort(items.begin(), items.end());
    std::string key;
    for (auto& [h, m] : items) key += h + ":" + m + ";";
    shapes.insert(key);
    return;
  }
  const auto& opts = induced_multisets(hosts[hi]);
  for (const auto& opt : opts) {
    std::multiset<RootType> pool(need.begin(), need.end());
    bool sub = true;
    for (const auto& x : opt) {
      auto pit = pool.find(x);
      if (pit == pool.end()) {
        sub = false;
        break;
      }
      pool.erase(pit);
    }
    if (!sub) continue;
    chosen[hi] = opt;
    std::vector<RootType> rest(pool.begin(), pool.end());
    assign_classes(rest, hosts, hi + 1, chosen, shapes);
  }
  chosen[hi].clear();
}

}  // namespace

int degeneration_classes(const SingularitySet& s1, const SingularitySet& s2) {
  // enumerate assignment shapes, then multiply per-host embedding orbit counts
  std::set<std::string> shapes;
  std::vector<std::vector<RootType>> chosen(s2.parts.size());
  assign_classes(s1.parts, s2.parts, 0, chosen, shapes);
  // re-derive counts per shape
  int total = 0;
  for (const auto& key : shapes) {
    // parse key back: host:parts; entries
    int prod = 1;
    size_t pos = 0;
    while (pos < key.size()) {
      size_t semi = key.find(';', pos);
      std::string item = key.substr(pos, semi - pos);
      pos = semi + 1;
      size_t colon = item.find(':');
      std::string hosts = item.substr(0, colon);
      std::string rest = item.substr(colon + 1);
      // parse multiset
      std::vector<RootType> want;
      size_t p2 = 0;
      while (p2 < rest.size()) {
        size_t comma = rest.find(',', p2);
        std::string tok = rest.substr(p2, comma - p2);
        p2 = comma + 1;
        if (!tok.empty()) {
          SingularitySet t1 = parse_set_spec(tok);
          want.push_back(t1.parts[0]);
        }
      }
      std::sort(want.begin(), want.end());
      if (!want.empty()) {
        SingularitySet hs = parse_set_spec(hosts);
        prod *= embedding_orbits(want, hs.parts[0]);
      }
      (void)hosts;
    }
    total += prod;
  }
  return total;
}

bool degenerates_to_bruteforce(const SingularitySet& s1, const SingularitySet& s2) {
  // build full graphs and run a naive induced-subgraph search
  auto build = [](const SingularitySet& s) {
    std::vector<std::vector<int>> adj;
    for (const auto& t : s.parts) {
      Diagram d = diagram_of(t);
      int base = (int)adj.size();
      for (int i = 0; i < d.n; ++i) {
        adj.push_back({});
        for (int w : d.adj[i]) adj[base + i].push_back(base + w);
      }
    }
    return adj;
  };
  auto g1 = build(s1), g2 = build(s2);
  int n1 = (int)g1.size(), n2 = (int)g2.size();
  if (n1 > n2) return false;
  std::vector<int> map1(n1, -1);
  std::vector<bool> used(n2, false);
  // order s1 vertices to keep connectivity (simple DFS order per component)
  std::vector<int> order;
  {
    std::vector<bool> seen(n1, false);
    for (int v = 0; v < n1; ++v) {
      if (seen[v]) continue;
      std::vector<int> stack{v};
      seen[v] = true;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (int w : g1[x])
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
      }
    }
  }
  std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
    if (idx == order.size()) return true;
    int v = order[idx];
    for (int c = 0; c < n2; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (int u = 0; u < n1 && ok; ++u) {
        if (map1[u] < 0) continue;
        bool e1 = std::find(g1[v].begin(), g1[v].end(), u) != g1[v].end();
        bool e2 = std::find(g2[c].begin(), g2[c].end(), map1[u]) != g2[c].end();
        if (e1 != e2) ok = false;
      }
      if (!ok) continue;
      map1[v] = c;
      used[c] = true;
      if (rec(idx + 1)) return true;
      map1[v] = -1;
      used[c] = false;
    }
    return false;
  };
  return rec(0);
}

}  // namespace atlas

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "atlas/classify.hpp"
#include "atlas/dynkin.hpp"

namespace atlas {

namespace {

// can `need` be distributed over hosts[hi..] with per-host induced options?
bool distribute(const std::vector<RootType>& need, const std::vector<RootType>& hosts, size_t hi,
                std::map<std::string, bool>& memo) {
  if (hi == hosts.size()) return need.empty();
  std::string key = std::to_string(hi) + "|";
  for (const auto& t : need) key += t.str() + ",";
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool ok = false;
  for (const auto& opt : induced_multisets(hosts[hi])) {
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
    std::vector<RootType> rest(pool.begin(), pool.end());
    if (distribute(rest, hosts, hi + 1, memo)) {
      ok = true;
      break;
    }
  }
  memo[key] = ok;
  return ok;
}

// does the row admit a conjugation-symmetric perturbation onto `s`?
bool symmetric_perturbation(const MaximizingRow& row, const SingularitySet& s) {
  // identify swapped pairs: for each marked type, the first two components of
  // that type form the swapped pair
  std::vector<RootType> hosts = row.set.parts;
  std::vector<std::pair<int, int>> pairs;
  {
    std::multiset<RootType> marked(row.swapped_pairs.begin(), row.swapped_pairs.end());
    for (const auto& t : marked) {
      int first = -1, second = -1;
      for (size_t i = 0; i < hosts.size(); ++i) {
        bool used = false;
        for (auto& [a, b] : pairs)
          if ((int)i == a || (int)i == b) used = true;
        if (used || !(hosts[i] == t)) continue;
        if (first < 0)
          first = (int)i;
        else {
          second = (int)i;
          break;
        }
      }
      if (second < 0) return false;  // malformed marker
      pairs.push_back({first, second});
    }
  }
  // enumerate equal options on each pair, then distribute the rest
  std::vector<RootType> rest_hosts;
  {
    std::set<int> paired;
    for (auto& [a, b] : pairs) paired.insert(a), paired.insert(b);
    for (size_t i = 0; i < hosts.size(); ++i)
      if (!paired.count((int)i)) rest_hosts.push_back(hosts[i]);
  }
  std::function<bool(size_t, std::multiset<RootType>&)> rec =
      [&](size_t pi, std::multiset<RootType>& pool) -> bool {
    if (pi == pairs.size()) {
      std::vector<RootType> need(pool.begin(), pool.end());
      std::map<std::string, bool> memo;
      return distribute(need, rest_hosts, 0, memo);
    }
    const RootType& host = hosts[pairs[pi].first];
    for (const auto& opt : induced_multisets(host)) {
      std::multiset<RootType> p2 = pool;
      bool ok = true;
      for (int rep = 0; rep < 2 && ok; ++rep)
        for (const auto& x : opt) {
          auto it = p2.find(x);
          if (it == p2.end()) {
            ok = false;
            break;
          }
          p2.erase(it);
        }
      if (!ok) continue;
      if (rec(pi + 1, p2)) return true;
    }
    return false;
  };
  std::multiset<RootType> pool(s.parts.begin(), s.parts.end());
  return rec(0, pool);
}

}  // namespace

bool Classifier::real_by_perturbation(const SingularitySet& s, bool torus_family) const {
  const auto& rows = torus_family ? data_.torus : data_.ns;
  for (const auto& row : rows) {
    if (row.r < 1) continue;
    if (s.mu() > row.set.mu()) continue;
    if (symmetric_perturbation(row, s)) return true;
  }
  return false;
}

bool Classifier::real_by_square2(const SingularitySet& s) const {
  int mu = s.mu();
  SetDiscriminant d = discr_of_set(s);
  FiniteQuadraticForm sh = discr_sh(d.form);
  // order-2 elements with q = 3/2
  int n = sh.ngens();
  std::vector<i64> step(n), count(n);
  for (int i = 0; i < n; ++i) {
    i64 g = gcd_i64(sh.orders()[i], (i64)2);
    step[i] = sh.orders()[i] / g;
    count[i] = g;
  }
  std::vector<i64> idx(n, 0);
  FiniteQuadraticForm glued = orthogonal_sum(sh, cyclic_form(1, 2));
  while (true) {
    FqfElement alpha;
    alpha.coords.resize(n);
    for (int i = 0; i < n; ++i) alpha.coords[i] = idx[i] * step[i];
    if (sh.element_order(alpha) == 2 && sh.q(alpha) == Rat(3, 2)) {
      FqfElement kgen;
      kgen.coords = alpha.coords;
      kgen.coords.push_back(1);  // + generator of <1/2>
      try {
        FiniteQuadraticForm quot = quotient_form(glued, {kgen});
        if (embeds_primitively_in_L(GenusDescriptor{2, mu, quot})) return true;
      } catch (const std::exception&) {
        // non-isotropic glue cannot happen (q = 3/2 + 1/2 = 0); be safe
      }
    }
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < count[i]) break;
      idx[i] = 0;
    }
    if (i == n || n == 0) break;
  }
  return false;
}

}  // namespace atlas

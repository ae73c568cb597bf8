#include "atlas/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace atlas {

namespace {

// type universe in canonical descending order
std::vector<RootType> type_universe(int max_rank) {
  std::vector<RootType> ts;
  for (int n = 8; n >= 6; --n)
    if (n <= max_rank) ts.push_back({RootKind::E, n});
  for (int n = max_rank; n >= 4; --n) ts.push_back({RootKind::D, n});
  for (int n = max_rank; n >= 1; --n) ts.push_back({RootKind::A, n});
  std::sort(ts.begin(), ts.end());
  return ts;
}

void gen_rec(const std::vector<RootType>& universe, size_t from, int remaining,
             std::vector<RootType>& cur, std::vector<SingularitySet>& out) {
  if (!cur.empty()) out.push_back(make_set(cur));
  for (size_t i = from; i < universe.size(); ++i) {
    if (universe[i].rank() > remaining) continue;
    cur.push_back(universe[i]);
    gen_rec(universe, i, remaining - universe[i].rank(), cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<SingularitySet> all_singularity_sets(int mu_max) {
  std::vector<RootType> universe = type_universe(mu_max);
  std::vector<SingularitySet> out;
  std::vector<RootType> cur;
  gen_rec(universe, 0, mu_max, cur, out);
  std::sort(out.begin(), out.end(),
            [](const SingularitySet& a, const SingularitySet& b) { return a.spec_plain() < b.spec_plain(); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const SingularitySet& a, const SingularitySet& b) { return a.same_parts(b); }),
            out.end());
  return out;
}

std::vector<ClassificationReport> classify_sets(const Classifier& cls,
                                                const std::vector<SingularitySet>& sets, int jobs) {
  std::vector<ClassificationReport> out(sets.size());
  if (jobs < 1) jobs = 1;
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= sets.size()) break;
      out[i] = cls.classify_all(sets[i]);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

EnumerationTallies tally(const std::vector<ClassificationReport>& reports) {
  EnumerationTallies t;
  for (const auto& r : reports) {
    bool ns = r.ns && r.ns->realized;
    bool to = r.torus && r.torus->realized;
    if (ns) t.ns_realized++;
    if (to) t.torus_realized++;
    if (ns && to) t.both++;
  }
  return t;
}

}  // namespace atlas

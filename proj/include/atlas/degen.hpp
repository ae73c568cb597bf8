#ifndef ATLAS_DEGEN_HPP
#define ATLAS_DEGEN_HPP

#include <set>
#include <string>
#include <vector>

#include "atlas/classify.hpp"
#include "atlas/dynkin.hpp"

namespace atlas {

// Maximizing reference sets reachable from s by degeneration, per family.
std::vector<SingularitySet> maximizing_closure(const SingularitySet& s, const RefData& data,
                                               bool torus_family);

struct ClusterVertex {
  SingularitySet set;
  int class_index = 0;  // per-set homological-type index (conjugate pairs)
  int nclasses = 1;
  std::string id() const;
};

struct ClusterGraph {
  int p = 0;
  std::vector<ClusterVertex> vertices;
  std::vector<std::pair<int, int>> edges;  // corank-one degenerations, low mu -> high mu

  bool connected() const;
  int betti1() const;  // dim H_1(.; F2) = E - V + #components
  std::vector<int> sources() const;  // vertices with no incoming edge (minimal strata)
  std::string to_dot() const;
  std::string to_csv() const;
};

// Builds the cluster graph C_p, p in {2, 3, 7}.
ClusterGraph build_cluster_graph(int p, const Classifier& cls);

// DOT of the degeneration graph restricted to given sets (corank-one edges).
std::string degeneration_dot(const std::vector<SingularitySet>& sets);

}  // namespace atlas

#endif

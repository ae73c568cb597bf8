#ifndef ATLAS_DYNKIN_HPP
#define ATLAS_DYNKIN_HPP

#include <optional>
#include <vector>

#include "atlas/roots.hpp"

namespace atlas {

struct Diagram {
  int n = 0;
  std::vector<std::vector<int>> adj;
};

Diagram diagram_of(const RootType& t);

// Type of the induced subgraph on a connected vertex set, if it is ADE.
std::optional<RootType> classify_connected(const Diagram& d, const std::vector<int>& verts);

// Decompose an arbitrary vertex subset into connected components and classify.
std::optional<std::vector<RootType>> classify_subset(const Diagram& d, const std::vector<int>& verts);

// All multisets of types realizable as induced subgraphs of one component
// (each multiset sorted canonically; includes the empty multiset). Memoized.
const std::vector<std::vector<RootType>>& induced_multisets(const RootType& t);

// Multisets realizable by deleting exactly one vertex.
const std::vector<std::vector<RootType>>& vertex_deletion_multisets(const RootType& t);

// Whether the Dynkin graph of s1 is an induced subgraph of that of s2.
bool degenerates_to(const SingularitySet& s1, const SingularitySet& s2);

// All induced sub-multisets of s (as singularity sets, deduped, including
// the empty set and s itself).
std::vector<SingularitySet> perturbations(const SingularitySet& s);

// Sets obtained from s by corank-one degeneration (mu increases by one) is
// the reverse direction; this lists corank-one perturbations (mu drops by 1).
std::vector<SingularitySet> corank_one_perturbations(const SingularitySet& s);

// Number of embeddings of graph(s1) into graph(s2) up to Aut x Aut.
int degeneration_classes(const SingularitySet& s1, const SingularitySet& s2);

// Brute-force induced-subgraph oracle used by tests: builds whole graphs.
bool degenerates_to_bruteforce(const SingularitySet& s1, const SingularitySet& s2);

}  // namespace atlas

#endif

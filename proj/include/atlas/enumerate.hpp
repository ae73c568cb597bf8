#ifndef ATLAS_ENUMERATE_HPP
#define ATLAS_ENUMERATE_HPP

#include <vector>

#include "atlas/classify.hpp"

namespace atlas {

// All singularity sets with 1 <= mu <= mu_max, in canonical (spec string) order.
std::vector<SingularitySet> all_singularity_sets(int mu_max);

// Classify many sets on a worker pool; order of results matches input.
std::vector<ClassificationReport> classify_sets(const Classifier& cls,
                                                const std::vector<SingularitySet>& sets, int jobs);

struct EnumerationTallies {
  int ns_realized = 0;
  int torus_realized = 0;
  int both = 0;
};
EnumerationTallies tally(const std::vector<ClassificationReport>& reports);

}  // namespace atlas

#endif

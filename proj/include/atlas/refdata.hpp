#ifndef ATLAS_REFDATA_HPP
#define ATLAS_REFDATA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atlas/roots.hpp"

namespace atlas {

// One row of the maximizing (mu = 19) reference tables.
struct MaximizingRow {
  SingularitySet set;
  int r = 0, c = 0;
  // conjugation-swapped pairs on the real curve: one entry per marked pair,
  // naming the component type (e.g. a marked 2A2 pair gives RootType A2)
  std::vector<RootType> swapped_pairs;
};

struct RefData {
  std::vector<MaximizingRow> ns;     // 110 rows
  std::vector<MaximizingRow> torus;  // 15 rows
  std::map<std::string, std::map<std::string, std::string>> overrides;  // set spec -> key -> value

  const MaximizingRow* find_ns(const SingularitySet& s) const;
  const MaximizingRow* find_torus(const SingularitySet& s) const;
  std::optional<std::string> override_value(const SingularitySet& s, const std::string& key) const;
};

// Loads maximizing_ns.tsv, maximizing_torus.tsv, manual_overrides.tsv.
RefData load_refdata(const std::string& dir);

}  // namespace atlas

#endif

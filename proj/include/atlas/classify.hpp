#ifndef ATLAS_CLASSIFY_HPP
#define ATLAS_CLASSIFY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "atlas/mm.hpp"
#include "atlas/nikulin.hpp"
#include "atlas/refdata.hpp"
#include "atlas/roots.hpp"

namespace atlas {

enum class TriState { Yes, No, Undetermined };
std::string tristate_str(TriState t);

struct FamilyReport {
  bool realized = false;
  int types = 0;        // number of homological types (components of moduli/conj)
  bool symmetric = false;
  TriState real_curve = TriState::Undetermined;
  int r = 0, c = 0;
  bool from_reference = false;  // mu = 19 rows are data
  std::string e_desc;
  std::string note;
  std::vector<int> inner;  // torus family: inner component indices
};

struct ClassificationReport {
  SingularitySet set;
  std::optional<FamilyReport> ns;
  std::optional<FamilyReport> torus;
  std::vector<std::pair<std::string, bool>> special;  // kernel signature, realized
  std::string monodromy;  // bracket notation; empty when not applicable
};

class Classifier {
 public:
  explicit Classifier(const RefData& data) : data_(data) {}

  FamilyReport classify_nonspecial(const SingularitySet& s) const;
  FamilyReport classify_torus(const SingularitySet& s) const;
  std::vector<std::pair<std::string, bool>> classify_special_kernels(const SingularitySet& s) const;
  std::string monodromy_group(const SingularitySet& s) const;
  ClassificationReport classify_all(const SingularitySet& s) const;

  // Whether some real maximizing row admits a conjugation-symmetric
  // perturbation onto s (realness route (a)).
  bool real_by_perturbation(const SingularitySet& s, bool torus_family) const;
  // Realness route (b): an order-2 glue onto a square-2 vector.
  bool real_by_square2(const SingularitySet& s) const;

  // Subgroup of E(T) generated by the images of O(S) (primitive case),
  // given the sym generators; returns its order.
  i64 dperp_image_order(const SingularitySet& s, const EModule& em) const;

  // is_symmetric for the primitive homological type(s) extending s.
  bool is_symmetric_primitive(const SingularitySet& s, const GenusDescriptor& tgenus) const;

  const RefData& data() const { return data_; }

 private:
  const RefData& data_;
};

// Monodromy details, exposed for verification.
struct MonodromyInfo {
  bool full = true;                      // S_+ = S(Sigma)
  std::string brackets;                  // rendering
  bool mu19_rule = false;                // permutations of the E8 points only
  std::vector<std::pair<std::string, int>> type_values;  // per-type e_+ class id of a transposition
};
MonodromyInfo monodromy_info(const SingularitySet& s, const RefData& data);

// Hypothesis bookkeeping for the single-prime lemmas at p (3 or 5):
// single irregular prime p, or two with |E_+| = |E_p^+| = 2.
bool eplus_single_prime_hypotheses(const SingularitySet& s, i64 p);

}  // namespace atlas

#endif

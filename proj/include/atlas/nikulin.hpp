#ifndef ATLAS_NIKULIN_HPP
#define ATLAS_NIKULIN_HPP

#include <optional>

#include "atlas/fqf.hpp"
#include "atlas/roots.hpp"

namespace atlas {

// Genus of even lattices: signature pair + discriminant form.
struct GenusDescriptor {
  int sig_plus = 0;
  int sig_minus = 0;
  FiniteQuadraticForm disc;

  int rank() const { return sig_plus + sig_minus; }
  // det = (-1)^{sig_minus} |disc|
  i64 det() const;
};

struct ExtensionKernel {
  std::vector<FqfElement> gens;  // inside discr(S); empty = primitive case
  i64 order = 1;
  std::vector<i64> invariant_factors;

  std::string signature_str() const;  // "", "(3)", "(3,3)", "(5)", ...
};

// The form on K^perp / K for an isotropic subgroup K of F.
FiniteQuadraticForm quotient_form(const FiniteQuadraticForm& f, const std::vector<FqfElement>& kernel_gens);

// Nikulin's existence criterion for a primitive embedding into 2E8 + 3U.
bool embeds_primitively_in_L(const GenusDescriptor& g);

// discr(S_h) = discr(S) + <1/2>; kernel elements of discr(S) are extended by a
// zero h-coordinate.
FiniteQuadraticForm discr_sh(const FiniteQuadraticForm& discr_s);

// Genus of the transcendental lattice of the extension of S_h by K.
GenusDescriptor transcendental_genus(const SingularitySet& s, const ExtensionKernel& k);
GenusDescriptor transcendental_genus_from_disc(int mu, const FiniteQuadraticForm& disc_ext);

// Discriminant form of the extended lattice \tilde S_h for kernel K.
FiniteQuadraticForm extension_disc(const SingularitySet& s, const ExtensionKernel& k);

// All order-n isotropic cyclic kernels with no new roots, up to the action of
// sym_prime_generators and -id; n odd.
std::vector<ExtensionKernel> kernel_candidates(const SingularitySet& s, i64 n);

// Isotropic subgroups of shape (Z/3)^k (k = 2, 3), same conditions, up to the
// same action.
std::vector<ExtensionKernel> kernel_candidates_3k(const SingularitySet& s, int k);

// Torus admissibility: weight criterion + the (asserted unique) beta orbit.
struct TorusAdmissibility {
  bool admissible = false;
  std::optional<ExtensionKernel> beta;
  std::vector<int> inner_components;  // indices into s.parts
};
TorusAdmissibility torus_admissible(const SingularitySet& s);

}  // namespace atlas

#endif

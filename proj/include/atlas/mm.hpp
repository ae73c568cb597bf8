#ifndef ATLAS_MM_HPP
#define ATLAS_MM_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "atlas/fqf.hpp"
#include "atlas/nikulin.hpp"

namespace atlas {

// Raised when a genus falls outside the supported cases (more than two
// irregular primes, or the technical 2-adic inclusion fails while needed).
struct UnsupportedCase : std::runtime_error {
  explicit UnsupportedCase(const std::string& what) : std::runtime_error(what) {}
};

// Elements of Gamma_0 = {+-1} x {+-1}, encoded 0..3: bit0 = first coordinate
// negative, bit1 = second coordinate negative. Subgroups as 4-bit masks.
using Gamma0Elt = int;
using Gamma0Mask = unsigned;

constexpr Gamma0Elt kGammaId = 0;
constexpr Gamma0Elt kGammaMM = 3;  // (-1,-1)
constexpr Gamma0Mask kGamma0Full = 0xF;
constexpr Gamma0Mask kGamma0MM = (1u << 0) | (1u << 3);

Gamma0Elt gamma0_mul(Gamma0Elt a, Gamma0Elt b);
Gamma0Mask gamma0_closure(Gamma0Mask gens);
Gamma0Mask gamma0_product(Gamma0Mask a, Gamma0Mask b);
int gamma0_mask_size(Gamma0Mask m);

// Elements of Gamma_{2,0} = {+-1} x (Z/8)^x, encoded 0..7:
// index = (s<0)*4 + (u-1)/2 for u in {1,3,5,7}.
using Gamma2Elt = int;
using Gamma2Mask = unsigned;  // 8-bit mask

Gamma2Elt gamma2_make(int s, i64 u);
Gamma2Elt gamma2_mul(Gamma2Elt a, Gamma2Elt b);
Gamma2Mask gamma2_closure(Gamma2Mask gens);
int gamma2_mask_size(Gamma2Mask m);

struct SigmaInvariants {
  i64 p = 0;
  int e_p = 1;
  Gamma0Mask sigma_tilde = kGamma0Full;
  bool gamma22_contained = true;  // meaningful for p = 2 only
  // the sharp group itself: for odd p as a Gamma0-style mask (second
  // coordinate via chi_p); for p = 2 as a Gamma2Mask
  Gamma0Mask sharp_odd = kGamma0Full;
  Gamma2Mask sharp2 = 0xFF;
};

// Sigma^sharp / e_p / tilde-Sigma_p of the p-adic localization of a genus.
SigmaInvariants sigma_invariants(const GenusDescriptor& g, i64 p);

// A value of the Miranda-Morrison homomorphism e (or e_+): components for up
// to two irregular primes plus a Gamma0-quotient coset.
struct EValue {
  int mp = 0;      // E_p component (0/1)
  int mq = 0;      // E_q component (0/1)
  int quot = 0;    // coset index in the quotient part (0/1 against a fixed
                   // nontrivial coset; quotient of dim <= 2 uses 2 bits)
  bool operator==(const EValue& o) const { return mp == o.mp && mq == o.mq && quot == o.quot; }
  bool operator<(const EValue& o) const {
    if (mp != o.mp) return mp < o.mp;
    if (mq != o.mq) return mq < o.mq;
    return quot < o.quot;
  }
  bool is_zero() const { return mp == 0 && mq == 0 && quot == 0; }
  EValue add(const EValue& o) const;  // F2-module addition (quot uses xor of coset bits)
};

class EModule {
 public:
  // order of the group (always a power of 2; 1 = trivial)
  i64 order() const { return order_; }
  bool trivial() const { return order_ == 1; }
  const std::vector<i64>& irregular_primes() const { return irregular_; }

  // value of e (or e_+) on the reflection in a mirror with data (r, k, m);
  // the mirror lives on the T side.
  EValue eval_mirror(const MirrorData& md) const;
  // value on a product of mirrors given by their q-values on the T side
  EValue eval_mirrors(const std::vector<Rat>& q_values_on_T) const;

  bool plus_variant = false;

  // introspection for reports/tests
  std::string describe() const;
  int ep_dim(i64 p) const;  // dim of the E_p (or E_p^+) factor
  int quot_dim() const { return quot_dim_; }

 private:
  friend EModule e_group(const GenusDescriptor& g, const std::string& tag);
  friend EModule e_plus_group(const GenusDescriptor& g, const std::string& tag);

  i64 order_ = 1;
  std::vector<i64> irregular_;
  std::vector<SigmaInvariants> si_;  // for the irregular primes (<= 2)
  std::vector<int> ep_nontrivial_;   // parallel to irregular_
  Gamma0Mask quot_sub_ = kGamma0Full;  // subgroup to quotient Gamma0 (or Gamma0--) by
  int quot_dim_ = 0;
  bool quot_on_mm_ = false;  // quotient of Gamma0-- rather than Gamma0
  std::string tag_;
};

// E(N) with structure (throws UnsupportedCase when the structure lemmas do
// not apply and the group is nontrivial). `tag` names the offending object.
EModule e_group(const GenusDescriptor& g, const std::string& tag);
EModule e_plus_group(const GenusDescriptor& g, const std::string& tag);

// |E(N)| by the order formula alone (no structure hypotheses).
i64 e_order(const GenusDescriptor& g);
i64 e_plus_order(const GenusDescriptor& g);

// Mirror norms from mirror data: |xi|_p and delta_p.
int mirror_abs_p(const MirrorData& md, i64 p);  // throws on the undefined case
int mirror_delta_p(const MirrorData& md, i64 p);

// det_+ of a reflection, via the descent (hypotheses checked).
int det_plus_of_mirror(const GenusDescriptor& g, i64 p, const MirrorData& md);

// Intersection of all tilde-Sigma_p (the group tilde-Sigma(N)).
Gamma0Mask sigma_tilde_global(const GenusDescriptor& g);

// Mirror data of an element with the given q-value (on the T side); the
// element order is implied by the reduced denominator.
std::optional<MirrorData> mirror_from_q(const Rat& q_on_T);

}  // namespace atlas

#endif

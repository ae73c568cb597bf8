#ifndef ATLAS_FQF_HPP
#define ATLAS_FQF_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atlas/rat.hpp"
#include "atlas/snf.hpp"

namespace atlas {

struct FqfElement {
  std::vector<i64> coords;  // one per generator, reduced mod generator order
};

struct FqfAutomorphism {
  IMat matrix;  // column j = image of generator j
};

// Data of a mirror element: p^k * xi = 0 and xi^2 = 2m/p^k mod 2Z, gcd(m,p)=1.
struct MirrorData {
  i64 p = 0;
  int k = 0;
  i64 m = 0;
};

// abs_p absent encodes the undefined |xi|_2 case (p = 2, xi^2 = 0 mod Z).
struct MirrorNorms {
  std::optional<int> abs_p;
  int delta_p = 1;
};

struct LengthDet {
  int length = 0;
  // Unit u with det_p = u / |F_p|; absent iff p = 2 and the 2-part is odd.
  std::optional<i64> det_unit;
};

// One scale of a p-adic Jordan decomposition. For p odd every summand at
// scale p^k is cyclic <2a/p^k>; `odd_units` lists the units a mod p^k.
// For p = 2 `odd_units` lists c (odd, mod 2^{k+1}) for summands <c/2^k>,
// and n_u / n_v count the even blocks u_k / v_k.
struct JordanScale {
  int k = 0;
  std::vector<i64> odd_units;
  int n_u = 0;
  int n_v = 0;

  int rank() const { return (int)odd_units.size() + 2 * (n_u + n_v); }
};

struct JordanDecomposition {
  i64 p = 0;
  std::vector<JordanScale> scales;  // increasing k, k >= 1, nonempty scales only
  int length() const;
};

// Nondegenerate finite quadratic form on a finite abelian group, presented by
// generators g_i of order n_i with values q(g_i) mod 2Z (diagonal) and
// b(g_i, g_j) mod Z (off-diagonal).
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() = default;  // trivial form
  FiniteQuadraticForm(std::vector<i64> orders, QMat values);

  // Group presented as Z^n / (relations * Z^n), with the value matrix given
  // on the abstract generators. Reduced to invariant-factor form.
  static FiniteQuadraticForm from_presentation(const IMat& relations, const QMat& values);

  int ngens() const { return (int)orders_.size(); }
  const std::vector<i64>& orders() const { return orders_; }
  i64 order_of_generator(int i) const { return orders_[i]; }
  i64 group_order() const;
  i64 exponent() const;
  const QMat& values() const { return values_; }

  bool is_trivial() const { return orders_.empty(); }
  bool is_nondegenerate() const;
  bool is_even() const;

  std::vector<i64> reduce(std::vector<i64> x) const;
  i64 element_order(const FqfElement& x) const;
  Rat q(const FqfElement& x) const;                        // in [0,2)
  Rat b(const FqfElement& x, const FqfElement& y) const;   // in [0,1)

  // All elements (coordinate enumeration); use only on small groups.
  std::vector<FqfElement> all_elements() const;
  // Elements of order exactly n with q = 0 mod 2Z.
  std::vector<FqfElement> isotropic_elements(i64 n) const;

  FiniteQuadraticForm negate() const;

  // Primary decomposition.
  std::vector<i64> primes() const;
  FiniteQuadraticForm primary_part(i64 p) const;

  // p-adic Jordan form, computed once and cached.
  const JordanDecomposition& jordan(i64 p) const;

  LengthDet length_and_det(i64 p) const;
  int length(i64 p) const;

  // Brown invariant mod 8 (additive over orthogonal sums).
  int brown() const;

  std::optional<MirrorData> is_mirror(const FqfElement& xi) const;
  FqfAutomorphism reflection(const FqfElement& xi) const;
  MirrorNorms norms_of_mirror(const FqfElement& xi, i64 p) const;

  // Automorphism helpers.
  bool is_valid_automorphism(const FqfAutomorphism& a) const;
  FqfElement apply(const FqfAutomorphism& a, const FqfElement& x) const;
  FqfAutomorphism compose(const FqfAutomorphism& a, const FqfAutomorphism& b) const;  // a after b
  FqfAutomorphism identity_automorphism() const;
  FqfAutomorphism minus_identity() const;
  bool automorphism_equal(const FqfAutomorphism& a, const FqfAutomorphism& b) const;

  // Isomorphism test via complete scale/Gauss-sum invariants.
  bool isomorphic_to(const FiniteQuadraticForm& other) const;

  std::string render() const;  // canonical <a/b> + u_k/v_k text
  static FiniteQuadraticForm parse(const std::string& text);

 private:
  std::vector<i64> orders_;  // invariant factors or per-generator orders
  QMat values_;
  mutable std::map<i64, JordanDecomposition> jordan_cache_;

  void canonicalize_values();
};

FiniteQuadraticForm orthogonal_sum(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g);

// Convenience constructor for a single cyclic summand <num/den>.
FiniteQuadraticForm cyclic_form(i64 num, i64 den);

}  // namespace atlas

#endif

#ifndef ATLAS_ROOTS_HPP
#define ATLAS_ROOTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "atlas/fqf.hpp"
#include "atlas/lattice.hpp"

namespace atlas {

enum class RootKind { A, D, E };

struct RootType {
  RootKind kind = RootKind::A;
  int n = 1;  // index; rank equals n

  int rank() const { return n; }
  // w(A_{3p-1}) = p, w(E6) = 2, else 0
  int weight() const;
  std::string str() const;

  bool operator==(const RootType& o) const { return kind == o.kind && n == o.n; }
  bool operator<(const RootType& o) const;
};

// Multiset of ADE types; canonical order E > D > A, index descending.
struct SingularitySet {
  std::vector<RootType> parts;               // sorted canonically
  std::vector<int> inner;                    // indices into parts: torus-inner marking (display only)

  int mu() const;
  int weight() const;
  std::string spec() const;                  // canonical rendering, with parens if inner nonempty
  std::string spec_plain() const;            // without inner parens
  bool same_parts(const SingularitySet& o) const { return parts == o.parts; }
  bool operator==(const SingularitySet& o) const { return parts == o.parts; }
  bool operator<(const SingularitySet& o) const { return parts < o.parts; }

  void canonicalize();
};

SingularitySet parse_set_spec(const std::string& text);
SingularitySet make_set(std::vector<RootType> parts);

// Negative definite Gram matrix of one ADE component / of a whole set.
IntegerLattice gram_of(const RootType& t);
IntegerLattice gram_of(const SingularitySet& s);

// Closed-form discriminant of one component (validated against gram_of).
// Generators: A_n: [g]; D_even: [s, v]; D_odd: [s]; E6, E7: [g]; E8: none.
FiniteQuadraticForm discr_component(const RootType& t);
int discr_component_ngens(const RootType& t);

// Discriminant of the set, as the orthogonal sum of component blocks;
// gen_offset[i] = index of component i's first generator.
struct SetDiscriminant {
  FiniteQuadraticForm form;
  std::vector<int> gen_offset;
};
SetDiscriminant discr_of_set(const SingularitySet& s);

// Minimal |v^2| over dual vectors in a discriminant coset of one component.
// The coset is given by the coordinates on the component's generators.
Rat coset_min_norm(const RootType& t, const std::vector<i64>& cls);

// Total coset minimum of a class of discr(S): sum of per-component minima.
Rat coset_min_norm_total(const SingularitySet& s, const SetDiscriminant& d, const FqfElement& x);

// Generators of Im[O(S) -> Aut(discr S)]: per-component Dynkin symmetries and
// transpositions of isomorphic components. mirror_q lists q-values of a
// reflection factorization (on discr S); empty only if no factorization was
// found in the ambient 2-part search.
struct SymGenerator {
  enum class Kind { Flip, Rotation, Swap };
  Kind kind = Kind::Flip;
  int comp_a = -1, comp_b = -1;
  FqfAutomorphism action;
  std::vector<Rat> mirror_q;
  std::string label;
};
std::vector<SymGenerator> sym_prime_generators(const SingularitySet& s);
std::vector<SymGenerator> sym_prime_generators(const SingularitySet& s, const SetDiscriminant& d);

}  // namespace atlas

#endif

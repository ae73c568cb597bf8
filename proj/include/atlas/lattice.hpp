#ifndef ATLAS_LATTICE_HPP
#define ATLAS_LATTICE_HPP

#include "atlas/fqf.hpp"
#include "atlas/snf.hpp"

namespace atlas {

// Integer lattice given by its Gram matrix.
struct IntegerLattice {
  IMat gram;

  int rank() const { return (int)gram.size(); }
  bool is_even() const;
  i64 det() const;
  Signature signature() const;
  bool is_nondegenerate() const { return det() != 0; }

  // Discriminant form of a nondegenerate even lattice.
  FiniteQuadraticForm discriminant_form() const;
};

IntegerLattice lattice_direct_sum(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice diagonal_lattice(const std::vector<i64>& entries);

}  // namespace atlas

#endif

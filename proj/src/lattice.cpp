#include "atlas/lattice.hpp"

#include <stdexcept>

namespace atlas {

bool IntegerLattice::is_even() const {
  for (int i = 0; i < rank(); ++i)
    if (gram[i][i] % 2 != 0) return false;
  return true;
}

i64 IntegerLattice::det() const {
  Rat d = qmat_det(qmat_from_imat(gram));
  if (!d.is_integer()) throw std::logic_error("lattice det not integral");
  return d.num;
}

Signature IntegerLattice::signature() const { return symmetric_signature(qmat_from_imat(gram)); }

FiniteQuadraticForm IntegerLattice::discriminant_form() const {
  if (!is_even()) throw std::domain_error("discriminant form: lattice must be even");
  if (rank() == 0) return FiniteQuadraticForm();
  if (det() == 0) throw std::domain_error("discriminant form: degenerate lattice");
  // group = Z^n / G Z^n in dual coordinates; q(y) = y^T G^{-1} y
  QMat ginv = qmat_inverse(qmat_from_imat(gram));
  return FiniteQuadraticForm::from_presentation(gram, ginv);
}

IntegerLattice lattice_direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
  int n = a.rank(), m = b.rank();
  IMat g(n + m, std::vector<i64>(n + m, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = a.gram[i][j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g[n + i][n + j] = b.gram[i][j];
  return {g};
}

IntegerLattice diagonal_lattice(const std::vector<i64>& entries) {
  int n = (int)entries.size();
  IMat g(n, std::vector<i64>(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = entries[i];
  return {g};
}

}  // namespace atlas

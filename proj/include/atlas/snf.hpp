#ifndef ATLAS_SNF_HPP
#define ATLAS_SNF_HPP

#include <vector>

#include "atlas/rat.hpp"

namespace atlas {

using IMat = std::vector<std::vector<i64>>;
using QMat = std::vector<std::vector<Rat>>;

IMat identity_imat(int n);
IMat imat_mul(const IMat& a, const IMat& b);

// Smith normal form: U * A * V = D with U, V unimodular and D diagonal,
// d_1 | d_2 | ... (nonnegative). Throws on 64-bit overflow.
struct SmithResult {
  IMat u, v, d;
};
SmithResult smith_normal_form(const IMat& a);

// Exact inverse of a nonsingular rational matrix (Gauss-Jordan).
QMat qmat_inverse(const QMat& a);
QMat qmat_from_imat(const IMat& a);
Rat qmat_det(QMat a);

// Signature (n_plus, n_minus) of a symmetric rational matrix, by congruence
// diagonalization; requires nondegeneracy only in the zero-count sense.
struct Signature {
  int plus = 0, minus = 0, zero = 0;
};
Signature symmetric_signature(QMat a);

}  // namespace atlas

#endif

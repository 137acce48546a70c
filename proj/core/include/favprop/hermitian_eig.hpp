#pragma once

#include <vector>

#include "favprop/complex_matrix.hpp"

namespace favprop {

// Eigenvalues of a Hermitian matrix in ascending order.
//
// Cyclic Jacobi with complex plane rotations, run until the off-diagonal
// Frobenius mass drops below 1e-12 of the diagonal mass. Intended for the
// small (tens by tens) Gramians this project works with; no attempt is made
// to be competitive for large n.
//
// Throws std::invalid_argument if the matrix is not square or not Hermitian
// (relative asymmetry above 1e-10).
std::vector<double> hermitian_eigenvalues(CMatrix a);

}  // namespace favprop

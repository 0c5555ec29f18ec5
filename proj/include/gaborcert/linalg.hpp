#pragma once

#include <Eigen/Dense>

#include "gaborcert/window.hpp"

namespace gaborcert {

using CMatrix = Eigen::MatrixXcd;

// LU with partial pivoting.
cplx determinant(const CMatrix& m);

struct SingularExtremes {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

// Smallest/largest singular value by QR-preconditioned two-sided Jacobi SVD
// (accurate small singular values). For a tall
// matrix sigma_min is min ||Av|| / ||v||; an empty matrix gives {0, 0}.
SingularExtremes singular_extremes(const CMatrix& m);

}  // namespace gaborcert

#include "gaborcert/linalg.hpp"

#include <Eigen/SVD>

namespace gaborcert {

cplx determinant(const CMatrix& m) {
  if (m.rows() == 0) return {1.0, 0.0};
  return Eigen::PartialPivLU<CMatrix>(m).determinant();
}

SingularExtremes singular_extremes(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  // BDCSVD loses small singular values of these sparse sections (observed
  // relative errors near 1 at ~180 columns), so Jacobi is used at every size.
  const Eigen::VectorXd sv = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  SingularExtremes out;
  out.sigma_max = sv(0);
  // A wide matrix has a nontrivial kernel.
  out.sigma_min = m.rows() < m.cols() ? 0.0 : sv(sv.size() - 1);
  return out;
}

}  // namespace gaborcert

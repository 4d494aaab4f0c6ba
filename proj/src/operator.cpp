#include "heisenlab/operator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace heisenlab {

SingularSpectrum singular_values(const ComplexOperator& a) {
  SingularSpectrum s;
  if (a.size() == 0) return s;
  // Two pivoted QR passes leave a near-diagonal factor with the same singular
  // values, which one-sided Jacobi then finishes in a few sweeps. BDCSVD in
  // Eigen 3.4.0 misplaces clustered singular values, so it is not used.
  Eigen::ColPivHouseholderQR<ComplexOperator> q1(a);
  const ComplexOperator r1 = q1.matrixR().topRows(std::min(a.rows(), a.cols())).triangularView<Eigen::Upper>();
  Eigen::ColPivHouseholderQR<ComplexOperator> q2(r1.adjoint());
  const ComplexOperator r2 = q2.matrixR().topRows(std::min(r1.rows(), r1.cols())).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<ComplexOperator> svd(r2);
  const auto& sv = svd.singularValues();
  s.values.resize(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) s.values[i] = std::max(0.0, sv[i]);
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

double hs_norm(const ComplexOperator& a) { return a.norm(); }

std::complex<double> trace(const ComplexOperator& a) { return a.trace(); }

double op_norm(const ComplexOperator& a) {
  if (a.size() == 0) return 0.0;
  // Largest eigenvalue of A*A; accurate at the top of the spectrum.
  const ComplexOperator g = a.rows() >= a.cols() ? ComplexOperator(a.adjoint() * a) : ComplexOperator(a * a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trace_norm(const ComplexOperator& a) {
  double total = 0;
  for (double v : singular_values(a).values) total += v;
  return total;
}

std::complex<double> hs_inner(const ComplexOperator& a, const ComplexOperator& b) {
  // tr(B* A) = sum_{ij} conj(B_ij) A_ij
  return (b.conjugate().cwiseProduct(a)).sum();
}

HsFactors hs_factorize(const ComplexOperator& a) {
  Eigen::JacobiSVD<ComplexOperator> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv[0] : 0.0;
  Eigen::VectorXd root = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] > kRankCutoff * smax) root[k] = std::sqrt(sv[k]);
  const auto k = sv.size();
  HsFactors f;
  f.left = svd.matrixU().leftCols(k) * root.asDiagonal();
  f.right = root.asDiagonal() * svd.matrixV().leftCols(k).adjoint();
  return f;
}

}  // namespace heisenlab

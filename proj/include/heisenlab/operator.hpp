#pragma once

// Dense operators on L2(G). Under counting measure the point masses are an
// orthonormal basis, so the Frobenius norm is the Hilbert-Schmidt norm and
// the matrix trace is the operator trace.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace heisenlab {

using ComplexOperator = Eigen::MatrixXcd;

/// Singular values below this fraction of the largest are treated as zero.
inline constexpr double kRankCutoff = 1e-12;

struct SingularSpectrum {
  std::vector<double> values;  // nonincreasing, clamped at 0
};

SingularSpectrum singular_values(const ComplexOperator& a);

double hs_norm(const ComplexOperator& a);
std::complex<double> trace(const ComplexOperator& a);
double op_norm(const ComplexOperator& a);
double trace_norm(const ComplexOperator& a);

/// <A, B> = tr(B* A).
std::complex<double> hs_inner(const ComplexOperator& a, const ComplexOperator& b);

/// Balanced Hilbert-Schmidt factorization A = B C from the SVD
/// A = U S V*: B = U S^{1/2}, C = S^{1/2} V*.
struct HsFactors {
  ComplexOperator left;
  ComplexOperator right;
};
HsFactors hs_factorize(const ComplexOperator& a);

}  // namespace heisenlab

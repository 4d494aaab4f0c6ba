#pragma once

// Pseudo-differential operators with operator-valued symbols on H(G):
//   (T_sigma f)(p) = sum_j tr(rho_j(p)^* sigma(p, j) f_hat(j)).
//
// T_sigma only sees the nonzero modes, so assembled operators act on grid
// functions as T_sigma o P, with P the orthogonal projector onto the span of
// the configured modes. Grid weights are uniform, so matrix norms, traces and
// singular values of the assembled matrix are those of the operator on
// L2(H(G)).
//
// Kernel convention: an operator with kernel k acts as
//   (K f)(p) = sum_q w k(p, q) f(q),
// i.e. its matrix is w * k.

#include <vector>

#include "heisenlab/heisenberg.hpp"
#include "heisenlab/weyl.hpp"

namespace heisenlab {

/// sigma(p, j) for every grid point p and every mode of the space.
class OperatorSymbolField {
 public:
  explicit OperatorSymbolField(const HeisenbergSpace& space);  // zero field
  static OperatorSymbolField identity(const HeisenbergSpace& space);

  int points() const { return points_; }
  int order() const { return order_; }
  const std::vector<int>& modes() const { return modes_; }

  ComplexOperator& at(int point, int j) { return ops_[slot(point, j)]; }
  const ComplexOperator& at(int point, int j) const { return ops_[slot(point, j)]; }

 private:
  int slot(int point, int j) const;

  int order_;
  int points_;
  std::vector<int> modes_;
  std::vector<ComplexOperator> ops_;
};

/// T_sigma f at every grid point. Rejects a nonzero zero mode and modes
/// outside the field.
Vector apply_pdo(const HeisenbergSpace& space, const OperatorSymbolField& sigma, const HFunction& f);
cplx apply_pdo_at(const HeisenbergSpace& space, const OperatorSymbolField& sigma, const HFunction& f,
                  int point);

/// Matrix of T_sigma o P on grid values, assembled entry by entry.
ComplexOperator assemble_pdo(const HeisenbergSpace& space, const OperatorSymbolField& sigma);

/// Orthogonal projector onto the band-limited, zero-mean subspace.
ComplexOperator band_projector(const HeisenbergSpace& space);

struct L2BoundCheck {
  double bound = 0;
  double op_norm = 0;
  bool holds = true;  // op_norm <= bound + 1e-10
};
double l2_bound_value(const HeisenbergSpace& space, const OperatorSymbolField& sigma);
L2BoundCheck l2_bound(const HeisenbergSpace& space, const OperatorSymbolField& sigma);

/// f_p with f_p_hat(j) = sigma(p, j)^* rho_j(p), as a mode stack.
HFunction recovery_probe(const HeisenbergSpace& space, const OperatorSymbolField& sigma, int point);

struct RecoveryValues {
  cplx lhs;     // (T_sigma f_p)(p)
  double rhs;   // sum_j ||sigma(p, j)||_HS^2
};
RecoveryValues recovery_diagnostic(const HeisenbergSpace& space, const OperatorSymbolField& sigma,
                                   int point);

/// alpha(p) for every grid point p; each alpha(p) is a function on H(G).
using AlphaField = std::vector<HFunction>;

/// Grid values alpha(p)(q) as a matrix indexed [p, q].
Eigen::MatrixXcd alpha_values(const HeisenbergSpace& space, const AlphaField& alpha);
/// Rows of `values` as functions of q, keeping the given modes.
AlphaField alpha_from_values(const HeisenbergSpace& space, const Eigen::MatrixXcd& values,
                             const std::vector<int>& modes);
/// sum_p w ||alpha(p)||^2 over grid values.
double alpha_norm_sq(const HeisenbergSpace& space, const AlphaField& alpha);

/// sigma(p, j) = C_j rho_j(p) W^j(alpha(p)^{-j}).
OperatorSymbolField hs_symbol_from_alpha(const HeisenbergSpace& space, const AlphaField& alpha);

/// Kernel of T_sigma for the symbol above:
///   k(p, (x', chi', theta')) = sum_j chi'(-x')^j alpha(p)^{-j}(-x', 1/chi') theta'^j.
Eigen::MatrixXcd pdo_kernel_from_alpha(const HeisenbergSpace& space, const AlphaField& alpha);
/// chi'(-x') alpha(p)(-x', chi', theta'). Agrees with the kernel above when
/// every character is real and every mode is odd (e.g. G = Z_2).
Eigen::MatrixXcd pdo_kernel_variant(const HeisenbergSpace& space, const AlphaField& alpha);
/// Inverse of pdo_kernel_from_alpha on band-limited kernels.
AlphaField alpha_from_pdo_kernel(const HeisenbergSpace& space, const Eigen::MatrixXcd& kernel);

ComplexOperator kernel_operator(const HeisenbergSpace& space, const Eigen::MatrixXcd& kernel);

/// alpha(p)(q) = sum_r w alpha1(p)(r) alpha2(r)(q).
AlphaField compose_alpha(const HeisenbergSpace& space, const AlphaField& alpha1, const AlphaField& alpha2);

struct TracePdoReport {
  cplx direct;              // tr(T_sigma o P)
  cplx kernel_diagonal;     // sum_p w k(p, p)
  cplx reflected_diagonal;  // sum_p w conj(chi(x)) alpha(p)(-x, chi, theta)
  cplx plain_diagonal;      // sum_p w alpha(p)(p)
};
TracePdoReport trace_pdo_report(const HeisenbergSpace& space, const AlphaField& alpha);
TracePdoReport trace_pdo_report(const HeisenbergSpace& space, const AlphaField& alpha1,
                                const AlphaField& alpha2);

struct TraceClassCheck {
  double trace_norm = 0;
  double hs_norm_left = 0;   // plain integral operator with kernel alpha1
  double hs_norm_right = 0;  // T for alpha2
  double factorization_residual = 0;
  cplx trace_direct;
  cplx trace_of_factors;
};
TraceClassCheck trace_class_check(const HeisenbergSpace& space, const AlphaField& alpha1,
                                  const AlphaField& alpha2);

/// alpha1 = kernel of P, alpha2 with T(alpha2) = P, so T(compose) = P.
std::pair<AlphaField, AlphaField> projector_alphas(const HeisenbergSpace& space);

}  // namespace heisenlab

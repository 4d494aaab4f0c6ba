#pragma once

// j-Weyl transform on L2(G x dual(G)).
//
// W^j_sigma = sum_{x,chi} w sigma(x, chi) rho_j(x, chi, 1) is the integral
// operator (W phi)(y) = sum_x K(x, y) phi(x) with kernel
//   K(x, y) = sum_chi w_dual sigma(x - y, chi) chi(y)^j.
// Matrix layout is M[y, x] = K(x, y) (row = output point).
//
// The twisted convolution and adjoint symbol use the phases forced by
//   rho_j(a, alpha, 1) rho_j(b, beta, 1) = beta(a)^j rho_j(a + b, alpha beta, 1),
//   rho_j(p)^* = rho_j(p^{-1}),
// so that W^j is an isomorphism of *-algebras. The `_variant` functions
// evaluate the alternative formulas that drop the j-power and the inversion of
// the character argument; they are kept for comparison only.

#include "heisenlab/heisenberg.hpp"

namespace heisenlab {

using WeylKernel = Eigen::MatrixXcd;  // K(x, y) at (x, y)

WeylKernel weyl_kernel(const GroupContext& ctx, const ScalarSymbol& sigma, int j);

/// Kernel route.
ComplexOperator weyl_matrix(const GroupContext& ctx, const ScalarSymbol& sigma, int j);
/// Representation-sum route: sum_{x,chi} w sigma(x, chi) rho_j(x, chi, 1).
ComplexOperator weyl_matrix_by_representation(const GroupContext& ctx, const ScalarSymbol& sigma, int j);

/// The unique sigma with weyl_matrix(sigma, j) == m.
ScalarSymbol weyl_inverse(const GroupContext& ctx, const ComplexOperator& m, int j);

/// (f x_j g)(x, chi) = sum w f(x', chi') g(x - x', chi/chi') [(chi/chi')(x')]^j.
ScalarSymbol twisted_conv(const GroupContext& ctx, const ScalarSymbol& f, const ScalarSymbol& g, int j);
/// Same sum with the factor conj(chi(x'))^j.
ScalarSymbol twisted_conv_variant(const GroupContext& ctx, const ScalarSymbol& f, const ScalarSymbol& g,
                                  int j);

/// lambda~(x, chi) = chi(x)^j conj(lambda(-x, chi^{-1})), so W(lambda~) = W(lambda)^*.
ScalarSymbol adjoint_symbol(const GroupContext& ctx, const ScalarSymbol& lambda, int j);
/// chi(x) conj(lambda(-x, chi)).
ScalarSymbol adjoint_symbol_variant(const GroupContext& ctx, const ScalarSymbol& lambda, int j);

struct PairingValues {
  cplx lhs;  // tr(W_g^* W_f)
  cplx rhs;  // C^{-1} <f, g>
};
PairingValues hs_pairing_identity(const GroupContext& ctx, const ScalarSymbol& f, const ScalarSymbol& g,
                                  int j);

/// sum_x K(x, x) w_G; always equals the matrix trace. Evaluates to sigma(0, trivial).
cplx trace_weyl_diagonal(const GroupContext& ctx, const ScalarSymbol& sigma, int j);
/// sum w sigma(x, chi); does not equal the trace in general.
cplx trace_weyl_global_formula(const GroupContext& ctx, const ScalarSymbol& sigma);

struct TraceProductReport {
  cplx direct;                 // tr(W_lambda W_tau)
  cplx hs_pairing_route;       // <W_tau, W_lambda^*>_{S2}
  cplx variant_formula;        // C^{-1} sum w tau(x,chi) lambda(-x,chi) conj(chi(x))
  cplx derived_phase_formula;  // C^{-1} <tau, lambda~>
};
TraceProductReport trace_product_report(const GroupContext& ctx, const ScalarSymbol& lambda,
                                        const ScalarSymbol& tau, int j);

struct SymbolFactors {
  ScalarSymbol left;
  ScalarSymbol right;
};
/// sigma = left x_j right, from the SVD factorization of W(sigma).
SymbolFactors factor_symbol(const GroupContext& ctx, const ScalarSymbol& sigma, int j);

}  // namespace heisenlab

#include "heisenlab/weyl.hpp"

namespace heisenlab {

namespace {

void check_order(const GroupContext& ctx, const ScalarSymbol& s) {
  if (s.order() != ctx.order()) throw StructuralError("symbol order does not match group order");
}

void check_operator(const GroupContext& ctx, const ComplexOperator& m) {
  if (m.rows() != ctx.order() || m.cols() != ctx.order())
    throw StructuralError("operator dimension does not match group order");
}

}  // namespace

WeylKernel weyl_kernel(const GroupContext& ctx, const ScalarSymbol& sigma, int j) {
  ctx.require_admissible(j);
  check_order(ctx, sigma);
  const auto& g = ctx.group();
  const int n = g.order();
  // S(u, v): inverse Fourier transform of sigma(u, .) evaluated at v.
  Eigen::MatrixXcd s(n, n);
  for (int u = 0; u < n; ++u) {
    Vector row(n);
    for (int chi = 0; chi < n; ++chi) row[chi] = sigma(u, chi);
    s.row(u) = inverse_fourier_on_G(g, row).transpose();
  }
  WeylKernel k(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) k(x, y) = s(g.sub(x, y), g.dilate(j, y));
  return k;
}

ComplexOperator weyl_matrix(const GroupContext& ctx, const ScalarSymbol& sigma, int j) {
  return weyl_kernel(ctx, sigma, j).transpose() * ctx.measures().group_weight;
}

ComplexOperator weyl_matrix_by_representation(const GroupContext& ctx, const ScalarSymbol& sigma, int j) {
  ctx.require_admissible(j);
  check_order(ctx, sigma);
  const int n = ctx.order();
  const double w = ctx.measures().group_weight * ctx.measures().dual_weight;
  ComplexOperator m = ComplexOperator::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi)
      if (sigma(x, chi) != cplx(0)) m += (w * sigma(x, chi)) * rho_matrix(ctx, j, HPoint{x, chi, 1.0});
  return m;
}

ScalarSymbol weyl_inverse(const GroupContext& ctx, const ComplexOperator& m, int j) {
  ctx.require_admissible(j);
  check_operator(ctx, m);
  const auto& g = ctx.group();
  const int n = g.order();
  const long long jinv = ctx.inverse_mode(j);
  ScalarSymbol sigma(n);
  for (int u = 0; u < n; ++u) {
    Vector s(n);
    for (int v = 0; v < n; ++v) {
      const int y = g.dilate(jinv, v);
      const int x = g.add(u, y);
      s[v] = m(y, x) / ctx.measures().group_weight;
    }
    const Vector row = fourier_on_G(g, s);
    for (int chi = 0; chi < n; ++chi) sigma(u, chi) = row[chi];
  }
  return sigma;
}

namespace {

template <class Phase>
ScalarSymbol twisted_sum(const GroupContext& ctx, const ScalarSymbol& f, const ScalarSymbol& g_sym,
                         Phase phase) {
  check_order(ctx, f);
  check_order(ctx, g_sym);
  const auto& g = ctx.group();
  const int n = g.order();
  const double w = ctx.measures().group_weight * ctx.measures().dual_weight;
  ScalarSymbol out(n);
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi) {
      cplx acc = 0;
      for (int xp = 0; xp < n; ++xp)
        for (int chip = 0; chip < n; ++chip) {
          const cplx a = f(xp, chip);
          if (a == cplx(0)) continue;
          acc += a * g_sym(g.sub(x, xp), g.sub(chi, chip)) * phase(x, chi, xp, chip);
        }
      out(x, chi) = w * acc;
    }
  return out;
}

}  // namespace

ScalarSymbol twisted_conv(const GroupContext& ctx, const ScalarSymbol& f, const ScalarSymbol& g, int j) {
  ctx.require_admissible(j);
  const auto& grp = ctx.group();
  return twisted_sum(ctx, f, g, [&](int, int chi, int xp, int chip) {
    return grp.character_power(grp.sub(chi, chip), xp, j);
  });
}

ScalarSymbol twisted_conv_variant(const GroupContext& ctx, const ScalarSymbol& f, const ScalarSymbol& g,
                                  int j) {
  ctx.require_admissible(j);
  const auto& grp = ctx.group();
  return twisted_sum(ctx, f, g,
                     [&](int, int chi, int xp, int) { return grp.character_power(chi, xp, -j); });
}

ScalarSymbol adjoint_symbol(const GroupContext& ctx, const ScalarSymbol& lambda, int j) {
  ctx.require_admissible(j);
  check_order(ctx, lambda);
  const auto& g = ctx.group();
  const int n = g.order();
  ScalarSymbol out(n);
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi)
      out(x, chi) = g.character_power(chi, x, j) * std::conj(lambda(g.negate(x), g.negate(chi)));
  return out;
}

ScalarSymbol adjoint_symbol_variant(const GroupContext& ctx, const ScalarSymbol& lambda, int j) {
  ctx.require_admissible(j);
  check_order(ctx, lambda);
  const auto& g = ctx.group();
  const int n = g.order();
  ScalarSymbol out(n);
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi)
      out(x, chi) = g.character_value(chi, x) * std::conj(lambda(g.negate(x), chi));
  return out;
}

PairingValues hs_pairing_identity(const GroupContext& ctx, const ScalarSymbol& f, const ScalarSymbol& g,
                                  int j) {
  const ComplexOperator wf = weyl_matrix(ctx, f, j);
  const ComplexOperator wg = weyl_matrix(ctx, g, j);
  return PairingValues{hs_inner(wf, wg), inner(f, g) / ctx.c_constant(j)};
}

cplx trace_weyl_diagonal(const GroupContext& ctx, const ScalarSymbol& sigma, int j) {
  const WeylKernel k = weyl_kernel(ctx, sigma, j);
  return k.diagonal().sum() * ctx.measures().group_weight;
}

cplx trace_weyl_global_formula(const GroupContext& ctx, const ScalarSymbol& sigma) {
  check_order(ctx, sigma);
  return sigma.values().sum() * (ctx.measures().group_weight * ctx.measures().dual_weight);
}

TraceProductReport trace_product_report(const GroupContext& ctx, const ScalarSymbol& lambda,
                                        const ScalarSymbol& tau, int j) {
  const auto& g = ctx.group();
  const int n = g.order();
  const double cinv = 1.0 / ctx.c_constant(j);
  const ComplexOperator wl = weyl_matrix(ctx, lambda, j);
  const ComplexOperator wt = weyl_matrix(ctx, tau, j);

  TraceProductReport r;
  r.direct = trace(wl * wt);
  r.hs_pairing_route = hs_inner(wt, wl.adjoint());
  cplx variant = 0;
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi)
      variant += tau(x, chi) * lambda(g.negate(x), chi) * std::conj(g.character_value(chi, x));
  r.variant_formula = cinv * variant * (ctx.measures().group_weight * ctx.measures().dual_weight);
  r.derived_phase_formula = cinv * inner(tau, adjoint_symbol(ctx, lambda, j));
  return r;
}

SymbolFactors factor_symbol(const GroupContext& ctx, const ScalarSymbol& sigma, int j) {
  const HsFactors f = hs_factorize(weyl_matrix(ctx, sigma, j));
  return SymbolFactors{weyl_inverse(ctx, f.left, j), weyl_inverse(ctx, f.right, j)};
}

}  // namespace heisenlab

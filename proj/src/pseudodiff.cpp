#include "heisenlab/pseudodiff.hpp"

#include <string>

namespace heisenlab {

namespace {

void check_field(const HeisenbergSpace& space, const OperatorSymbolField& sigma) {
  if (sigma.points() != space.size() || sigma.order() != space.order() ||
      sigma.modes() != space.modes().modes())
    throw StructuralError("operator symbol field does not match the space");
}

void check_alpha(const HeisenbergSpace& space, const AlphaField& alpha) {
  if (static_cast<int>(alpha.size()) != space.size())
    throw StructuralError("alpha field needs one function per grid point");
  for (const auto& a : alpha)
    if (a.order() != space.order()) throw StructuralError("alpha field order mismatch");
}

// tr(R^* A) for R = rho_j(p): R[y, x + y] = theta^j chi(y)^j.
cplx trace_rho_adjoint_times(const GroupContext& ctx, int j, const HPoint& p, const ComplexOperator& a) {
  const auto& g = ctx.group();
  const cplx tj = unit_power(p.theta, j);
  cplx s = 0;
  for (int y = 0; y < g.order(); ++y)
    s += std::conj(tj * g.character_power(p.chi, y, j)) * a(y, g.add(p.x, y));
  return s;
}

}  // namespace

OperatorSymbolField::OperatorSymbolField(const HeisenbergSpace& space)
    : order_(space.order()), points_(space.size()), modes_(space.modes().modes()) {
  ops_.assign(static_cast<size_t>(points_) * modes_.size(), ComplexOperator::Zero(order_, order_));
}

OperatorSymbolField OperatorSymbolField::identity(const HeisenbergSpace& space) {
  OperatorSymbolField f(space);
  for (auto& op : f.ops_) op.setIdentity();
  return f;
}

int OperatorSymbolField::slot(int point, int j) const {
  if (point < 0 || point >= points_) throw StructuralError("grid point out of range");
  for (size_t m = 0; m < modes_.size(); ++m)
    if (modes_[m] == j) return static_cast<int>(point * modes_.size() + m);
  throw ModeError("mode " + std::to_string(j) + " not in symbol field");
}

namespace {

GroupFourierCoefficients pdo_input_coefficients(const HeisenbergSpace& space,
                                                const OperatorSymbolField& sigma, const HFunction& f) {
  check_field(space, sigma);
  if (f.order() != space.order()) throw StructuralError("function order mismatch");
  if (f.zero_mode.values().cwiseAbs().maxCoeff() > 0)
    throw ModeError(
        "input has a nonzero zero mode; T_sigma sums over nonzero modes only, so f^0 must vanish");
  GroupFourierCoefficients coeffs;
  for (const auto& [j, fj] : f.modes) {
    if (!space.modes().contains(j))
      throw ModeError("input mode " + std::to_string(j) + " is not in the symbol's mode set");
    coeffs.emplace(j, group_fourier(space, f, j));
  }
  return coeffs;
}

cplx pdo_value(const HeisenbergSpace& space, const OperatorSymbolField& sigma,
               const GroupFourierCoefficients& coeffs, int point) {
  const HPoint p = space.point(point);
  cplx v = 0;
  for (const auto& [j, fhat] : coeffs)
    v += trace_rho_adjoint_times(space.context(), j, p, sigma.at(point, j) * fhat);
  return v;
}

}  // namespace

Vector apply_pdo(const HeisenbergSpace& space, const OperatorSymbolField& sigma, const HFunction& f) {
  const auto coeffs = pdo_input_coefficients(space, sigma, f);
  Vector out(space.size());
  for (int p = 0; p < space.size(); ++p) out[p] = pdo_value(space, sigma, coeffs, p);
  return out;
}

cplx apply_pdo_at(const HeisenbergSpace& space, const OperatorSymbolField& sigma, const HFunction& f,
                  int point) {
  return pdo_value(space, sigma, pdo_input_coefficients(space, sigma, f), point);
}

ComplexOperator assemble_pdo(const HeisenbergSpace& space, const OperatorSymbolField& sigma) {
  check_field(space, sigma);
  const auto& ctx = space.context();
  const auto& g = space.group();
  const auto& theta = space.theta();
  const int n = space.order();
  const int N = theta.size();
  if (N <= 2 * space.modes().max_abs()) throw AliasingError("theta grid too coarse for the mode set");
  const double w = space.weight();

  ComplexOperator a = ComplexOperator::Zero(space.size(), space.size());
  std::vector<cplx> inner_sum(static_cast<size_t>(n) * n);
  for (int p = 0; p < space.size(); ++p) {
    const HPoint pt = space.point(p);
    for (int j : space.modes().modes()) {
      // B = rho_j(p)^* sigma(p, j); tr(B rho_j(x', chi', 1)) = sum_z B[x' + z, z] chi'(z)^j
      const ComplexOperator b = rho_matrix(ctx, j, pt).adjoint() * sigma.at(p, j);
      for (int xp = 0; xp < n; ++xp)
        for (int chip = 0; chip < n; ++chip) {
          cplx s = 0;
          for (int z = 0; z < n; ++z) s += b(g.add(xp, z), z) * g.character_power(chip, z, j);
          inner_sum[xp * n + chip] = s;
        }
      for (int xp = 0; xp < n; ++xp)
        for (int chip = 0; chip < n; ++chip) {
          const cplx s = inner_sum[xp * n + chip] * w;
          for (int k = 0; k < N; ++k) a(p, space.index(xp, chip, k)) += s * theta.node_power(k, j);
        }
    }
  }
  return a;
}

ComplexOperator band_projector(const HeisenbergSpace& space) {
  const int n = space.order();
  const int N = space.theta().size();
  ComplexOperator proj = ComplexOperator::Zero(space.size(), space.size());
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi)
      for (int k = 0; k < N; ++k)
        for (int kp = 0; kp < N; ++kp) {
          cplx s = 0;
          for (int j : space.modes().modes())
            s += space.theta().node_power(k, -j) * space.theta().node_power(kp, j);
          proj(space.index(x, chi, k), space.index(x, chi, kp)) = s / static_cast<double>(N);
        }
  return proj;
}

double l2_bound_value(const HeisenbergSpace& space, const OperatorSymbolField& sigma) {
  check_field(space, sigma);
  double total = 0;
  for (int j : sigma.modes()) {
    const double cinv = 1.0 / space.context().c_constant(j);
    for (int p = 0; p < sigma.points(); ++p) total += space.weight() * cinv * sigma.at(p, j).squaredNorm();
  }
  return std::sqrt(total);
}

L2BoundCheck l2_bound(const HeisenbergSpace& space, const OperatorSymbolField& sigma) {
  L2BoundCheck c;
  c.bound = l2_bound_value(space, sigma);
  c.op_norm = op_norm(assemble_pdo(space, sigma));
  c.holds = c.op_norm <= c.bound + 1e-10;
  return c;
}

HFunction recovery_probe(const HeisenbergSpace& space, const OperatorSymbolField& sigma, int point) {
  check_field(space, sigma);
  const HPoint p = space.point(point);
  HFunction f = HFunction::zero(space.order());
  for (int j : sigma.modes()) {
    const ComplexOperator coeff = sigma.at(point, j).adjoint() * rho_matrix(space.context(), j, p);
    f.modes.emplace(j, weyl_inverse(space.context(), coeff, j));
  }
  return f;
}

RecoveryValues recovery_diagnostic(const HeisenbergSpace& space, const OperatorSymbolField& sigma,
                                   int point) {
  RecoveryValues r;
  r.lhs = apply_pdo_at(space, sigma, recovery_probe(space, sigma, point), point);
  r.rhs = 0;
  for (int j : sigma.modes()) r.rhs += sigma.at(point, j).squaredNorm();
  return r;
}

Eigen::MatrixXcd alpha_values(const HeisenbergSpace& space, const AlphaField& alpha) {
  check_alpha(space, alpha);
  Eigen::MatrixXcd v(space.size(), space.size());
  for (int p = 0; p < space.size(); ++p) v.row(p) = alpha[p].to_grid(space).transpose();
  return v;
}

AlphaField alpha_from_values(const HeisenbergSpace& space, const Eigen::MatrixXcd& values,
                             const std::vector<int>& modes) {
  if (values.rows() != space.size() || values.cols() != space.size())
    throw StructuralError("alpha value matrix does not match the space");
  AlphaField alpha;
  alpha.reserve(space.size());
  for (int p = 0; p < space.size(); ++p) alpha.push_back(from_grid(space, values.row(p).transpose(), modes, false));
  return alpha;
}

double alpha_norm_sq(const HeisenbergSpace& space, const AlphaField& alpha) {
  const double w = space.weight();
  return alpha_values(space, alpha).squaredNorm() * w * w;
}

OperatorSymbolField hs_symbol_from_alpha(const HeisenbergSpace& space, const AlphaField& alpha) {
  check_alpha(space, alpha);
  const auto& ctx = space.context();
  OperatorSymbolField sigma(space);
  for (int p = 0; p < space.size(); ++p) {
    const HPoint pt = space.point(p);
    for (int j : space.modes().modes()) {
      const ScalarSymbol a = mode_extract(space, alpha[p], -j);
      sigma.at(p, j) = ctx.c_constant(j) * rho_matrix(ctx, j, pt) * weyl_matrix(ctx, a, j);
    }
  }
  return sigma;
}

Eigen::MatrixXcd pdo_kernel_from_alpha(const HeisenbergSpace& space, const AlphaField& alpha) {
  check_alpha(space, alpha);
  const auto& g = space.group();
  const int n = space.order();
  const int N = space.theta().size();
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(space.size(), space.size());
  for (int p = 0; p < space.size(); ++p)
    for (int j : space.modes().modes()) {
      const ScalarSymbol a = mode_extract(space, alpha[p], -j);
      for (int xp = 0; xp < n; ++xp)
        for (int chip = 0; chip < n; ++chip) {
          const cplx c = g.character_power(chip, g.negate(xp), j) * a(g.negate(xp), g.negate(chip));
          for (int kk = 0; kk < N; ++kk) k(p, space.index(xp, chip, kk)) += c * space.theta().node_power(kk, j);
        }
    }
  return k;
}

Eigen::MatrixXcd pdo_kernel_variant(const HeisenbergSpace& space, const AlphaField& alpha) {
  const auto& g = space.group();
  const int n = space.order();
  const int N = space.theta().size();
  const Eigen::MatrixXcd values = alpha_values(space, alpha);
  Eigen::MatrixXcd k(space.size(), space.size());
  for (int p = 0; p < space.size(); ++p)
    for (int xp = 0; xp < n; ++xp)
      for (int chip = 0; chip < n; ++chip) {
        const cplx c = g.character_value(chip, g.negate(xp));
        for (int kk = 0; kk < N; ++kk)
          k(p, space.index(xp, chip, kk)) = c * values(p, space.index(g.negate(xp), chip, kk));
      }
  return k;
}

AlphaField alpha_from_pdo_kernel(const HeisenbergSpace& space, const Eigen::MatrixXcd& kernel) {
  if (kernel.rows() != space.size() || kernel.cols() != space.size())
    throw StructuralError("kernel does not match the space");
  const auto& g = space.group();
  const int n = space.order();
  AlphaField alpha;
  alpha.reserve(space.size());
  for (int p = 0; p < space.size(); ++p) {
    const Vector row = kernel.row(p).transpose();
    HFunction a = HFunction::zero(n);
    for (int j : space.modes().modes()) {
      const ScalarSymbol c = mode_extract(space, row, -j);
      ScalarSymbol m(n);
      for (int u = 0; u < n; ++u)
        for (int psi = 0; psi < n; ++psi)
          m(u, psi) = c(g.negate(u), g.negate(psi)) * g.character_power(psi, u, j);
      a.modes.emplace(-j, std::move(m));
    }
    alpha.push_back(std::move(a));
  }
  return alpha;
}

ComplexOperator kernel_operator(const HeisenbergSpace& space, const Eigen::MatrixXcd& kernel) {
  return kernel * space.weight();
}

AlphaField compose_alpha(const HeisenbergSpace& space, const AlphaField& alpha1, const AlphaField& alpha2) {
  check_alpha(space, alpha1);
  check_alpha(space, alpha2);
  const int n = space.order();
  const int nn = n * n;
  // Modes present anywhere in alpha2.
  std::vector<int> modes;
  for (const auto& a : alpha2)
    for (const auto& [j, _] : a.modes)
      if (std::find(modes.begin(), modes.end(), j) == modes.end()) modes.push_back(j);
  std::sort(modes.begin(), modes.end());

  const int cols = static_cast<int>(modes.size() + 1) * nn;  // zero mode last
  Eigen::MatrixXcd stack2(space.size(), cols);
  for (int r = 0; r < space.size(); ++r) {
    for (size_t m = 0; m < modes.size(); ++m) stack2.row(r).segment(m * nn, nn) = alpha2[r].mode(modes[m]).values().transpose();
    stack2.row(r).segment(modes.size() * nn, nn) = alpha2[r].zero_mode.values().transpose();
  }
  const Eigen::MatrixXcd composed = (alpha_values(space, alpha1) * space.weight()) * stack2;

  AlphaField out;
  out.reserve(space.size());
  for (int p = 0; p < space.size(); ++p) {
    HFunction f = HFunction::zero(n);
    for (size_t m = 0; m < modes.size(); ++m)
      f.modes.emplace(modes[m], ScalarSymbol(n, composed.row(p).segment(m * nn, nn).transpose()));
    f.zero_mode = ScalarSymbol(n, composed.row(p).segment(modes.size() * nn, nn).transpose());
    out.push_back(std::move(f));
  }
  return out;
}

TracePdoReport trace_pdo_report(const HeisenbergSpace& space, const AlphaField& alpha) {
  const auto& g = space.group();
  const double w = space.weight();
  TracePdoReport r;
  r.direct = trace(assemble_pdo(space, hs_symbol_from_alpha(space, alpha)));
  r.kernel_diagonal = pdo_kernel_from_alpha(space, alpha).diagonal().sum() * w;
  const Eigen::MatrixXcd values = alpha_values(space, alpha);
  r.plain_diagonal = values.diagonal().sum() * w;
  cplx refl = 0;
  for (int p = 0; p < space.size(); ++p) {
    const int x = space.point_x(p), chi = space.point_chi(p), k = space.point_k(p);
    refl += std::conj(g.character_value(chi, x)) * values(p, space.index(g.negate(x), chi, k));
  }
  r.reflected_diagonal = refl * w;
  return r;
}

TracePdoReport trace_pdo_report(const HeisenbergSpace& space, const AlphaField& alpha1,
                                const AlphaField& alpha2) {
  return trace_pdo_report(space, compose_alpha(space, alpha1, alpha2));
}

TraceClassCheck trace_class_check(const HeisenbergSpace& space, const AlphaField& alpha1,
                                  const AlphaField& alpha2) {
  const ComplexOperator t = assemble_pdo(space, hs_symbol_from_alpha(space, compose_alpha(space, alpha1, alpha2)));
  const ComplexOperator left = kernel_operator(space, alpha_values(space, alpha1));
  const ComplexOperator right = kernel_operator(space, pdo_kernel_from_alpha(space, alpha2));
  const ComplexOperator product = left * right;
  TraceClassCheck c;
  c.trace_norm = trace_norm(t);
  c.hs_norm_left = hs_norm(left);
  c.hs_norm_right = hs_norm(right);
  c.factorization_residual = (t - product).norm();
  c.trace_direct = trace(t);
  c.trace_of_factors = trace(product);
  return c;
}

std::pair<AlphaField, AlphaField> projector_alphas(const HeisenbergSpace& space) {
  const Eigen::MatrixXcd kernel = band_projector(space) / space.weight();
  return {alpha_from_values(space, kernel, space.modes().negated().modes()),
          alpha_from_pdo_kernel(space, kernel)};
}

}  // namespace heisenlab

#include "heisenlab/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace heisenlab {

cplx unit_power(cplx theta, long long j) {
  if (j == 0) return 1.0;
  cplx base = j > 0 ? theta : std::conj(theta);
  unsigned long long e = static_cast<unsigned long long>(j > 0 ? j : -j);
  cplx out = 1.0;
  while (e) {
    if (e & 1ULL) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

ScalarSymbol::ScalarSymbol(int order, Vector values) : order_(order), values_(std::move(values)) {
  if (values_.size() != static_cast<Eigen::Index>(order) * order)
    throw StructuralError("symbol has " + std::to_string(values_.size()) + " values, expected " +
                          std::to_string(order * order));
}

ScalarSymbol ScalarSymbol::unit(int order) {
  ScalarSymbol u(order);
  u(0, 0) = static_cast<double>(order);
  return u;
}

ScalarSymbol& ScalarSymbol::operator+=(const ScalarSymbol& o) {
  if (o.order_ != order_) throw StructuralError("symbol order mismatch");
  values_ += o.values_;
  return *this;
}

ScalarSymbol& ScalarSymbol::operator-=(const ScalarSymbol& o) {
  if (o.order_ != order_) throw StructuralError("symbol order mismatch");
  values_ -= o.values_;
  return *this;
}

ScalarSymbol& ScalarSymbol::operator*=(cplx s) {
  values_ *= s;
  return *this;
}

cplx inner(const ScalarSymbol& f, const ScalarSymbol& g) {
  if (f.order() != g.order()) throw StructuralError("symbol order mismatch");
  return g.values().dot(f.values()) / static_cast<double>(f.order());
}

HPoint h_identity() { return HPoint{0, 0, 1.0}; }

HPoint h_multiply(const FiniteAbelianGroup& g, const HPoint& p, const HPoint& q) {
  return HPoint{g.add(p.x, q.x), g.add(p.chi, q.chi), p.theta * q.theta * g.character_value(q.chi, p.x)};
}

HPoint h_inverse(const FiniteAbelianGroup& g, const HPoint& p) {
  return HPoint{g.negate(p.x), g.negate(p.chi), std::conj(p.theta) * g.character_value(p.chi, p.x)};
}

ComplexOperator rho_matrix(const GroupContext& ctx, long long j, const HPoint& p) {
  ctx.require_admissible(j);
  const auto& g = ctx.group();
  const int n = g.order();
  const cplx tj = unit_power(p.theta, j);
  ComplexOperator m = ComplexOperator::Zero(n, n);
  for (int y = 0; y < n; ++y) m(y, g.add(p.x, y)) = tj * g.character_power(p.chi, y, j);
  return m;
}

ThetaGrid::ThetaGrid(int size) : size_(size) {
  if (size < 1) throw SizeError("theta grid needs at least one node");
  roots_.resize(size);
  for (int k = 0; k < size; ++k) roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / size);
}

cplx ThetaGrid::node_power(int k, long long m) const {
  long long r = (static_cast<long long>(k) * (m % size_)) % size_;
  if (r < 0) r += size_;
  return roots_[r];
}

ModeSet ModeSet::up_to(const GroupContext& ctx, int jmax) {
  if (jmax < 0) throw ModeError("jmax must be nonnegative");
  ModeSet s;
  for (int j = -jmax; j <= jmax; ++j)
    if (j != 0 && ctx.is_admissible_mode(j)) s.modes_.push_back(j);
  return s;
}

ModeSet ModeSet::from_list(const GroupContext& ctx, std::vector<int> modes) {
  std::set<int> unique;
  for (int j : modes) {
    ctx.require_admissible(j);
    unique.insert(j);
  }
  ModeSet s;
  s.modes_.assign(unique.begin(), unique.end());
  return s;
}

int ModeSet::max_abs() const {
  int m = 0;
  for (int j : modes_) m = std::max(m, std::abs(j));
  return m;
}

bool ModeSet::contains(int j) const { return std::binary_search(modes_.begin(), modes_.end(), j); }

int ModeSet::position(int j) const {
  auto it = std::lower_bound(modes_.begin(), modes_.end(), j);
  if (it == modes_.end() || *it != j) throw ModeError("mode " + std::to_string(j) + " not in mode set");
  return static_cast<int>(it - modes_.begin());
}

ModeSet ModeSet::negated() const {
  ModeSet s;
  for (auto it = modes_.rbegin(); it != modes_.rend(); ++it) s.modes_.push_back(-*it);
  return s;
}

HeisenbergSpace::HeisenbergSpace(GroupContext ctx, int n_theta, ModeSet modes)
    : ctx_(std::move(ctx)), theta_(n_theta), modes_(std::move(modes)) {
  if (n_theta <= 2 * modes_.max_abs())
    throw AliasingError("N_theta = " + std::to_string(n_theta) + " must exceed 2 * max|j| = " +
                        std::to_string(2 * modes_.max_abs()));
}

HPoint HeisenbergSpace::point(int idx) const {
  return HPoint{point_x(idx), point_chi(idx), theta_.node(point_k(idx))};
}

ScalarSymbol HFunction::mode(int j) const {
  if (j == 0) return zero_mode;
  auto it = modes.find(j);
  return it == modes.end() ? ScalarSymbol(order()) : it->second;
}

int HFunction::max_abs_mode() const {
  int m = 0;
  for (const auto& [j, _] : modes) m = std::max(m, std::abs(j));
  return m;
}

Vector HFunction::to_grid(const HeisenbergSpace& space) const {
  const int n = space.order();
  const int N = space.theta().size();
  if (order() != n) throw StructuralError("function order does not match space");
  if (N <= 2 * max_abs_mode()) throw AliasingError("theta grid too coarse for this mode stack");
  Vector out(space.size());
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi)
      for (int k = 0; k < N; ++k) {
        cplx v = zero_mode(x, chi);
        for (const auto& [j, fj] : modes) v += fj(x, chi) * space.theta().node_power(k, -j);
        out[space.index(x, chi, k)] = v;
      }
  return out;
}

cplx HFunction::evaluate(const HPoint& p) const {
  cplx v = zero_mode(p.x, p.chi);
  for (const auto& [j, fj] : modes) v += fj(p.x, p.chi) * unit_power(p.theta, -j);
  return v;
}

double HFunction::norm_sq() const {
  double s = zero_mode.norm_sq();
  for (const auto& [j, fj] : modes) s += fj.norm_sq();
  return s;
}

HFunction& HFunction::operator+=(const HFunction& o) {
  zero_mode += o.zero_mode;
  for (const auto& [j, fj] : o.modes) {
    auto [it, inserted] = modes.try_emplace(j, fj);
    if (!inserted) it->second += fj;
  }
  return *this;
}

HFunction& HFunction::operator*=(cplx s) {
  zero_mode *= s;
  for (auto& [j, fj] : modes) fj *= s;
  return *this;
}

ScalarSymbol mode_extract(const HeisenbergSpace& space, const Vector& grid, int j) {
  const int n = space.order();
  const int N = space.theta().size();
  if (grid.size() != space.size()) throw StructuralError("grid function size mismatch");
  if (N <= 2 * std::abs(j))
    throw AliasingError("mode " + std::to_string(j) + " aliases on a grid of " + std::to_string(N) +
                        " nodes");
  ScalarSymbol out(n);
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi) {
      cplx s = 0;
      for (int k = 0; k < N; ++k) s += grid[space.index(x, chi, k)] * space.theta().node_power(k, j);
      out(x, chi) = s / static_cast<double>(N);
    }
  return out;
}

ScalarSymbol mode_extract(const HeisenbergSpace& space, const HFunction& f, int j) {
  if (space.theta().size() <= 2 * std::abs(j))
    throw AliasingError("mode " + std::to_string(j) + " aliases on this grid");
  return f.mode(j);
}

HFunction from_grid(const HeisenbergSpace& space, const Vector& grid, const std::vector<int>& modes,
                    bool with_zero_mode) {
  HFunction f = HFunction::zero(space.order());
  for (int j : modes) {
    if (j == 0) continue;
    f.modes.emplace(j, mode_extract(space, grid, j));
  }
  if (with_zero_mode) f.zero_mode = mode_extract(space, grid, 0);
  return f;
}

ComplexOperator group_fourier(const HeisenbergSpace& space, const HFunction& f, int j) {
  const auto& ctx = space.context();
  ctx.require_admissible(j);
  if (!space.modes().contains(j))
    throw ModeError("mode " + std::to_string(j) + " is outside the mode set");
  const int n = space.order();
  const double w = ctx.measures().group_weight * ctx.measures().dual_weight;
  const ScalarSymbol fj = f.mode(j);
  ComplexOperator out = ComplexOperator::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi) {
      if (fj(x, chi) == cplx(0)) continue;
      out += (w * fj(x, chi)) * rho_matrix(ctx, j, HPoint{x, chi, 1.0});
    }
  return out;
}

GroupFourierCoefficients group_fourier_all(const HeisenbergSpace& space, const HFunction& f) {
  GroupFourierCoefficients out;
  for (int j : space.modes().modes()) out.emplace(j, group_fourier(space, f, j));
  return out;
}

cplx inversion_at(const GroupContext& ctx, const GroupFourierCoefficients& coeffs,
                  const ScalarSymbol& zero_mode, const HPoint& p) {
  cplx v = zero_mode(p.x, p.chi);
  for (const auto& [j, a] : coeffs) {
    // tr(rho^* A) = sum_{y,z} conj(rho[y,z]) A[y,z]
    const ComplexOperator r = rho_matrix(ctx, j, p);
    v += (r.conjugate().cwiseProduct(a)).sum();
  }
  return v;
}

Vector inversion(const HeisenbergSpace& space, const GroupFourierCoefficients& coeffs,
                 const ScalarSymbol& zero_mode) {
  Vector out(space.size());
  for (int idx = 0; idx < space.size(); ++idx)
    out[idx] = inversion_at(space.context(), coeffs, zero_mode, space.point(idx));
  return out;
}

Vector fourier_on_phase_space(const FiniteAbelianGroup& g, const ScalarSymbol& f) {
  const int n = g.order();
  // First slot: x -> gamma over G; second slot: chi -> y over the dual.
  Eigen::MatrixXcd partial(n, n);  // [gamma, chi]
  for (int chi = 0; chi < n; ++chi) {
    Vector col(n);
    for (int x = 0; x < n; ++x) col[x] = f(x, chi);
    partial.col(chi) = fourier_on_G(g, col);
  }
  Vector out(n * n);  // index gamma * n + y
  for (int gamma = 0; gamma < n; ++gamma) {
    Vector row = partial.row(gamma).transpose();
    Vector t = fourier_on_dual(g, row);
    for (int y = 0; y < n; ++y) out[gamma * n + y] = t[y];
  }
  return out;
}

PlancherelTerms plancherel_decomposition(const HeisenbergSpace& space, const HFunction& f) {
  const auto& ctx = space.context();
  PlancherelTerms t;
  for (const auto& [j, fj] : f.modes) {
    const double h = hs_norm(group_fourier(space, f, j));
    t.mode_sum += ctx.c_constant(j) * h * h;
  }
  const Vector zf = fourier_on_phase_space(space.group(), f.zero_mode);
  // dual weight on gamma, counting on y
  t.zero_term = zf.squaredNorm() * ctx.measures().dual_weight * ctx.measures().group_weight;
  t.total = f.to_grid(space).squaredNorm() * space.weight();
  return t;
}

}  // namespace heisenlab

#pragma once

// The abstract Heisenberg group H(G) = G x dual(G) x T, its Schroedinger
// representations rho_j, the discretized circle, functions on H(G) stored as
// theta-mode stacks, and the operator-valued Fourier transform.
//
// Grid points are (x, chi, theta_k), flattened as (x * |G| + chi) * N + k.
// The quadrature weight of a grid point is w_G * w_dual * w_T = 1/(|G| N).
//
// Mode convention: f^j(x, chi) = sum_k f(x, chi, theta_k) theta_k^j / N, and a
// mode stack synthesizes as f = f^0 + sum_j f^j theta^{-j}.

#include <cmath>
#include <map>
#include <vector>

#include "heisenlab/group.hpp"
#include "heisenlab/operator.hpp"

namespace heisenlab {

class AliasingError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Integer power of a unit complex number; negative powers use the conjugate.
cplx unit_power(cplx theta, long long j);

/// A complex function on G x dual(G), index x * |G| + chi.
class ScalarSymbol {
 public:
  ScalarSymbol() = default;
  explicit ScalarSymbol(int order) : order_(order), values_(Vector::Zero(order * order)) {}
  ScalarSymbol(int order, Vector values);

  /// |G| [x = 0][chi = trivial]; its Weyl transform is the identity.
  static ScalarSymbol unit(int order);

  int order() const { return order_; }
  cplx& operator()(int x, int chi) { return values_[x * order_ + chi]; }
  cplx operator()(int x, int chi) const { return values_[x * order_ + chi]; }
  const Vector& values() const { return values_; }
  Vector& values() { return values_; }

  /// L2(G x dual(G)) with weights w_G * w_dual = 1/|G|.
  double norm_sq() const { return values_.squaredNorm() / order_; }
  double norm() const { return std::sqrt(norm_sq()); }

  ScalarSymbol& operator+=(const ScalarSymbol& o);
  ScalarSymbol& operator-=(const ScalarSymbol& o);
  ScalarSymbol& operator*=(cplx s);
  friend ScalarSymbol operator+(ScalarSymbol a, const ScalarSymbol& b) { return a += b; }
  friend ScalarSymbol operator-(ScalarSymbol a, const ScalarSymbol& b) { return a -= b; }
  friend ScalarSymbol operator*(cplx s, ScalarSymbol a) { return a *= s; }
  friend bool operator==(const ScalarSymbol&, const ScalarSymbol&) = default;

 private:
  int order_ = 0;
  Vector values_;
};

/// <f, g> = sum w f conj(g) on G x dual(G).
cplx inner(const ScalarSymbol& f, const ScalarSymbol& g);

struct HPoint {
  int x = 0;
  int chi = 0;
  cplx theta = 1.0;
};

HPoint h_identity();
HPoint h_multiply(const FiniteAbelianGroup& g, const HPoint& p, const HPoint& q);
HPoint h_inverse(const FiniteAbelianGroup& g, const HPoint& p);

/// M[y, z] = theta^j chi(y)^j [z = x + y].
ComplexOperator rho_matrix(const GroupContext& ctx, long long j, const HPoint& p);

class ThetaGrid {
 public:
  explicit ThetaGrid(int size);
  int size() const { return size_; }
  double weight() const { return 1.0 / size_; }
  cplx node(int k) const { return roots_[k]; }
  /// theta_k^m, reduced exactly on the index.
  cplx node_power(int k, long long m) const;

 private:
  int size_;
  std::vector<cplx> roots_;
};

class ModeSet {
 public:
  /// {j : 0 < |j| <= jmax, gcd(j, exponent) = 1}, ascending.
  static ModeSet up_to(const GroupContext& ctx, int jmax);
  /// Every entry must be admissible; duplicates are dropped.
  static ModeSet from_list(const GroupContext& ctx, std::vector<int> modes);

  const std::vector<int>& modes() const { return modes_; }
  int size() const { return static_cast<int>(modes_.size()); }
  int max_abs() const;
  bool contains(int j) const;
  int position(int j) const;
  /// {-j : j in this set}.
  ModeSet negated() const;

 private:
  std::vector<int> modes_;
};

/// Group context plus theta grid and mode set; the discretized H(G).
class HeisenbergSpace {
 public:
  /// Rejects grids with N_theta <= 2 max|j|.
  HeisenbergSpace(GroupContext ctx, int n_theta, ModeSet modes);

  const GroupContext& context() const { return ctx_; }
  const FiniteAbelianGroup& group() const { return ctx_.group(); }
  const ThetaGrid& theta() const { return theta_; }
  const ModeSet& modes() const { return modes_; }
  MeasureContext measures() const { return MeasureContext::for_group(group(), theta_.size()); }

  int order() const { return ctx_.order(); }
  int size() const { return order() * order() * theta_.size(); }
  double weight() const { return 1.0 / (static_cast<double>(order()) * theta_.size()); }
  /// Total mass of H(G): |G| * 1 * 1.
  double volume() const { return order(); }

  int index(int x, int chi, int k) const { return (x * order() + chi) * theta_.size() + k; }
  int point_x(int idx) const { return idx / (order() * theta_.size()); }
  int point_chi(int idx) const { return (idx / theta_.size()) % order(); }
  int point_k(int idx) const { return idx % theta_.size(); }
  HPoint point(int idx) const;

 private:
  GroupContext ctx_;
  ThetaGrid theta_;
  ModeSet modes_;
};

/// A function on H(G) as a mode stack {j -> f^j} plus the zero mode f^0.
struct HFunction {
  std::map<int, ScalarSymbol> modes;
  ScalarSymbol zero_mode;

  static HFunction zero(int order) { return HFunction{{}, ScalarSymbol(order)}; }
  /// f^j if present, zero otherwise.
  ScalarSymbol mode(int j) const;
  int order() const { return zero_mode.order(); }
  int max_abs_mode() const;

  /// Grid values; requires N_theta > 2 max|j| of this stack.
  Vector to_grid(const HeisenbergSpace& space) const;
  cplx evaluate(const HPoint& p) const;
  /// L2(H(G)) norm squared of the synthesized function (exact for band-limited stacks).
  double norm_sq() const;

  HFunction& operator+=(const HFunction& o);
  HFunction& operator*=(cplx s);
};

/// f^j(x, chi) = sum_k f(x, chi, theta_k) theta_k^j / N. Throws AliasingError
/// when N_theta <= 2|j|.
ScalarSymbol mode_extract(const HeisenbergSpace& space, const Vector& grid, int j);
ScalarSymbol mode_extract(const HeisenbergSpace& space, const HFunction& f, int j);

/// Extracts the given modes (and optionally the zero mode) from grid values.
HFunction from_grid(const HeisenbergSpace& space, const Vector& grid, const std::vector<int>& modes,
                    bool with_zero_mode);

using GroupFourierCoefficients = std::map<int, ComplexOperator>;

/// f_hat(j) = sum_{x,chi} w f^j(x, chi) rho_j(x, chi, 1).
ComplexOperator group_fourier(const HeisenbergSpace& space, const HFunction& f, int j);
GroupFourierCoefficients group_fourier_all(const HeisenbergSpace& space, const HFunction& f);

/// sum_j tr(rho_j(p)^* f_hat(j)) + f^0(x, chi) at every grid point.
Vector inversion(const HeisenbergSpace& space, const GroupFourierCoefficients& coeffs,
                 const ScalarSymbol& zero_mode);
cplx inversion_at(const GroupContext& ctx, const GroupFourierCoefficients& coeffs,
                  const ScalarSymbol& zero_mode, const HPoint& p);

/// Transform of f^0 on G x dual(G) onto dual(G) x G, with the dual measures.
Vector fourier_on_phase_space(const FiniteAbelianGroup& g, const ScalarSymbol& f);

struct PlancherelTerms {
  double mode_sum = 0;    // sum_j C_j ||f_hat(j)||_HS^2
  double zero_term = 0;   // ||F(f^0)||^2
  double total = 0;       // ||f||^2 on the grid
};
PlancherelTerms plancherel_decomposition(const HeisenbergSpace& space, const HFunction& f);

}  // namespace heisenlab

#pragma once

// Finite abelian groups G = Z_{n1} x ... x Z_{nk}, their duals, Haar weights
// and the dilation constant C_{j,G}.
//
// Elements and characters are both addressed by a canonical index: the
// lexicographic position of their coordinate tuple (first coordinate most
// significant).  A character with coordinates a acts as
//   chi_a(x) = exp(2 pi i sum_i a_i x_i / n_i).

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace heisenlab {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;

inline constexpr int kDefaultOrderCap = 64;

class SizeError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
class StructuralError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
class ModeError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GroupElement {
  std::vector<int> coords;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct Character {
  std::vector<int> coords;
  friend bool operator==(const Character&, const Character&) = default;
};

class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int> moduli, int order_cap = kDefaultOrderCap);

  /// Parses "n1,n2,..." (whitespace tolerated).
  static FiniteAbelianGroup parse(std::string_view text, int order_cap = kDefaultOrderCap);

  const std::vector<int>& moduli() const { return moduli_; }
  int rank() const { return static_cast<int>(moduli_.size()); }
  int order() const { return order_; }
  int exponent() const { return exponent_; }
  std::string to_string() const;

  // Canonical indexing.
  int index_of(const GroupElement& x) const;
  int index_of(const Character& chi) const;
  GroupElement element(int index) const;
  Character character(int index) const;

  // Index arithmetic. Characters share the element index space, so `add`
  // also multiplies characters and `negate` inverts them.
  int add(int a, int b) const { return add_table_[a * order_ + b]; }
  int negate(int a) const { return neg_table_[a]; }
  int sub(int a, int b) const { return add(a, negate(b)); }
  int dilate(long long j, int a) const;

  /// chi(x) = root(phase(chi, x)) with phase in [0, exponent).
  int phase(int chi, int x) const { return phase_table_[chi * order_ + x]; }
  /// exp(2 pi i k / exponent) for any integer k.
  cplx root(long long k) const;
  cplx character_value(int chi, int x) const { return roots_[phase(chi, x)]; }
  /// chi(x)^j computed on the exact root-of-unity table.
  cplx character_power(int chi, int x, long long j) const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.moduli_ == b.moduli_;
  }

 private:
  void check_coords(const std::vector<int>& coords, const char* what) const;

  std::vector<int> moduli_;
  int order_ = 1;
  int exponent_ = 1;
  std::vector<int> add_table_;
  std::vector<int> neg_table_;
  std::vector<int> phase_table_;
  std::vector<cplx> roots_;
};

/// Rejects mismatched coordinates with StructuralError.
cplx character_value(const FiniteAbelianGroup& g, const Character& chi, const GroupElement& x);

/// Coordinate-wise j*x_i mod n_i.
GroupElement dilate(const FiniteAbelianGroup& g, long long j, const GroupElement& x);

struct MeasureContext {
  double group_weight = 1.0;  // counting measure on G
  double dual_weight = 1.0;   // 1/|G| per character
  double circle_weight = 1.0; // 1/N_theta per node; set by the theta grid

  static MeasureContext for_group(const FiniteAbelianGroup& g, int n_theta = 1);
};

class GroupContext {
 public:
  explicit GroupContext(FiniteAbelianGroup group);

  const FiniteAbelianGroup& group() const { return group_; }
  const MeasureContext& measures() const { return measures_; }
  int order() const { return group_.order(); }

  /// gcd(j, exponent) == 1. Throws ModeError for j == 0.
  bool is_admissible_mode(long long j) const;
  void require_admissible(long long j) const;

  /// Inverse of j modulo the exponent, so dilate(inverse_mode(j)) undoes dilate(j).
  long long inverse_mode(long long j) const;

  /// C_{j,G}; always 1 for a finite group. The change-of-variables identity
  /// is checked on a fixed pseudo-random f before returning.
  double c_constant(long long j) const;

 private:
  FiniteAbelianGroup group_;
  MeasureContext measures_;
};

/// (Ff)(chi) = sum_x f(x) conj(chi(x)), unitary from L2(mu_G) to L2(mu_dual).
Vector fourier_on_G(const FiniteAbelianGroup& g, const Vector& f);
/// f(x) = (1/|G|) sum_chi (Ff)(chi) chi(x).
Vector inverse_fourier_on_G(const FiniteAbelianGroup& g, const Vector& f_hat);

/// Transform of a function on the dual group back onto G:
/// (Fh)(y) = sum_chi w_dual h(chi) conj(chi(y)). Unitary L2(mu_dual) -> L2(mu_G).
Vector fourier_on_dual(const FiniteAbelianGroup& g, const Vector& h);

double l2_norm_sq_group(const FiniteAbelianGroup& g, const Vector& f);
double l2_norm_sq_dual(const FiniteAbelianGroup& g, const Vector& f);

}  // namespace heisenlab

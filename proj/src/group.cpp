#include "heisenlab/group.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace heisenlab {

namespace {

long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> moduli, int order_cap)
    : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw SizeError("group needs at least one modulus");
  long long order = 1;
  long long exponent = 1;
  for (int n : moduli_) {
    if (n < 1) throw SizeError("modulus must be >= 1, got " + std::to_string(n));
    order *= n;
    if (order > order_cap)
      throw SizeError("group order exceeds cap " + std::to_string(order_cap));
    exponent = std::lcm(exponent, static_cast<long long>(n));
  }
  order_ = static_cast<int>(order);
  exponent_ = static_cast<int>(exponent);

  roots_.resize(exponent_);
  // Exact at quarter turns, and roots_[e - k] = conj(roots_[k]) exactly.
  static const cplx quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; 2 * k <= exponent_; ++k) {
    const long long q = 4LL * k;
    roots_[k] = q % exponent_ == 0 ? quarter[q / exponent_]
                                   : std::polar(1.0, 2.0 * std::numbers::pi * k / exponent_);
    if (k > 0) roots_[exponent_ - k] = std::conj(roots_[k]);
  }

  std::vector<std::vector<int>> coords(order_);
  for (int i = 0; i < order_; ++i) coords[i] = element(i).coords;

  add_table_.resize(static_cast<size_t>(order_) * order_);
  neg_table_.resize(order_);
  phase_table_.resize(static_cast<size_t>(order_) * order_);
  GroupElement tmp;
  tmp.coords.resize(moduli_.size());
  for (int a = 0; a < order_; ++a) {
    for (size_t i = 0; i < moduli_.size(); ++i) tmp.coords[i] = (moduli_[i] - coords[a][i]) % moduli_[i];
    neg_table_[a] = index_of(tmp);
    for (int b = 0; b < order_; ++b) {
      long long ph = 0;
      for (size_t i = 0; i < moduli_.size(); ++i) {
        tmp.coords[i] = (coords[a][i] + coords[b][i]) % moduli_[i];
        ph += static_cast<long long>(coords[a][i]) * coords[b][i] * (exponent_ / moduli_[i]);
      }
      add_table_[a * order_ + b] = index_of(tmp);
      phase_table_[a * order_ + b] = static_cast<int>(ph % exponent_);
    }
  }
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view text, int order_cap) {
  std::vector<int> moduli;
  std::string item;
  std::stringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw SizeError("bad modulus '" + item + "' in group list '" + std::string(text) + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size())
      throw SizeError("bad modulus '" + item + "' in group list '" + std::string(text) + "'");
    moduli.push_back(value);
  }
  return FiniteAbelianGroup(std::move(moduli), order_cap);
}

std::string FiniteAbelianGroup::to_string() const {
  std::string s;
  for (size_t i = 0; i < moduli_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(moduli_[i]);
  }
  return s;
}

void FiniteAbelianGroup::check_coords(const std::vector<int>& coords, const char* what) const {
  if (coords.size() != moduli_.size())
    throw StructuralError(std::string(what) + " has " + std::to_string(coords.size()) +
                          " coordinates, group " + to_string() + " has rank " +
                          std::to_string(moduli_.size()));
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] < 0 || coords[i] >= moduli_[i])
      throw StructuralError(std::string(what) + " coordinate out of range for group " + to_string());
}

int FiniteAbelianGroup::index_of(const GroupElement& x) const {
  check_coords(x.coords, "element");
  int idx = 0;
  for (size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + x.coords[i];
  return idx;
}

int FiniteAbelianGroup::index_of(const Character& chi) const {
  check_coords(chi.coords, "character");
  int idx = 0;
  for (size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + chi.coords[i];
  return idx;
}

GroupElement FiniteAbelianGroup::element(int index) const {
  if (index < 0 || index >= order_) throw StructuralError("element index out of range");
  GroupElement x;
  x.coords.resize(moduli_.size());
  for (int i = static_cast<int>(moduli_.size()) - 1; i >= 0; --i) {
    x.coords[i] = index % moduli_[i];
    index /= moduli_[i];
  }
  return x;
}

Character FiniteAbelianGroup::character(int index) const { return Character{element(index).coords}; }

int FiniteAbelianGroup::dilate(long long j, int a) const {
  // Per-coordinate reduction, so go through coordinates.
  int idx = 0;
  int rem = a;
  int stride = order_;
  for (int n : moduli_) {
    stride /= n;
    int c = rem / stride;
    rem %= stride;
    idx = idx * n + static_cast<int>(floor_mod(j * c, n));
  }
  return idx;
}

cplx FiniteAbelianGroup::root(long long k) const { return roots_[floor_mod(k, exponent_)]; }

cplx FiniteAbelianGroup::character_power(int chi, int x, long long j) const {
  return roots_[floor_mod(static_cast<long long>(phase(chi, x)) * floor_mod(j, exponent_), exponent_)];
}

cplx character_value(const FiniteAbelianGroup& g, const Character& chi, const GroupElement& x) {
  return g.character_value(g.index_of(chi), g.index_of(x));
}

GroupElement dilate(const FiniteAbelianGroup& g, long long j, const GroupElement& x) {
  return g.element(g.dilate(j, g.index_of(x)));
}

MeasureContext MeasureContext::for_group(const FiniteAbelianGroup& g, int n_theta) {
  return MeasureContext{1.0, 1.0 / g.order(), 1.0 / n_theta};
}

GroupContext::GroupContext(FiniteAbelianGroup group)
    : group_(std::move(group)), measures_(MeasureContext::for_group(group_)) {}

bool GroupContext::is_admissible_mode(long long j) const {
  if (j == 0) throw ModeError("zero mode excluded, j must be a nonzero integer");
  return std::gcd(j, static_cast<long long>(group_.exponent())) == 1;
}

void GroupContext::require_admissible(long long j) const {
  if (!is_admissible_mode(j))
    throw ModeError("mode j=" + std::to_string(j) + " is not admissible for group " +
                    group_.to_string() + " (gcd with exponent " +
                    std::to_string(group_.exponent()) + " is not 1)");
}

long long GroupContext::inverse_mode(long long j) const {
  require_admissible(j);
  const long long m = group_.exponent();
  if (m == 1) return 1;
  // Extended Euclid on (j mod m, m).
  long long a = floor_mod(j, m), b = m, x0 = 1, x1 = 0;
  while (b != 0) {
    long long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
  }
  return floor_mod(x0, m);
}

double GroupContext::c_constant(long long j) const {
  require_admissible(j);
  const int n = group_.order();
  const long long jinv = inverse_mode(j);
  std::mt19937_64 rng(0x5eedULL ^ static_cast<unsigned long long>(n * 1000 + floor_mod(j, 1000)));
  std::normal_distribution<double> normal;
  std::vector<cplx> f(n);
  for (auto& v : f) v = {normal(rng), normal(rng)};
  cplx pulled = 0, plain = 0;
  for (int x = 0; x < n; ++x) {
    pulled += f[group_.dilate(jinv, x)];
    plain += f[x];
  }
  if (std::abs(pulled - plain) > 1e-12 * (1.0 + std::abs(plain)))
    throw std::logic_error("dilation does not preserve counting measure");
  return 1.0;
}

Vector fourier_on_G(const FiniteAbelianGroup& g, const Vector& f) {
  const int n = g.order();
  if (f.size() != n) throw StructuralError("function size does not match group order");
  Vector out = Vector::Zero(n);
  for (int chi = 0; chi < n; ++chi)
    for (int x = 0; x < n; ++x) out[chi] += f[x] * std::conj(g.character_value(chi, x));
  return out;
}

Vector inverse_fourier_on_G(const FiniteAbelianGroup& g, const Vector& f_hat) {
  const int n = g.order();
  if (f_hat.size() != n) throw StructuralError("function size does not match group order");
  Vector out = Vector::Zero(n);
  for (int x = 0; x < n; ++x)
    for (int chi = 0; chi < n; ++chi) out[x] += f_hat[chi] * g.character_value(chi, x);
  return out / static_cast<double>(n);
}

Vector fourier_on_dual(const FiniteAbelianGroup& g, const Vector& h) {
  const int n = g.order();
  if (h.size() != n) throw StructuralError("function size does not match group order");
  Vector out = Vector::Zero(n);
  for (int y = 0; y < n; ++y)
    for (int chi = 0; chi < n; ++chi) out[y] += h[chi] * std::conj(g.character_value(chi, y));
  return out / static_cast<double>(n);
}

double l2_norm_sq_group(const FiniteAbelianGroup& g, const Vector& f) {
  if (f.size() != g.order()) throw StructuralError("function size does not match group order");
  return f.squaredNorm();
}

double l2_norm_sq_dual(const FiniteAbelianGroup& g, const Vector& f) {
  if (f.size() != g.order()) throw StructuralError("function size does not match group order");
  return f.squaredNorm() / g.order();
}

}  // namespace heisenlab

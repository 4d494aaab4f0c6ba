#include "heisenlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace heisenlab {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HEISENLAB_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultSeed;
}

int SuiteConfig::effective_n_theta() const {
  if (n_theta > 0) return n_theta;
  int j = jmax;
  if (!modes.empty()) {
    j = 0;
    for (int m : modes) j = std::max(j, std::abs(m));
  }
  return 4 * j + 1;
}

void SuiteConfig::validate() const {
  try {
    const GroupContext ctx{FiniteAbelianGroup(moduli)};
    if (jmax < 0) throw UsageError("--jmax must be nonnegative");
    if (trials < 0) throw UsageError("--trials must be nonnegative");
    if (tol && !(*tol > 0)) throw UsageError("--tol must be positive");
    for (int j : modes) {
      if (j == 0) throw UsageError("mode 0 is excluded; modes are nonzero integers");
      if (!ctx.is_admissible_mode(j))
        throw UsageError("mode " + std::to_string(j) + " is not admissible for group " +
                         ctx.group().to_string() + " (gcd with exponent " +
                         std::to_string(ctx.group().exponent()) + " is not 1)");
    }
    const ModeSet set = modes.empty() ? ModeSet::up_to(ctx, jmax) : ModeSet::from_list(ctx, modes);
    if (set.size() == 0) throw UsageError("no admissible modes with |j| <= jmax");
    const int reach = modes.empty() ? jmax : set.max_abs();
    if (effective_n_theta() <= 2 * reach)
      throw UsageError("--ntheta must exceed 2 * max|j| = " + std::to_string(2 * reach));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

HeisenbergSpace SuiteConfig::make_space() const {
  validate();
  GroupContext ctx{FiniteAbelianGroup(moduli)};
  ModeSet set = modes.empty() ? ModeSet::up_to(ctx, jmax) : ModeSet::from_list(ctx, modes);
  return HeisenbergSpace(std::move(ctx), effective_n_theta(), std::move(set));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::string_view stream)
    : engine_(splitmix64(seed ^ splitmix64(fnv1a(stream)))) {}

cplx RandomStream::complex() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re, im};
}

int RandomStream::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

cplx RandomStream::unit() {
  return std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(engine_));
}

ScalarSymbol random_symbol(int order, RandomStream& rng) {
  ScalarSymbol s(order);
  for (auto& v : s.values()) v = rng.complex();
  return s;
}

ComplexOperator random_operator(int dim, RandomStream& rng) {
  ComplexOperator m(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) m(r, c) = rng.complex();
  return m;
}

HFunction random_h_function(const HeisenbergSpace& space, RandomStream& rng, bool with_zero_mode) {
  HFunction f = HFunction::zero(space.order());
  for (int j : space.modes().modes()) f.modes.emplace(j, random_symbol(space.order(), rng));
  if (with_zero_mode) f.zero_mode = random_symbol(space.order(), rng);
  return f;
}

OperatorSymbolField random_symbol_field(const HeisenbergSpace& space, RandomStream& rng) {
  OperatorSymbolField s(space);
  for (int p = 0; p < s.points(); ++p)
    for (int j : s.modes()) s.at(p, j) = random_operator(space.order(), rng);
  return s;
}

AlphaField random_alpha_field(const HeisenbergSpace& space, RandomStream& rng) {
  AlphaField alpha;
  alpha.reserve(space.size());
  const ModeSet neg = space.modes().negated();
  for (int p = 0; p < space.size(); ++p) {
    HFunction a = HFunction::zero(space.order());
    for (int j : neg.modes()) a.modes.emplace(j, random_symbol(space.order(), rng));
    alpha.push_back(std::move(a));
  }
  return alpha;
}

HPoint random_point(const FiniteAbelianGroup& g, RandomStream& rng) {
  return HPoint{rng.uniform_int(0, g.order() - 1), rng.uniform_int(0, g.order() - 1), rng.unit()};
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kAssertedPass: return "asserted-pass";
    case CheckStatus::kAssertedFail: return "asserted-fail";
    case CheckStatus::kReported: return "reported";
  }
  return "reported";
}

bool suite_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const CheckResult& r) { return r.status == CheckStatus::kAssertedFail; });
}

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

class Suite {
 public:
  Suite(const SuiteConfig& cfg) : cfg_(cfg), space_(cfg.make_space()) {}

  std::vector<CheckResult> run() {
    group_checks();
    operator_checks();
    heisenberg_checks();
    weyl_checks();
    pseudodiff_checks();
    return std::move(results_);
  }

 private:
  const GroupContext& ctx() const { return space_.context(); }
  const FiniteAbelianGroup& grp() const { return space_.group(); }
  int order() const { return space_.order(); }
  const std::vector<int>& modes() const { return space_.modes().modes(); }
  bool random_enabled() const { return cfg_.trials > 0; }
  RandomStream stream(std::string_view id) const { return RandomStream(cfg_.seed, id); }

  void asserted(std::string id, double err, double tol, int trials, std::string notes = {}) {
    const double t = cfg_.tol.value_or(tol);
    CheckResult r{std::move(id), CheckStatus::kAssertedFail, err, t, trials, std::move(notes)};
    if (std::isfinite(err) && err <= t) r.status = CheckStatus::kAssertedPass;
    results_.push_back(std::move(r));
  }

  void reported(std::string id, double deviation, int trials, std::string notes) {
    results_.push_back(CheckResult{std::move(id), CheckStatus::kReported, deviation, 0.0, trials, std::move(notes)});
  }

  // ---- group-core ----
  void group_checks() {
    const int n = order();
    {
      double err = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int x = 0; x < n; ++x) {
            err = std::max(err, std::abs(std::abs(grp().character_value(a, x)) - 1.0));
            for (int y = 0; y < n; ++y)
              err = std::max(err, std::abs(grp().character_value(a, grp().add(x, y)) -
                                           grp().character_value(a, x) * grp().character_value(a, y)));
            err = std::max(err, std::abs(grp().character_value(grp().add(a, b), x) -
                                         grp().character_value(a, x) * grp().character_value(b, x)));
          }
      asserted("group.character_laws", err, 1e-12, 0);
    }
    if (random_enabled()) {
      auto rng = stream("group.fourier_roundtrip");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        Vector f(n);
        for (auto& v : f) v = rng.complex();
        err = std::max(err, (inverse_fourier_on_G(grp(), fourier_on_G(grp(), f)) - f).cwiseAbs().maxCoeff());
      }
      asserted("group.fourier_roundtrip", err, 1e-12, cfg_.trials);
    }
    if (random_enabled()) {
      auto rng = stream("group.fourier_parseval");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        Vector f(n);
        for (auto& v : f) v = rng.complex();
        const double lhs = l2_norm_sq_dual(grp(), fourier_on_G(grp(), f));
        const double rhs = l2_norm_sq_group(grp(), f);
        err = std::max(err, std::abs(lhs - rhs) / rhs);
      }
      asserted("group.fourier_parseval", err, 1e-12, cfg_.trials, "relative error");
    }
    {
      int bad = 0;
      for (int j : modes()) {
        std::vector<int> seen(n, 0);
        for (int x = 0; x < n; ++x) ++seen[grp().dilate(j, x)];
        bad += static_cast<int>(std::count_if(seen.begin(), seen.end(), [](int c) { return c != 1; }));
      }
      asserted("group.dilation_permutation", bad, 0.0, 0, "count of non-bijective images");
    }
    {
      double err = 0;
      auto rng = stream("group.c_constant");
      for (int j : modes()) {
        err = std::max(err, std::abs(ctx().c_constant(j) - 1.0));
        const long long jinv = ctx().inverse_mode(j);
        for (int t = 0; t < cfg_.trials; ++t) {
          Vector f(n);
          for (auto& v : f) v = rng.complex();
          cplx pulled = 0;
          for (int x = 0; x < n; ++x) pulled += f[grp().dilate(jinv, x)];
          err = std::max(err, std::abs(pulled - f.sum()));
        }
      }
      asserted("group.c_constant", err, 1e-12, cfg_.trials);
    }
  }

  // ---- operator-core ----
  void operator_checks() {
    const int n = order();
    if (random_enabled()) {
      auto rng = stream("operator.trace_cyclic");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto a = random_operator(n, rng), b = random_operator(n, rng);
        err = std::max(err, std::abs(trace(a * b) - trace(b * a)) / (1.0 + a.norm() * b.norm()));
      }
      asserted("operator.trace_cyclic", err, 1e-10, cfg_.trials, "scaled by 1 + |A||B|");
    }
    if (random_enabled()) {
      auto rng = stream("operator.hs_inner_product");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto a = random_operator(n, rng), b = random_operator(n, rng);
        err = std::max(err, std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))));
        const cplx aa = hs_inner(a, a);
        err = std::max({err, std::abs(aa.imag()), std::abs(aa.real() - a.squaredNorm())});
        if (!(aa.real() > 0)) err = std::max(err, 1.0);
      }
      asserted("operator.hs_inner_product", err, 1e-10, cfg_.trials);
    }
    if (random_enabled()) {
      auto rng = stream("operator.cauchy_schwarz");
      double violation = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto a = random_operator(n, rng), b = random_operator(n, rng);
        violation = std::max(violation, std::abs(trace(a * b)) - hs_norm(a) * hs_norm(b));
      }
      asserted("operator.cauchy_schwarz", std::max(0.0, violation), 1e-10, cfg_.trials);
    }
    {
      const ComplexOperator id = ComplexOperator::Identity(n, n);
      double err = std::abs(hs_norm(id) - std::sqrt(n)) + std::abs(trace(id) - cplx(n)) +
                   std::abs(op_norm(id) - 1.0) + std::abs(trace_norm(id) - n);
      auto rng = stream("operator.spectral_norms");
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto a = random_operator(n, rng);
        const auto s = singular_values(a).values;
        double sum_sq = 0;
        for (double v : s) sum_sq += v * v;
        for (size_t k = 1; k < s.size(); ++k) err = std::max(err, std::max(0.0, s[k] - s[k - 1]));
        err = std::max(err, std::max(0.0, std::abs(trace(a)) - trace_norm(a)));
        err = std::max(err, std::abs(a.squaredNorm() - sum_sq) / (1.0 + sum_sq));
      }
      asserted("operator.spectral_norms", err, 1e-10, cfg_.trials);
    }
    {
      auto rng = stream("operator.hs_factorize");
      double recon = 0, balance = 0;
      std::vector<ComplexOperator> cases{ComplexOperator::Zero(n, n), ComplexOperator::Identity(n, n)};
      for (int t = 0; t < cfg_.trials; ++t) cases.push_back(random_operator(n, rng));
      for (const auto& a : cases) {
        const auto f = hs_factorize(a);
        recon = std::max(recon, (a - f.left * f.right).norm() / (1.0 + a.norm()));
        const double tn = trace_norm(a);
        balance = std::max({balance, std::abs(f.left.squaredNorm() - tn), std::abs(f.right.squaredNorm() - tn)});
      }
      asserted("operator.hs_factorize_reconstruction", recon, 1e-10, cfg_.trials);
      asserted("operator.hs_factorize_balance", balance, 1e-9, cfg_.trials);
    }
  }

  // ---- heisenberg-core ----
  void heisenberg_checks() {
    const int n = order();
    if (random_enabled()) {
      auto rng = stream("heisenberg.group_law");
      double err = 0;
      auto dist = [](const HPoint& a, const HPoint& b) {
        return (a.x != b.x || a.chi != b.chi) ? 1.0 : std::abs(a.theta - b.theta);
      };
      for (int t = 0; t < cfg_.trials; ++t) {
        const HPoint p = random_point(grp(), rng), q = random_point(grp(), rng), r = random_point(grp(), rng);
        err = std::max(err, dist(h_multiply(grp(), h_multiply(grp(), p, q), r),
                                 h_multiply(grp(), p, h_multiply(grp(), q, r))));
        err = std::max(err, dist(h_multiply(grp(), p, h_identity()), p));
        err = std::max(err, dist(h_multiply(grp(), p, h_inverse(grp(), p)), h_identity()));
        err = std::max(err, dist(h_multiply(grp(), h_inverse(grp(), p), p), h_identity()));
      }
      asserted("heisenberg.group_law", err, 1e-12, cfg_.trials);
    }
    {
      double err = 0;
      int count = 0;
      const ComplexOperator id = ComplexOperator::Identity(n, n);
      for (int j : modes())
        for (int p = 0; p < space_.size(); ++p, ++count) {
          const auto r = rho_matrix(ctx(), j, space_.point(p));
          err = std::max(err, (r * r.adjoint() - id).norm());
        }
      asserted("heisenberg.rho_unitary", err, 1e-12, count, "every grid point and mode");
    }
    if (random_enabled()) {
      auto rng = stream("heisenberg.rho_homomorphism");
      const int pairs = std::max(100, cfg_.trials);
      double err = 0;
      for (int j : modes())
        for (int t = 0; t < pairs; ++t) {
          const HPoint p = random_point(grp(), rng), q = random_point(grp(), rng);
          err = std::max(err, (rho_matrix(ctx(), j, p) * rho_matrix(ctx(), j, q) -
                               rho_matrix(ctx(), j, h_multiply(grp(), p, q)))
                                  .norm());
        }
      asserted("heisenberg.rho_homomorphism", err, 1e-12, pairs, "pairs per mode");
    }
    {
      double err = 0;
      for (int j : modes())
        for (int a = 0; a < n; ++a)
          for (int alpha = 0; alpha < n; ++alpha)
            for (int k = 0; k < space_.theta().size(); ++k) {
              const cplx th = space_.theta().node(k);
              const cplx expect = (a == 0 && alpha == 0) ? static_cast<double>(n) * unit_power(th, j) : 0.0;
              err = std::max(err, std::abs(trace(rho_matrix(ctx(), j, HPoint{a, alpha, th})) - expect));
            }
      asserted("heisenberg.rho_trace", err, 1e-12, 0);
    }
    {
      const int N = space_.theta().size();
      double err = 0;
      for (int m = -2 * N; m <= 2 * N; ++m) {
        cplx s = 0;
        for (int k = 0; k < N; ++k) s += space_.theta().node_power(k, m);
        s /= static_cast<double>(N);
        err = std::max(err, std::abs(s - cplx(m % N == 0 ? 1.0 : 0.0)));
      }
      asserted("heisenberg.theta_quadrature", err, 1e-12, 0);
    }
    if (random_enabled()) {
      auto rng = stream("heisenberg.mode_roundtrip");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const HFunction f = random_h_function(space_, rng, true);
        const Vector grid = f.to_grid(space_);
        for (int j : modes()) err = std::max(err, max_abs(mode_extract(space_, grid, j).values() - f.mode(j).values()));
        err = std::max(err, max_abs(mode_extract(space_, grid, 0).values() - f.zero_mode.values()));
      }
      asserted("heisenberg.mode_roundtrip", err, 1e-12, cfg_.trials);
    }
    if (random_enabled()) {
      auto rng = stream("heisenberg.fourier_weyl_two_route");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const HFunction f = random_h_function(space_, rng, false);
        for (int j : modes())
          err = std::max(err, (group_fourier(space_, f, j) - weyl_matrix(ctx(), f.mode(j), j)).norm());
      }
      asserted("heisenberg.fourier_weyl_two_route", err, 1e-12, cfg_.trials);
    }
    if (random_enabled()) {
      auto rng = stream("heisenberg.inversion");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const HFunction f = random_h_function(space_, rng, false);
        const Vector back = inversion(space_, group_fourier_all(space_, f), f.zero_mode);
        err = std::max(err, max_abs(back - f.to_grid(space_)));
      }
      asserted("heisenberg.inversion", err, 1e-11, cfg_.trials);
    }
    if (random_enabled()) {
      auto rng = stream("heisenberg.plancherel");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const HFunction f = random_h_function(space_, rng, true);
        const auto terms = plancherel_decomposition(space_, f);
        err = std::max(err, std::abs(terms.mode_sum + terms.zero_term - terms.total) / terms.total);
      }
      asserted("heisenberg.plancherel", err, 1e-10, cfg_.trials, "relative; nonzero zero mode");
    }
    if (random_enabled()) {
      auto rng = stream("heisenberg.plancherel_mean_zero");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const HFunction f = random_h_function(space_, rng, false);
        const auto terms = plancherel_decomposition(space_, f);
        err = std::max({err, std::abs(terms.mode_sum - terms.total) / terms.total, terms.zero_term});
      }
      asserted("heisenberg.plancherel_mean_zero", err, 1e-10, cfg_.trials, "relative");
    }
    if (random_enabled()) {
      auto rng = stream("heisenberg.coefficient_norm");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const HFunction f = random_h_function(space_, rng, false);
        for (int j : modes()) {
          const double a = hs_norm(group_fourier(space_, f, j));
          const double b = f.mode(j).norm();
          err = std::max(err, std::abs(a - b) / (1.0 + b));
        }
      }
      asserted("heisenberg.coefficient_norm", err, 1e-10, cfg_.trials);
    }
  }

  // ---- weyl ----
  void weyl_checks() {
    const int n = order();
    const ScalarSymbol unit = ScalarSymbol::unit(n);
    if (random_enabled()) {
      auto rng = stream("weyl.two_route_assembly");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto s = random_symbol(n, rng);
        for (int j : modes())
          err = std::max(err, (weyl_matrix(ctx(), s, j) - weyl_matrix_by_representation(ctx(), s, j)).norm());
      }
      asserted("weyl.two_route_assembly", err, 1e-12, cfg_.trials);
    }
    if (random_enabled()) {
      auto rng = stream("weyl.isometry");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto s = random_symbol(n, rng);
        for (int j : modes()) {
          err = std::max(err, std::abs(hs_norm(weyl_matrix(ctx(), s, j)) - s.norm()));
          err = std::max(err, std::abs(weyl_kernel(ctx(), s, j).norm() - s.norm()));
        }
      }
      asserted("weyl.isometry", err, 1e-10, cfg_.trials);
    }
    if (random_enabled()) {
      auto rng = stream("weyl.bijection");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto s = random_symbol(n, rng);
        const auto m = random_operator(n, rng);
        for (int j : modes()) {
          err = std::max(err, max_abs(weyl_inverse(ctx(), weyl_matrix(ctx(), s, j), j).values() - s.values()));
          err = std::max(err, max_abs(weyl_matrix(ctx(), weyl_inverse(ctx(), m, j), j) - m));
        }
      }
      asserted("weyl.bijection", err, 1e-11, cfg_.trials);
    }
    if (random_enabled()) {
      auto rng = stream("weyl.twisted_homomorphism");
      double err = 0, variant = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto f = random_symbol(n, rng), g = random_symbol(n, rng);
        for (int j : modes()) {
          const ComplexOperator prod = weyl_matrix(ctx(), f, j) * weyl_matrix(ctx(), g, j);
          err = std::max(err, (weyl_matrix(ctx(), twisted_conv(ctx(), f, g, j), j) - prod).norm());
          variant = std::max(variant, (weyl_matrix(ctx(), twisted_conv_variant(ctx(), f, g, j), j) - prod).norm());
        }
      }
      asserted("weyl.twisted_homomorphism", err, 1e-11, cfg_.trials);
      reported("weyl.twisted_variant_phase", variant, cfg_.trials,
               "conj(chi(x'))^j phase: |W(f x g) - W(f)W(g)|_F");
    }
    {
      auto rng = stream("weyl.twisted_unit");
      double err = 0;
      std::vector<ScalarSymbol> cases{unit};
      for (int t = 0; t < cfg_.trials; ++t) cases.push_back(random_symbol(n, rng));
      for (const auto& s : cases)
        for (int j : modes()) {
          err = std::max(err, max_abs(twisted_conv(ctx(), unit, s, j).values() - s.values()));
          err = std::max(err, max_abs(twisted_conv(ctx(), s, unit, j).values() - s.values()));
          err = std::max(err, max_abs(twisted_conv(ctx(), s, ScalarSymbol(n), j).values()));
        }
      asserted("weyl.twisted_unit", err, 1e-11, cfg_.trials);
    }
    if (random_enabled()) {
      auto rng = stream("weyl.twisted_associativity");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto a = random_symbol(n, rng), b = random_symbol(n, rng), c = random_symbol(n, rng);
        for (int j : modes()) {
          const auto lhs = twisted_conv(ctx(), twisted_conv(ctx(), a, b, j), c, j);
          const auto rhs = twisted_conv(ctx(), a, twisted_conv(ctx(), b, c, j), j);
          err = std::max(err, (lhs - rhs).norm());
        }
      }
      asserted("weyl.twisted_associativity", err, 1e-10, cfg_.trials);
    }
    {
      auto rng = stream("weyl.adjoint");
      double err = 0, variant = 0;
      std::vector<ScalarSymbol> cases{unit};
      for (int t = 0; t < cfg_.trials; ++t) cases.push_back(random_symbol(n, rng));
      for (const auto& s : cases)
        for (int j : modes()) {
          const ComplexOperator adj = weyl_matrix(ctx(), s, j).adjoint();
          const auto st = adjoint_symbol(ctx(), s, j);
          err = std::max(err, (weyl_matrix(ctx(), st, j) - adj).norm());
          err = std::max(err, max_abs(adjoint_symbol(ctx(), st, j).values() - s.values()));
          variant = std::max(variant, (weyl_matrix(ctx(), adjoint_symbol_variant(ctx(), s, j), j) - adj).norm());
        }
      asserted("weyl.adjoint", err, 1e-11, cfg_.trials);
      reported("weyl.adjoint_variant", variant, cfg_.trials,
               "chi(x) conj(lambda(-x, chi)) variant: |W(lambda~) - W(lambda)^*|_F");
    }
    {
      auto rng = stream("weyl.hs_pairing");
      double err = 0;
      const auto pu = hs_pairing_identity(ctx(), unit, unit, modes().front());
      err = std::max({err, std::abs(pu.lhs - cplx(n)), std::abs(pu.rhs - cplx(n))});
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto f = random_symbol(n, rng), g = random_symbol(n, rng);
        for (int j : modes()) {
          const auto v = hs_pairing_identity(ctx(), f, g, j);
          err = std::max(err, std::abs(v.lhs - v.rhs));
        }
      }
      asserted("weyl.hs_pairing", err, 1e-10, cfg_.trials);
    }
    {
      auto rng = stream("weyl.trace_diagonal");
      double err = 0, global_dev = 0;
      std::vector<ScalarSymbol> cases{unit, ScalarSymbol(n)};
      for (int t = 0; t < cfg_.trials; ++t) cases.push_back(random_symbol(n, rng));
      for (const auto& s : cases)
        for (int j : modes()) {
          const cplx direct = trace(weyl_matrix(ctx(), s, j));
          err = std::max(err, std::abs(trace_weyl_diagonal(ctx(), s, j) - direct));
          global_dev = std::max(global_dev, std::abs(trace_weyl_global_formula(ctx(), s) - direct));
        }
      asserted("weyl.trace_diagonal", err, 1e-11, cfg_.trials);
      const cplx unit_direct = trace(weyl_matrix(ctx(), unit, modes().front()));
      const cplx unit_formula = trace_weyl_global_formula(ctx(), unit);
      char buf[160];
      std::snprintf(buf, sizeof buf, "global-integral trace formula; unit symbol: direct=%.17g formula=%.17g",
                    unit_direct.real(), unit_formula.real());
      reported("weyl.trace_global_formula", global_dev, cfg_.trials, buf);
    }
    {
      auto rng = stream("weyl.trace_product");
      double err = 0, variant = 0;
      std::vector<std::pair<ScalarSymbol, ScalarSymbol>> cases{{unit, unit}, {ScalarSymbol(n), unit}};
      for (int t = 0; t < cfg_.trials; ++t) {
        auto l = random_symbol(n, rng);
        cases.emplace_back(std::move(l), random_symbol(n, rng));
      }
      for (const auto& [l, tau] : cases)
        for (int j : modes()) {
          const auto r = trace_product_report(ctx(), l, tau, j);
          err = std::max({err, std::abs(r.direct - r.hs_pairing_route), std::abs(r.direct - r.derived_phase_formula)});
          variant = std::max(variant, std::abs(r.direct - r.variant_formula));
        }
      asserted("weyl.trace_product", err, 1e-10, cfg_.trials, "direct = HS pairing = derived-phase formula");
      reported("weyl.trace_product_variant", variant, cfg_.trials,
               "tau(x,chi) lambda(-x,chi) conj(chi(x)) formula vs direct trace");
    }
    {
      auto rng = stream("weyl.factor_symbol");
      double err = 0;
      std::vector<ScalarSymbol> cases{ScalarSymbol(n), unit};
      for (int t = 0; t < cfg_.trials; ++t) cases.push_back(random_symbol(n, rng));
      for (const auto& s : cases)
        for (int j : modes()) {
          const auto f = factor_symbol(ctx(), s, j);
          err = std::max(err, (s - twisted_conv(ctx(), f.left, f.right, j)).norm() / (1.0 + s.norm()));
        }
      asserted("weyl.factor_symbol", err, 1e-9, cfg_.trials, "every symbol factors; scaled by 1 + |sigma|");
    }
  }

  // ---- pseudodiff ----
  void pseudodiff_checks() {
    const ComplexOperator proj = band_projector(space_);
    const auto ident = OperatorSymbolField::identity(space_);
    {
      auto rng = stream("pdo.identity_field");
      double err = max_abs(assemble_pdo(space_, ident) - proj);
      for (int t = 0; t < cfg_.trials; ++t) {
        const HFunction f = random_h_function(space_, rng, false);
        err = std::max(err, max_abs(apply_pdo(space_, ident, f) - f.to_grid(space_)));
      }
      asserted("pdo.identity_field", err, 1e-11, cfg_.trials, "identity symbol reproduces f; assembles to P");
    }
    if (random_enabled()) {
      auto rng = stream("pdo.two_route");
      double err = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto sigma = random_symbol_field(space_, rng);
        const HFunction f = random_h_function(space_, rng, false);
        err = std::max(err, max_abs(assemble_pdo(space_, sigma) * f.to_grid(space_) - apply_pdo(space_, sigma, f)));
      }
      asserted("pdo.two_route", err, 1e-11, cfg_.trials);
    }
    {
      auto rng = stream("pdo.l2_bound");
      const auto id_check = l2_bound(space_, ident);
      const double expect_bound = std::sqrt(modes().size() * space_.volume() * order());
      double err = std::abs(id_check.op_norm - 1.0) + std::abs(id_check.bound - expect_bound);
      double worst_ratio = id_check.op_norm / id_check.bound;
      for (int t = 0; t < cfg_.trials; ++t) {
        const auto c = l2_bound(space_, random_symbol_field(space_, rng));
        err = std::max(err, std::max(0.0, c.op_norm - c.bound));
        worst_ratio = std::max(worst_ratio, c.op_norm / c.bound);
      }
      char buf[96];
      std::snprintf(buf, sizeof buf, "max op_norm/bound = %.17g", worst_ratio);
      asserted("pdo.l2_bound", err, 1e-10, cfg_.trials, buf);
    }
    if (random_enabled()) {
      auto rng = stream("pdo.recovery");
      double err = 0;
      const int points = std::max(10, cfg_.trials);
      auto sigma = random_symbol_field(space_, rng);
      for (int t = 0; t < points; ++t) {
        if (t > 0 && t % 10 == 0) sigma = random_symbol_field(space_, rng);
        const int p = rng.uniform_int(0, space_.size() - 1);
        const auto r = recovery_diagnostic(space_, sigma, p);
        err = std::max(err, std::abs(r.lhs - r.rhs) / r.rhs);
      }
      asserted("pdo.recovery", err, 1e-9, points, "relative; random points");
    }
    if (random_enabled()) {
      auto rng = stream("pdo.hs_characterization");
      double route = 0, norm_err = 0, field_err = 0, variant = 0;
      for (int t = 0; t < cfg_.trials; ++t) {
        const AlphaField alpha = random_alpha_field(space_, rng);
        const auto sigma = hs_symbol_from_alpha(space_, alpha);
        const ComplexOperator t_sigma = assemble_pdo(space_, sigma);
        const ComplexOperator kern = kernel_operator(space_, pdo_kernel_from_alpha(space_, alpha)) * proj;
        const ComplexOperator kern_variant = kernel_operator(space_, pdo_kernel_variant(space_, alpha)) * proj;
        route = std::max(route, max_abs(kern - t_sigma));
        variant = std::max(variant, max_abs(kern_variant - t_sigma));
        const double a2 = alpha_norm_sq(space_, alpha);
        norm_err = std::max(norm_err, std::abs(hs_norm(t_sigma) - std::sqrt(a2)));
        double field = 0;
        for (int p = 0; p < space_.size(); ++p)
          for (int j : modes()) field += space_.weight() * sigma.at(p, j).squaredNorm();
        field_err = std::max(field_err, std::abs(field - a2) / (1.0 + a2));
      }
      asserted("pdo.hs_two_route", route, 1e-10, cfg_.trials, "symbol route vs kernel route on P");
      asserted("pdo.hs_norm", std::max(norm_err, field_err), 1e-10, cfg_.trials, "|T|_HS = |alpha|");
      reported("pdo.kernel_variant", variant, cfg_.trials, "kernel chi'(-x') alpha(p)(-x', chi', theta') vs T");
    }
    {
      auto rng = stream("pdo.trace_class");
      double resid = 0, trace_err = 0, diag_err = 0, refl = 0, plain = 0;
      auto [pa, pb] = projector_alphas(space_);
      const auto pc = trace_class_check(space_, pa, pb);
      const double rank = static_cast<double>(space_.modes().size()) * order() * order();
      resid = std::max(pc.factorization_residual, std::abs(pc.trace_norm - rank));
      trace_err = std::abs(pc.trace_direct - pc.trace_of_factors);
      for (int t = 0; t < cfg_.trials; ++t) {
        const AlphaField a1 = random_alpha_field(space_, rng), a2 = random_alpha_field(space_, rng);
        const auto c = trace_class_check(space_, a1, a2);
        resid = std::max(resid, c.factorization_residual);
        trace_err = std::max(trace_err, std::abs(c.trace_direct - c.trace_of_factors));
        const auto r = trace_pdo_report(space_, a1, a2);
        diag_err = std::max(diag_err, std::abs(r.direct - r.kernel_diagonal));
        refl = std::max(refl, std::abs(r.direct - r.reflected_diagonal));
        plain = std::max(plain, std::abs(r.direct - r.plain_diagonal));
      }
      asserted("pdo.trace_class_factorization", std::max(resid, trace_err), 1e-10, cfg_.trials,
               "T = (alpha1 kernel)(T of alpha2); projector case has trace norm = rank");
      asserted("pdo.trace_kernel_diagonal", diag_err, 1e-10, cfg_.trials);
      reported("pdo.trace_reflected_diagonal", refl, cfg_.trials,
               "sum w conj(chi(x)) alpha(p)(-x, chi, theta) vs direct trace");
      reported("pdo.trace_plain_diagonal", plain, cfg_.trials, "sum w alpha(p)(p) vs direct trace");
    }
  }

  const SuiteConfig& cfg_;
  HeisenbergSpace space_;
  std::vector<CheckResult> results_;
};

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

template <class T>
std::string int_list(const std::vector<T>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

std::vector<CheckResult> run_suite(const SuiteConfig& config) { return Suite(config).run(); }

std::string render_report(const SuiteConfig& config, const std::vector<CheckResult>& results) {
  std::vector<int> modes = config.modes;
  try {
    modes = config.make_space().modes().modes();
  } catch (const std::exception&) {
  }
  std::ostringstream o;
  o << "{\n  \"config\": {\n";
  o << "    \"moduli\": " << int_list(config.moduli) << ",\n";
  o << "    \"jmax\": " << config.jmax << ",\n";
  o << "    \"ntheta\": " << config.effective_n_theta() << ",\n";
  o << "    \"modes\": " << int_list(modes) << ",\n";
  o << "    \"trials\": " << config.trials << ",\n";
  o << "    \"seed\": " << config.seed << ",\n";
  o << "    \"tol\": " << (config.tol ? fmt_double(*config.tol) : "null") << "\n  },\n";
  o << "  \"checks\": [";
  int pass = 0, fail = 0, rep = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    switch (r.status) {
      case CheckStatus::kAssertedPass: ++pass; break;
      case CheckStatus::kAssertedFail: ++fail; break;
      case CheckStatus::kReported: ++rep; break;
    }
    o << (i ? ",\n" : "\n") << "    {\"id\": " << quote(r.id) << ", \"status\": " << quote(std::string(to_string(r.status)))
      << ", \"max_abs_error\": " << fmt_double(r.max_abs_error) << ", \"tolerance\": " << fmt_double(r.tolerance)
      << ", \"trials\": " << r.trials << ", \"notes\": " << quote(r.notes) << "}";
  }
  o << (results.empty() ? "],\n" : "\n  ],\n");
  o << "  \"summary\": {\"total\": " << results.size() << ", \"asserted_pass\": " << pass
    << ", \"asserted_fail\": " << fail << ", \"reported\": " << rep << ", \"ok\": " << (fail == 0 ? "true" : "false")
    << "}\n}\n";
  return o.str();
}

void emit_report(const SuiteConfig& config, const std::vector<CheckResult>& results, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open report file '" + path + "' for writing");
  out << render_report(config, results);
  out.flush();
  if (!out) throw std::runtime_error("failed writing report file '" + path + "'");
}

}  // namespace heisenlab

// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "heisenlab/verify.hpp"

using namespace heisenlab;

namespace {

int failures = 0;

void verdict(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d  %-44s %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

HeisenbergSpace make_space(std::vector<int> moduli, std::vector<int> modes) {
  GroupContext ctx{FiniteAbelianGroup(std::move(moduli))};
  ModeSet set = ModeSet::from_list(ctx, modes);
  const int N = 4 * set.max_abs() + 1;
  return HeisenbergSpace(std::move(ctx), N, std::move(set));
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

constexpr std::uint64_t kSeed = 20240531;

void representation_law() {
  const auto space = make_space({5}, {-2, -1, 1, 2});
  const auto& ctx = space.context();
  RandomStream rng(kSeed, "acceptance.rho");
  double hom = 0, unit = 0;
  const int pairs = 100;
  for (int j : space.modes().modes()) {
    for (int t = 0; t < pairs; ++t) {
      const HPoint p = random_point(ctx.group(), rng), q = random_point(ctx.group(), rng);
      hom = std::max(hom, (rho_matrix(ctx, j, p) * rho_matrix(ctx, j, q) -
                           rho_matrix(ctx, j, h_multiply(ctx.group(), p, q))).norm());
      const ComplexOperator r = rho_matrix(ctx, j, p);
      unit = std::max(unit, (r * r.adjoint() - ComplexOperator::Identity(5, 5)).norm());
    }
    for (int p = 0; p < space.size(); ++p) {
      const ComplexOperator r = rho_matrix(ctx, j, space.point(p));
      unit = std::max(unit, (r * r.adjoint() - ComplexOperator::Identity(5, 5)).norm());
    }
  }
  verdict(1, "representation law and unitarity, H(Z_5)", hom < 1e-12 && unit < 1e-12,
          fmt("hom=%.2e unitary=%.2e (100 pairs per j in {-2,-1,1,2})", hom, unit));
}

void fourier_inversion() {
  double err = 0;
  for (auto [moduli, modes] : {std::pair{std::vector<int>{3}, std::vector<int>{-2, -1, 1, 2}},
                               std::pair{std::vector<int>{2, 3}, std::vector<int>{-5, -1, 1, 5}}}) {
    const auto space = make_space(moduli, modes);
    RandomStream rng(kSeed, "acceptance.inversion");
    for (int t = 0; t < 20; ++t) {
      const HFunction f = random_h_function(space, rng, false);
      err = std::max(err, max_abs(inversion(space, group_fourier_all(space, f), f.zero_mode) - f.to_grid(space)));
    }
  }
  verdict(2, "Fourier inversion, H(Z_3) and H(Z_2xZ_3)", err < 1e-11, fmt("max err=%.2e", err));
}

void plancherel() {
  double with_zero = 0, mean_zero = 0;
  for (auto [moduli, modes] : {std::pair{std::vector<int>{3}, std::vector<int>{-2, -1, 1, 2}},
                               std::pair{std::vector<int>{2, 3}, std::vector<int>{-1, 1}}}) {
    const auto space = make_space(moduli, modes);
    RandomStream rng(kSeed, "acceptance.plancherel");
    for (int t = 0; t < 20; ++t) {
      HFunction f = random_h_function(space, rng, true);
      auto terms = plancherel_decomposition(space, f);
      with_zero = std::max(with_zero, std::abs(terms.mode_sum + terms.zero_term - terms.total) / terms.total);
      f.zero_mode = ScalarSymbol(space.order());
      terms = plancherel_decomposition(space, f);
      mean_zero = std::max(mean_zero, std::abs(terms.mode_sum - terms.total) / terms.total);
    }
  }
  verdict(3, "Plancherel, with and without zero mode", with_zero < 1e-10 && mean_zero < 1e-10,
          fmt("rel err full=%.2e mean-zero=%.2e", with_zero, mean_zero));
}

void weyl_isometry_bijection() {
  double iso = 0, bij = 0;
  for (auto [moduli, j] : {std::pair{std::vector<int>{5}, 2}, std::pair{std::vector<int>{4}, 3},
                           std::pair{std::vector<int>{2, 3}, 5}}) {
    const GroupContext ctx{FiniteAbelianGroup(moduli)};
    RandomStream rng(kSeed, "acceptance.weyl");
    for (int t = 0; t < 20; ++t) {
      const auto s = random_symbol(ctx.order(), rng);
      const auto m = random_operator(ctx.order(), rng);
      iso = std::max(iso, std::abs(hs_norm(weyl_matrix(ctx, s, j)) - s.norm()));
      bij = std::max(bij, max_abs(weyl_inverse(ctx, weyl_matrix(ctx, s, j), j).values() - s.values()));
      bij = std::max(bij, max_abs(weyl_matrix(ctx, weyl_inverse(ctx, m, j), j) - m));
    }
  }
  verdict(4, "Weyl isometry and bijection", iso < 1e-10 && bij < 1e-11,
          fmt("isometry=%.2e round trip=%.2e", iso, bij));
}

void twisted_homomorphism() {
  double err = 0;
  for (auto [moduli, modes] : {std::pair{std::vector<int>{5}, std::vector<int>{-2, -1, 1, 2}},
                               std::pair{std::vector<int>{4}, std::vector<int>{1, 3}},
                               std::pair{std::vector<int>{2, 3}, std::vector<int>{1, 5}}}) {
    const GroupContext ctx{FiniteAbelianGroup(moduli)};
    RandomStream rng(kSeed, "acceptance.twisted");
    for (int j : modes)
      for (int t = 0; t < 20; ++t) {
        const auto f = random_symbol(ctx.order(), rng), g = random_symbol(ctx.order(), rng);
        err = std::max(err, (weyl_matrix(ctx, twisted_conv(ctx, f, g, j), j) -
                             weyl_matrix(ctx, f, j) * weyl_matrix(ctx, g, j)).norm());
      }
  }
  verdict(5, "twisted convolution homomorphism", err < 1e-11, fmt("max |W(f x g) - W(f)W(g)|_F=%.2e", err));
}

void trace_ground_truth() {
  double diag = 0;
  for (auto moduli : {std::vector<int>{2}, std::vector<int>{3}, std::vector<int>{5}, std::vector<int>{2, 3}}) {
    const GroupContext ctx{FiniteAbelianGroup(moduli)};
    RandomStream rng(kSeed, "acceptance.trace");
    for (int t = 0; t < 20; ++t) {
      const auto s = random_symbol(ctx.order(), rng);
      diag = std::max(diag, std::abs(trace_weyl_diagonal(ctx, s, 1) - trace(weyl_matrix(ctx, s, 1))));
    }
  }
  const GroupContext z2{FiniteAbelianGroup({2})};
  const ScalarSymbol u = ScalarSymbol::unit(2);
  const cplx direct = trace(weyl_matrix(z2, u, 1));
  const cplx formula = trace_weyl_global_formula(z2, u);
  const bool discrepancy = std::abs(direct - 2.0) < 1e-12 && std::abs(formula - 1.0) < 1e-12;

  SuiteConfig cfg;
  cfg.moduli = {2};
  cfg.jmax = 1;
  cfg.trials = 2;
  cfg.seed = kSeed;
  bool recorded = false;
  for (const auto& r : run_suite(cfg))
    if (r.id == "weyl.trace_global_formula") recorded = r.status == CheckStatus::kReported && r.max_abs_error > 0.5;

  verdict(6, "trace ground truth and Z_2 unit discrepancy", diag < 1e-11 && discrepancy && recorded,
          fmt("diag err=%.2e; Z_2 unit: direct=%g formula=%g (reported)", diag, direct.real(), formula.real()));
}

void trace_of_product() {
  double err = 0, variant = 0;
  const GroupContext ctx{FiniteAbelianGroup({5})};
  RandomStream rng(kSeed, "acceptance.product");
  for (int j : {1, 2})
    for (int t = 0; t < 20; ++t) {
      const auto r = trace_product_report(ctx, random_symbol(5, rng), random_symbol(5, rng), j);
      err = std::max({err, std::abs(r.direct - r.hs_pairing_route), std::abs(r.direct - r.derived_phase_formula)});
      variant = std::max(variant, std::abs(r.direct - r.variant_formula));
    }
  verdict(7, "trace of a product, three routes", err < 1e-10,
          fmt("route err=%.2e; variant formula deviation=%.3g (reported)", err, variant));
}

void l2_boundedness() {
  const auto z2 = make_space({2}, {-1, 1});
  const auto id = l2_bound(z2, OperatorSymbolField::identity(z2));
  const bool id_ok = std::abs(id.op_norm - 1.0) < 1e-12 && std::abs(id.bound - 2 * std::sqrt(2.0)) < 1e-12;

  int violations = 0, fields = 0;
  double worst = 0;
  for (auto [moduli, modes] : {std::pair{std::vector<int>{3}, std::vector<int>{-1, 1}},
                               std::pair{std::vector<int>{2}, std::vector<int>{-1, 1}}}) {
    const auto space = make_space(moduli, modes);
    RandomStream rng(kSeed, "acceptance.bound");
    for (int t = 0; t < 20; ++t, ++fields) {
      const auto c = l2_bound(space, random_symbol_field(space, rng));
      if (!(c.op_norm <= c.bound + 1e-10)) ++violations;
      worst = std::max(worst, c.op_norm / c.bound);
    }
  }
  verdict(8, "L2 bound on random and identity fields", id_ok && violations == 0,
          fmt("%g fields, max op_norm/bound=%.3f; identity on Z_2: op_norm=%.12g bound=%.12g", fields, worst,
              id.op_norm, id.bound));
}

void recovery() {
  const auto space = make_space({3}, {-1, 1});
  RandomStream rng(kSeed, "acceptance.recovery");
  const auto sigma = random_symbol_field(space, rng);
  double err = 0;
  for (int t = 0; t < 10; ++t) {
    const auto r = recovery_diagnostic(space, sigma, rng.uniform_int(0, space.size() - 1));
    err = std::max(err, std::abs(r.lhs - r.rhs) / r.rhs);
  }
  verdict(9, "symbol recovery at 10 random points", err < 1e-9, fmt("max rel err=%.2e", err));
}

void hs_characterization() {
  const auto space = make_space({2}, {-1, 1});
  const ComplexOperator proj = band_projector(space);
  RandomStream rng(kSeed, "acceptance.hs");
  double route = 0, norm = 0;
  for (int t = 0; t < 20; ++t) {
    const AlphaField alpha = random_alpha_field(space, rng);
    const ComplexOperator t_sigma = assemble_pdo(space, hs_symbol_from_alpha(space, alpha));
    route = std::max(route, max_abs(kernel_operator(space, pdo_kernel_from_alpha(space, alpha)) * proj - t_sigma));
    route = std::max(route, max_abs(kernel_operator(space, pdo_kernel_variant(space, alpha)) * proj - t_sigma));
    norm = std::max(norm, std::abs(hs_norm(t_sigma) - std::sqrt(alpha_norm_sq(space, alpha))));
  }
  verdict(10, "HS characterization on H(Z_2), modes +-1", route < 1e-10 && norm < 1e-10,
          fmt("symbol vs kernel route=%.2e  |T|_HS - |alpha|=%.2e", route, norm));
}

void trace_class() {
  double resid = 0, diag = 0, refl = 0, plain = 0;
  for (auto [moduli, modes] : {std::pair{std::vector<int>{2}, std::vector<int>{-1, 1}},
                               std::pair{std::vector<int>{3}, std::vector<int>{-1, 1}}}) {
    const auto space = make_space(moduli, modes);
    RandomStream rng(kSeed, "acceptance.trace_class");
    for (int t = 0; t < 10; ++t) {
      const AlphaField a1 = random_alpha_field(space, rng), a2 = random_alpha_field(space, rng);
      const auto c = trace_class_check(space, a1, a2);
      resid = std::max({resid, c.factorization_residual, std::abs(c.trace_direct - c.trace_of_factors)});
      const auto r = trace_pdo_report(space, a1, a2);
      diag = std::max(diag, std::abs(r.direct - r.kernel_diagonal));
      refl = std::max(refl, std::abs(r.direct - r.reflected_diagonal));
      plain = std::max(plain, std::abs(r.direct - r.plain_diagonal));
    }
  }
  verdict(11, "trace-class factorization and kernel trace", resid < 1e-10 && diag < 1e-10,
          fmt("residual=%.2e diag err=%.2e; reflected dev=%.3g plain dev=%.3g (reported)", resid, diag, refl,
              plain));
}

void determinism() {
  SuiteConfig cfg;
  cfg.trials = 3;
  cfg.seed = kSeed;
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = (dir / "heisenlab_acceptance_a.json").string();
  const auto b = (dir / "heisenlab_acceptance_b.json").string();
  emit_report(cfg, run_suite(cfg), a);
  emit_report(cfg, run_suite(cfg), b);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string ta = slurp(a), tb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  verdict(12, "byte-identical reports for identical config", !ta.empty() && ta == tb,
          fmt("%g bytes each", static_cast<double>(ta.size())));
}

}  // namespace

int main() {
  representation_law();
  fourier_inversion();
  plancherel();
  weyl_isometry_bijection();
  twisted_homomorphism();
  trace_ground_truth();
  trace_of_product();
  l2_boundedness();
  recovery();
  hs_characterization();
  trace_class();
  determinism();
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "heisenlab/verify.hpp"

using namespace heisenlab;

namespace {

HeisenbergSpace make_space(std::vector<int> moduli, std::vector<int> modes) {
  GroupContext ctx{FiniteAbelianGroup(std::move(moduli))};
  ModeSet set = ModeSet::from_list(ctx, modes);
  const int N = 4 * set.max_abs() + 1;
  return HeisenbergSpace(std::move(ctx), N, std::move(set));
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

AlphaField zero_alpha(const HeisenbergSpace& space) {
  AlphaField a;
  for (int p = 0; p < space.size(); ++p) {
    HFunction f = HFunction::zero(space.order());
    for (int j : space.modes().modes()) f.modes.emplace(-j, ScalarSymbol(space.order()));
    a.push_back(f);
  }
  return a;
}

}  // namespace

TEST_CASE("identity and zero fields") {
  const auto space = make_space({3}, {-1, 1});
  const auto ident = OperatorSymbolField::identity(space);
  const OperatorSymbolField zero(space);
  RandomStream rng(1, "fields");
  for (int t = 0; t < 5; ++t) {
    const HFunction f = random_h_function(space, rng, false);
    CHECK(max_abs(apply_pdo(space, ident, f) - f.to_grid(space)) < 1e-11);
    CHECK(max_abs(apply_pdo(space, zero, f)) == 0.0);
  }
  CHECK(max_abs(assemble_pdo(space, zero)) == 0.0);

  const ComplexOperator p = band_projector(space);
  CHECK(max_abs(assemble_pdo(space, ident) - p) < 1e-11);
  CHECK(max_abs(p * p - p) < 1e-12);
  CHECK(max_abs(p - p.adjoint()) < 1e-12);
  CHECK(trace(p).real() == doctest::Approx(2 * 3 * 3));
}

TEST_CASE("apply_pdo rejects out-of-domain input") {
  const auto space = make_space({3}, {-1, 1});
  const auto ident = OperatorSymbolField::identity(space);
  RandomStream rng(2, "reject");
  CHECK_THROWS_AS(apply_pdo(space, ident, random_h_function(space, rng, true)), ModeError);
  HFunction foreign = HFunction::zero(3);
  foreign.modes.emplace(2, random_symbol(3, rng));
  CHECK_THROWS_AS(apply_pdo(space, ident, foreign), ModeError);
  CHECK_THROWS_AS(ident.at(0, 2), ModeError);
  CHECK_THROWS_AS(ident.at(space.size(), 1), StructuralError);
}

TEST_CASE("two-route agreement") {
  for (auto moduli : {std::vector<int>{3}, std::vector<int>{2, 3}}) {
    const auto space = make_space(moduli, {-1, 1});
    RandomStream rng(3, "two-route");
    for (int t = 0; t < 3; ++t) {
      const auto sigma = random_symbol_field(space, rng);
      const HFunction f = random_h_function(space, rng, false);
      const Vector direct = apply_pdo(space, sigma, f);
      CHECK(max_abs(assemble_pdo(space, sigma) * f.to_grid(space) - direct) < 1e-11);
      for (int p : {0, space.size() / 2, space.size() - 1})
        CHECK(std::abs(apply_pdo_at(space, sigma, f, p) - direct[p]) < 1e-12);
    }
  }
}

TEST_CASE("L2 bound") {
  const auto z2 = make_space({2}, {-1, 1});
  const auto zero = l2_bound(z2, OperatorSymbolField(z2));
  CHECK(zero.bound == 0.0);
  CHECK(zero.op_norm == doctest::Approx(0.0));

  const auto id = l2_bound(z2, OperatorSymbolField::identity(z2));
  CHECK(id.bound == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(id.op_norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id.holds);

  const auto space = make_space({3}, {-1, 1});
  RandomStream rng(4, "bound");
  for (int t = 0; t < 20; ++t) {
    const auto c = l2_bound(space, random_symbol_field(space, rng));
    CHECK(c.holds);
    CHECK(c.op_norm <= c.bound + 1e-10);
  }
}

TEST_CASE("recovery diagnostic") {
  const auto space = make_space({3}, {-1, 1});
  const auto z = recovery_diagnostic(space, OperatorSymbolField(space), 4);
  CHECK(std::abs(z.lhs) < 1e-14);
  CHECK(z.rhs == 0.0);

  const auto id = recovery_diagnostic(space, OperatorSymbolField::identity(space), 7);
  CHECK(id.rhs == doctest::Approx(2 * 3));
  CHECK(std::abs(id.lhs - cplx(id.rhs)) < 1e-10);

  RandomStream rng(5, "recovery");
  const auto sigma = random_symbol_field(space, rng);
  for (int t = 0; t < 10; ++t) {
    const int p = rng.uniform_int(0, space.size() - 1);
    const auto r = recovery_diagnostic(space, sigma, p);
    CHECK(std::abs(r.lhs - r.rhs) < 1e-9 * r.rhs);
  }
}

TEST_CASE("HS symbols from alpha") {
  const auto space = make_space({2}, {-1, 1});
  const ComplexOperator proj = band_projector(space);

  SUBCASE("zero alpha") {
    const auto alpha = zero_alpha(space);
    const auto sigma = hs_symbol_from_alpha(space, alpha);
    for (int p = 0; p < space.size(); ++p)
      for (int j : sigma.modes()) CHECK(max_abs(sigma.at(p, j)) == 0.0);
    CHECK(max_abs(pdo_kernel_from_alpha(space, alpha)) == 0.0);
  }

  SUBCASE("point-independent single mode") {
    RandomStream rng(6, "single");
    const ScalarSymbol g = random_symbol(2, rng);
    AlphaField alpha;
    for (int p = 0; p < space.size(); ++p) {
      HFunction f = HFunction::zero(2);
      f.modes.emplace(-1, g);
      alpha.push_back(f);
    }
    const auto sigma = hs_symbol_from_alpha(space, alpha);
    for (int p = 0; p < space.size(); ++p) {
      const ComplexOperator expect = rho_matrix(space.context(), 1, space.point(p)) * weyl_matrix(space.context(), g, 1);
      CHECK(max_abs(sigma.at(p, 1) - expect) < 1e-12);
      CHECK(max_abs(sigma.at(p, -1)) == 0.0);
    }
  }

  SUBCASE("random alpha: kernel route, HS norm, field norm") {
    RandomStream rng(7, "alpha");
    for (int t = 0; t < 5; ++t) {
      const AlphaField alpha = random_alpha_field(space, rng);
      const auto sigma = hs_symbol_from_alpha(space, alpha);
      const ComplexOperator t_sigma = assemble_pdo(space, sigma);
      const ComplexOperator k = kernel_operator(space, pdo_kernel_from_alpha(space, alpha));
      CHECK(max_abs(k * proj - t_sigma) < 1e-10);
      CHECK(max_abs(k * proj - k) < 1e-12);
      CHECK(hs_norm(t_sigma) == doctest::Approx(std::sqrt(alpha_norm_sq(space, alpha))).epsilon(1e-10));

      double field = 0;
      for (int p = 0; p < space.size(); ++p)
        for (int j : sigma.modes()) field += space.weight() * sigma.at(p, j).squaredNorm();
      CHECK(field == doctest::Approx(alpha_norm_sq(space, alpha)).epsilon(1e-10));

      // On Z_2 with odd modes the variant kernel coincides with the derived one.
      CHECK(max_abs(pdo_kernel_variant(space, alpha) - pdo_kernel_from_alpha(space, alpha)) < 1e-12);

      const AlphaField back = alpha_from_pdo_kernel(space, pdo_kernel_from_alpha(space, alpha));
      CHECK(max_abs(alpha_values(space, back) - alpha_values(space, alpha)) < 1e-11);
    }
  }

  SUBCASE("rank-one alpha") {
    RandomStream rng(8, "rank-one");
    const HFunction b = random_h_function(space, rng, false);
    HFunction b_neg = HFunction::zero(2);
    for (const auto& [j, s] : b.modes) b_neg.modes.emplace(-j, s);
    AlphaField alpha;
    double a_sq = 0;
    for (int p = 0; p < space.size(); ++p) {
      HFunction f = b_neg;
      const cplx a = rng.complex();
      a_sq += std::norm(a) * space.weight();
      f *= a;
      alpha.push_back(f);
    }
    const ComplexOperator t = assemble_pdo(space, hs_symbol_from_alpha(space, alpha));
    const auto s = singular_values(t).values;
    CHECK(s[1] < 1e-10 * s[0]);
    const double b_sq = b_neg.to_grid(space).squaredNorm() * space.weight();
    CHECK(hs_norm(t) == doctest::Approx(std::sqrt(a_sq * b_sq)).epsilon(1e-10));
  }
}

TEST_CASE("variant kernel deviates on Z_5") {
  const auto space = make_space({5}, {-2, -1, 1, 2});
  RandomStream rng(9, "variant");
  const AlphaField alpha = random_alpha_field(space, rng);
  CHECK(max_abs(pdo_kernel_variant(space, alpha) - pdo_kernel_from_alpha(space, alpha)) > 1e-3);
}

TEST_CASE("trace reports") {
  const auto space = make_space({2}, {-1, 1});
  const auto r0 = trace_pdo_report(space, zero_alpha(space));
  CHECK(std::abs(r0.direct) < 1e-14);
  CHECK(r0.kernel_diagonal == cplx(0));
  CHECK(r0.reflected_diagonal == cplx(0));
  CHECK(r0.plain_diagonal == cplx(0));

  RandomStream rng(10, "trace");
  for (int t = 0; t < 5; ++t) {
    const AlphaField a1 = random_alpha_field(space, rng), a2 = random_alpha_field(space, rng);
    const auto r = trace_pdo_report(space, a1, a2);
    CHECK(std::abs(r.direct - r.kernel_diagonal) < 1e-10);
    CHECK(std::abs(r.direct - r.reflected_diagonal) < 1e-10);
  }

  const auto z3 = make_space({3}, {-1, 1});
  RandomStream rng3(11, "trace3");
  const auto r3 = trace_pdo_report(z3, random_alpha_field(z3, rng3));
  CHECK(std::abs(r3.direct - r3.kernel_diagonal) < 1e-10);
}

TEST_CASE("trace-class factorization") {
  const auto space = make_space({2}, {-1, 1});
  RandomStream rng(12, "trace-class");

  SUBCASE("zero right factor") {
    const auto c = trace_class_check(space, random_alpha_field(space, rng), zero_alpha(space));
    CHECK(c.trace_norm == doctest::Approx(0.0));
    CHECK(c.factorization_residual < 1e-12);
  }
  SUBCASE("projector") {
    auto [pa, pb] = projector_alphas(space);
    const auto c = trace_class_check(space, pa, pb);
    CHECK(c.trace_norm == doctest::Approx(2 * 2 * 2).epsilon(1e-10));
    CHECK(c.factorization_residual < 1e-10);
    const ComplexOperator t = assemble_pdo(space, hs_symbol_from_alpha(space, compose_alpha(space, pa, pb)));
    CHECK(max_abs(t - band_projector(space)) < 1e-10);
  }
  SUBCASE("random") {
    for (int t = 0; t < 5; ++t) {
      const auto c = trace_class_check(space, random_alpha_field(space, rng), random_alpha_field(space, rng));
      CHECK(c.factorization_residual < 1e-10);
      CHECK(std::abs(c.trace_direct - c.trace_of_factors) < 1e-10);
      CHECK(c.trace_norm <= c.hs_norm_left * c.hs_norm_right + 1e-10);
    }
  }
}

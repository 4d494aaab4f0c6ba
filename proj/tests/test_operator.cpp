#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "heisenlab/operator.hpp"

using namespace heisenlab;

namespace {

ComplexOperator random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  ComplexOperator m(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) m(r, c) = std::complex<double>(d(rng), d(rng));
  return m;
}

}  // namespace

TEST_CASE("norms of the identity and zero") {
  const ComplexOperator id = ComplexOperator::Identity(4, 4);
  CHECK(hs_norm(id) == doctest::Approx(2.0));
  CHECK(trace(id) == std::complex<double>(4.0));
  CHECK(op_norm(id) == doctest::Approx(1.0));
  CHECK(trace_norm(id) == doctest::Approx(4.0));

  const ComplexOperator z = ComplexOperator::Zero(3, 3);
  CHECK(hs_norm(z) == 0.0);
  CHECK(trace(z) == std::complex<double>(0.0));
  CHECK(op_norm(z) == 0.0);
  CHECK(trace_norm(z) == 0.0);
  CHECK(singular_values(ComplexOperator()).values.empty());
}

TEST_CASE("singular spectrum of a diagonal matrix") {
  ComplexOperator d = ComplexOperator::Zero(4, 4);
  d(0, 0) = 2.0;
  d(1, 1) = std::complex<double>(0, -5);
  d(3, 3) = -1.0;
  const auto s = singular_values(d).values;
  REQUIRE(s.size() == 4);
  CHECK(s[0] == doctest::Approx(5));
  CHECK(s[1] == doctest::Approx(2));
  CHECK(s[2] == doctest::Approx(1));
  CHECK(s[3] == doctest::Approx(0));
  CHECK(op_norm(d) == doctest::Approx(5));
  CHECK(trace_norm(d) == doctest::Approx(8));
}

TEST_CASE("clustered spectrum of a projector") {
  // Rank-3 orthogonal projector in dimension 40, perturbed at rounding level.
  std::mt19937_64 rng(11);
  const ComplexOperator a = random_matrix(40, rng);
  Eigen::HouseholderQR<ComplexOperator> qr(a);
  const ComplexOperator q = qr.householderQ() * ComplexOperator::Identity(40, 3);
  ComplexOperator p = q * q.adjoint();
  p += 1e-16 * random_matrix(40, rng);
  CHECK(trace_norm(p) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(op_norm(p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random spectral identities") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const ComplexOperator a = random_matrix(5, rng);
    const auto s = singular_values(a).values;
    double sum_sq = 0;
    for (size_t k = 0; k < s.size(); ++k) {
      sum_sq += s[k] * s[k];
      CHECK(s[k] >= 0.0);
      if (k) CHECK(s[k] <= s[k - 1]);
    }
    CHECK(trace_norm(a) >= std::abs(trace(a)));
    CHECK(std::abs(hs_norm(a) * hs_norm(a) - sum_sq) < 1e-10);
    CHECK(op_norm(a) == doctest::Approx(s.front()).epsilon(1e-12));
  }
}

TEST_CASE("trace cyclicity and HS inner product") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const ComplexOperator a = random_matrix(6, rng), b = random_matrix(6, rng);
    CHECK(std::abs(trace(a * b) - trace(b * a)) < 1e-10 * (1 + a.norm() * b.norm()));
    CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-10);
    CHECK(std::abs(hs_inner(a, b) - trace(b.adjoint() * a)) < 1e-10);
    CHECK(hs_inner(a, a).real() > 0);
    CHECK(std::abs(hs_inner(a, a).imag()) < 1e-12);
    CHECK(std::abs(trace(a * b)) <= hs_norm(a) * hs_norm(b) + 1e-12);
  }
}

TEST_CASE("HS factorization") {
  SUBCASE("zero") {
    const auto f = hs_factorize(ComplexOperator::Zero(3, 3));
    CHECK(f.left.norm() == 0.0);
    CHECK(f.right.norm() == 0.0);
  }
  SUBCASE("identity") {
    const auto f = hs_factorize(ComplexOperator::Identity(3, 3));
    CHECK((f.left * f.right - ComplexOperator::Identity(3, 3)).norm() < 1e-12);
  }
  SUBCASE("random") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
      const ComplexOperator a = random_matrix(6, rng);
      const auto f = hs_factorize(a);
      CHECK((a - f.left * f.right).norm() < 1e-10 * (1 + a.norm()));
      CHECK(std::abs(f.left.squaredNorm() - trace_norm(a)) < 1e-9);
      CHECK(std::abs(f.right.squaredNorm() - trace_norm(a)) < 1e-9);
    }
  }
  SUBCASE("rank deficient") {
    std::mt19937_64 rng(13);
    const ComplexOperator u = random_matrix(6, rng).leftCols(2);
    const ComplexOperator a = u * u.adjoint();
    const auto f = hs_factorize(a);
    CHECK((a - f.left * f.right).norm() < 1e-10 * (1 + a.norm()));
    CHECK(std::abs(f.left.squaredNorm() - trace_norm(a)) < 1e-9);
  }
}

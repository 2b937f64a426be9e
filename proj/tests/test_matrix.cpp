#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pdineq/fuzz.hpp"
#include "pdineq/matrix.hpp"
#include "pdineq/rational.hpp"

using namespace pdineq;
using namespace pdineq::testing;

TEST_CASE("cholesky of small known matrices") {
  const auto l = cholesky(SymMatrix(Matrix{{4, 2}, {2, 3}}));
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(1, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(l(0, 1) == 0.0);

  const auto one = cholesky(SymMatrix(Matrix{{9}}));
  CHECK(one(0, 0) == doctest::Approx(3.0));
}

TEST_CASE("cholesky rejects indefinite and semidefinite input") {
  CHECK_THROWS_AS(cholesky(SymMatrix(Matrix{{1, 2}, {2, 1}})), Error);
  CHECK_THROWS_AS(PDMatrix(Matrix{{1, 1}, {1, 1}}), Error);
  try {
    PDMatrix(Matrix{{-1}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
}

TEST_CASE("symmetric matrices reject asymmetric input") {
  CHECK_THROWS_AS(SymMatrix(Matrix{{1, 2}, {3, 1}}), Error);
  CHECK_THROWS_AS(SymMatrix(Matrix(2, 3)), Error);
}

TEST_CASE("cholesky reconstructs random pd matrices") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 9;
    const auto a = gen_pd(rng, n, GeneratorStyle::Gram, 1e6, 1.0);
    const Matrix& l = a.factor().matrix();
    CHECK(relative_error(l * l.transpose(), a.matrix()) < 1e-12);
  }
}

TEST_CASE("pd_inverse against the 2x2 adjugate formula") {
  const PDMatrix a(Matrix{{4, 1}, {1, 3}});
  const Matrix inv = pd_inverse(a).matrix();
  const double det = 11.0;
  CHECK(inv(0, 0) == doctest::Approx(3 / det));
  CHECK(inv(0, 1) == doctest::Approx(-1 / det));
  CHECK(inv(1, 1) == doctest::Approx(4 / det));
}

TEST_CASE("pd_inverse times input is the identity") {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 8;
    const auto a = gen_pd(rng, n, GeneratorStyle::Spectral, 1e4, 1.0);
    CHECK(relative_error(a.matrix() * pd_inverse(a).matrix(), Matrix::identity(n)) < 1e-9);
  }
}

TEST_CASE("jacobi eigenvalues of simple matrices") {
  const auto e = jacobi_eigen(SymMatrix(Matrix{{2, 1}, {1, 2}}));
  CHECK(e.values[0] == doctest::Approx(3.0));
  CHECK(e.values[1] == doctest::Approx(1.0));

  const auto diag = jacobi_eigen(SymMatrix(Matrix{{1, 0, 0}, {0, 5, 0}, {0, 0, 3}}));
  CHECK(diag.values.vector() == std::vector<double>{5, 3, 1});
}

TEST_CASE("jacobi reconstruction and orthogonality on random symmetric matrices") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  double worst = 0.0, worst_orth = 0.0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 12;
    const Matrix a = random_symmetric(rng, n);
    const auto e = jacobi_eigen(SymMatrix(a), true);
    const Matrix& v = *e.vectors;
    worst = std::max(worst, relative_error(v * Matrix::diagonal(e.values.values()) * v.transpose(), a));
    worst_orth = std::max(worst_orth, relative_error(v.transpose() * v, Matrix::identity(n)));
    for (std::size_t i = 1; i < n; ++i) CHECK(e.values[i - 1] >= e.values[i]);
  }
  CHECK(worst <= 1e-10);
  CHECK(worst_orth <= 1e-10);
}

TEST_CASE("jacobi matches characteristic polynomial bisection on 2x2 and 3x3") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 2;
    const Matrix a = random_symmetric(rng, n);
    const auto got = jacobi_eigen(SymMatrix(a)).values;
    const auto want = charpoly_eigenvalues(a);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(got[i] - want[i]) <= 1e-9 * std::max(1.0, std::abs(want[i])));
  }
}

TEST_CASE("jacobi matches inertia bisection on larger matrices") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 4 + t % 5;
    const Matrix a = random_symmetric(rng, n);
    const auto got = jacobi_eigen(SymMatrix(a)).values;
    const auto want = inertia_eigenvalues(a);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(got[i] - want[i]) <= 1e-9 * std::max(1.0, std::abs(want[i])));
  }
}

TEST_CASE("trace and determinant agree with the spectrum") {
  Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 8;
    const auto a = gen_pd(rng, n, GeneratorStyle::Spectral, 1e3, 1.0);
    const auto s = jacobi_eigen(a).values;
    double sum = 0.0, log_prod = 0.0;
    for (double v : s.values()) {
      sum += v;
      log_prod += std::log(v);
    }
    CHECK(sum == doctest::Approx(a.matrix().trace()).epsilon(1e-10));
    CHECK(log_det_pd(a) == doctest::Approx(log_prod).epsilon(1e-10));
    CHECK(det_pd(a) == doctest::Approx(std::exp(log_prod)).epsilon(1e-9));
  }
}

TEST_CASE("pd_sqrt squares back and pd_power matches repeated products") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 7;
    const auto a = gen_pd(rng, n, GeneratorStyle::Spectral, 1e3, 1.0);
    const Matrix r = pd_sqrt(a).matrix();
    CHECK(relative_error(r * r, a.matrix()) < 1e-10);
    CHECK(relative_error(pd_power(a, 2.0).matrix(), a.matrix() * a.matrix()) < 1e-10);
    CHECK(relative_error(pd_power(a, -1.0).matrix(), pd_inverse(a).matrix()) < 1e-9);
    CHECK(relative_error(spectral_power(a, 3.0), a.matrix() * a.matrix() * a.matrix()) < 1e-9);
  }
}

TEST_CASE("eigenvalues of a product of pd matrices") {
  // λ(AB) with A = diag(2, 3), B = I is (3, 2).
  const auto s = eig_pd_product(PDMatrix(Matrix{{2, 0}, {0, 3}}), PDMatrix(Matrix::identity(2)));
  CHECK(s[0] == doctest::Approx(3.0));
  CHECK(s[1] == doctest::Approx(2.0));

  Rng rng(18);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 3;
    const auto a = gen_pd(rng, n, GeneratorStyle::Spectral, 1e3, 1.0);
    const auto b = gen_pd(rng, n, GeneratorStyle::Spectral, 1e3, 1.0);
    const auto ab = eig_pd_product(a, b);
    const auto ba = eig_pd_product(b, a);
    const auto want = product_eigenvalues(a.matrix(), b.matrix());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(ab[i] == doctest::Approx(ba[i]).epsilon(1e-9));
      CHECK(ab[i] == doctest::Approx(want[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("hyperbolic power at integer exponents equals repeated products") {
  Rng rng(19);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 6;
    const auto a = gen_pd(rng, n, GeneratorStyle::Spectral, 1e3, 1.0);
    const auto b = gen_pd(rng, n, GeneratorStyle::Spectral, 1e3, 1.0);
    const Matrix ab = a.matrix() * b.matrix();
    CHECK(relative_error(hyperbolic_power(a, b, 1.0), ab) < 1e-9);
    CHECK(relative_error(hyperbolic_power(a, b, 2.0), ab * ab) < 1e-9);
    CHECK(relative_error(hyperbolic_power(a, b, 0.0), Matrix::identity(n)) < 1e-9);
  }
}

TEST_CASE("hyperbolic power semigroup identity") {
  Rng rng(20);
  const double ps[] = {-1.0, 0.5, 1.0, 2.0};
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 6;
    const auto a = gen_pd(rng, n, GeneratorStyle::Spectral, 100.0, 1.0);
    const auto b = gen_pd(rng, n, GeneratorStyle::Spectral, 100.0, 1.0);
    for (double p : ps)
      for (double q : ps) {
        const Matrix lhs = hyperbolic_power(a, b, p) * hyperbolic_power(a, b, q);
        CHECK(relative_error(lhs, hyperbolic_power(a, b, p + q)) < 1e-9);
      }
  }
}

TEST_CASE("hyperbolic power determinant is the product of powered eigenvalues") {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 5;
    const auto a = gen_pd(rng, n, GeneratorStyle::Spectral, 100.0, 1.0);
    const auto b = gen_pd(rng, n, GeneratorStyle::Spectral, 100.0, 1.0);
    const auto lam = eig_pd_product(a, b);
    for (double p : {-1.0, 0.5, 2.0}) {
      double want = 1.0;
      for (double v : lam.values()) want *= std::pow(v, p);
      const Matrix x = hyperbolic_power(a, b, p);
      const Rational det = det_exact(RationalMatrix::from_matrix(x));
      CHECK(det.get_d() == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("exact and floating point determinants agree") {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> u(-20, 20);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 6;
    RationalMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = Rational(u(rng), 4);
    RationalMatrix gt(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gt(i, j) = g(j, i);
    const RationalMatrix a = g * gt + RationalMatrix::identity(n);
    const double exact = det_exact(a).get_d();
    CHECK(det_pd(PDMatrix(a.to_matrix())) == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("singular values") {
  const auto s = singular_values(Matrix{{3, 0}, {0, -4}});
  CHECK(s[0] == doctest::Approx(4.0));
  CHECK(s[1] == doctest::Approx(3.0));
  // Rank one: [[1, 1], [1, 1]] has s = (2, 0).
  const auto r1 = singular_values(Matrix{{1, 1}, {1, 1}});
  CHECK(r1[0] == doctest::Approx(2.0));
  CHECK(r1[1] == doctest::Approx(0.0));
  const auto wide = singular_values(Matrix{{0, 2, 0}, {1, 0, 0}});
  REQUIRE(wide.size() == 2);
  CHECK(wide[0] == doctest::Approx(2.0));
  CHECK(wide[1] == doctest::Approx(1.0));
}

TEST_CASE("singular values match square roots of the gram spectrum") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 7;
    Matrix x(n, n);
    for (double& v : x.data()) v = g(rng);
    const auto s = singular_values(x);
    const auto l = jacobi_eigen(SymMatrix(symmetrize(x.transpose() * x))).values;
    for (std::size_t i = 0; i < n; ++i)
      CHECK(s[i] * s[i] == doctest::Approx(l[i]).epsilon(1e-9).scale(l[0]));
  }
}

TEST_CASE("loewner order") {
  const SymMatrix a(Matrix{{1, 0}, {0, 1}});
  const SymMatrix b(Matrix{{2, 0}, {0, 1}});
  CHECK(loewner_le(a, b, 1e-9));
  CHECK_FALSE(loewner_le(b, a, 1e-9));
  CHECK(loewner_le(a, a, 1e-9));
  const auto cmp = loewner_compare(b, a, 1e-9);
  CHECK(cmp.min_eigenvalue == doctest::Approx(-1.0));
}

TEST_CASE("weyl monotonicity under pd perturbation") {
  Rng rng(22);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 7;
    const auto a = gen_pd(rng, n, GeneratorStyle::Spectral, 1e3, 1.0);
    const auto e = gen_pd(rng, n, GeneratorStyle::Spectral, 1e3, 1e-2);
    const SymMatrix b(a.matrix() + e.matrix());
    REQUIRE(loewner_le(a, b, 1e-9));
    const auto la = jacobi_eigen(a).values;
    const auto lb = jacobi_eigen(b).values;
    for (std::size_t i = 0; i < n; ++i) CHECK(la[i] <= lb[i] + 1e-9);
  }
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(Matrix(2, 2) * Matrix(3, 3), Error);
  CHECK_THROWS_AS(eig_pd_product(PDMatrix(Matrix::identity(2)), PDMatrix(Matrix::identity(3))), Error);
}

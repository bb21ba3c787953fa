#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "generators.hpp"
#include "jamesop/error.hpp"
#include "jamesop/regular.hpp"

using namespace jamesop;

TEST_CASE("modulus and positive parts") {
  Matrix a(2, 2);
  a << 1, -2, -3, 0;
  Matrix expected(2, 2);
  expected << 1, 2, 3, 0;
  CHECK(modulus(a) == expected);
  const PositiveParts parts = positive_decomposition(a);
  CHECK(parts.positive - parts.negative == a);
  CHECK(parts.positive + parts.negative == expected);
  CHECK(parts.positive.minCoeff() >= 0.0);
  CHECK(parts.negative.minCoeff() >= 0.0);
}

TEST_CASE("small spectral and regular norms") {
  CHECK(spectral_norm(Matrix::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(spectral_norm(Matrix::Ones(2, 2)) == doctest::Approx(2.0).epsilon(1e-13));
  Matrix a1(2, 2);
  a1 << 1, 1, 1, -1;
  CHECK(spectral_norm(a1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(regular_norm(a1) == doctest::Approx(2.0).epsilon(1e-13));
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 0.5, -4, 2;
  CHECK(regular_norm(d) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(spectral_norm(Matrix::Zero(2, 2)) == 0.0);
}

TEST_CASE("Walsh matrices") {
  CHECK(walsh_matrix(1) == (Matrix(2, 2) << 1, 1, 1, -1).finished());
  const Matrix a2 = walsh_matrix(2);
  const Matrix a1 = walsh_matrix(1);
  CHECK(a2.topLeftCorner(2, 2) == a1);
  CHECK(a2.topRightCorner(2, 2) == a1);
  CHECK(a2.bottomLeftCorner(2, 2) == a1);
  CHECK(a2.bottomRightCorner(2, 2) == -a1);
  for (int n = 1; n <= 6; ++n) CHECK(walsh_gram_exact(n));
  CHECK(walsh_ratio(1) == doctest::Approx(1.4142135623730951).epsilon(1e-13));
  CHECK(walsh_ratio(3) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-12));
  const WalshNorms w8 = walsh_norms(8);
  CHECK(w8.ratio == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(w8.residual <= 1e-9);
  CHECK(std::abs(w8.ratio_iterative - 16.0) <= 1e-9 * 16.0);
}

TEST_CASE("Walsh caps") {
  CHECK_THROWS_AS(walsh_matrix(0), Error);
  try {
    walsh_matrix(11);
    FAIL("expected cap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapExceeded);
  }
  CHECK_NOTHROW(walsh_matrix(11, 11));
}

TEST_CASE("rejected matrices") {
  CHECK_THROWS_AS(spectral_norm(Matrix(0, 0)), Error);
  Matrix bad = Matrix::Ones(2, 2);
  bad(0, 1) = NAN;
  CHECK_THROWS_AS(regular_norm(bad), Error);
}

TEST_CASE("property: power iteration agrees with a full SVD") {
  gen::Source src(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = src.matrix(src.index(1, 9), src.index(1, 9));
    const double svd = Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
    CHECK(std::abs(spectral_norm(a) - svd) <= 1e-9 * std::max(1.0, svd));
    const Matrix m = modulus(a);
    const double reg_svd = Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
    CHECK(std::abs(regular_norm(a) - reg_svd) <= 1e-9 * std::max(1.0, reg_svd));
  }
}

TEST_CASE("property: norm ordering") {
  gen::Source src(22);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = src.matrix(src.index(1, 8), src.index(1, 8));
    const double s = spectral_norm(a), r = regular_norm(a), f = frobenius_norm(a);
    CHECK(s <= r + 1e-12);
    CHECK(s <= f + 1e-12);
    CHECK(r <= std::sqrt(static_cast<double>(std::min(a.rows(), a.cols()))) * f + 1e-12);
    CHECK(regular_norm(modulus(a)) == doctest::Approx(r).epsilon(1e-12));
    CHECK(regular_norm(-a) == doctest::Approx(r).epsilon(1e-12));
  }
}

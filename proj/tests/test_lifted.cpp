#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "jamesop/error.hpp"
#include "jamesop/lifted.hpp"
#include "jamesop/serialize.hpp"

using namespace jamesop;

namespace {

Matrix a1() { return (Matrix(2, 2) << 1, 1, 1, -1).finished(); }

std::vector<std::vector<std::optional<FiniteOperatorOnJ>>> empty_w(std::size_t n) {
  return std::vector<std::vector<std::optional<FiniteOperatorOnJ>>>(n, std::vector<std::optional<FiniteOperatorOnJ>>(n));
}

}  // namespace

TEST_CASE("lifted scalar matrix") {
  // Frozen: A_1 on (f_1, f_1) gives (2 f_1, 0).
  const SquareSumVector x{{JamesVector::unit_f(1, 1), JamesVector::unit_f(1, 1)}};
  CHECK(x.norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const SquareSumVector y = lift_apply(a1(), x);
  CHECK(y.norm() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(james_norm_value(y.components[1]) == 0.0);
  const SquareSumVector z = OperatorMatrix::lift(a1()).apply(x);
  CHECK(z.norm() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("mixed bases are rejected") {
  const SquareSumVector x{{JamesVector::unit_f(1, 2), convert_basis(JamesVector::unit_f(1, 2))}};
  CHECK_THROWS_AS(lift_apply(a1(), x), Error);
}

TEST_CASE("cutoff") {
  auto w = empty_w(2);
  w[1][0] = FiniteOperatorOnJ::shift_difference(3);
  OperatorMatrix op{a1(), w};
  const OperatorMatrix full = cutoff(op, 2);
  CHECK(full.scalar_part == op.scalar_part);
  CHECK(full.has_compact(1, 0));
  const OperatorMatrix head = cutoff(op, 1);
  CHECK(head.scalar_part == (Matrix(2, 2) << 1, 0, 0, 0).finished());
  CHECK(!head.has_compact(1, 0));
}

TEST_CASE("tilde norm") {
  // Frozen: A_1 diag(a) with a = (1, 1) / sqrt 2 has row l1 norms (sqrt 2, sqrt 2).
  const Matrix diag = Matrix::Identity(2, 2) / std::sqrt(2.0);
  CHECK(tilde_evaluate(a1(), diag) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tilde_evaluate(a1(), Matrix::Identity(2, 2)) == doctest::Approx(2.0).epsilon(1e-14));
  const TildeResult t = tilde_norm(a1());
  CHECK(t.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.witness_value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.a.minCoeff() >= 0.0);
  CHECK(t.a.norm() == doctest::Approx(1.0));
}

TEST_CASE("quotient action") {
  CHECK(quotient_action(OperatorMatrix::lift(a1())).isApprox(a1(), 1e-14));
  auto w = empty_w(2);
  w[0][0] = FiniteOperatorOnJ::shift_difference(4);
  w[0][1] = FiniteOperatorOnJ::rank_one({1, 2, -1, 0.5}, 2, 5);
  const Matrix q = quotient_action(OperatorMatrix::compact_only(w));
  CHECK(q.cwiseAbs().maxCoeff() <= 1e-14);
  // A product of lifts acts as the matrix product.
  const Matrix q2 = quotient_action(std::vector<OperatorMatrix>{OperatorMatrix::lift(a1()), OperatorMatrix::lift(a1())});
  CHECK(q2.isApprox(a1() * a1(), 1e-14));
}

TEST_CASE("quotient isometry") {
  BidualSquareSumVector x{{BidualVector{JamesVector::in_e({1, -2}), 3.0}, BidualVector{JamesVector::in_e({0.5}), 4.0}}};
  CHECK(x.tails() == std::vector<double>{3.0, 4.0});
  const QuotientCheck q = quotient_isometry_check(x, 30);
  CHECK(q.expected == doctest::Approx(5.0));
  CHECK(q.lower <= q.distance + 1e-12);
  CHECK(q.residual <= 1e-2);
}

TEST_CASE("sum lift to J(E)") {
  const Matrix rot = (Matrix(2, 2) << 0, -1, 1, 0).finished();
  const JamesVector x(Basis::kE, {1, 0, 0, 1, 2, 2}, 2.0, 2);
  const JamesVector y = james_sum_lift(rot, x);
  CHECK(james_norm_value(y) == doctest::Approx(3.872983346207417).epsilon(1e-14));
  VectorBidualVector w{x, {1.0, 0.0}};
  const VectorBidualVector wy = james_sum_lift(rot, w);
  CHECK(wy.tail[0] == doctest::Approx(0.0));
  CHECK(wy.tail[1] == doctest::Approx(1.0));
  CHECK(vector_bidual_norm(wy) == doctest::Approx(vector_bidual_norm(w)).epsilon(1e-12));
}

TEST_CASE("certify the identity") {
  const WitnessCertificate c = certify_lower_bound(Matrix::Identity(2, 2), OperatorMatrix::lift(Matrix::Zero(2, 2)), 0.1);
  CHECK(c.meets_target);
  CHECK(c.reported_bound >= c.target);
  CHECK(c.reported_bound <= c.upper_estimate + 1e-9);
  CHECK(c.witness.norm() == doctest::Approx(1.0).epsilon(1e-9));
  const CertificateCheck check = verify_certificate(c);
  CHECK_MESSAGE(check.ok, check.detail);
}

TEST_CASE("certify a random matrix against a compact perturbation") {
  gen::Source src(41);
  const Matrix s = src.matrix(2, 2);
  auto w = empty_w(2);
  w[0][0] = FiniteOperatorOnJ::rank_one({1, 2, -1, 0.5, 0}, 1, 5);
  w[1][0] = FiniteOperatorOnJ::rank_one({0.5, -1, 0, 1.5, 0}, 3, 5);
  const WitnessCertificate c = certify_lower_bound(s, OperatorMatrix::compact_only(w), 0.1);
  CHECK(c.meets_target);
  CHECK(verify_certificate(c).ok);

  SUBCASE("round trip through JSON") {
    const WitnessCertificate back = Json(c).get<WitnessCertificate>();
    const CertificateCheck check = verify_certificate(back);
    CHECK_MESSAGE(check.ok, check.detail);
    CHECK(check.recomputed == doctest::Approx(c.reported_bound).epsilon(1e-12));
  }
  SUBCASE("a tampered bound is caught") {
    WitnessCertificate bad = c;
    bad.reported_bound += 0.05;
    CHECK(!verify_certificate(bad).ok);
  }
  SUBCASE("a tampered witness is caught") {
    WitnessCertificate bad = c;
    bad.witness.components[0].coeffs[0] += 0.25;
    CHECK(!verify_certificate(bad).ok);
  }
}

TEST_CASE("property: lifted norm bound") {
  gen::Source src(42);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = src.index(1, 4), m = src.index(1, 8);
    const Matrix s = src.matrix(n, n);
    SquareSumVector x;
    for (std::size_t i = 0; i < n; ++i) x.components.push_back(JamesVector::in_f(src.coeffs(m)));
    if (x.norm() == 0.0) continue;
    const double ratio = lift_apply(s, x).norm() / x.norm();
    CHECK(ratio <= regular_norm(s) * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("property: tilde witness value never exceeds the regular norm") {
  gen::Source src(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = src.index(1, 5);
    const Matrix s = src.matrix(n, n);
    const TildeResult t = tilde_norm(s);
    CHECK(t.value == doctest::Approx(regular_norm(s)).epsilon(1e-10));
    Matrix x = src.matrix(n, n);
    x /= x.norm();
    CHECK(tilde_evaluate(s, x) <= t.value + 1e-10);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "jamesop/error.hpp"
#include "jamesop/james.hpp"

using namespace jamesop;

namespace {

ErrorCode code_of(auto&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInternal;
}

}  // namespace

// Frozen from tests/oracle/derive.py (exhaustive chains, exact fractions).
TEST_CASE("norm of f1 - f2 in F_BASIS") {
  const NormResult r = james_norm(JamesVector::in_f({1, -1, 0}));
  CHECK(r.value == doctest::Approx(1.4142135623730951).epsilon(1e-15));
  CHECK(r.chain == Chain{1, 2, 3});
}

TEST_CASE("norm of e1 - e2 in E_BASIS") {
  const NormResult r = james_norm(JamesVector::in_e({1, -1}));
  CHECK(r.value == doctest::Approx(2.23606797749979).epsilon(1e-15));
  CHECK(r.chain == Chain{1, 2, 3});
}

TEST_CASE("unit f1 has norm one") {
  const NormResult r = james_norm(JamesVector::in_f({1}));
  CHECK(r.value == 1.0);
  CHECK(r.chain == Chain{1, 2});
}

TEST_CASE("frozen norms for other exponents") {
  struct Case {
    JamesVector v;
    double power_sum;
    double norm;
    Chain chain;
  };
  const std::vector<Case> cases{
      {JamesVector::in_e({0.5, -2, 3, 1}, 3.0), 167.625, 5.5137397523206655, {1, 2, 3, 5}},
      {JamesVector::in_f({2, -1, 0.5, 0.25, -3}, 1.5), 9.67409860029115, 4.54018629081806, {1, 2, 3, 5, 6}},
      {JamesVector::in_e({3, 1, 4, 1, 5, 9, 2, 6}), 187.0, 13.674794331177344, {1, 2, 3, 4, 6, 7, 8, 9}},
  };
  for (const Case& c : cases) {
    const NormResult r = james_norm(c.v);
    CHECK(r.value == doctest::Approx(c.norm).epsilon(1e-13));
    CHECK(chain_power_sum(c.v, r.chain) == doctest::Approx(c.power_sum).epsilon(1e-13));
    CHECK(evaluate_chain(c.v, c.chain) == doctest::Approx(c.norm).epsilon(1e-13));
  }
}

TEST_CASE("zero vector") {
  const NormResult r = james_norm(JamesVector::in_f({0, 0, 0}));
  CHECK(r.value == 0.0);
  CHECK(r.chain.size() >= 2);
}

TEST_CASE("basis conversion") {
  const JamesVector e = convert_basis(JamesVector::in_f({1, -1, 0}));
  CHECK(e.basis == Basis::kE);
  CHECK(e.coeffs == std::vector<double>{0, -1, 0});
  CHECK(convert_basis(e) == JamesVector::in_f({1, -1, 0}));
}

TEST_CASE("projections") {
  const JamesVector x = JamesVector::in_f({1, -1, 1});
  const JamesVector head = apply_projection({2, ProjectionSide::kHead}, x);
  const JamesVector tail = apply_projection({2, ProjectionSide::kTail}, x);
  CHECK(head.coeffs == std::vector<double>{1, -1, 0});
  CHECK(tail.coeffs == std::vector<double>{0, 0, 1});
  CHECK(code_of([&] { apply_projection({1, ProjectionSide::kHead}, JamesVector::in_e({1})); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("bidual with a stabilized tail") {
  BidualVector w{JamesVector::in_e({1, -1}), 0.5};
  CHECK(bidual_norm(w) == doctest::Approx(2.29128784747792).epsilon(1e-14));
  // Moving the tail further out does not change the value.
  for (std::size_t m : {4u, 10u, 40u}) CHECK(bidual_norm(w, m) == doctest::Approx(bidual_norm(w)).epsilon(1e-14));
  CHECK(code_of([&] { bidual_norm(w, 2); }) == ErrorCode::kInvalidArgument);
  const JamesVector full = materialize(w, 3);
  CHECK(full.coeffs == std::vector<double>{1.5, -0.5, 0.5});
}

TEST_CASE("vector-valued norms") {
  const JamesVector v(Basis::kE, {1, 0, 0, 1, 2, 2}, 2.0, 2);
  CHECK(james_norm_value(v) == doctest::Approx(3.872983346207417).epsilon(1e-14));
  // Axis-aligned inputs reduce to the scalar norm.
  const JamesVector axis(Basis::kE, {1, 0, -1, 0, 3, 0}, 2.0, 2);
  CHECK(james_norm_value(axis) == doctest::Approx(5.385164807134504).epsilon(1e-14));
  CHECK(james_norm_value(JamesVector::in_e({1, -1, 3})) == doctest::Approx(5.385164807134504).epsilon(1e-14));
}

TEST_CASE("subspace distance") {
  const JamesVector target = JamesVector::unit_f(6, 6);
  SUBCASE("no spanners gives the norm") {
    const DistanceResult d = subspace_distance(target, {});
    CHECK(d.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("distance of f_M to the earlier basis vectors is one") {
    std::vector<JamesVector> span;
    for (std::size_t k = 1; k < 6; ++k) span.push_back(JamesVector::unit_f(k, 6));
    const DistanceResult d = subspace_distance(target, span);
    CHECK(d.lower <= d.value + 1e-12);
    CHECK(d.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(d.lower == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("a target inside the span") {
    std::vector<JamesVector> span{JamesVector::unit_f(6, 6)};
    const DistanceResult d = subspace_distance(target, span);
    CHECK(d.value <= 1e-6);
  }
}

TEST_CASE("rejected inputs") {
  CHECK(code_of([] { james_norm(JamesVector::in_f({1}, 1.0)); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { james_norm(JamesVector::in_f({})); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { james_norm(JamesVector(Basis::kF, {1, 0}, 2.0, 2)); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { james_norm(JamesVector::in_f({1, NAN})); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { james_norm_oracle(JamesVector::in_f(std::vector<double>(20, 1.0))); }) ==
        ErrorCode::kCapExceeded);
}

TEST_CASE("property: dynamic program matches the oracle") {
  gen::Source src(11);
  for (int trial = 0; trial < 400; ++trial) {
    const double p = trial % 3 == 0 ? 2.0 : src.uniform(1.1, 4.0);
    const JamesVector v = src.vector(11, p);
    const NormResult dp = james_norm(v);
    const NormResult oracle = james_norm_oracle(v);
    CHECK(std::abs(dp.value - oracle.value) <= 1e-12 * std::max(1.0, oracle.value));
    CHECK(evaluate_chain(v, dp.chain) == doctest::Approx(dp.value).epsilon(1e-12));
    CHECK(james_norm_fast(v).value == doctest::Approx(dp.value).epsilon(1e-12));
  }
}

TEST_CASE("property: basis independence") {
  gen::Source src(12);
  for (int trial = 0; trial < 300; ++trial) {
    const JamesVector v = src.vector(30);
    const JamesVector w = convert_basis(v);
    CHECK(std::abs(james_norm_value(v) - james_norm_value(w)) <= 1e-12 * std::max(1.0, james_norm_value(v)));
    const JamesVector back = convert_basis(w);
    for (std::size_t i = 0; i < v.coeffs.size(); ++i)
      CHECK(back.coeffs[i] == doctest::Approx(v.coeffs[i]).epsilon(1e-12));
  }
}

TEST_CASE("property: norm axioms") {
  gen::Source src(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = src.index(1, 25);
    const JamesVector x = JamesVector::in_f(src.coeffs(m));
    const JamesVector y = JamesVector::in_f(src.coeffs(m));
    JamesVector sum = x, scaled = x;
    for (std::size_t i = 0; i < m; ++i) {
      sum.coeffs[i] += y.coeffs[i];
      scaled.coeffs[i] *= -2.0;
    }
    const double nx = james_norm_value(x), ny = james_norm_value(y);
    CHECK(james_norm_value(sum) <= nx + ny + 1e-12);
    CHECK(james_norm_value(scaled) == 2.0 * nx);
    CHECK(nx >= 0.0);
  }
}

TEST_CASE("property: basis projections are contractions") {
  gen::Source src(14);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = src.index(1, 25);
    const JamesVector x = JamesVector::in_f(src.coeffs(m));
    const std::size_t n = src.index(0, m + 2);
    const double nx = james_norm_value(x);
    CHECK(james_norm_value(apply_projection({n, ProjectionSide::kHead}, x)) <= nx + 1e-12);
    // I - P_n has norm at most 2.
    CHECK(james_norm_value(apply_projection({n, ProjectionSide::kTail}, x)) <= 2.0 * nx + 1e-12);
  }
}

TEST_CASE("property: bidual value is stable in the truncation") {
  gen::Source src(15);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = src.index(1, 12);
    const BidualVector w{JamesVector::in_e(src.coeffs(m)), src.normal()};
    const double base = bidual_norm(w, m + 1);
    CHECK(bidual_norm(w, m + 2) == doctest::Approx(base).epsilon(1e-13));
    CHECK(bidual_norm(w, m + 7) == doctest::Approx(base).epsilon(1e-13));
  }
}

TEST_CASE("property: vector norm of axis-aligned data equals the scalar norm") {
  gen::Source src(16);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = src.index(1, 12), d = src.index(2, 4), axis = src.index(0, d - 1);
    const std::vector<double> s = src.coeffs(m);
    std::vector<double> wide(m * d, 0.0);
    for (std::size_t k = 0; k < m; ++k) wide[k * d + axis] = s[k];
    const double a = james_norm_value(JamesVector(Basis::kE, wide, 2.0, d));
    const double b = james_norm_value(JamesVector::in_e(s));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

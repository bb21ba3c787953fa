#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "jamesop/error.hpp"
#include "jamesop/serialize.hpp"

using namespace jamesop;

TEST_CASE("vector JSON") {
  const JamesVector v = parse_vector(R"({"basis": "F_BASIS", "p": 2, "inner_dim": 1, "coeffs": [1, -1, 0]})");
  CHECK(v == JamesVector::in_f({1, -1, 0}));
  CHECK(parse_vector(Json(v).dump()) == v);
  CHECK(parse_vector(R"({"basis": "e", "coeffs": [2]})").basis == Basis::kE);
  CHECK_THROWS_AS(parse_vector(R"({"basis": "G", "coeffs": [1]})"), Error);
  CHECK_THROWS_AS(parse_vector("{not json"), Error);
}

TEST_CASE("matrix CSV and JSON") {
  const Matrix a = (Matrix(2, 3) << 1, -0.5, 3, 0.1, 2e-17, -7).finished();
  CHECK(parse_matrix(matrix_to_csv(a)) == a);
  CHECK(parse_matrix(matrix_to_json(a).dump()) == a);
  CHECK(parse_matrix(R"({"matrix": [[1, 2], [3, 4]]})") == (Matrix(2, 2) << 1, 2, 3, 4).finished());
  CHECK_THROWS_AS(parse_matrix("c1,c2\n1,2\n3\n"), Error);
  CHECK_THROWS_AS(parse_matrix("c1,c2\n1,x\n"), Error);
  CHECK_THROWS_AS(parse_matrix("[[1, 2], [3]]"), Error);
}

TEST_CASE("operator shorthand") {
  const OperatorMatrix op = parse_operator_matrix(R"({
    "scalar_part": [[1, 0], [0, 1]],
    "compact_part": [[{"kind": "shift_difference", "m": 3}, null],
                     [null, {"kind": "rank_one", "m": 4, "functional": [1, 0], "target": 2}]]})");
  CHECK(op.has_compact(0, 0));
  CHECK(!op.has_compact(0, 1));
  CHECK(op.compact_part[1][1]->tail_rule == TailRule::kZero);
  const OperatorMatrix back = parse_operator_matrix(Json(op).dump());
  CHECK(back.compact_part[0][0]->matrix == op.compact_part[0][0]->matrix);
  const OperatorMatrix plain = parse_operator_matrix("[[2]]");
  CHECK(plain.scalar_part(0, 0) == 2.0);
  CHECK(!plain.has_compact(0, 0));
  CHECK_THROWS_AS(parse_operator_matrix(R"({"scalar_part": [[1]], "compact_part": [[{"kind": "nope"}]]})"), Error);
}

TEST_CASE("property: matrix CSV round trip is exact") {
  gen::Source src(51);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = src.matrix(src.index(1, 6), src.index(1, 6));
    CHECK(parse_matrix(matrix_to_csv(a)) == a);
  }
}

TEST_CASE("property: vector JSON round trip is exact") {
  gen::Source src(52);
  for (int trial = 0; trial < 100; ++trial) {
    const JamesVector v = src.vector(20, src.uniform(1.1, 5.0));
    CHECK(parse_vector(Json(v).dump()) == v);
  }
}

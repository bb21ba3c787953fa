#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "jamesop/blocks.hpp"
#include "jamesop/error.hpp"

using namespace jamesop;

namespace {

ConvexBlockSystem halves() {
  ConvexBlockSystem b;
  b.boundaries = {1, 3, 4};
  b.weights = {0.5, 0.5, 1.0};
  return b;
}

}  // namespace

TEST_CASE("expanding a block combination") {
  const JamesVector v = expand_blocks(halves(), {1, -1});
  CHECK(v.basis == Basis::kF);
  CHECK(v.coeffs == std::vector<double>{0.5, 0.5, -1});
  // Frozen: both sides equal sqrt(2).
  CHECK(james_norm_value(v) == doctest::Approx(1.4142135623730951).epsilon(1e-14));
  CHECK(verify_block_isometry(halves(), {1, -1}) <= 1e-12);
  CHECK(verify_block_isometry(halves(), {1, -1}, true) <= 1e-12);
}

TEST_CASE("block validation") {
  ConvexBlockSystem b = halves();
  b.weights[0] = 0.7;
  CHECK_THROWS_AS(b.validate(), Error);
  b = halves();
  b.boundaries = {1, 1, 4};
  CHECK_THROWS_AS(b.validate(), Error);
  b = halves();
  b.weights[0] = -0.5;
  b.weights[1] = 1.5;
  CHECK_THROWS_AS(b.validate(), Error);
}

TEST_CASE("singleton blocks are exact") {
  const ConvexBlockSystem s = ConvexBlockSystem::singletons(3, 5);
  CHECK(s.blocks() == 5);
  CHECK(s.extent() == 7);
  CHECK(verify_block_isometry(s, {1, -2, 0.5, 3, -1}) == 0.0);
}

TEST_CASE("cut alteration") {
  const ConvexBlockSystem b = halves();
  const CutSequence cuts{2, 4};
  const CutSequence aligned = alter_cuts(b, {1, -1}, cuts);
  for (std::size_t c : aligned) CHECK(std::count(b.boundaries.begin(), b.boundaries.end(), c) == 1);
  const JamesVector d = expand_blocks(b, {1, -1});
  CHECK(cut_functional(d, aligned) >= cut_functional(d, cuts));
  // Cuts already on the boundaries are kept.
  CHECK(alter_cuts(b, {1, -1}, {1, 3, 4}) == CutSequence{1, 3, 4});
}

TEST_CASE("finite operators and their limits") {
  SUBCASE("zero") {
    const BidualVector l = limit_action(FiniteOperatorOnJ::zero(4));
    CHECK(l.tail == 0.0);
    CHECK(james_norm_value(l.body) == 0.0);
  }
  SUBCASE("shift difference") {
    const FiniteOperatorOnJ u = FiniteOperatorOnJ::shift_difference(4);
    CHECK(u.column(1) == std::vector<double>{1, 0, 0, 0});
    CHECK(u.column(3) == std::vector<double>{0, 1, -1, 0});
    // U f_k = f_{k-1} - f_k tends weak-star to zero.
    const BidualVector l = limit_action(u);
    CHECK(l.tail == 0.0);
    CHECK(james_norm_value(l.body) == 0.0);
  }
  SUBCASE("rank one with a nonzero limit") {
    const FiniteOperatorOnJ r = FiniteOperatorOnJ::rank_one({1, 2, -1, 0.5}, 2, 5);
    CHECK(r.tail_rule == TailRule::kBandStationary);
    CHECK(std::isinf(r.norm_upper_bound()));
    const BidualVector l = limit_action(r);
    CHECK(l.tail == 0.0);
    const std::vector<double> e = e_coordinates(l.body);
    // 0.5 f_2 in e-coordinates.
    CHECK(e[0] == doctest::Approx(0.5));
    CHECK(e[1] == doctest::Approx(0.5));
  }
  SUBCASE("rank one ending in zero is finite") {
    const FiniteOperatorOnJ r = FiniteOperatorOnJ::rank_one({1, 2, -1, 0}, 2, 5);
    CHECK(r.tail_rule == TailRule::kZero);
    CHECK(std::isfinite(r.norm_upper_bound()));
  }
}

TEST_CASE("gliding hump") {
  SUBCASE("zero operators") {
    const GlidingHumpResult h = gliding_hump({FiniteOperatorOnJ::zero(3)}, 1e-3, 3);
    CHECK(h.success);
    CHECK(h.blocks.blocks() == 3);
    CHECK(h.certified_bound <= 1e-3);
  }
  SUBCASE("finite rank") {
    const FiniteOperatorOnJ r = FiniteOperatorOnJ::rank_one({1, 2, -1, 0}, 2, 5);
    const GlidingHumpResult h = gliding_hump({r}, 1e-6, 2);
    CHECK(h.success);
    CHECK(h.certified_bound <= 1e-6);
    CHECK(block_subspace_bound(r, h.l, h.blocks) <= 1e-6);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(gliding_hump({FiniteOperatorOnJ::zero(3)}, 0.0, 3), Error);
    CHECK_THROWS_AS(gliding_hump({FiniteOperatorOnJ::zero(3)}, 1e-3, 0), Error);
  }
}

TEST_CASE("l1 embeddings") {
  const EmbeddingCertificate one = check_l1_embedding({JamesVector::unit_f(1, 1)});
  CHECK(one.lower_constant == doctest::Approx(1.0));
  CHECK(one.upper_constant == doctest::Approx(1.0));

  EmbeddingSearchOptions opts;
  opts.seed = 5;
  const EmbeddingSearchResult a = search_l1_embedding(2, 16, 0.5, opts);
  const EmbeddingSearchResult b = search_l1_embedding(2, 16, 0.5, opts);
  CHECK(a.certificate.lower_constant == b.certificate.lower_constant);
  CHECK(a.certificate.lower_constant <= a.certificate.upper_constant);
  CHECK(embedding_ratio(a.certificate.vectors, a.certificate.worst_coefficients) ==
        doctest::Approx(a.certificate.lower_constant).epsilon(1e-12));
  CHECK(a.reached_target);
}

TEST_CASE("property: block isometry") {
  gen::Source src(31);
  for (int trial = 0; trial < 300; ++trial) {
    const ConvexBlockSystem blocks = src.blocks(14);
    const std::vector<double> b = src.coeffs(blocks.blocks());
    CHECK(verify_block_isometry(blocks, b) <= 1e-9);
    if (blocks.extent() <= 12) CHECK(verify_block_isometry(blocks, b, true) <= 1e-9);
  }
}

TEST_CASE("property: cut alteration never decreases the functional") {
  gen::Source src(32);
  for (int trial = 0; trial < 400; ++trial) {
    const ConvexBlockSystem blocks = src.blocks(16);
    const std::vector<double> b = src.coeffs(blocks.blocks());
    const std::size_t lo = blocks.boundaries.front(), hi = blocks.boundaries.back();
    CutSequence cuts;
    for (std::size_t c = lo; c <= hi; ++c)
      if (src.coin()) cuts.push_back(c);
    if (cuts.size() < 2) cuts = {lo, hi};
    const CutSequence aligned = alter_cuts(blocks, b, cuts);
    for (std::size_t c : aligned)
      CHECK(std::binary_search(blocks.boundaries.begin(), blocks.boundaries.end(), c));
    const JamesVector d = expand_blocks(blocks, b);
    CHECK(cut_functional(d, aligned) >= cut_functional(d, cuts) - 1e-12);
  }
}

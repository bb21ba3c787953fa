#ifndef JAMESOP_BLOCKS_HPP_
#define JAMESOP_BLOCKS_HPP_

// Convex blocks of the summing basis, finite operators on J with a
// computable weak-star limit, the gliding-hump block constructor and the
// l1^n embedding search/checker.

#include <cstdint>
#include <string>
#include <vector>

#include "jamesop/james.hpp"
#include "jamesop/regular.hpp"

namespace jamesop {

// Blocks z_k = sum_{j = n_k}^{n_{k+1} - 1} c_j f_j, k = 1..K, with 1-based
// boundaries n_1 < ... < n_{K+1}. weights[j - n_1] holds c_j.
struct ConvexBlockSystem {
  std::vector<std::size_t> boundaries;
  std::vector<double> weights;

  std::size_t blocks() const { return boundaries.empty() ? 0 : boundaries.size() - 1; }
  // Length of the f-coefficient vectors spanned by the blocks.
  std::size_t extent() const { return boundaries.empty() ? 0 : boundaries.back() - 1; }
  double weight(std::size_t j) const { return weights[j - boundaries.front()]; }

  void validate() const;

  // Blocks f_{start}, f_{start+1}, ..., one basis vector each.
  static ConvexBlockSystem singletons(std::size_t start, std::size_t count);
  // Block k as an f-basis vector of length extent().
  JamesVector block(std::size_t k, double p = 2.0) const;
};

// sum_k b_k z_k in the f-basis, length extent().
JamesVector expand_blocks(const ConvexBlockSystem& blocks, const std::vector<double>& b,
                          double p = 2.0);

// | ||sum b_k z_k|| - ||sum b_k f_k|| |, by the dynamic program or, with
// use_oracle, by exhaustive enumeration on both sides.
double verify_block_isometry(const ConvexBlockSystem& blocks, const std::vector<double>& b,
                             bool use_oracle = false);

// Strictly increasing 1-based cut positions into 1..L+1 for coefficients
// d_1..d_L; position L+1 is the end of the support.
using CutSequence = std::vector<std::size_t>;

// sum_r |d_{m_r} + ... + d_{m_{r+1} - 1}|^p.
double cut_functional(const JamesVector& d, const CutSequence& cuts);

// Moves or discards every cut strictly inside a block until all cuts lie on
// block boundaries, never decreasing cut_functional. Cuts must lie in
// [n_1, n_{K+1}].
CutSequence alter_cuts(const ConvexBlockSystem& blocks, const std::vector<double>& b,
                       const CutSequence& cuts);

enum class TailRule { kZero, kBandStationary };

const char* tail_rule_name(TailRule rule);

// S f_k gains `value` at f-index k + offset (offset <= 0).
struct BandEntry {
  long offset = 0;
  double value = 0.0;
};

// Operator on J given by S f_k for k = 1..m (column k of `matrix`, in
// f-coefficients). Beyond m, S f_k = 0 (ZERO) or S f_k = stationary + band
// placed at k (BAND_STATIONARY).
struct FiniteOperatorOnJ {
  Matrix matrix;
  TailRule tail_rule = TailRule::kZero;
  std::vector<BandEntry> band;
  std::vector<double> stationary;
  double p = 2.0;

  std::size_t size() const { return static_cast<std::size_t>(matrix.cols()); }
  void validate() const;

  // S f_k (1-based) as f-coefficients of length max(m, k).
  std::vector<double> column(std::size_t k) const;
  // <S f_k, g> for f-coefficients g, without materializing the column.
  double column_dot(std::size_t k, const std::vector<double>& g) const;
  // Applies S to an f-basis scalar vector; the result is in the f-basis.
  JamesVector apply(const JamesVector& x) const;
  // S** on body + tail f, with the body converted from e-coordinates.
  BidualVector apply_bidual(const BidualVector& w) const;
  // Sum_k ||S f_k|| for ZERO, infinity for BAND_STATIONARY.
  double norm_upper_bound() const;

  static FiniteOperatorOnJ zero(std::size_t m, double p = 2.0);
  // U f_1 = f_1, U f_k = f_{k-1} - f_k.
  static FiniteOperatorOnJ shift_difference(std::size_t m, double p = 2.0);
  // x -> phi(x) f_target with phi(f_k) = functional[k-1], k <= len.
  static FiniteOperatorOnJ rank_one(const std::vector<double>& functional, std::size_t target,
                                    std::size_t m, double p = 2.0);
};

// Weak-star limit S** f of S f_k.
BidualVector limit_action(const FiniteOperatorOnJ& op);

struct HumpOptions {
  std::size_t max_window = 1u << 14;   // widest Mazur window per block
  std::size_t mirror_window = 256;     // mirror descent only up to this width
  std::size_t mirror_iterations = 400;
};

struct GlidingHumpResult {
  bool success = false;
  std::size_t l = 0;
  ConvexBlockSystem blocks;
  // Certified bound on max_j ||(I - P_l) S_j|| restricted to the block span.
  double certified_bound = 0.0;
  std::vector<double> operator_bounds;
  std::string failure;
};

// Sound upper bound on ||(I - P_l) S|| over span(blocks), the smaller of
// sum_k ||(I - P_l) S z_k|| and 2 sqrt(K) ||T||_F with T the matrix of the
// restriction into e-coordinates.
double block_subspace_bound(const FiniteOperatorOnJ& op, std::size_t l,
                            const ConvexBlockSystem& blocks);

GlidingHumpResult gliding_hump(const std::vector<FiniteOperatorOnJ>& ops, double eps,
                               std::size_t count, const HumpOptions& options = {});

struct EmbeddingCertificate {
  std::vector<JamesVector> vectors;
  double lower_constant = 0.0;  // c
  double upper_constant = 0.0;  // C
  std::vector<double> worst_coefficients;  // a attaining c on the set
  std::size_t points_checked = 0;
  std::string evidence;
};

// Verifies c sum|a_k| <= ||sum a_k u_k|| <= C sum|a_k| on sign patterns and
// a grid (n <= 3, mesh 0.01) or a seeded sample with adversarial descent.
EmbeddingCertificate check_l1_embedding(const std::vector<JamesVector>& vectors,
                                        std::uint64_t seed = 0);

// Re-evaluates ||sum a_k u_k|| / sum|a_k| at a point.
double embedding_ratio(const std::vector<JamesVector>& vectors, const std::vector<double>& a);

struct EmbeddingSearchOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 8;
  std::size_t sweeps = 60;
  // Previous result for a smaller m; the result is never worse than it.
  std::vector<JamesVector> warm_start;
};

struct EmbeddingSearchResult {
  EmbeddingCertificate certificate;
  bool reached_target = false;
  double target_constant = 0.0;  // 1 / (1 + delta_target)
};

EmbeddingSearchResult search_l1_embedding(std::size_t n, std::size_t m, double delta_target,
                                          const EmbeddingSearchOptions& options = {});

}  // namespace jamesop

#endif  // JAMESOP_BLOCKS_HPP_

#ifndef JAMESOP_LIFTED_HPP_
#define JAMESOP_LIFTED_HPP_

// Truncations of l2(J): operator matrices with scalar and weakly compact
// entries, their action on square sums, the tail representation, and the
// lower-bound certificate pipeline.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jamesop/blocks.hpp"
#include "jamesop/james.hpp"
#include "jamesop/regular.hpp"

namespace jamesop {

struct SquareSumVector {
  std::vector<JamesVector> components;

  void validate() const;
  double norm() const;
};

struct BidualSquareSumVector {
  std::vector<BidualVector> components;

  void validate() const;
  double norm() const;
  std::vector<double> tails() const;
};

// Entry (i, j) acts as scalar_part(i, j) I + compact_part[i][j].
struct OperatorMatrix {
  Matrix scalar_part;
  std::vector<std::vector<std::optional<FiniteOperatorOnJ>>> compact_part;

  std::size_t size() const { return static_cast<std::size_t>(scalar_part.rows()); }
  void validate() const;
  bool has_compact(std::size_t i, std::size_t j) const;

  // (a_ij I) with no compact entries.
  static OperatorMatrix lift(const Matrix& a);
  // Zero scalar part, compact entries as given (nullopt means absent).
  static OperatorMatrix compact_only(std::vector<std::vector<std::optional<FiniteOperatorOnJ>>> w);

  SquareSumVector apply(const SquareSumVector& x) const;
  BidualSquareSumVector apply_bidual(const BidualSquareSumVector& x) const;
  // Sound upper bound ||S^ + W|| <= ||S||_r + sum ||W_ij||; infinite when an
  // entry has no finite bound.
  double norm_upper_bound(double tol = 1e-13) const;
};

// Component l of the result is sum_j a_lj x_j.
SquareSumVector lift_apply(const Matrix& a, const SquareSumVector& x);

// Zeroes every entry with row or column index above n (1-based).
OperatorMatrix cutoff(const OperatorMatrix& op, std::size_t n);

// Witness for the operator S~ on l2^n(l1^n): row j of `witness` is the
// l1^n component of index j.
struct TildeResult {
  double value = 0.0;  // ||S||_r
  Vector a;            // unit leading vector of |S|, nonnegative
  Matrix witness;      // diag(a)
  double witness_value = 0.0;
};

// ||S~ X|| / ||X|| with component norms in l1^n and the outer norm in l2^n.
double tilde_evaluate(const Matrix& s, const Matrix& x);

TildeResult tilde_norm(const Matrix& s, double tol = 1e-13);

// Induced map on tail coordinates, read off by probing the bidual action of
// the composition ops[0] * ops[1] * ... with unit tails.
Matrix quotient_action(const OperatorMatrix& op);
Matrix quotient_action(const std::vector<OperatorMatrix>& product);

struct QuotientCheck {
  double distance = 0.0;  // upper end of the bracket
  double lower = 0.0;
  double expected = 0.0;  // ||(t_1, ..., t_n)||_2
  double residual = 0.0;  // |distance - expected|
  bool converged = false;
  std::size_t truncation = 0;
  std::vector<DistanceResult> components;
};

// Distance from x to l2(J) truncated at `truncation` coordinates per
// component, with the tails materialized at index truncation + 1.
QuotientCheck quotient_isometry_check(const BidualSquareSumVector& x, std::size_t truncation = 40,
                                      const SolverOptions& options = {});

// Vector-valued bidual element body + f (x) tail for J(E), E Euclidean.
struct VectorBidualVector {
  JamesVector body;  // E_BASIS, inner_dim = tail.size()
  std::vector<double> tail;

  void validate() const;
};

double vector_bidual_norm(const VectorBidualVector& w);

// Applies S to every inner vector.
JamesVector james_sum_lift(const Matrix& s, const JamesVector& x);
VectorBidualVector james_sum_lift(const Matrix& s, const VectorBidualVector& w);

struct CertifyOptions {
  std::uint64_t seed = 1;
  std::vector<std::size_t> m_ladder{8, 16, 32};
  // l1^n embedding search is attempted only up to this n.
  std::size_t embedding_search_max_n = 3;
  std::size_t ascent_iterations = 400;
  std::size_t ascent_restarts = 2;  // random starts per ladder level
  double norm_tol = 1e-13;
  HumpOptions hump;
};

struct WitnessCertificate {
  Matrix s;
  OperatorMatrix w;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::size_t m = 0;  // f-coordinates of the pre-image vectors
  double regular_norm = 0.0;
  double target = 0.0;  // (1 + delta)^{-2} ||S||_r - delta
  double reported_bound = 0.0;
  double achieved_constant = 0.0;  // reported_bound / ||S||_r
  double upper_estimate = 0.0;
  bool meets_target = false;
  std::optional<EmbeddingCertificate> embedding;
  std::string embedding_note;
  std::size_t l = 0;
  ConvexBlockSystem blocks;
  double hump_bound = 0.0;
  SquareSumVector witness;  // unit norm, f-basis components
};

// Runs the pipeline; throws kPipelineFailure when the gliding hump fails.
WitnessCertificate certify_lower_bound(const Matrix& s, const OperatorMatrix& w, double delta,
                                       const CertifyOptions& options = {});

// ||(S^ - W) x|| / ||x|| for the stored witness.
double evaluate_witness(const Matrix& s, const OperatorMatrix& w, const SquareSumVector& x);

struct CertificateCheck {
  bool ok = false;
  double recomputed = 0.0;
  std::string detail;
};

// Recomputes the bound from the stored matrices and witness only.
CertificateCheck verify_certificate(const WitnessCertificate& cert, double tol = 1e-9);

}  // namespace jamesop

#endif  // JAMESOP_LIFTED_HPP_

#ifndef JAMESOP_JAMES_HPP_
#define JAMESOP_JAMES_HPP_

// p-variation James norms on finitely supported sequences.
//
// A vector is stored either in the shrinking basis (e_k), where the
// coefficients are the sequence values x_1..x_m, or in the summing basis
// f_k = e_1 + ... + e_k, where the coefficients b_1..b_m satisfy
// x_j = b_j + b_{j+1} + ... + b_m. In both cases the sequence is followed
// by a virtual zero at index m+1, so chains run over 1..m+1.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jamesop/error.hpp"

namespace jamesop {

enum class Basis { kE, kF };

const char* basis_name(Basis basis);

struct JamesVector {
  Basis basis = Basis::kF;
  // Row-major: coefficient k occupies [k * inner_dim, (k + 1) * inner_dim).
  std::vector<double> coeffs;
  double p = 2.0;
  std::size_t inner_dim = 1;

  JamesVector() = default;
  JamesVector(Basis basis, std::vector<double> coeffs, double p = 2.0,
              std::size_t inner_dim = 1);

  static JamesVector in_f(std::vector<double> coeffs, double p = 2.0) {
    return JamesVector(Basis::kF, std::move(coeffs), p, 1);
  }
  static JamesVector in_e(std::vector<double> coeffs, double p = 2.0) {
    return JamesVector(Basis::kE, std::move(coeffs), p, 1);
  }
  // f_n as a length-m vector in the f-basis (1-based n).
  static JamesVector unit_f(std::size_t n, std::size_t m, double p = 2.0);

  // Number of sequence positions m.
  std::size_t size() const { return inner_dim == 0 ? 0 : coeffs.size() / inner_dim; }
  bool is_zero() const;

  // Throws kInvalidArgument / kCapExceeded on a violated invariant.
  void validate() const;

  bool operator==(const JamesVector&) const = default;
};

// Strictly increasing 1-based indices into 1..m+1.
using Chain = std::vector<std::size_t>;

struct NormResult {
  double value = 0.0;
  Chain chain;
};

// Exact p-variation norm by dynamic programming over chain endpoints. The
// returned chain attains the value; among optimal chains it is the
// lexicographically smallest.
NormResult james_norm(const JamesVector& v);

// Value-only norm for hot loops. Converts to e-coordinates and collapses runs
// of equal consecutive values first, which leaves the supremum unchanged.
double james_norm_value(const JamesVector& v);

// As james_norm_value, plus a chain of original indices attaining the value
// on the reduced sequence. The chain need not be lexicographically smallest.
NormResult james_norm_fast(const JamesVector& v);

// Exhaustive enumeration of every chain. Same edge arithmetic as james_norm.
NormResult james_norm_oracle(const JamesVector& v,
                             std::size_t cap = Limits::kDefaultOracleCap);

// Sum of edge terms along a chain (before taking the 1/p power), accumulated
// right to left exactly as the dynamic program does.
double chain_power_sum(const JamesVector& v, const Chain& chain);
double evaluate_chain(const JamesVector& v, const Chain& chain);

// F -> E by suffix sums, E -> F by consecutive differences. Scalar only.
JamesVector convert_basis(const JamesVector& v);
JamesVector to_basis(const JamesVector& v, Basis basis);

// Sequence values x_1..x_m (row-major, inner_dim wide).
std::vector<double> e_coordinates(const JamesVector& v);

enum class ProjectionSide { kHead, kTail };

// HEAD is P_n (keep f-coefficients 1..n), TAIL is I - P_n.
struct BasisProjection {
  std::size_t n = 0;
  ProjectionSide side = ProjectionSide::kHead;
};

JamesVector apply_projection(const BasisProjection& projection, const JamesVector& v);

// Element body + tail * f of the bidual, f = (1, 1, ...).
struct BidualVector {
  JamesVector body;  // e-basis, scalar
  double tail = 0.0;

  void validate() const;
};

// Norm under the stabilized-tail rule: ||body + tail * f_M|| for M beyond the
// support of body. `truncation` selects M explicitly; it must be at least the
// body length plus one. The default is the body length plus one.
double bidual_norm(const BidualVector& w, std::optional<std::size_t> truncation = {});

// Materializes body + tail * f_M as an e-basis vector of length M.
JamesVector materialize(const BidualVector& w, std::size_t truncation);

struct SolverOptions {
  double tol = 1e-6;
  std::size_t max_iterations = 100000;
};

struct DistanceResult {
  double value = 0.0;  // best upper bound, attained by `coefficients`
  double lower = 0.0;  // certified lower bound from a mixture of chains
  std::vector<double> coefficients;
  bool converged = false;
  std::size_t iterations = 0;
};

// min_c || target - sum_i c_i spanners_i || by nonsmooth convex minimization.
// The returned bracket [lower, value] always holds; `converged` reports
// whether its width fell below options.tol.
DistanceResult subspace_distance(const JamesVector& target,
                                 std::span<const JamesVector> spanners,
                                 const SolverOptions& options = {});

}  // namespace jamesop

#endif  // JAMESOP_JAMES_HPP_

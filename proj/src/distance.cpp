// Distance from a vector to a finite-dimensional subspace in the James norm.
//
// The objective V(c) = max over chains of sum_e |r_e(c)|^p is replaced by its
// log-sum-exp smoothing over all chains, (1/beta) log sum exp(beta * sum_e q_e),
// which is minimized with L-BFGS for an increasing sequence of beta. The
// smoothing induces a probability distribution over chains; its edge
// marginals w_e give the convex minorant sum_e w_e |r_e(c)|^p <= V(c), whose
// minimum is bounded below through Young's inequality. The exact norm at the
// iterate gives the matching upper bound.

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <ceres/ceres.h>

#include "jamesop/james.hpp"
#include "smoothing.hpp"

namespace jamesop {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Node-major e-coordinates: row i*d + r holds coordinate r of position i,
// positions 0..m with position m the trailing zero.
struct Problem {
  std::size_t m = 0;
  std::size_t d = 1;
  double p = 2.0;
  VectorXd target;    // (m+1)*d
  MatrixXd spanners;  // (m+1)*d x k

  std::size_t nodes() const { return m + 1; }

  VectorXd residual(const VectorXd& c) const { return target - spanners * c; }

  // |y_j - y_i| for the residual y.
  double edge_len(const VectorXd& y, std::size_t i, std::size_t j) const {
    if (d == 1) return std::abs(y[j] - y[i]);
    double s = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      const double t = y[j * d + r] - y[i * d + r];
      s += t * t;
    }
    return std::sqrt(s);
  }

  double exact_norm(const VectorXd& c) const {
    const VectorXd y = residual(c);
    std::vector<double> x(y.data(), y.data() + m * d);
    return james_norm_value(JamesVector(Basis::kE, std::move(x), p, d));
  }
};

struct Smoothed {
  double value = 0.0;  // (1/beta) log Z
  VectorXd gradient;
  std::vector<double> weights;  // edge marginals, (m+1)^2 row-major
};

Smoothed smoothed(const Problem& pr, const VectorXd& c, double beta, bool want_weights) {
  const VectorXd y = pr.residual(c);
  detail::ChainSmoothing cs = detail::smooth_chain_max(y.data(), pr.nodes(), pr.d, pr.p, beta, want_weights);
  Smoothed s;
  s.value = cs.value;
  const Eigen::Map<const VectorXd> gy(cs.grad.data(), static_cast<Eigen::Index>(cs.grad.size()));
  s.gradient = -(pr.spanners.transpose() * gy);
  s.weights = std::move(cs.weights);
  return s;
}

// Lower bound on min_c sum_e w_e |b_e - A_e c|^p from a dual point.
double young_lower_bound(const Problem& pr, const VectorXd& c, const std::vector<double>& w) {
  const std::size_t n = pr.nodes();
  const std::size_t d = pr.d;
  const Eigen::Index k = pr.spanners.cols();
  const double p = pr.p;
  const double q = p / (p - 1.0);
  const VectorXd y = pr.residual(c);

  struct Edge {
    std::size_t i, j;
    double w;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w[i * n + j] > 1e-300) edges.push_back({i, j, w[i * n + j]});

  auto a_block = [&](const Edge& e) {
    MatrixXd a(static_cast<Eigen::Index>(d), k);
    for (std::size_t r = 0; r < d; ++r)
      a.row(static_cast<Eigen::Index>(r)) = pr.spanners.row(static_cast<Eigen::Index>(e.j * d + r)) -
                                            pr.spanners.row(static_cast<Eigen::Index>(e.i * d + r));
    return a;
  };

  // s_e = |r_e|^{p-2} r_e, then the W-weighted projection onto
  // sum_e w_e A_e^T s_e = 0, so that the c-dependence cancels.
  std::vector<VectorXd> s(edges.size());
  MatrixXd gram = MatrixXd::Zero(k, k);
  VectorXd rhs = VectorXd::Zero(k);
  for (std::size_t t = 0; t < edges.size(); ++t) {
    const Edge& e = edges[t];
    VectorXd r(static_cast<Eigen::Index>(d));
    for (std::size_t rr = 0; rr < d; ++rr) r[rr] = y[e.j * d + rr] - y[e.i * d + rr];
    const double len = r.norm();
    s[t] = len == 0.0 ? VectorXd::Zero(static_cast<Eigen::Index>(d)) : VectorXd(std::pow(len, p - 2.0) * r);
    if (k > 0) {
      const MatrixXd a = a_block(e);
      gram += e.w * a.transpose() * a;
      rhs += e.w * a.transpose() * s[t];
    }
  }
  VectorXd lambda = VectorXd::Zero(k);
  if (k > 0) lambda = gram.completeOrthogonalDecomposition().solve(rhs);

  double lb = 0.0;
  for (std::size_t t = 0; t < edges.size(); ++t) {
    const Edge& e = edges[t];
    VectorXd sp = s[t];
    if (k > 0) sp -= a_block(e) * lambda;
    VectorXd b(static_cast<Eigen::Index>(d));
    for (std::size_t rr = 0; rr < d; ++rr) b[rr] = pr.target[e.j * d + rr] - pr.target[e.i * d + rr];
    lb += e.w * (p * sp.dot(b) - (p - 1.0) * std::pow(sp.norm(), q));
  }
  return lb;
}

class SmoothedCost final : public ceres::FirstOrderFunction {
 public:
  SmoothedCost(const Problem& pr, double beta) : pr_(pr), beta_(beta) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    const Eigen::Map<const VectorXd> c(parameters, NumParameters());
    const Smoothed s = smoothed(pr_, c, beta_, false);
    if (!std::isfinite(s.value)) return false;
    *cost = s.value;
    if (gradient != nullptr)
      for (int i = 0; i < NumParameters(); ++i) gradient[i] = s.gradient[i];
    return true;
  }

  int NumParameters() const override { return static_cast<int>(pr_.spanners.cols()); }

 private:
  const Problem& pr_;
  double beta_;
};

}  // namespace

DistanceResult subspace_distance(const JamesVector& target, std::span<const JamesVector> spanners,
                                 const SolverOptions& options) {
  target.validate();
  require(options.tol > 0.0, "solver tolerance must be positive");
  require(options.max_iterations > 0, "iteration budget must be positive");
  std::size_t m = target.size();
  for (const JamesVector& s : spanners) {
    s.validate();
    require(s.basis == target.basis && s.p == target.p && s.inner_dim == target.inner_dim,
            "spanners must share basis, p and inner_dim with the target");
    m = std::max(m, s.size());
  }

  const double target_norm = james_norm_value(target);
  DistanceResult out;
  out.coefficients.assign(spanners.size(), 0.0);
  if (spanners.empty() || target_norm == 0.0) {
    out.value = out.lower = target_norm;
    out.converged = true;
    return out;
  }

  Problem pr;
  pr.m = m;
  pr.d = target.inner_dim;
  pr.p = target.p;
  const auto rows = static_cast<Eigen::Index>((m + 1) * pr.d);
  const auto k = static_cast<Eigen::Index>(spanners.size());
  pr.target = VectorXd::Zero(rows);
  pr.spanners = MatrixXd::Zero(rows, k);
  {
    const std::vector<double> x = e_coordinates(target);
    for (std::size_t i = 0; i < x.size(); ++i) pr.target[static_cast<Eigen::Index>(i)] = x[i] / target_norm;
  }
  std::vector<double> scale(spanners.size());
  for (Eigen::Index c = 0; c < k; ++c) {
    const JamesVector& s = spanners[static_cast<std::size_t>(c)];
    const double nrm = james_norm_value(s);
    require(nrm > 0.0, "spanners must be nonzero");
    scale[static_cast<std::size_t>(c)] = nrm;
    const std::vector<double> x = e_coordinates(s);
    for (std::size_t i = 0; i < x.size(); ++i) pr.spanners(static_cast<Eigen::Index>(i), c) = x[i] / nrm;
  }

  // Least-squares start in e-coordinates.
  VectorXd c = pr.spanners.colPivHouseholderQr().solve(pr.target);
  VectorXd best_c = c;
  double upper = pr.exact_norm(c);
  double lower = 0.0;
  if (upper == 0.0) {
    out.converged = true;
    out.value = out.lower = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) out.coefficients[static_cast<std::size_t>(i)] = c[i] / scale[static_cast<std::size_t>(i)];
    return out;
  }

  const double tol = options.tol / target_norm;
  std::size_t used = 0;
  double beta = 10.0;
  const double beta_max = 1e14;
  while (used < options.max_iterations && beta <= beta_max) {
    SmoothedCost* cost = new SmoothedCost(pr, beta);
    ceres::GradientProblem problem(cost);
    ceres::GradientProblemSolver::Options opts;
    opts.line_search_direction_type = ceres::LBFGS;
    opts.logging_type = ceres::SILENT;
    opts.max_num_iterations = static_cast<int>(std::min<std::size_t>(options.max_iterations - used, 5000));
    opts.function_tolerance = 1e-15;
    opts.gradient_tolerance = 1e-14;
    opts.parameter_tolerance = 1e-15;
    ceres::GradientProblemSolver::Summary summary;
    VectorXd trial = c;
    ceres::Solve(opts, problem, trial.data(), &summary);
    used += std::max<std::size_t>(1, summary.iterations.size());
    if (trial.allFinite()) c = trial;

    const double u = pr.exact_norm(c);
    if (u < upper) {
      upper = u;
      best_c = c;
    }
    const Smoothed s = smoothed(pr, c, beta, true);
    const double lb = young_lower_bound(pr, c, s.weights);
    if (lb > 0.0) lower = std::max(lower, std::pow(lb, 1.0 / pr.p));
    if (upper - lower <= tol) break;
    beta *= 4.0;
  }

  out.value = upper * target_norm;
  out.lower = std::min(lower, upper) * target_norm;
  out.converged = upper - lower <= tol;
  out.iterations = used;
  for (Eigen::Index i = 0; i < k; ++i)
    out.coefficients[static_cast<std::size_t>(i)] = best_c[i] / scale[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace jamesop

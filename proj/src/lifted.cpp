#include "jamesop/lifted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <ceres/ceres.h>

#include "smoothing.hpp"

namespace jamesop {

// ---------------------------------------------------------------------------
// Square sums

void SquareSumVector::validate() const {
  require(!components.empty(), "square sum needs at least one component");
  for (const JamesVector& c : components) {
    c.validate();
    require(c.p == components.front().p && c.inner_dim == components.front().inner_dim,
            "components must share p and inner_dim");
  }
}

double SquareSumVector::norm() const {
  validate();
  double s = 0.0;
  for (const JamesVector& c : components) {
    const double v = james_norm_value(c);
    s += v * v;
  }
  return std::sqrt(s);
}

void BidualSquareSumVector::validate() const {
  require(!components.empty(), "square sum needs at least one component");
  for (const BidualVector& c : components) c.validate();
}

double BidualSquareSumVector::norm() const {
  validate();
  double s = 0.0;
  for (const BidualVector& c : components) {
    const double v = bidual_norm(c);
    s += v * v;
  }
  return std::sqrt(s);
}

std::vector<double> BidualSquareSumVector::tails() const {
  std::vector<double> t;
  for (const BidualVector& c : components) t.push_back(c.tail);
  return t;
}

namespace {

// Accumulates scale * x into acc (same basis), growing acc as needed.
void add_scaled(std::vector<double>& acc, const std::vector<double>& x, double scale) {
  if (acc.size() < x.size()) acc.resize(x.size(), 0.0);
  if (scale == 0.0) return;
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] += scale * x[i];
}

BidualVector bidual_combine(const BidualVector& a, const BidualVector& b, double sb) {
  std::vector<double> body = a.body.coeffs;
  add_scaled(body, b.body.coeffs, sb);
  return {JamesVector(Basis::kE, std::move(body), a.body.p, 1), a.tail + sb * b.tail};
}

BidualVector zero_bidual(double p) { return {JamesVector(Basis::kE, {}, p, 1), 0.0}; }

}  // namespace

// ---------------------------------------------------------------------------
// Operator matrices

void OperatorMatrix::validate() const {
  validate_matrix(scalar_part);
  require(scalar_part.rows() == scalar_part.cols(), "scalar part must be square");
  const std::size_t n = size();
  require(compact_part.empty() || compact_part.size() == n, "compact part must be n x n or empty");
  for (const auto& row : compact_part) {
    require(row.size() == n, "compact part must be n x n");
    for (const auto& e : row)
      if (e) e->validate();
  }
}

bool OperatorMatrix::has_compact(std::size_t i, std::size_t j) const {
  return !compact_part.empty() && compact_part[i][j].has_value();
}

OperatorMatrix OperatorMatrix::lift(const Matrix& a) {
  validate_matrix(a);
  require(a.rows() == a.cols(), "lifted matrix must be square");
  return {a, {}};
}

OperatorMatrix OperatorMatrix::compact_only(
    std::vector<std::vector<std::optional<FiniteOperatorOnJ>>> w) {
  require(!w.empty(), "compact part must be nonempty");
  const auto n = static_cast<Eigen::Index>(w.size());
  OperatorMatrix op{Matrix::Zero(n, n), std::move(w)};
  op.validate();
  return op;
}

SquareSumVector OperatorMatrix::apply(const SquareSumVector& x) const {
  validate();
  x.validate();
  const std::size_t n = size();
  require(x.components.size() == n, "component count must match the operator size");
  require(x.components.front().inner_dim == 1, "operator matrices act on scalar J");
  const double p = x.components.front().p;
  std::vector<std::vector<double>> f;
  for (const JamesVector& c : x.components) f.push_back(to_basis(c, Basis::kF).coeffs);
  SquareSumVector out;
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<double> acc;
    for (std::size_t j = 0; j < n; ++j) {
      add_scaled(acc, f[j], scalar_part(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)));
      if (has_compact(l, j))
        add_scaled(acc, compact_part[l][j]->apply(JamesVector(Basis::kF, f[j], p, 1)).coeffs, 1.0);
    }
    out.components.emplace_back(Basis::kF, std::move(acc), p, 1);
  }
  return out;
}

BidualSquareSumVector OperatorMatrix::apply_bidual(const BidualSquareSumVector& x) const {
  validate();
  x.validate();
  const std::size_t n = size();
  require(x.components.size() == n, "component count must match the operator size");
  BidualSquareSumVector out;
  for (std::size_t l = 0; l < n; ++l) {
    BidualVector acc = zero_bidual(x.components.front().body.p);
    for (std::size_t j = 0; j < n; ++j) {
      acc = bidual_combine(acc, x.components[j],
                           scalar_part(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)));
      if (has_compact(l, j)) acc = bidual_combine(acc, compact_part[l][j]->apply_bidual(x.components[j]), 1.0);
    }
    out.components.push_back(std::move(acc));
  }
  return out;
}

double OperatorMatrix::norm_upper_bound(double tol) const {
  validate();
  double b = regular_norm(scalar_part, tol);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (has_compact(i, j)) b += compact_part[i][j]->norm_upper_bound();
  return b;
}

SquareSumVector lift_apply(const Matrix& a, const SquareSumVector& x) {
  validate_matrix(a);
  x.validate();
  require(static_cast<std::size_t>(a.cols()) == x.components.size(), "matrix columns must match components");
  const JamesVector& first = x.components.front();
  for (const JamesVector& c : x.components) require(c.basis == first.basis, "components must share a basis");
  SquareSumVector out;
  for (Eigen::Index l = 0; l < a.rows(); ++l) {
    std::vector<double> acc;
    for (Eigen::Index j = 0; j < a.cols(); ++j) add_scaled(acc, x.components[static_cast<std::size_t>(j)].coeffs, a(l, j));
    out.components.emplace_back(first.basis, std::move(acc), first.p, first.inner_dim);
  }
  return out;
}

OperatorMatrix cutoff(const OperatorMatrix& op, std::size_t n) {
  op.validate();
  OperatorMatrix out = op;
  const std::size_t size = op.size();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (i < n && j < n) continue;
      out.scalar_part(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
      if (!out.compact_part.empty()) out.compact_part[i][j].reset();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The operator S~ on l2^n(l1^n)

double tilde_evaluate(const Matrix& s, const Matrix& x) {
  validate_matrix(s);
  require(s.cols() == x.rows(), "witness must have one row per column of S");
  const Matrix y = s * x;
  const double num = y.rowwise().lpNorm<1>().norm();
  const double den = x.rowwise().lpNorm<1>().norm();
  require(den > 0.0, "witness must be nonzero");
  return num / den;
}

TildeResult tilde_norm(const Matrix& s, double tol) {
  validate_matrix(s);
  require(s.rows() == s.cols(), "S must be square");
  const PowerResult pr = power_iteration(modulus(s), tol);
  TildeResult out;
  out.value = pr.value;
  out.a = pr.right.cwiseAbs();
  out.a /= out.a.norm();
  out.witness = out.a.asDiagonal();
  out.witness_value = tilde_evaluate(s, out.witness);
  return out;
}

// ---------------------------------------------------------------------------
// Tail representation

Matrix quotient_action(const OperatorMatrix& op) { return quotient_action(std::vector<OperatorMatrix>{op}); }

Matrix quotient_action(const std::vector<OperatorMatrix>& product) {
  require(!product.empty(), "need at least one operator");
  const std::size_t n = product.front().size();
  for (const OperatorMatrix& op : product) {
    op.validate();
    require(op.size() == n, "operators in a product must share their size");
  }
  Matrix t(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    BidualSquareSumVector x;
    for (std::size_t i = 0; i < n; ++i) x.components.push_back({JamesVector(Basis::kE, {}, 2.0, 1), i == j ? 1.0 : 0.0});
    for (auto it = product.rbegin(); it != product.rend(); ++it) x = it->apply_bidual(x);
    for (std::size_t l = 0; l < n; ++l) t(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) = x.components[l].tail;
  }
  return t;
}

QuotientCheck quotient_isometry_check(const BidualSquareSumVector& x, std::size_t truncation,
                                      const SolverOptions& options) {
  x.validate();
  require(truncation >= 1, "truncation must be positive");
  QuotientCheck out;
  out.truncation = truncation;
  double up = 0.0, lo = 0.0, tt = 0.0;
  out.converged = true;
  for (const BidualVector& c : x.components) {
    require(c.body.coeffs.size() <= truncation, "body longer than the truncation");
    std::vector<double> target(truncation + 1, c.tail);
    for (std::size_t i = 0; i < c.body.coeffs.size(); ++i) target[i] += c.body.coeffs[i];
    std::vector<JamesVector> span;
    for (std::size_t k = 0; k < truncation; ++k) {
      std::vector<double> e(truncation + 1, 0.0);
      e[k] = 1.0;
      span.emplace_back(Basis::kE, std::move(e), c.body.p, 1);
    }
    const DistanceResult r = subspace_distance(JamesVector(Basis::kE, std::move(target), c.body.p, 1), span, options);
    up += r.value * r.value;
    lo += r.lower * r.lower;
    tt += c.tail * c.tail;
    out.converged = out.converged && r.converged;
    out.components.push_back(r);
  }
  out.distance = std::sqrt(up);
  out.lower = std::sqrt(lo);
  out.expected = std::sqrt(tt);
  out.residual = std::abs(out.distance - out.expected);
  return out;
}

// ---------------------------------------------------------------------------
// Vector-valued James sums

void VectorBidualVector::validate() const {
  require(!tail.empty(), "tail must have at least one coordinate");
  for (double t : tail) require(std::isfinite(t), "tail must be finite");
  if (body.coeffs.empty()) return;
  body.validate();
  require(body.basis == Basis::kE && body.inner_dim == tail.size(), "body must be E_BASIS with matching inner_dim");
}

double vector_bidual_norm(const VectorBidualVector& w) {
  w.validate();
  const std::size_t d = w.tail.size();
  const std::size_t m = w.body.coeffs.size() / d;
  std::vector<double> x((m + 1) * d);
  for (std::size_t k = 0; k <= m; ++k)
    for (std::size_t r = 0; r < d; ++r) x[k * d + r] = w.tail[r] + (k < m ? w.body.coeffs[k * d + r] : 0.0);
  return james_norm(JamesVector(Basis::kE, std::move(x), w.body.p, d)).value;
}

JamesVector james_sum_lift(const Matrix& s, const JamesVector& x) {
  validate_matrix(s);
  x.validate();
  require(x.basis == Basis::kE, "vector-valued James sums use E_BASIS");
  require(static_cast<std::size_t>(s.cols()) == x.inner_dim && s.rows() == s.cols(),
          "S must be square of the inner dimension");
  const std::size_t d = x.inner_dim;
  std::vector<double> y(x.coeffs.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Eigen::Map<const Vector> in(x.coeffs.data() + k * d, static_cast<Eigen::Index>(d));
    Eigen::Map<Vector> out(y.data() + k * d, static_cast<Eigen::Index>(d));
    out = s * in;
  }
  return JamesVector(Basis::kE, std::move(y), x.p, d);
}

VectorBidualVector james_sum_lift(const Matrix& s, const VectorBidualVector& w) {
  w.validate();
  validate_matrix(s);
  require(static_cast<std::size_t>(s.cols()) == w.tail.size() && s.rows() == s.cols(),
          "S must be square of the inner dimension");
  VectorBidualVector out;
  out.body = w.body.coeffs.empty() ? w.body : james_sum_lift(s, w.body);
  const Eigen::Map<const Vector> t(w.tail.data(), static_cast<Eigen::Index>(w.tail.size()));
  const Vector st = s * t;
  out.tail.assign(st.data(), st.data() + st.size());
  return out;
}

// ---------------------------------------------------------------------------
// Lower-bound certificates

namespace {

// Maximizes sum_l ||sum_j s_lj a_j x_j||^2 / sum_j a_j^2 ||x_j||^2 over
// x_j in e-coordinates of length m, using the chain smoothing with a
// per-vector temperature and L-BFGS.
class WitnessRatio final : public ceres::FirstOrderFunction {
 public:
  WitnessRatio(const Matrix& s, const Vector& a, std::size_t m, std::vector<double> beta_rows,
               std::vector<double> beta_cols)
      : s_(s), a_(a), m_(m), beta_rows_(std::move(beta_rows)), beta_cols_(std::move(beta_cols)) {}

  int NumParameters() const override { return static_cast<int>(a_.size() * m_); }

  bool Evaluate(const double* x, double* cost, double* gradient) const override {
    const std::size_t n = static_cast<std::size_t>(a_.size());
    const std::size_t nodes = m_ + 1;
    std::vector<double> grad(n * m_, 0.0);
    double den = 0.0;
    std::vector<std::vector<double>> dden(n);
    std::vector<double> buf(nodes, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      std::copy(x + j * m_, x + (j + 1) * m_, buf.begin());
      buf[m_] = 0.0;
      detail::ChainSmoothing cs = detail::smooth_chain_max(buf.data(), nodes, 1, 2.0, beta_cols_[j], false);
      den += a_[j] * a_[j] * cs.value;
      dden[j] = std::move(cs.grad);
    }
    double num = 0.0;
    std::vector<std::vector<double>> dnum(n);
    for (std::size_t l = 0; l < n; ++l) {
      std::fill(buf.begin(), buf.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        const double c = s_(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) * a_[j];
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < m_; ++i) buf[i] += c * x[j * m_ + i];
      }
      detail::ChainSmoothing cs = detail::smooth_chain_max(buf.data(), nodes, 1, 2.0, beta_rows_[l], false);
      num += cs.value;
      dnum[l] = std::move(cs.grad);
    }
    if (!(num > 0.0) || !(den > 0.0)) return false;
    *cost = std::log(den) - std::log(num);
    if (gradient != nullptr) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m_; ++i) {
          double g = a_[j] * a_[j] * dden[j][i] / den;
          for (std::size_t l = 0; l < n; ++l)
            g -= s_(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) * a_[j] * dnum[l][i] / num;
          gradient[j * m_ + i] = g;
        }
      }
    }
    return true;
  }

 private:
  const Matrix& s_;
  const Vector& a_;
  std::size_t m_;
  std::vector<double> beta_rows_, beta_cols_;
};

double exact_sq(const double* x, std::size_t m) {
  const double v = james_norm_value(JamesVector(Basis::kE, std::vector<double>(x, x + m), 2.0, 1));
  return v * v;
}

double exact_ratio(const Matrix& s, const Vector& a, const std::vector<double>& x, std::size_t m) {
  const std::size_t n = static_cast<std::size_t>(a.size());
  double den = 0.0, num = 0.0;
  for (std::size_t j = 0; j < n; ++j) den += a[j] * a[j] * exact_sq(x.data() + j * m, m);
  std::vector<double> y(m);
  for (std::size_t l = 0; l < n; ++l) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double c = s(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) * a[j];
      for (std::size_t i = 0; i < m; ++i) y[i] += c * x[j * m + i];
    }
    num += exact_sq(y.data(), m);
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

// Returns e-coordinates, n blocks of length m.
std::vector<double> witness_ascent(const Matrix& s, const Vector& a, std::size_t m,
                                   std::vector<double> x, std::size_t iterations) {
  const std::size_t n = static_cast<std::size_t>(a.size());
  std::vector<double> best = x;
  double best_val = exact_ratio(s, a, x, m);
  for (double beta : {20.0, 80.0, 320.0, 1280.0, 5120.0}) {
    std::vector<double> br(n), bc(n);
    std::vector<double> y(m);
    for (std::size_t j = 0; j < n; ++j) bc[j] = beta / std::max(exact_sq(x.data() + j * m, m), 1e-300);
    for (std::size_t l = 0; l < n; ++l) {
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        const double c = s(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) * a[j];
        for (std::size_t i = 0; i < m; ++i) y[i] += c * x[j * m + i];
      }
      br[l] = beta / std::max(exact_sq(y.data(), m), 1e-300);
    }
    ceres::GradientProblem problem(new WitnessRatio(s, a, m, br, bc));
    ceres::GradientProblemSolver::Options opts;
    opts.line_search_direction_type = ceres::LBFGS;
    opts.logging_type = ceres::SILENT;
    opts.max_num_iterations = static_cast<int>(iterations);
    opts.function_tolerance = 1e-12;
    opts.gradient_tolerance = 1e-12;
    opts.parameter_tolerance = 1e-14;
    ceres::GradientProblemSolver::Summary summary;
    std::vector<double> trial = x;
    ceres::Solve(opts, problem, trial.data(), &summary);
    if (std::all_of(trial.begin(), trial.end(), [](double v) { return std::isfinite(v); })) x = trial;
    const double val = exact_ratio(s, a, x, m);
    if (val > best_val) {
      best_val = val;
      best = x;
    }
  }
  return best;
}

}  // namespace

double evaluate_witness(const Matrix& s, const OperatorMatrix& w, const SquareSumVector& x) {
  validate_matrix(s);
  w.validate();
  require(s.rows() == s.cols() && w.size() == static_cast<std::size_t>(s.rows()), "S and W must share their size");
  const double xn = x.norm();
  require(xn > 0.0, "witness must be nonzero");
  SquareSumVector f;
  for (const JamesVector& c : x.components) f.components.push_back(to_basis(c, Basis::kF));
  const SquareSumVector sx = lift_apply(s, f);
  const SquareSumVector wx = w.apply(x);
  double total = 0.0;
  for (std::size_t l = 0; l < sx.components.size(); ++l) {
    std::vector<double> acc = sx.components[l].coeffs;
    add_scaled(acc, wx.components[l].coeffs, -1.0);
    const double v = james_norm_value(JamesVector(Basis::kF, std::move(acc), x.components.front().p, 1));
    total += v * v;
  }
  return std::sqrt(total) / xn;
}

WitnessCertificate certify_lower_bound(const Matrix& s, const OperatorMatrix& w, double delta,
                                       const CertifyOptions& options) {
  validate_matrix(s);
  w.validate();
  require(s.rows() == s.cols(), "S must be square");
  require(w.size() == static_cast<std::size_t>(s.rows()), "W must match the size of S");
  require(w.scalar_part.isZero(0.0), "W must have a zero scalar part");
  require(std::isfinite(delta) && delta > 0.0, "delta must be positive");
  require(!options.m_ladder.empty(), "m ladder must be nonempty");
  const std::size_t n = static_cast<std::size_t>(s.rows());

  WitnessCertificate cert;
  cert.s = s;
  cert.w = w;
  cert.delta = delta;
  cert.seed = options.seed;
  const TildeResult tilde = tilde_norm(s, options.norm_tol);
  cert.regular_norm = tilde.value;
  cert.target = cert.regular_norm / ((1.0 + delta) * (1.0 + delta)) - delta;
  const Vector& a = tilde.a;

  // Climb the m ladder. At each m the diagonal witness x_j = a_j u_j is
  // polished from the l1^n search result (small n), the
  // previous level refined by doubling every e-coordinate (an isometry), and
  // seeded random starts; the ladder stops once the witness ratio reaches
  // (1 + delta)^{-2}.
  const double ratio_goal = 1.0 / ((1.0 + delta) * (1.0 + delta));
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  EmbeddingSearchOptions eo;
  eo.seed = options.seed;
  std::vector<double> x;
  double ratio = -1.0;
  std::size_t m = 0;
  for (std::size_t mm : options.m_ladder) {
    require(mm >= 1, "m ladder entries must be positive");
    std::vector<std::vector<double>> starts;
    if (n <= options.embedding_search_max_n) {
      const EmbeddingSearchResult r = search_l1_embedding(n, mm, delta, eo);
      eo.warm_start = r.certificate.vectors;
      cert.embedding = r.certificate;
      std::vector<double> e0(n * mm, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e = e_coordinates(r.certificate.vectors[j]);
        e.resize(mm, 0.0);
        std::copy(e.begin(), e.end(), e0.begin() + static_cast<long>(j * mm));
      }
      starts.push_back(std::move(e0));
    }
    if (!x.empty()) {
      std::vector<double> up(n * mm, 0.0);
      const std::size_t factor = std::max<std::size_t>(1, mm / m);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m && i * factor < mm; ++i)
          for (std::size_t r = 0; r < factor && i * factor + r < mm; ++r) up[j * mm + i * factor + r] = x[j * m + i];
      starts.push_back(std::move(up));
    }
    for (std::size_t k = 0; k < options.ascent_restarts; ++k) {
      std::vector<double> g(n * mm);
      for (double& v : g) v = gauss(rng);
      starts.push_back(std::move(g));
    }
    for (std::vector<double>& st : starts) {
      std::vector<double> cand = witness_ascent(s, a, mm, std::move(st), options.ascent_iterations);
      const double r = exact_ratio(s, a, cand, mm) / std::max(cert.regular_norm, 1e-300);
      if (r > ratio) {
        ratio = r;
        x = std::move(cand);
        m = mm;
      }
    }
    if (ratio >= ratio_goal) break;
  }
  cert.m = m;
  {
    std::ostringstream note;
    if (cert.embedding)
      note << "l1^" << n << " search reached c = " << cert.embedding->lower_constant << "; ";
    else
      note << "l1^n search skipped (n above embedding_search_max_n); ";
    note << "witness ratio " << ratio << " at m = " << m << " against (1+delta)^-2 = " << ratio_goal;
    cert.embedding_note = note.str();
  }

  // Blocks after l on which every W_ij is uniformly small.
  std::vector<FiniteOperatorOnJ> ops;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (w.has_compact(i, j)) ops.push_back(*w.compact_part[i][j]);
  const double eps = delta / static_cast<double>(n * n);
  const GlidingHumpResult hump = gliding_hump(ops, eps, m, options.hump);
  if (!hump.success) fail(ErrorCode::kPipelineFailure, "gliding hump failed: " + hump.failure);
  cert.l = hump.l;
  cert.blocks = hump.blocks;
  cert.hump_bound = hump.certified_bound;

  // Carry the witness into the block span (an isometric copy).
  SquareSumVector wit;
  for (std::size_t j = 0; j < n; ++j) {
    const JamesVector ej(Basis::kE, std::vector<double>(x.begin() + static_cast<long>(j * m), x.begin() + static_cast<long>((j + 1) * m)), 2.0, 1);
    std::vector<double> b = convert_basis(ej).coeffs;
    JamesVector mapped = expand_blocks(hump.blocks, b, 2.0);
    for (double& c : mapped.coeffs) c *= a[static_cast<Eigen::Index>(j)];
    wit.components.push_back(std::move(mapped));
  }
  const double wn = wit.norm();
  require(wn > 0.0, "witness vanished");
  for (JamesVector& c : wit.components)
    for (double& v : c.coeffs) v /= wn;
  cert.witness = std::move(wit);

  cert.reported_bound = evaluate_witness(s, w, cert.witness);
  cert.achieved_constant = cert.regular_norm > 0.0 ? cert.reported_bound / cert.regular_norm : 0.0;
  {
    OperatorMatrix shifted = w;
    shifted.scalar_part = s;
    cert.upper_estimate = shifted.norm_upper_bound(options.norm_tol);
  }
  cert.meets_target = cert.reported_bound >= cert.target;
  return cert;
}

CertificateCheck verify_certificate(const WitnessCertificate& cert, double tol) {
  CertificateCheck out;
  std::ostringstream msg;
  out.recomputed = evaluate_witness(cert.s, cert.w, cert.witness);
  const double xn = cert.witness.norm();
  bool ok = true;
  if (std::abs(xn - 1.0) > 1e-9) {
    ok = false;
    msg << "witness norm " << xn << " is not 1; ";
  }
  if (std::abs(out.recomputed - cert.reported_bound) > tol) {
    ok = false;
    msg << "recomputed bound " << out.recomputed << " differs from reported " << cert.reported_bound << "; ";
  }
  if (cert.meets_target != (out.recomputed >= cert.target)) {
    ok = false;
    msg << "target flag inconsistent; ";
  }
  if (out.recomputed > cert.upper_estimate + tol) {
    ok = false;
    msg << "bound exceeds the upper estimate; ";
  }
  if (cert.embedding && !cert.embedding->worst_coefficients.empty()) {
    const double r = embedding_ratio(cert.embedding->vectors, cert.embedding->worst_coefficients);
    if (std::abs(r - cert.embedding->lower_constant) > tol) {
      ok = false;
      msg << "embedding constant does not re-evaluate; ";
    }
  }
  out.ok = ok;
  out.detail = ok ? "ok" : msg.str();
  return out;
}

}  // namespace jamesop

#include "jamesop/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace jamesop {

// ---------------------------------------------------------------------------
// Convex block systems

void ConvexBlockSystem::validate() const {
  require(boundaries.size() >= 2, "block system needs at least one block");
  require(boundaries.front() >= 1, "block boundaries are 1-based");
  for (std::size_t k = 1; k < boundaries.size(); ++k)
    require(boundaries[k] > boundaries[k - 1], "block boundaries must be strictly increasing");
  if (extent() > Limits::kMaxCoefficients) fail(ErrorCode::kCapExceeded, "block system exceeds coefficient cap");
  require(weights.size() == boundaries.back() - boundaries.front(),
          "one weight per index in [n_1, n_{K+1})");
  for (double c : weights) require(std::isfinite(c) && c >= 0.0, "block weights must be nonnegative");
  for (std::size_t k = 0; k + 1 < boundaries.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = boundaries[k]; j < boundaries[k + 1]; ++j) s += weight(j);
    require(std::abs(s - 1.0) <= 1e-12, "block weights must sum to 1");
  }
}

ConvexBlockSystem ConvexBlockSystem::singletons(std::size_t start, std::size_t count) {
  require(start >= 1 && count >= 1, "singletons need start >= 1 and count >= 1");
  ConvexBlockSystem b;
  for (std::size_t k = 0; k <= count; ++k) b.boundaries.push_back(start + k);
  b.weights.assign(count, 1.0);
  return b;
}

JamesVector ConvexBlockSystem::block(std::size_t k, double p) const {
  require(k < blocks(), "block index out of range");
  std::vector<double> c(extent(), 0.0);
  for (std::size_t j = boundaries[k]; j < boundaries[k + 1]; ++j) c[j - 1] = weight(j);
  return JamesVector(Basis::kF, std::move(c), p, 1);
}

JamesVector expand_blocks(const ConvexBlockSystem& blocks, const std::vector<double>& b, double p) {
  blocks.validate();
  require(b.size() == blocks.blocks(), "coefficient count must match the number of blocks");
  std::vector<double> d(blocks.extent(), 0.0);
  for (std::size_t k = 0; k < b.size(); ++k)
    for (std::size_t j = blocks.boundaries[k]; j < blocks.boundaries[k + 1]; ++j)
      d[j - 1] = blocks.weight(j) * b[k];
  return JamesVector(Basis::kF, std::move(d), p, 1);
}

double verify_block_isometry(const ConvexBlockSystem& blocks, const std::vector<double>& b,
                             bool use_oracle) {
  const JamesVector lhs = expand_blocks(blocks, b, 2.0);
  const JamesVector rhs = JamesVector::in_f(b, 2.0);
  if (use_oracle) return std::abs(james_norm_oracle(lhs).value - james_norm_oracle(rhs).value);
  return std::abs(james_norm(lhs).value - james_norm(rhs).value);
}

// ---------------------------------------------------------------------------
// Cut alteration

namespace {

double segment_sum(const std::vector<double>& d, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t i = from; i < to; ++i) s += d[i - 1];
  return s;
}

void check_cuts(const CutSequence& cuts, std::size_t lo, std::size_t hi) {
  require(!cuts.empty(), "cut sequence must be nonempty");
  for (std::size_t r = 0; r < cuts.size(); ++r) {
    require(cuts[r] >= lo && cuts[r] <= hi, "cut outside the coefficient range");
    if (r > 0) require(cuts[r] > cuts[r - 1], "cuts must be strictly increasing");
  }
}

}  // namespace

double cut_functional(const JamesVector& d, const CutSequence& cuts) {
  d.validate();
  require(d.basis == Basis::kF && d.inner_dim == 1, "cut functional needs scalar f-coefficients");
  check_cuts(cuts, 1, d.size() + 1);
  double n = 0.0;
  for (std::size_t r = 0; r + 1 < cuts.size(); ++r) {
    const double s = std::abs(segment_sum(d.coeffs, cuts[r], cuts[r + 1]));
    n += d.p == 2.0 ? s * s : std::pow(s, d.p);
  }
  return n;
}

CutSequence alter_cuts(const ConvexBlockSystem& blocks, const std::vector<double>& b,
                       const CutSequence& cuts) {
  const JamesVector dv = expand_blocks(blocks, b);
  const std::vector<double>& d = dv.coeffs;
  const auto& n = blocks.boundaries;
  check_cuts(cuts, n.front(), n.back());

  // Pinning both ends to the outer boundaries adds nonnegative terms only.
  CutSequence m = cuts;
  if (m.front() != n.front()) m.insert(m.begin(), n.front());
  if (m.back() != n.back()) m.push_back(n.back());
  const std::set<std::size_t> aligned(n.begin(), n.end());

  // Every pass removes one interior cut or moves it onto a boundary.
  while (true) {
    std::size_t r = 1;
    while (r + 1 < m.size() && aligned.count(m[r])) ++r;
    if (r + 1 >= m.size()) break;
    const double u = segment_sum(d, m[r - 1], m[r]);
    const double v = segment_sum(d, m[r], m[r + 1]);
    if (u * v >= 0.0) {
      m.erase(m.begin() + static_cast<long>(r));
      continue;
    }
    const auto it = std::upper_bound(n.begin(), n.end(), m[r]);
    const std::size_t k = static_cast<std::size_t>(it - n.begin()) - 1;
    const double sigma = v > 0.0 ? 1.0 : -1.0;
    const std::size_t target = sigma * b[k] >= 0.0 ? n[k] : n[k + 1];
    if (target <= m[r - 1] || target >= m[r + 1])
      fail(ErrorCode::kInternal, "cut alteration left its neighbours' range");
    m[r] = target;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Finite operators on J

const char* tail_rule_name(TailRule rule) {
  return rule == TailRule::kZero ? "ZERO" : "BAND_STATIONARY";
}

void FiniteOperatorOnJ::validate() const {
  require(matrix.rows() >= 1 && matrix.rows() == matrix.cols(), "operator matrix must be square and nonempty");
  if (size() > Limits::kMaxCoefficients) fail(ErrorCode::kCapExceeded, "operator dimension exceeds cap");
  require(matrix.allFinite(), "operator entries must be finite");
  require(std::isfinite(p) && p > 1.0, "p must be finite and > 1");
  const std::size_t m = size();
  if (tail_rule == TailRule::kZero) {
    require(band.empty() && stationary.empty(), "ZERO tail rule takes no band or stationary part");
    return;
  }
  require(stationary.size() == m, "stationary part must have one entry per column");
  for (double s : stationary) require(std::isfinite(s), "stationary entries must be finite");
  for (const BandEntry& e : band) {
    require(e.offset <= 0, "band offsets must be <= 0");
    require(static_cast<long>(m) + e.offset >= 1, "band reaches before f_1 at the last column");
    require(std::isfinite(e.value), "band values must be finite");
  }
  std::vector<double> expect = stationary;
  for (const BandEntry& e : band) expect[static_cast<std::size_t>(static_cast<long>(m) + e.offset - 1)] += e.value;
  for (std::size_t i = 0; i < m; ++i)
    require(std::abs(expect[i] - matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m - 1))) <= 1e-12,
            "band declaration does not reproduce the last explicit column");
}

std::vector<double> FiniteOperatorOnJ::column(std::size_t k) const {
  require(k >= 1, "column index is 1-based");
  const std::size_t m = size();
  std::vector<double> c(std::max(m, k), 0.0);
  if (k <= m) {
    for (std::size_t i = 0; i < m; ++i) c[i] = matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k - 1));
    return c;
  }
  if (tail_rule == TailRule::kZero) return c;
  std::copy(stationary.begin(), stationary.end(), c.begin());
  for (const BandEntry& e : band) c[static_cast<std::size_t>(static_cast<long>(k) + e.offset - 1)] += e.value;
  return c;
}

double FiniteOperatorOnJ::column_dot(std::size_t k, const std::vector<double>& g) const {
  require(k >= 1, "column index is 1-based");
  const std::size_t m = size();
  const std::size_t lim = std::min(m, g.size());
  double acc = 0.0;
  if (k <= m) {
    for (std::size_t i = 0; i < lim; ++i) acc += matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k - 1)) * g[i];
    return acc;
  }
  if (tail_rule == TailRule::kZero) return 0.0;
  for (std::size_t i = 0; i < lim; ++i) acc += stationary[i] * g[i];
  for (const BandEntry& e : band) {
    const auto idx = static_cast<std::size_t>(static_cast<long>(k) + e.offset - 1);
    if (idx < g.size()) acc += e.value * g[idx];
  }
  return acc;
}

JamesVector FiniteOperatorOnJ::apply(const JamesVector& x) const {
  x.validate();
  require(x.basis == Basis::kF && x.inner_dim == 1, "operators act on scalar f-coefficients");
  const std::size_t m = size();
  const std::size_t len = x.size();
  std::vector<double> y(std::max(m, len), 0.0);
  for (std::size_t k = 0; k < std::min(m, len); ++k) {
    const double bk = x.coeffs[k];
    if (bk == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) y[i] += bk * matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }
  if (tail_rule == TailRule::kBandStationary && len > m) {
    double beyond = 0.0;
    for (std::size_t k = m; k < len; ++k) {
      const double bk = x.coeffs[k];
      if (bk == 0.0) continue;
      beyond += bk;
      for (const BandEntry& e : band) y[static_cast<std::size_t>(static_cast<long>(k) + e.offset)] += bk * e.value;
    }
    for (std::size_t i = 0; i < m; ++i) y[i] += beyond * stationary[i];
  }
  return JamesVector(Basis::kF, std::move(y), p, 1);
}

BidualVector FiniteOperatorOnJ::apply_bidual(const BidualVector& w) const {
  w.validate();
  const BidualVector lim = limit_action(*this);
  std::vector<double> body;
  if (!w.body.coeffs.empty()) {
    const JamesVector fb = convert_basis(JamesVector(Basis::kE, w.body.coeffs, p, 1));
    body = e_coordinates(apply(fb));
  }
  body.resize(std::max(body.size(), lim.body.coeffs.size()), 0.0);
  for (std::size_t i = 0; i < lim.body.coeffs.size(); ++i) body[i] += w.tail * lim.body.coeffs[i];
  return {JamesVector(Basis::kE, std::move(body), p, 1), w.tail * lim.tail};
}

double FiniteOperatorOnJ::norm_upper_bound() const {
  validate();
  if (tail_rule == TailRule::kBandStationary) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t k = 1; k <= size(); ++k) s += james_norm_value(JamesVector(Basis::kF, column(k), p, 1));
  return s;
}

FiniteOperatorOnJ FiniteOperatorOnJ::zero(std::size_t m, double p) {
  require(m >= 1, "operator dimension must be positive");
  FiniteOperatorOnJ op;
  op.matrix = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  op.p = p;
  return op;
}

FiniteOperatorOnJ FiniteOperatorOnJ::shift_difference(std::size_t m, double p) {
  require(m >= 2, "shift-difference operator needs m >= 2");
  FiniteOperatorOnJ op = zero(m, p);
  op.matrix(0, 0) = 1.0;
  for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(m); ++k) {
    op.matrix(k - 1, k) = 1.0;
    op.matrix(k, k) = -1.0;
  }
  op.tail_rule = TailRule::kBandStationary;
  op.band = {{-1, 1.0}, {0, -1.0}};
  op.stationary.assign(m, 0.0);
  return op;
}

FiniteOperatorOnJ FiniteOperatorOnJ::rank_one(const std::vector<double>& functional,
                                              std::size_t target, std::size_t m, double p) {
  require(!functional.empty() && functional.size() <= m, "functional length must lie in 1..m");
  require(target >= 1 && target <= m, "target index out of range");
  FiniteOperatorOnJ op = zero(m, p);
  const double limit = functional.back();
  for (std::size_t k = 0; k < m; ++k)
    op.matrix(static_cast<Eigen::Index>(target - 1), static_cast<Eigen::Index>(k)) =
        k < functional.size() ? functional[k] : limit;
  if (limit != 0.0) {
    op.tail_rule = TailRule::kBandStationary;
    op.stationary.assign(m, 0.0);
    op.stationary[target - 1] = limit;
  }
  return op;
}

BidualVector limit_action(const FiniteOperatorOnJ& op) {
  op.validate();
  const std::size_t m = op.size();
  if (op.tail_rule == TailRule::kZero)
    return {JamesVector(Basis::kE, std::vector<double>(m, 0.0), op.p, 1), 0.0};
  double total = 0.0;
  for (const BandEntry& e : op.band) total += e.value;
  return {JamesVector(Basis::kE, e_coordinates(JamesVector(Basis::kF, op.stationary, op.p, 1)), op.p, 1),
          total};
}

// ---------------------------------------------------------------------------
// Gliding hump

namespace {

std::vector<double> tail_projection(std::vector<double> f_coeffs, std::size_t l) {
  for (std::size_t i = 0; i < std::min(l, f_coeffs.size()); ++i) f_coeffs[i] = 0.0;
  return f_coeffs;
}

double f_norm(const std::vector<double>& f_coeffs, double p) {
  if (f_coeffs.empty()) return 0.0;
  return james_norm_value(JamesVector(Basis::kF, f_coeffs, p, 1));
}

struct OperatorState {
  const FiniteOperatorOnJ* op;
  std::vector<double> limit_f;  // f-coefficients of the body of S** f
};

// S u - S** f in f-coefficients, u given on [start, start + w.size()).
std::vector<double> mazur_residual(const OperatorState& st, std::size_t start,
                                   const std::vector<double>& w) {
  std::vector<double> u(start + w.size() - 1, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) u[start - 1 + i] = w[i];
  std::vector<double> y = st.op->apply(JamesVector(Basis::kF, std::move(u), st.op->p, 1)).coeffs;
  y.resize(std::max(y.size(), st.limit_f.size()), 0.0);
  for (std::size_t i = 0; i < st.limit_f.size(); ++i) y[i] -= st.limit_f[i];
  return y;
}

double mazur_error(const std::vector<OperatorState>& ops, std::size_t start,
                   const std::vector<double>& w) {
  double e = 0.0;
  for (const OperatorState& st : ops) e = std::max(e, f_norm(mazur_residual(st, start, w), st.op->p));
  return e;
}

// Entropic mirror descent on max_j ||S_j u - S_j** f|| over the simplex.
std::vector<double> mirror_descent(const std::vector<OperatorState>& ops, std::size_t start,
                                   std::size_t width, std::size_t iterations, double* best_err) {
  std::vector<double> w(width, 1.0 / static_cast<double>(width));
  std::vector<double> best = w;
  *best_err = mazur_error(ops, start, w);
  for (std::size_t t = 0; t < iterations; ++t) {
    // Active operator and its residual.
    std::size_t arg = 0;
    double top = -1.0;
    std::vector<double> res;
    for (std::size_t j = 0; j < ops.size(); ++j) {
      std::vector<double> r = mazur_residual(ops[j], start, w);
      const double v = f_norm(r, ops[j].op->p);
      if (v > top) {
        top = v;
        arg = j;
        res = std::move(r);
      }
    }
    if (top < *best_err) {
      *best_err = top;
      best = w;
    }
    if (top == 0.0) break;
    const double p = ops[arg].op->p;
    const NormResult nr = james_norm_fast(JamesVector(Basis::kF, res, p, 1));
    // d||y|| / dy_i = ||y||^{1-p} |s_e|^{p-2} s_e for i in the chain segment e.
    std::vector<double> g(res.size(), 0.0);
    for (std::size_t e = 0; e + 1 < nr.chain.size(); ++e) {
      double s = 0.0;
      for (std::size_t i = nr.chain[e]; i < nr.chain[e + 1]; ++i) s += res[i - 1];
      const double coef = std::pow(std::abs(s), p - 2.0) * s * std::pow(nr.value, 1.0 - p);
      for (std::size_t i = nr.chain[e]; i < nr.chain[e + 1]; ++i) g[i - 1] = coef;
    }
    std::vector<double> grad(width, 0.0);
    double gmax = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      const double acc = ops[arg].op->column_dot(start + i, g);
      grad[i] = acc;
      gmax = std::max(gmax, std::abs(acc));
    }
    if (gmax == 0.0) break;
    const double eta = 1.0 / (gmax * std::sqrt(static_cast<double>(t + 1)));
    double z = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      w[i] *= std::exp(-eta * grad[i]);
      z += w[i];
    }
    for (double& x : w) x /= z;
  }
  return best;
}

}  // namespace

double block_subspace_bound(const FiniteOperatorOnJ& op, std::size_t l,
                            const ConvexBlockSystem& blocks) {
  op.validate();
  blocks.validate();
  require(blocks.boundaries.front() > l, "blocks must be supported after l");
  double sum = 0.0;
  double frob_sq = 0.0;
  for (std::size_t k = 0; k < blocks.blocks(); ++k) {
    const std::vector<double> y = tail_projection(op.apply(blocks.block(k, op.p)).coeffs, l);
    sum += f_norm(y, op.p);
    for (double x : e_coordinates(JamesVector(Basis::kF, y, op.p, 1))) frob_sq += x * x;
  }
  const double via_frobenius = 2.0 * std::sqrt(static_cast<double>(blocks.blocks()) * frob_sq);
  return std::min(sum, via_frobenius);
}

GlidingHumpResult gliding_hump(const std::vector<FiniteOperatorOnJ>& ops, double eps,
                               std::size_t count, const HumpOptions& options) {
  require(std::isfinite(eps) && eps > 0.0, "eps must be positive");
  require(count >= 1, "block count must be positive");
  GlidingHumpResult out;
  const double share = eps / (2.0 * static_cast<double>(count));

  std::vector<OperatorState> states;
  std::size_t l = 1;
  for (const FiniteOperatorOnJ& op : ops) {
    const BidualVector lim = limit_action(op);
    if (lim.tail != 0.0) {
      out.failure = "weak-star limit has a nonzero f component; no tail projection is small";
      return out;
    }
    std::vector<double> lf =
        lim.body.coeffs.empty() ? std::vector<double>{} : convert_basis(lim.body).coeffs;
    std::size_t lj = 1;
    while (lj < lf.size() && f_norm(tail_projection(lf, lj), op.p) >= share) ++lj;
    l = std::max(l, lj);
    states.push_back({&op, std::move(lf)});
  }
  out.l = l;

  ConvexBlockSystem blocks;
  std::size_t s = l + 1;
  blocks.boundaries.push_back(s);
  for (std::size_t k = 0; k < count; ++k) {
    bool placed = false;
    double achieved = std::numeric_limits<double>::infinity();
    std::size_t vertex_checked = 0;
    for (std::size_t w = 1; w <= options.max_window; w *= 2) {
      if (s + w - 1 > Limits::kMaxCoefficients) break;
      // Vertices of the simplex: single f_j.
      for (std::size_t j = vertex_checked; j < w && !placed; ++j) {
        const double e = mazur_error(states, s + j, {1.0});
        achieved = std::min(achieved, e);
        if (e < share) {
          for (std::size_t i = 0; i < j; ++i) blocks.weights.push_back(0.0);
          blocks.weights.push_back(1.0);
          s += j + 1;
          placed = true;
        }
      }
      vertex_checked = w;
      if (placed) break;
      if (w == 1) continue;
      std::vector<double> uniform(w, 1.0 / static_cast<double>(w));
      double e = mazur_error(states, s, uniform);
      achieved = std::min(achieved, e);
      std::vector<double> chosen;
      if (e < share) {
        chosen = std::move(uniform);
      } else if (w <= options.mirror_window && !states.empty()) {
        std::vector<double> md = mirror_descent(states, s, w, options.mirror_iterations, &e);
        achieved = std::min(achieved, e);
        if (e < share) chosen = std::move(md);
      }
      if (!chosen.empty()) {
        // Renormalize so the block sums to one in floating point.
        double z = 0.0;
        for (double x : chosen) z += x;
        for (double x : chosen) blocks.weights.push_back(x / z);
        s += w;
        placed = true;
        break;
      }
    }
    if (!placed) {
      std::ostringstream msg;
      msg << "block " << k + 1 << ": no convex combination within the window budget; best error "
          << achieved << " against threshold " << share;
      out.failure = msg.str();
      out.certified_bound = achieved;
      return out;
    }
    blocks.boundaries.push_back(s);
  }
  blocks.validate();
  out.blocks = blocks;
  for (const FiniteOperatorOnJ& op : ops) {
    const double b = block_subspace_bound(op, l, blocks);
    out.operator_bounds.push_back(b);
    out.certified_bound = std::max(out.certified_bound, b);
  }
  out.success = out.certified_bound < eps;
  if (!out.success) out.failure = "certified block-subspace bound not below eps";
  return out;
}

// ---------------------------------------------------------------------------
// l1^n embeddings

namespace {

struct Combiner {
  std::vector<std::vector<double>> f;  // f-coefficients, padded to a common length
  double p = 2.0;

  explicit Combiner(const std::vector<JamesVector>& vectors) {
    require(!vectors.empty(), "need at least one vector");
    std::size_t len = 0;
    p = vectors.front().p;
    for (const JamesVector& v : vectors) {
      v.validate();
      require(v.inner_dim == 1, "embedding vectors must be scalar");
      require(v.p == p, "embedding vectors must share p");
      len = std::max(len, v.size());
    }
    for (const JamesVector& v : vectors) {
      std::vector<double> c = to_basis(v, Basis::kF).coeffs;
      c.resize(len, 0.0);
      f.push_back(std::move(c));
    }
  }

  double norm(const std::vector<double>& a) const {
    std::vector<double> y(f.front().size(), 0.0);
    for (std::size_t k = 0; k < f.size(); ++k)
      if (a[k] != 0.0)
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += a[k] * f[k][i];
    return james_norm(JamesVector(Basis::kF, std::move(y), p, 1)).value;
  }

  double ratio(const std::vector<double>& a) const {
    double l1 = 0.0;
    for (double x : a) l1 += std::abs(x);
    return l1 == 0.0 ? std::numeric_limits<double>::infinity() : norm(a) / l1;
  }
};

void enumerate_grid(std::size_t n, int total, std::vector<int>& cur,
                    const std::function<void(const std::vector<int>&)>& visit) {
  if (cur.size() + 1 == n) {
    const int last = total;
    for (int s : {1, -1}) {
      if (last == 0 && s == -1) continue;
      cur.push_back(s * last);
      visit(cur);
      cur.pop_back();
    }
    return;
  }
  for (int v = 0; v <= total; ++v) {
    for (int s : {1, -1}) {
      if (v == 0 && s == -1) continue;
      cur.push_back(s * v);
      enumerate_grid(n, total - v, cur, visit);
      cur.pop_back();
    }
  }
}

}  // namespace

double embedding_ratio(const std::vector<JamesVector>& vectors, const std::vector<double>& a) {
  const Combiner comb(vectors);
  require(a.size() == vectors.size(), "one coefficient per vector");
  return comb.ratio(a);
}

EmbeddingCertificate check_l1_embedding(const std::vector<JamesVector>& vectors, std::uint64_t seed) {
  const Combiner comb(vectors);
  const std::size_t n = vectors.size();
  if (n > 16) fail(ErrorCode::kCapExceeded, "l1 embedding checks support at most 16 vectors");
  EmbeddingCertificate cert;
  cert.vectors = vectors;
  for (const JamesVector& v : vectors) cert.upper_constant = std::max(cert.upper_constant, james_norm(v).value);
  cert.lower_constant = std::numeric_limits<double>::infinity();

  auto visit = [&](const std::vector<double>& a) {
    const double r = comb.ratio(a);
    ++cert.points_checked;
    if (r < cert.lower_constant) {
      cert.lower_constant = r;
      cert.worst_coefficients = a;
    }
  };

  std::vector<double> a(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t k = 0; k < n; ++k) a[k] = (mask >> k & 1u) ? -1.0 / n : 1.0 / n;
    visit(a);
  }
  std::ostringstream ev;
  ev << "all " << (std::size_t{1} << n) << " sign patterns";
  if (n <= 3) {
    std::vector<int> cur;
    enumerate_grid(n, 100, cur, [&](const std::vector<int>& g) {
      for (std::size_t k = 0; k < n; ++k) a[k] = g[k] / 100.0;
      visit(a);
    });
    ev << "; l1-sphere grid with mesh 0.01";
  } else {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::bernoulli_distribution coin(0.5);
    constexpr std::size_t kSamples = 4000;
    std::vector<std::pair<double, std::vector<double>>> worst;
    for (std::size_t t = 0; t < kSamples; ++t) {
      double z = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        a[k] = expo(rng);
        z += a[k];
      }
      for (std::size_t k = 0; k < n; ++k) a[k] = (coin(rng) ? -1.0 : 1.0) * a[k] / z;
      visit(a);
      worst.emplace_back(comb.ratio(a), a);
    }
    std::partial_sort(worst.begin(), worst.begin() + 8, worst.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
    // Adversarial descent: move l1 mass between coordinate pairs.
    for (std::size_t s = 0; s < 8; ++s) {
      std::vector<double> cur = worst[s].second;
      double val = worst[s].first;
      double h = 0.05;
      while (h > 1e-4) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (double sg : {1.0, -1.0}) {
              std::vector<double> trial = cur;
              trial[i] += sg * h;
              trial[j] -= (trial[j] >= 0.0 ? 1.0 : -1.0) * h;
              double z = 0.0;
              for (double x : trial) z += std::abs(x);
              for (double& x : trial) x /= z;
              const double r = comb.ratio(trial);
              visit(trial);
              if (r < val) {
                val = r;
                cur = trial;
                improved = true;
              }
            }
          }
        }
        if (!improved) h /= 2.0;
      }
    }
    ev << "; " << kSamples << " seeded samples of the l1 sphere (seed " << seed
       << ") with adversarial descent from the 8 worst";
  }
  cert.evidence = ev.str();
  return cert;
}

EmbeddingSearchResult search_l1_embedding(std::size_t n, std::size_t m, double delta_target,
                                          const EmbeddingSearchOptions& options) {
  require(n >= 1 && m >= 1, "embedding search needs n >= 1 and m >= 1");
  require(std::isfinite(delta_target) && delta_target > 0.0, "delta_target must be positive");
  if (n > 16) fail(ErrorCode::kCapExceeded, "embedding search supports at most 16 vectors");
  if (m > 4096) fail(ErrorCode::kCapExceeded, "embedding search supports m <= 4096");
  EmbeddingSearchResult out;
  out.target_constant = 1.0 / (1.0 + delta_target);

  // Proxy objective: sign patterns plus a fixed coarse sample of the sphere.
  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<double>> probes;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = (mask >> k & 1u) ? -1.0 / n : 1.0 / n;
    probes.push_back(a);
  }
  {
    std::exponential_distribution<double> expo(1.0);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t t = 0; t < 8 * n; ++t) {
      std::vector<double> a(n);
      double z = 0.0;
      for (double& x : a) {
        x = expo(rng);
        z += x;
      }
      for (double& x : a) x = (coin(rng) ? -1.0 : 1.0) * x / z;
      probes.push_back(a);
    }
  }
  auto normalize = [](std::vector<JamesVector>& vs) {
    for (JamesVector& v : vs) {
      const double nv = james_norm(v).value;
      if (nv > 0.0)
        for (double& x : v.coeffs) x /= nv;
    }
  };
  auto proxy = [&](const std::vector<JamesVector>& vs) {
    const Combiner comb(vs);
    double c = std::numeric_limits<double>::infinity();
    for (const auto& a : probes) c = std::min(c, comb.ratio(a));
    return c;
  };

  std::vector<JamesVector> best;
  double best_c = -1.0;
  EmbeddingCertificate best_cert;
  std::vector<JamesVector> warm;
  if (!options.warm_start.empty()) {
    require(options.warm_start.size() == n, "warm start must hold n vectors");
    for (const JamesVector& v : options.warm_start) {
      std::vector<double> c = to_basis(v, Basis::kF).coeffs;
      require(c.size() <= m, "warm start exceeds the requested span");
      c.resize(m, 0.0);
      warm.emplace_back(Basis::kF, std::move(c), 2.0, 1);
    }
    best = warm;
    best_cert = check_l1_embedding(best, options.seed);
    best_c = best_cert.lower_constant;
  }

  std::normal_distribution<double> gauss;
  for (std::size_t rs = 0; rs < std::max<std::size_t>(options.restarts, 1); ++rs) {
    std::vector<JamesVector> vs;
    if (rs == 0 && !warm.empty()) {
      vs = warm;
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> c(m);
        for (double& x : c) x = gauss(rng);
        vs.emplace_back(Basis::kF, std::move(c), 2.0, 1);
      }
      normalize(vs);
    }
    double cur = proxy(vs);
    double step = 0.25;
    for (std::size_t sweep = 0; sweep < options.sweeps && step > 1e-5; ++sweep) {
      bool improved = false;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
          for (double sg : {1.0, -1.0}) {
            std::vector<JamesVector> trial = vs;
            trial[k].coeffs[i] += sg * step;
            const double nv = james_norm(trial[k]).value;
            if (nv == 0.0) continue;
            for (double& x : trial[k].coeffs) x /= nv;
            const double c = proxy(trial);
            if (c > cur) {
              cur = c;
              vs = std::move(trial);
              improved = true;
            }
          }
        }
      }
      if (!improved) step /= 2.0;
    }
    const EmbeddingCertificate cert = check_l1_embedding(vs, options.seed);
    if (cert.lower_constant > best_c) {
      best_c = cert.lower_constant;
      best = vs;
      best_cert = cert;
    }
  }
  out.certificate = best_cert;
  out.reached_target = best_cert.lower_constant >= out.target_constant;
  return out;
}

}  // namespace jamesop

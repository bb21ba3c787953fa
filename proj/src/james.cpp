#include "jamesop/james.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <string>

namespace jamesop {

const char* basis_name(Basis basis) { return basis == Basis::kE ? "E_BASIS" : "F_BASIS"; }

JamesVector::JamesVector(Basis basis_, std::vector<double> coeffs_, double p_,
                         std::size_t inner_dim_)
    : basis(basis_), coeffs(std::move(coeffs_)), p(p_), inner_dim(inner_dim_) {}

JamesVector JamesVector::unit_f(std::size_t n, std::size_t m, double p) {
  require(n >= 1 && n <= m, "unit_f: index out of range");
  std::vector<double> c(m, 0.0);
  c[n - 1] = 1.0;
  return JamesVector(Basis::kF, std::move(c), p, 1);
}

bool JamesVector::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; });
}

void JamesVector::validate() const {
  require(std::isfinite(p) && p > 1.0, "p must be finite and > 1");
  require(inner_dim >= 1, "inner_dim must be positive");
  if (inner_dim > Limits::kMaxInnerDim) fail(ErrorCode::kCapExceeded, "inner_dim exceeds cap");
  require(!coeffs.empty(), "coeffs must be nonempty");
  require(coeffs.size() % inner_dim == 0, "coeffs length is not a multiple of inner_dim");
  if (size() > Limits::kMaxCoefficients) fail(ErrorCode::kCapExceeded, "coeffs length exceeds cap");
  require(inner_dim == 1 || basis == Basis::kE, "vector-valued coefficients require E_BASIS");
  for (double c : coeffs) require(std::isfinite(c), "coeffs must be finite");
}

namespace {

inline double pth_power(double a, double p) { return p == 2.0 ? a * a : std::pow(a, p); }

inline double pth_root(double v, double p) { return p == 2.0 ? std::sqrt(v) : std::pow(v, 1.0 / p); }

// Edge terms |x_j - x_i|^p (e-basis) or |b_i + ... + b_{j-1}|^p (f-basis),
// 0-based positions 0..m where position m is the virtual trailing zero.
// Both the dynamic program and the oracle read every edge from here.
class EdgeTable {
 public:
  explicit EdgeTable(const JamesVector& v) : m_(v.size()), w_(m_ + 1), t_(w_ * w_, 0.0) {
    const std::size_t d = v.inner_dim;
    const double p = v.p;
    if (v.basis == Basis::kF) {
      for (std::size_t i = 0; i < m_; ++i) {
        double s = 0.0;
        for (std::size_t j = i + 1; j <= m_; ++j) {
          s += v.coeffs[j - 1];
          t_[i * w_ + j] = pth_power(std::abs(s), p);
        }
      }
      return;
    }
    auto at = [&](std::size_t i, std::size_t r) { return i < m_ ? v.coeffs[i * d + r] : 0.0; };
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = i + 1; j <= m_; ++j) {
        double a;
        if (d == 1) {
          a = std::abs(at(j, 0) - at(i, 0));
        } else {
          double sq = 0.0;
          for (std::size_t r = 0; r < d; ++r) {
            const double diff = at(j, r) - at(i, r);
            sq += diff * diff;
          }
          a = std::sqrt(sq);
        }
        t_[i * w_ + j] = pth_power(a, p);
      }
    }
  }

  double operator()(std::size_t i, std::size_t j) const { return t_[i * w_ + j]; }
  std::size_t positions() const { return w_; }

 private:
  std::size_t m_;
  std::size_t w_;
  std::vector<double> t_;
};

// Suffix dynamic program over 0-based positions. best_from[i] is the best
// power sum of a chain starting at i with at least one edge; cont[i] also
// allows the empty continuation.
struct ChainDp {
  std::vector<double> cont;
  std::vector<double> best_from;
  double value = 0.0;
};

ChainDp run_dp(const EdgeTable& t) {
  const std::size_t w = t.positions();
  ChainDp dp;
  dp.cont.assign(w, 0.0);
  dp.best_from.assign(w, -std::numeric_limits<double>::infinity());
  for (std::size_t i = w - 1; i-- > 0;) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < w; ++j) best = std::max(best, t(i, j) + dp.cont[j]);
    dp.best_from[i] = best;
    dp.cont[i] = std::max(0.0, best);
  }
  dp.value = *std::max_element(dp.best_from.begin(), dp.best_from.end() - 1);
  return dp;
}

Chain trace_chain(const EdgeTable& t, const ChainDp& dp) {
  const std::size_t w = t.positions();
  std::size_t i = 0;
  while (dp.best_from[i] != dp.value) ++i;
  Chain chain{i + 1};
  double target = dp.value;
  while (true) {
    std::size_t next = w;
    for (std::size_t j = i + 1; j < w; ++j) {
      if (t(i, j) + dp.cont[j] == target) {
        next = j;
        break;
      }
    }
    if (next == w) fail(ErrorCode::kInternal, "chain reconstruction failed");
    chain.push_back(next + 1);
    target = dp.cont[next];
    i = next;
    if (target == 0.0) break;
  }
  return chain;
}

double fold_chain(const EdgeTable& t, const Chain& chain) {
  double acc = 0.0;
  for (std::size_t k = chain.size() - 1; k > 0; --k) acc = t(chain[k - 1] - 1, chain[k] - 1) + acc;
  return acc;
}

void check_chain(const JamesVector& v, const Chain& chain) {
  require(chain.size() >= 2, "chain must have at least two indices");
  for (std::size_t k = 0; k < chain.size(); ++k) {
    require(chain[k] >= 1 && chain[k] <= v.size() + 1, "chain index out of range");
    if (k > 0) require(chain[k] > chain[k - 1], "chain must be strictly increasing");
  }
}

}  // namespace

NormResult james_norm(const JamesVector& v) {
  v.validate();
  const EdgeTable t(v);
  const ChainDp dp = run_dp(t);
  return {pth_root(dp.value, v.p), trace_chain(t, dp)};
}

NormResult james_norm_fast(const JamesVector& v) {
  v.validate();
  const std::size_t d = v.inner_dim;
  std::vector<double> x = e_coordinates(v);
  for (std::size_t r = 0; r < d; ++r) x.push_back(0.0);
  // Keep the first point, the final zero and every point that differs from
  // its predecessor. In the scalar case interior points of monotone runs are
  // dropped too: |a - c|^p >= |a - b|^p + |b - c|^p when b lies between.
  const std::size_t n = x.size() / d;
  auto same = [&](std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < d; ++r)
      if (x[a * d + r] != x[b * d + r]) return false;
    return true;
  };
  std::vector<std::size_t> keep{0};
  for (std::size_t i = 1; i < n; ++i) {
    if (same(i, keep.back())) continue;
    if (d == 1 && keep.size() >= 2) {
      const double a = x[keep[keep.size() - 2]], b = x[keep.back()], c = x[i];
      if ((a <= b && b <= c) || (a >= b && b >= c)) keep.back() = i;
      else keep.push_back(i);
      continue;
    }
    keep.push_back(i);
  }
  // The virtual zero must remain the final position.
  if (keep.back() != n - 1) keep.push_back(n - 1);
  std::vector<double> pts;
  for (std::size_t i : keep)
    for (std::size_t r = 0; r < d; ++r) pts.push_back(x[i * d + r]);
  pts.resize(pts.size() - d);
  if (pts.empty()) return {0.0, {1, 2}};
  const JamesVector reduced(Basis::kE, std::move(pts), v.p, d);
  const EdgeTable t(reduced);
  const ChainDp dp = run_dp(t);
  Chain chain = trace_chain(t, dp);
  for (std::size_t& c : chain) c = keep[c - 1] + 1;
  return {pth_root(dp.value, v.p), std::move(chain)};
}

double james_norm_value(const JamesVector& v) { return james_norm_fast(v).value; }

NormResult james_norm_oracle(const JamesVector& v, std::size_t cap) {
  v.validate();
  if (cap > Limits::kMaxOracleCap) fail(ErrorCode::kCapExceeded, "oracle cap above hard limit");
  if (v.size() > cap)
    fail(ErrorCode::kCapExceeded,
         "oracle supports at most " + std::to_string(cap) + " coefficients");
  const EdgeTable t(v);
  const std::size_t w = t.positions();
  double best = -1.0;
  Chain best_chain;
  Chain chain;
  for (std::uint32_t mask = 1; mask < (1u << w); ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    chain.clear();
    for (std::size_t i = 0; i < w; ++i)
      if (mask & (1u << i)) chain.push_back(i + 1);
    const double s = fold_chain(t, chain);
    if (s > best || (s == best && chain < best_chain)) {
      best = s;
      best_chain = chain;
    }
  }
  return {pth_root(best, v.p), best_chain};
}

double chain_power_sum(const JamesVector& v, const Chain& chain) {
  v.validate();
  check_chain(v, chain);
  return fold_chain(EdgeTable(v), chain);
}

double evaluate_chain(const JamesVector& v, const Chain& chain) {
  return pth_root(chain_power_sum(v, chain), v.p);
}

std::vector<double> e_coordinates(const JamesVector& v) {
  if (v.basis == Basis::kE) return v.coeffs;
  std::vector<double> x(v.coeffs.size());
  double s = 0.0;
  for (std::size_t k = v.coeffs.size(); k-- > 0;) {
    s += v.coeffs[k];
    x[k] = s;
  }
  return x;
}

JamesVector convert_basis(const JamesVector& v) {
  v.validate();
  require(v.inner_dim == 1, "convert_basis requires scalar coefficients");
  if (v.basis == Basis::kF) return JamesVector(Basis::kE, e_coordinates(v), v.p, 1);
  const std::size_t m = v.size();
  std::vector<double> b(m);
  for (std::size_t k = 0; k < m; ++k) b[k] = v.coeffs[k] - (k + 1 < m ? v.coeffs[k + 1] : 0.0);
  return JamesVector(Basis::kF, std::move(b), v.p, 1);
}

JamesVector to_basis(const JamesVector& v, Basis basis) {
  return v.basis == basis ? v : convert_basis(v);
}

JamesVector apply_projection(const BasisProjection& projection, const JamesVector& v) {
  v.validate();
  require(v.basis == Basis::kF, "projections act on F_BASIS coefficients");
  JamesVector out = v;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    const bool head = k + 1 <= projection.n;
    if (head != (projection.side == ProjectionSide::kHead)) out.coeffs[k] = 0.0;
  }
  return out;
}

void BidualVector::validate() const {
  require(std::isfinite(tail), "tail must be finite");
  require(body.basis == Basis::kE, "bidual body must be in E_BASIS");
  require(body.inner_dim == 1, "bidual body must be scalar");
  require(std::isfinite(body.p) && body.p > 1.0, "p must be finite and > 1");
  if (!body.coeffs.empty()) body.validate();
}

namespace {

std::size_t support_end(const JamesVector& body) {
  std::size_t s = body.coeffs.size();
  while (s > 0 && body.coeffs[s - 1] == 0.0) --s;
  return s;
}

}  // namespace

JamesVector materialize(const BidualVector& w, std::size_t truncation) {
  w.validate();
  require(truncation >= support_end(w.body) + 1,
          "truncation must exceed the support of the body");
  if (truncation > Limits::kMaxCoefficients) fail(ErrorCode::kCapExceeded, "truncation exceeds cap");
  std::vector<double> x(truncation, w.tail);
  for (std::size_t k = 0; k < std::min(truncation, w.body.coeffs.size()); ++k)
    x[k] += w.body.coeffs[k];
  return JamesVector(Basis::kE, std::move(x), w.body.p, 1);
}

double bidual_norm(const BidualVector& w, std::optional<std::size_t> truncation) {
  const std::size_t M = truncation.value_or(w.body.coeffs.size() + 1);
  return james_norm(materialize(w, M)).value;
}

}  // namespace jamesop

#include "smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jamesop::detail {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a_0) + ... ) over a scratch buffer.
double log_sum(const std::vector<double>& a, std::size_t count) {
  double hi = kNegInf;
  for (std::size_t i = 0; i < count; ++i) hi = std::max(hi, a[i]);
  if (hi == kNegInf) return kNegInf;
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) s += std::exp(a[i] - hi);
  return hi + std::log(s);
}

}  // namespace

ChainSmoothing smooth_chain_max(const double* y, std::size_t nodes, std::size_t d, double p,
                                double beta, bool want_weights) {
  const std::size_t n = nodes;
  std::vector<double> len(n * n, 0.0), q(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < d; ++r) {
        const double t = y[j * d + r] - y[i * d + r];
        s += t * t;
      }
      const double l = std::sqrt(s);
      len[i * n + j] = l;
      q[i * n + j] = p == 2.0 ? s : std::pow(l, p);
    }
  }

  std::vector<double> fwd(n), back(n), buf(n + 1);
  std::vector<double> ends(n, kNegInf);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) buf[i] = fwd[i] + beta * q[i * n + j];
    const double in = log_sum(buf, j);
    ends[j] = in;
    buf[j] = 0.0;
    fwd[j] = log_sum(buf, j + 1);
  }
  const double log_z = log_sum(ends, n);
  for (std::size_t i = n; i-- > 0;) {
    std::size_t c = 0;
    for (std::size_t j = i + 1; j < n; ++j) buf[c++] = beta * q[i * n + j] + back[j];
    buf[c++] = 0.0;
    back[i] = log_sum(buf, c);
  }

  ChainSmoothing out;
  out.value = log_z / beta;
  out.grad.assign(n * d, 0.0);
  if (want_weights) out.weights.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = std::exp(fwd[i] + beta * q[i * n + j] + back[j] - log_z);
      if (want_weights) out.weights[i * n + j] = w;
      const double l = len[i * n + j];
      if (w == 0.0 || l == 0.0) continue;
      const double scale = w * p * (p == 2.0 ? 1.0 : std::pow(l, p - 2.0));
      for (std::size_t r = 0; r < d; ++r) {
        const double diff = y[j * d + r] - y[i * d + r];
        out.grad[j * d + r] += scale * diff;
        out.grad[i * d + r] -= scale * diff;
      }
    }
  }
  return out;
}

}  // namespace jamesop::detail

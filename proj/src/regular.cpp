#include "jamesop/regular.hpp"

#include <cmath>
#include <random>
#include <string>

#include "jamesop/error.hpp"

namespace jamesop {

void validate_matrix(const Matrix& a) {
  require(a.rows() >= 1 && a.cols() >= 1, "matrix must be nonempty");
  if (static_cast<std::size_t>(a.rows()) > Limits::kMaxCoefficients ||
      static_cast<std::size_t>(a.cols()) > Limits::kMaxCoefficients)
    fail(ErrorCode::kCapExceeded, "matrix dimension exceeds cap");
  require(a.allFinite(), "matrix entries must be finite");
}

Matrix modulus(const Matrix& a) { return a.cwiseAbs(); }

PowerResult power_iteration(const Matrix& a, double tol, std::uint64_t seed) {
  validate_matrix(a);
  require(tol > 0.0, "tolerance must be positive");
  PowerResult out;
  if (a.isZero(0.0)) {
    out.right = Vector::Zero(a.cols());
    out.right[0] = 1.0;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  constexpr std::size_t kStallLimit = 200000;

  Vector v = Vector::Ones(a.cols()).normalized();
  double prev = -1.0;
  std::size_t since_restart = 0;
  while (true) {
    Vector av = a * v;
    const double rq = av.squaredNorm();
    Vector next = a.transpose() * av;
    const double nn = next.norm();
    ++out.iterations;
    ++since_restart;
    if (nn == 0.0 || since_restart > kStallLimit) {
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
      v.normalize();
      prev = -1.0;
      since_restart = 0;
      ++out.restarts;
      require(out.restarts < 64, "power iteration failed to converge");
      continue;
    }
    next /= nn;
    if (prev >= 0.0 && std::abs(rq - prev) < tol * rq) {
      // Final value from the newest iterate, which is at least as accurate.
      const double final_rq = (a * next).squaredNorm();
      if (final_rq >= rq) {
        v = next;
        out.value = std::sqrt(final_rq);
      } else {
        out.value = std::sqrt(rq);
      }
      out.right = v;
      return out;
    }
    prev = rq;
    v = next;
  }
}

double spectral_norm(const Matrix& a, double tol) { return power_iteration(a, tol).value; }

double regular_norm(const Matrix& a, double tol) { return spectral_norm(modulus(a), tol); }

double frobenius_norm(const Matrix& a) { return a.norm(); }

PositiveParts positive_decomposition(const Matrix& a) {
  validate_matrix(a);
  return {a.cwiseMax(0.0), (-a).cwiseMax(0.0)};
}

namespace {

void check_walsh_index(int n, int cap) {
  if (cap < 1 || cap > Limits::kMaxWalshCap)
    fail(ErrorCode::kCapExceeded, "walsh cap must lie in 1.." + std::to_string(Limits::kMaxWalshCap));
  require(n >= 1, "walsh index must be at least 1");
  if (n > cap) fail(ErrorCode::kCapExceeded, "walsh index " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

}  // namespace

std::vector<std::vector<int>> walsh_entries(int n, int cap) {
  check_walsh_index(n, cap);
  std::vector<std::vector<int>> a{{1}};
  for (int level = 0; level < n; ++level) {
    const std::size_t s = a.size();
    std::vector<std::vector<int>> b(2 * s, std::vector<int>(2 * s));
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        b[i][j] = a[i][j];
        b[i][j + s] = a[i][j];
        b[i + s][j] = a[i][j];
        b[i + s][j + s] = -a[i][j];
      }
    }
    a = std::move(b);
  }
  return a;
}

Matrix walsh_matrix(int n, int cap) {
  const auto e = walsh_entries(n, cap);
  const auto s = static_cast<Eigen::Index>(e.size());
  Matrix a(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) a(i, j) = e[i][j];
  return a;
}

bool walsh_gram_exact(int n, int cap) {
  const auto e = walsh_entries(n, cap);
  const std::size_t s = e.size();
  const std::int64_t scale = std::int64_t{1} << n;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      std::int64_t g = 0;
      for (std::size_t k = 0; k < s; ++k) g += std::int64_t{e[k][i]} * e[k][j];
      if (g != (i == j ? scale : 0)) return false;
    }
  }
  return true;
}

WalshNorms walsh_norms(int n, double tol, int cap) {
  const auto e = walsh_entries(n, cap);
  if (!walsh_gram_exact(n, cap)) fail(ErrorCode::kInternal, "walsh Gram identity failed");
  for (const auto& row : e)
    for (int x : row)
      if (x != 1 && x != -1) fail(ErrorCode::kInternal, "walsh entry outside {-1, 1}");
  WalshNorms w;
  w.n = n;
  // A^T A = 2^n I gives ||A|| = 2^{n/2}; |A| is the all-ones matrix whose
  // norm is its size.
  w.spectral = std::sqrt(std::ldexp(1.0, n));
  w.regular = std::ldexp(1.0, n);
  w.ratio = w.regular / w.spectral;
  w.expected = std::pow(2.0, n / 2.0);
  w.residual = std::abs(w.ratio - w.expected) / w.expected;
  const Matrix a = walsh_matrix(n, cap);
  w.spectral_iterative = spectral_norm(a, tol);
  w.regular_iterative = regular_norm(a, tol);
  w.ratio_iterative = w.regular_iterative / w.spectral_iterative;
  return w;
}

double walsh_ratio(int n, double tol, int cap) { return walsh_norms(n, tol, cap).ratio; }

}  // namespace jamesop

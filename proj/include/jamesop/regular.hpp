#ifndef JAMESOP_REGULAR_HPP_
#define JAMESOP_REGULAR_HPP_

// Lattice calculus on finite real matrices acting on Euclidean space.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace jamesop {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Throws unless the matrix is nonempty with finite entries.
void validate_matrix(const Matrix& a);

Matrix modulus(const Matrix& a);

struct PowerResult {
  double value = 0.0;  // largest singular value
  Vector right;        // unit right singular vector
  std::size_t iterations = 0;
  std::size_t restarts = 0;
};

// Power iteration on A^T A from the all-ones vector. Stops once successive
// Rayleigh quotients differ by less than tol times the current value;
// restarts from a seeded random vector when the iterate collapses or stalls.
PowerResult power_iteration(const Matrix& a, double tol = 1e-13, std::uint64_t seed = 0);

double spectral_norm(const Matrix& a, double tol = 1e-13);

// ||A||_r = || |A| ||.
double regular_norm(const Matrix& a, double tol = 1e-13);

double frobenius_norm(const Matrix& a);

struct PositiveParts {
  Matrix positive;  // max(a, 0)
  Matrix negative;  // max(-a, 0)
};

PositiveParts positive_decomposition(const Matrix& a);

// Recursive +-1 matrix of size 2^n, A_{n+1} = [[A_n, A_n], [A_n, -A_n]].
// 1 <= n <= cap, cap itself bounded by Limits::kMaxWalshCap.
std::vector<std::vector<int>> walsh_entries(int n, int cap = 10);
Matrix walsh_matrix(int n, int cap = 10);

// True when A_n^T A_n = 2^n I holds in integer arithmetic.
bool walsh_gram_exact(int n, int cap = 10);

struct WalshNorms {
  int n = 0;
  double spectral = 0.0;  // from the exact Gram identity
  double regular = 0.0;   // |A_n| is the all-ones matrix of size 2^n
  double ratio = 0.0;
  double expected = 0.0;  // 2^{n/2}
  double residual = 0.0;  // |ratio - expected| / expected
  double spectral_iterative = 0.0;
  double regular_iterative = 0.0;
  double ratio_iterative = 0.0;
};

WalshNorms walsh_norms(int n, double tol = 1e-13, int cap = 10);

double walsh_ratio(int n, double tol = 1e-13, int cap = 10);

}  // namespace jamesop

#endif  // JAMESOP_REGULAR_HPP_

#ifndef JAMESOP_TESTS_GENERATORS_HPP_
#define JAMESOP_TESTS_GENERATORS_HPP_

// Seeded generators for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "jamesop/blocks.hpp"
#include "jamesop/james.hpp"
#include "jamesop/regular.hpp"

namespace gen {

class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  double normal() { return std::normal_distribution<double>()(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin() { return index(0, 1) == 1; }

  std::vector<double> coeffs(std::size_t m) {
    std::vector<double> c(m);
    for (double& v : c) v = normal();
    // Occasional exact zeros and repeated values exercise ties.
    if (m > 1 && coin()) c[index(0, m - 1)] = 0.0;
    if (m > 2 && coin()) c[1] = c[0];
    return c;
  }

  jamesop::JamesVector vector(std::size_t m_max, double p = 2.0) {
    const std::size_t m = index(1, m_max);
    return jamesop::JamesVector(coin() ? jamesop::Basis::kE : jamesop::Basis::kF, coeffs(m), p, 1);
  }

  jamesop::Matrix matrix(std::size_t rows, std::size_t cols) {
    jamesop::Matrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = normal();
    return a;
  }

  // Convex blocks with extent at most extent_max.
  jamesop::ConvexBlockSystem blocks(std::size_t extent_max) {
    jamesop::ConvexBlockSystem b;
    b.boundaries.push_back(index(1, 3));
    while (true) {
      const std::size_t next = b.boundaries.back() + index(1, 4);
      if (next - 1 > extent_max) break;
      b.boundaries.push_back(next);
    }
    if (b.boundaries.size() < 2) b.boundaries.push_back(b.boundaries.back() + 1);
    for (std::size_t k = 0; k + 1 < b.boundaries.size(); ++k) {
      const std::size_t w = b.boundaries[k + 1] - b.boundaries[k];
      std::vector<double> c(w);
      double s = 0.0;
      for (double& v : c) s += (v = uniform(0.05, 1.0));
      double rest = 0.0;
      for (std::size_t i = 1; i < w; ++i) rest += (c[i] /= s);
      c[0] = 1.0 - rest;
      b.weights.insert(b.weights.end(), c.begin(), c.end());
    }
    return b;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen

#endif  // JAMESOP_TESTS_GENERATORS_HPP_

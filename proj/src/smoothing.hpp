#ifndef JAMESOP_SRC_SMOOTHING_HPP_
#define JAMESOP_SRC_SMOOTHING_HPP_

#include <cstddef>
#include <vector>

namespace jamesop::detail {

// Log-sum-exp smoothing of max over chains of sum_e |y_j - y_i|^p, where y
// holds `nodes` points of dimension d (node-major) and the last node is the
// trailing zero. value = (1/beta) log sum_chains exp(beta * sum_e q_e), which
// lies within (log #chains)/beta above the exact maximum.
struct ChainSmoothing {
  double value = 0.0;
  std::vector<double> grad;     // d value / d y, same layout as y
  std::vector<double> weights;  // edge marginals, nodes x nodes row-major
};

ChainSmoothing smooth_chain_max(const double* y, std::size_t nodes, std::size_t d, double p,
                                double beta, bool want_weights);

}  // namespace jamesop::detail

#endif  // JAMESOP_SRC_SMOOTHING_HPP_

#ifndef DSPL_TESTS_HELPERS_HPP
#define DSPL_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include <Eigen/Core>

#include "dspl/types.hpp"

namespace testutil {

inline Eigen::MatrixXd random_matrix(int rows, int cols,
                                     std::mt19937_64& eng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = normal(eng);
  }
  return m;
}

inline Eigen::VectorXd random_vector(int n, std::mt19937_64& eng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(eng);
  return v;
}

inline dspl::Batch random_batch(int p, int n, std::mt19937_64& eng, int id = 0) {
  dspl::Batch b;
  b.id = id;
  b.X = random_matrix(p, n, eng);
  b.y = random_vector(n, eng);
  return b;
}

inline Eigen::VectorXd random_binary(int n, std::mt19937_64& eng) {
  std::bernoulli_distribution coin(0.5);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = coin(eng) ? 1.0 : 0.0;
  return v;
}

// Single-column batch from explicit values, for hand-checked cases.
inline dspl::Batch batch_1d(std::vector<double> x, std::vector<double> y) {
  dspl::Batch b;
  b.X.resize(1, static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) b.X(0, j) = x[j];
  b.y = Eigen::Map<Eigen::VectorXd>(y.data(),
                                    static_cast<Eigen::Index>(y.size()));
  return b;
}

}  // namespace testutil

#endif  // DSPL_TESTS_HELPERS_HPP

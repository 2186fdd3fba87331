#include "dspl/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dspl {

std::mt19937_64 seed_stream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

namespace {

// First k elements of a partial Fisher-Yates shuffle of 0..n-1,
// returned in ascending order so downstream draws have a fixed order.
std::vector<int> uniform_subset(int n, int k, std::mt19937_64& eng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(idx[i], idx[pick(eng)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

void SynthConfig::validate() const {
  if (p < 1) throw ParameterError("p must be at least 1");
  if (n_per_batch.empty()) throw ParameterError("n_per_batch must be set");
  for (int n : n_per_batch) {
    if (n < 1) throw ParameterError("batch sizes must be at least 1");
  }
  if (corruption_ratio.size() != 1 &&
      corruption_ratio.size() != n_per_batch.size()) {
    throw ParameterError(
        "corruption_ratio must have one entry or one per batch");
  }
  for (double r : corruption_ratio) {
    if (r < 0 || r > 1) {
      throw ParameterError("corruption ratios must lie in [0, 1]");
    }
  }
  if (noise_sigma < 0) throw ParameterError("noise_sigma must be nonnegative");
  if (corruption_scale < 0) {
    throw ParameterError("corruption_scale must be nonnegative");
  }
}

double SynthConfig::ratio_for(std::size_t i) const {
  return corruption_ratio.size() == 1 ? corruption_ratio[0]
                                      : corruption_ratio[i];
}

int SynthDataset::corrupted_count(std::size_t i) const {
  const auto& mask = corruption_mask[i];
  return static_cast<int>(std::count(mask.begin(), mask.end(), 1));
}

SynthDataset generate(const SynthConfig& config) {
  config.validate();
  SynthDataset data;

  {
    auto eng = seed_stream(config.seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    data.w_star.resize(config.p);
    do {
      for (int r = 0; r < config.p; ++r) data.w_star[r] = normal(eng);
    } while (data.w_star.norm() < 1e-12);
    data.w_star /= data.w_star.norm();
  }

  const auto m = config.n_per_batch.size();
  data.batches.reserve(m);
  data.corruption_mask.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int n = config.n_per_batch[i];
    auto eng = seed_stream(config.seed, static_cast<std::uint32_t>(1 + i));
    std::normal_distribution<double> normal(0.0, 1.0);

    Batch batch;
    batch.id = static_cast<int>(i);
    batch.X.resize(config.p, n);
    for (int j = 0; j < n; ++j) {
      for (int r = 0; r < config.p; ++r) batch.X(r, j) = normal(eng);
    }
    Eigen::VectorXd y_clean = batch.X.transpose() * data.w_star;
    if (config.noise_sigma > 0) {
      for (int j = 0; j < n; ++j) {
        y_clean[j] += config.noise_sigma * normal(eng);
      }
    }

    const int k =
        static_cast<int>(std::llround(config.ratio_for(i) * n));
    const std::vector<int> corrupted = uniform_subset(n, k, eng);
    batch.y = y_clean;
    std::vector<std::uint8_t> mask(n, 0);
    const double bound =
        config.corruption_scale * y_clean.cwiseAbs().maxCoeff();
    if (k > 0 && bound > 0) {
      std::uniform_real_distribution<double> shift(-bound, bound);
      for (int j : corrupted) {
        batch.y[j] += shift(eng);
        mask[j] = 1;
      }
    } else {
      for (int j : corrupted) mask[j] = 1;
    }
    data.batches.push_back(std::move(batch));
    data.corruption_mask.push_back(std::move(mask));
  }
  return data;
}

}  // namespace dspl

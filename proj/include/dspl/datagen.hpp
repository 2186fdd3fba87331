#ifndef DSPL_DATAGEN_HPP
#define DSPL_DATAGEN_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "dspl/types.hpp"

namespace dspl {

// Engine for one deterministic substream of a seed. The generator
// reserves stream 0 for the ground truth and 1 + i for batch i;
// callers needing auxiliary draws should pick streams well clear of
// that range.
std::mt19937_64 seed_stream(std::uint64_t seed, std::uint32_t stream);

// Synthetic corrupted-regression setup: instances x ~ N(0, I_p), a
// random unit-norm ground truth w*, clean responses y* = X'w* + eps
// with eps ~ N(0, sigma^2), and an exact-count uniform subset of each
// batch shifted by u ~ Uniform(+-corruption_scale * max|y*|), with the
// max taken per batch over the clean responses.
struct SynthConfig {
  int p = 20;
  std::vector<int> n_per_batch;          // e.g. ten batches of 200
  std::vector<double> corruption_ratio;  // size 1 broadcasts to all batches
  double noise_sigma = 0.3;
  double corruption_scale = 5.0;
  std::uint64_t seed = 0;

  void validate() const;

  // Ratio for batch i after broadcasting.
  double ratio_for(std::size_t i) const;
};

struct SynthDataset {
  Eigen::VectorXd w_star;
  std::vector<Batch> batches;
  // 1 marks a corrupted instance; same shape as the batches.
  std::vector<std::vector<std::uint8_t>> corruption_mask;

  // Count of corrupted instances in batch i.
  int corrupted_count(std::size_t i) const;
};

// Deterministic in the config: every batch draws from its own seed
// stream, so resizing or dropping one batch leaves the others (and
// w*) bit-identical.
SynthDataset generate(const SynthConfig& config);

}  // namespace dspl

#endif  // DSPL_DATAGEN_HPP

#include "betti/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace betti::synthetic {

GrayImage permutation_image(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::vector<double> v(rows * cols);
  std::iota(v.begin(), v.end(), 0.0);
  std::shuffle(v.begin(), v.end(), rng);
  return GrayImage(rows, cols, std::move(v));
}

GrayImage uniform_image(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = dist(rng);
  return GrayImage(rows, cols, std::move(v));
}

GrayImage binary_image(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                       double foreground) {
  std::bernoulli_distribution dist(foreground);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = dist(rng) ? 1.0 : 0.0;
  return GrayImage(rows, cols, std::move(v));
}

}  // namespace betti::synthetic

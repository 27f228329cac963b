#pragma once

#include <random>

#include "betti/image.hpp"

namespace betti::synthetic {

// Seeded image generators for `verify`, `bench` and the test suites.

/// Pixel values are a random permutation of 0 .. rows*cols-1.
GrayImage permutation_image(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
GrayImage uniform_image(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
GrayImage binary_image(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                       double foreground = 0.5);

}  // namespace betti::synthetic

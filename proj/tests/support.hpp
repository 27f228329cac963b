#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "betti/baselines.hpp"
#include "betti/image.hpp"
#include "betti/matching.hpp"

namespace betti::testing {

GrayImage from_rows(const std::vector<std::vector<double>>& rows);

// Worked examples.
GrayImage nested_i();
GrayImage nested_j1();
GrayImage nested_j2();
GrayImage small_image();

/// Binary image with one-pixel-wide square rings of side `side` anchored at
/// the given top-left corners.
GrayImage rings(std::size_t rows, std::size_t cols, std::size_t side,
                const std::vector<std::pair<std::size_t, std::size_t>>& corners);
// Disjoint-rings pair: two rings in the top band of P, two in the bottom band of G.
GrayImage disjoint_rings_pred();
GrayImage disjoint_rings_gt();

// Hand-rolled generators.
GrayImage random_distinct(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
GrayImage random_binary(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double p = 0.5);
GrayImage random_real(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
// Few distinct levels, so ties are frequent.
GrayImage random_levels(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int levels);
Diagram random_diagram(std::mt19937_64& rng, std::size_t max_points, int denominator);

/// Exhaustive minimum over partial bijections of one dimension of two
/// diagrams; unmatched points pay (b - d)^2 / 2.
double brute_force_wasserstein(const std::vector<DiagramPoint>& a,
                               const std::vector<DiagramPoint>& b);

/// Cells and critical pixels of every interval in the matching, grouped by
/// status; equal signatures mean the loss is the same polynomial in the
/// pixel values.
std::string matching_signature(const BettiMatching& m);

struct GradientCheck {
  std::size_t pixels = 0;
  std::size_t unstable = 0;
  std::size_t checked = 0;
  std::size_t failures = 0;
  double worst_relative_error = 0.0;
  std::string first_failure;
};

/// Central finite differences of betti_matching_loss against the analytic
/// gradient. Pixels whose matching signature changes under +-eps count as
/// unstable and are skipped.
GradientCheck check_gradient(const GrayImage& pred, const GrayImage& gt, const LossOptions& options,
                             double eps = 1e-4, double rel_tol = 1e-3);

}  // namespace betti::testing

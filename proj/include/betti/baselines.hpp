#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "betti/image.hpp"
#include "betti/matching.hpp"
#include "betti/persistence.hpp"

namespace betti {

/// Off-diagonal point of a persistence diagram. `id` is the refined birth
/// index of the interval it came from, unique within one barcode dimension.
struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;
  std::uint32_t id = 0;
  bool essential = false;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Per-dimension multiset of off-diagonal points; the diagonal is implicit.
struct Diagram {
  std::array<std::vector<DiagramPoint>, 2> points;
};

/// Finite intervals become points; essentials get `clamp` as death, or are
/// left out when no clamp is given. Points that land on the diagonal are
/// dropped.
Diagram to_diagram(const Barcode& barcode, std::optional<double> clamp);

struct WassersteinMatching {
  std::array<std::vector<std::pair<DiagramPoint, DiagramPoint>>, 2> matched;
  std::array<std::vector<DiagramPoint>, 2> unmatched_pred;
  std::array<std::vector<DiagramPoint>, 2> unmatched_gt;
  // Sum of squared distances, unmatched points measured to the diagonal.
  std::array<double, 2> cost{0.0, 0.0};

  double total() const noexcept { return cost[0] + cost[1]; }
};

/// Optimal dimension-respecting bijection between the diagonal-augmented
/// diagrams under squared Euclidean cost.
WassersteinMatching wasserstein_matching(const Diagram& pred, const Diagram& gt);
double wasserstein_loss(const Diagram& pred, const Diagram& gt);

/// Diagrams of both images with essentials clamped as in the loss.
std::pair<Diagram, Diagram> diagrams_of(const GrayImage& pred, const GrayImage& gt,
                                        const MatchOptions& options = {});
WassersteinMatching wasserstein_matching(const GrayImage& pred, const GrayImage& gt,
                                         const MatchOptions& options = {});

/// The Betti matching expressed as a point matching (after clamping).
WassersteinMatching as_point_matching(const BettiMatching& tau);

/// Fraction of finite prediction points matched by `gamma` whose partner is
/// also their Betti-matching partner. 1 when gamma matches no finite point.
double matching_precision(const BettiMatching& tau, const WassersteinMatching& gamma);

/// Per-dimension |beta_d(P) - beta_d(G)| of the foregrounds (superlevel set
/// at 0.5, V-construction).
TopologyErrors betti_number_error(const GrayImage& pred, const GrayImage& gt);

/// 2|P n G| / (|P| + |G|); 1 when both foregrounds are empty.
double dice(const GrayImage& pred, const GrayImage& gt);
double accuracy(const GrayImage& pred, const GrayImage& gt);

}  // namespace betti

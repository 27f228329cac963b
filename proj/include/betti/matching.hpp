#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "betti/grid.hpp"
#include "betti/image.hpp"
#include "betti/image_persistence.hpp"
#include "betti/persistence.hpp"

namespace betti {

struct MatchedTriple {
  Interval domain;
  ImagePair image;
  Interval codomain;
};

struct InducedMatching {
  std::array<std::vector<MatchedTriple>, 2> triples;
  std::array<std::vector<Interval>, 2> unmatched_domain;
  std::array<std::vector<Interval>, 2> unmatched_codomain;
};

/// Matches each image pair (forward or reverse) to the domain interval with
/// the same birth and the codomain interval with the same death. Pairs
/// without both partners are skipped; every interval is used at most once.
InducedMatching induced_matching(const ImageBarcode& image_barcode, const Barcode& domain_barcode,
                                 const Barcode& codomain_barcode);

struct MatchOptions {
  Direction direction = Direction::Superlevel;
  Construction construction = Construction::V;
  bool relative = false;
};

struct IntervalMatch {
  Interval pred;
  Interval gt;
};

/// Composition of the induced matchings of prediction and ground truth into
/// their comparison image. Finite intervals are split into matched and
/// unmatched per dimension; essential classes are paired separately in
/// order of birth.
struct BettiMatching {
  MatchOptions options;
  std::optional<double> frame_value;
  std::array<std::vector<IntervalMatch>, 2> matched;
  std::array<std::vector<Interval>, 2> unmatched_pred;
  std::array<std::vector<Interval>, 2> unmatched_gt;
  std::array<std::vector<IntervalMatch>, 2> matched_essential;
  std::array<std::vector<Interval>, 2> unmatched_essential_pred;
  std::array<std::vector<Interval>, 2> unmatched_essential_gt;
  std::shared_ptr<const CubicalGrid> pred_grid;
  std::shared_ptr<const CubicalGrid> gt_grid;
};

BettiMatching betti_matching(const GrayImage& pred, const GrayImage& gt,
                             const MatchOptions& options = {});

/// Endpoint that replaces the infinite death of essential classes: 1 for
/// sublevel, 0 for superlevel.
double essential_clamp(Direction direction) noexcept;

/// One point of the matching after clamping essentials. Either side may be
/// missing (the point is matched to the diagonal). Clamped essentials that
/// collapse onto the diagonal are dropped.
struct ClampedMatch {
  std::optional<Interval> pred;
  std::optional<Interval> gt;
};

std::array<std::vector<ClampedMatch>, 2> clamped_matches(const BettiMatching& matching);

enum class Filtration { Sublevel, Superlevel, Bothlevel };

const char* to_string(Filtration f) noexcept;

struct LossOptions {
  Filtration filtration = Filtration::Superlevel;
  Construction construction = Construction::V;
  bool relative = false;
  bool with_gradient = false;
};

struct LossTerms {
  double matched = 0.0;
  double unmatched_pred = 0.0;
  double unmatched_gt = 0.0;

  double total() const noexcept { return matched + unmatched_pred + unmatched_gt; }
};

struct LossReport {
  double loss = 0.0;
  std::array<LossTerms, 2> per_dim;
  std::size_t rows = 0;
  std::size_t cols = 0;
  // d loss / d pred, row-major, when requested.
  std::optional<std::vector<double>> gradient;
};

/// Matched points contribute 2 * squared distance, unmatched points twice
/// their squared distance to the diagonal, i.e. (birth - death)^2.
LossReport betti_matching_loss(const GrayImage& pred, const GrayImage& gt,
                               const LossOptions& options = {});
LossReport betti_matching_loss(const BettiMatching& matching, bool with_gradient);

struct TopologyErrors {
  std::array<long, 2> per_dim{0, 0};
  long total() const noexcept { return per_dim[0] + per_dim[1]; }
  friend bool operator==(const TopologyErrors&, const TopologyErrors&) = default;
};

/// Number of unmatched features on both sides, per dimension. Inputs must
/// be binary.
TopologyErrors betti_matching_error(const GrayImage& pred, const GrayImage& gt,
                                    const MatchOptions& options = {});
TopologyErrors betti_matching_error(const BettiMatching& matching);

}  // namespace betti

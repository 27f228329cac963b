#include "betti/matching.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "betti/errors.hpp"

namespace betti {

const char* to_string(Filtration f) noexcept {
  switch (f) {
    case Filtration::Sublevel: return "sublevel";
    case Filtration::Superlevel: return "superlevel";
    case Filtration::Bothlevel: return "bothlevel";
  }
  return "superlevel";
}

double essential_clamp(Direction direction) noexcept {
  return direction == Direction::Superlevel ? 0.0 : 1.0;
}

InducedMatching induced_matching(const ImageBarcode& image_barcode, const Barcode& domain_barcode,
                                 const Barcode& codomain_barcode) {
  InducedMatching out;
  for (int d = 0; d < 2; ++d) {
    const auto& domain = domain_barcode.finite[d];
    const auto& codomain = codomain_barcode.finite[d];
    std::unordered_map<std::uint32_t, std::size_t> by_birth;
    std::unordered_map<std::uint32_t, std::size_t> by_death;
    by_birth.reserve(domain.size());
    by_death.reserve(codomain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) by_birth.emplace(domain[i].birth_index, i);
    for (std::size_t i = 0; i < codomain.size(); ++i) by_death.emplace(*codomain[i].death_index, i);

    std::vector<bool> used_domain(domain.size(), false);
    std::vector<bool> used_codomain(codomain.size(), false);
    for (const ImagePair& pair : image_barcode.pairs[d]) {
      const auto left = by_birth.find(pair.birth_index);
      if (left == by_birth.end() || used_domain[left->second]) continue;
      const auto right = by_death.find(pair.death_index);
      if (right == by_death.end() || used_codomain[right->second]) continue;
      used_domain[left->second] = true;
      used_codomain[right->second] = true;
      out.triples[d].push_back({domain[left->second], pair, codomain[right->second]});
    }
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (!used_domain[i]) out.unmatched_domain[d].push_back(domain[i]);
    }
    for (std::size_t i = 0; i < codomain.size(); ++i) {
      if (!used_codomain[i]) out.unmatched_codomain[d].push_back(codomain[i]);
    }
  }
  return out;
}

namespace {

std::uint64_t refined_key(const Interval& iv) {
  return (std::uint64_t(iv.birth_index) << 32) | std::uint64_t(*iv.death_index);
}

}  // namespace

BettiMatching betti_matching(const GrayImage& pred, const GrayImage& gt,
                             const MatchOptions& options) {
  require_same_shape(pred, gt);
  const bool super = options.direction == Direction::Superlevel;
  const GrayImage comparison = super ? entrywise_max(pred, gt) : entrywise_min(pred, gt);

  GridOptions grid_options;
  grid_options.construction = options.construction;
  grid_options.direction = options.direction;
  grid_options.relative = options.relative;
  if (options.relative) {
    // One frame for all three grids keeps them comparable.
    grid_options.frame_value =
        default_frame_value(options.direction, std::min(pred.min_value(), gt.min_value()),
                            std::max(pred.max_value(), gt.max_value()));
  }

  auto pred_grid = std::make_shared<const CubicalGrid>(pred, grid_options);
  auto gt_grid = std::make_shared<const CubicalGrid>(gt, grid_options);
  const CubicalGrid comp_grid(comparison, grid_options);

  const Barcode pred_barcode = compute_barcode(*pred_grid, true);
  const Barcode gt_barcode = compute_barcode(*gt_grid, true);
  const Barcode comp_barcode = compute_barcode(comp_grid, false);

  const ImageBarcode pred_image =
      compute_image_barcode(*pred_grid, comp_grid, pred_barcode, comp_barcode);
  const ImageBarcode gt_image = compute_image_barcode(*gt_grid, comp_grid, gt_barcode, comp_barcode);
  const InducedMatching pred_sigma = induced_matching(pred_image, pred_barcode, comp_barcode);
  const InducedMatching gt_sigma = induced_matching(gt_image, gt_barcode, comp_barcode);

  BettiMatching out;
  out.options = options;
  out.frame_value = grid_options.frame_value;
  for (int d = 0; d < 2; ++d) {
    // Partners meet at the same comparison-image interval.
    std::unordered_map<std::uint64_t, const Interval*> gt_through;
    gt_through.reserve(gt_sigma.triples[d].size());
    for (const auto& t : gt_sigma.triples[d]) gt_through.emplace(refined_key(t.codomain), &t.domain);

    std::unordered_map<std::uint32_t, bool> pred_matched, gt_matched;
    for (const auto& t : pred_sigma.triples[d]) {
      const auto it = gt_through.find(refined_key(t.codomain));
      if (it == gt_through.end()) continue;
      out.matched[d].push_back({t.domain, *it->second});
      pred_matched[t.domain.birth_index] = true;
      gt_matched[it->second->birth_index] = true;
    }
    std::sort(out.matched[d].begin(), out.matched[d].end(),
              [](const IntervalMatch& a, const IntervalMatch& b) {
                return a.pred.birth_index < b.pred.birth_index;
              });
    for (const auto& iv : pred_barcode.finite[d]) {
      if (!pred_matched.count(iv.birth_index)) out.unmatched_pred[d].push_back(iv);
    }
    for (const auto& iv : gt_barcode.finite[d]) {
      if (!gt_matched.count(iv.birth_index)) out.unmatched_gt[d].push_back(iv);
    }

    auto pe = pred_barcode.essential[d];
    auto ge = gt_barcode.essential[d];
    auto by_birth = [](const Interval& a, const Interval& b) { return a.birth_index < b.birth_index; };
    std::sort(pe.begin(), pe.end(), by_birth);
    std::sort(ge.begin(), ge.end(), by_birth);
    const std::size_t common = std::min(pe.size(), ge.size());
    for (std::size_t i = 0; i < common; ++i) out.matched_essential[d].push_back({pe[i], ge[i]});
    out.unmatched_essential_pred[d].assign(pe.begin() + common, pe.end());
    out.unmatched_essential_gt[d].assign(ge.begin() + common, ge.end());
  }
  out.pred_grid = std::move(pred_grid);
  out.gt_grid = std::move(gt_grid);
  return out;
}

std::array<std::vector<ClampedMatch>, 2> clamped_matches(const BettiMatching& matching) {
  const double clamp = essential_clamp(matching.options.direction);
  auto clamped = [clamp](const Interval& iv) -> std::optional<Interval> {
    if (iv.birth_value == clamp) return std::nullopt;
    Interval out = iv;
    out.death_value = clamp;
    return out;
  };
  std::array<std::vector<ClampedMatch>, 2> out;
  for (int d = 0; d < 2; ++d) {
    auto& list = out[d];
    for (const auto& m : matching.matched[d]) list.push_back({m.pred, m.gt});
    for (const auto& iv : matching.unmatched_pred[d]) list.push_back({iv, std::nullopt});
    for (const auto& iv : matching.unmatched_gt[d]) list.push_back({std::nullopt, iv});
    for (const auto& m : matching.matched_essential[d]) {
      ClampedMatch cm{clamped(m.pred), clamped(m.gt)};
      if (cm.pred || cm.gt) list.push_back(std::move(cm));
    }
    for (const auto& iv : matching.unmatched_essential_pred[d]) {
      if (auto c = clamped(iv)) list.push_back({std::move(c), std::nullopt});
    }
    for (const auto& iv : matching.unmatched_essential_gt[d]) {
      if (auto c = clamped(iv)) list.push_back({std::nullopt, std::move(c)});
    }
  }
  return out;
}

LossReport betti_matching_loss(const BettiMatching& matching, bool with_gradient) {
  const CubicalGrid& grid = *matching.pred_grid;
  LossReport report;
  report.rows = grid.image_rows();
  report.cols = grid.image_cols();
  std::vector<double> gradient;
  if (with_gradient) gradient.assign(report.rows * report.cols, 0.0);

  auto add_gradient = [&](const CellId& cell, double amount) {
    if (!with_gradient) return;
    if (const auto px = grid.critical_pixel(grid.key_of(cell))) {
      gradient[std::size_t{px->row} * report.cols + px->col] += amount;
    }
  };
  auto sq = [](double x) { return x * x; };

  const auto matches = clamped_matches(matching);
  for (int d = 0; d < 2; ++d) {
    LossTerms& terms = report.per_dim[d];
    for (const ClampedMatch& m : matches[d]) {
      if (m.pred && m.gt) {
        const double db = m.pred->birth_value - m.gt->birth_value;
        const double dd = m.pred->death_value - m.gt->death_value;
        terms.matched += 2.0 * (sq(db) + sq(dd));
        add_gradient(m.pred->birth_cell, 4.0 * db);
        if (m.pred->death_cell) add_gradient(*m.pred->death_cell, 4.0 * dd);
      } else if (m.pred) {
        const double len = m.pred->birth_value - m.pred->death_value;
        terms.unmatched_pred += sq(len);
        add_gradient(m.pred->birth_cell, 2.0 * len);
        if (m.pred->death_cell) add_gradient(*m.pred->death_cell, -2.0 * len);
      } else {
        terms.unmatched_gt += sq(m.gt->birth_value - m.gt->death_value);
      }
    }
    report.loss += terms.total();
  }
  if (with_gradient) report.gradient = std::move(gradient);
  return report;
}

LossReport betti_matching_loss(const GrayImage& pred, const GrayImage& gt,
                               const LossOptions& options) {
  MatchOptions m;
  m.construction = options.construction;
  m.relative = options.relative;
  if (options.filtration != Filtration::Bothlevel) {
    m.direction = options.filtration == Filtration::Sublevel ? Direction::Sublevel
                                                             : Direction::Superlevel;
    return betti_matching_loss(betti_matching(pred, gt, m), options.with_gradient);
  }
  m.direction = Direction::Superlevel;
  LossReport total = betti_matching_loss(betti_matching(pred, gt, m), options.with_gradient);
  m.direction = Direction::Sublevel;
  const LossReport sub = betti_matching_loss(betti_matching(pred, gt, m), options.with_gradient);
  total.loss += sub.loss;
  for (int d = 0; d < 2; ++d) {
    total.per_dim[d].matched += sub.per_dim[d].matched;
    total.per_dim[d].unmatched_pred += sub.per_dim[d].unmatched_pred;
    total.per_dim[d].unmatched_gt += sub.per_dim[d].unmatched_gt;
  }
  if (options.with_gradient) {
    for (std::size_t i = 0; i < total.gradient->size(); ++i) {
      (*total.gradient)[i] += (*sub.gradient)[i];
    }
  }
  return total;
}

TopologyErrors betti_matching_error(const BettiMatching& matching) {
  TopologyErrors errors;
  const auto matches = clamped_matches(matching);
  for (int d = 0; d < 2; ++d) {
    for (const auto& m : matches[d]) {
      if (!(m.pred && m.gt)) ++errors.per_dim[d];
    }
  }
  return errors;
}

TopologyErrors betti_matching_error(const GrayImage& pred, const GrayImage& gt,
                                    const MatchOptions& options) {
  require_binary(pred, "prediction");
  require_binary(gt, "ground truth");
  return betti_matching_error(betti_matching(pred, gt, options));
}

}  // namespace betti

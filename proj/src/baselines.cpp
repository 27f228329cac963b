#include "betti/baselines.hpp"

#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

#include "betti/assignment.hpp"
#include "betti/errors.hpp"

namespace betti {

namespace {

double sq(double x) { return x * x; }

double diagonal_cost(const DiagramPoint& p) { return sq(p.birth - p.death) / 2.0; }

double point_cost(const DiagramPoint& a, const DiagramPoint& b) {
  return sq(a.birth - b.birth) + sq(a.death - b.death);
}

DiagramPoint point_of(const Interval& iv) {
  return {iv.birth_value, iv.death_value, iv.birth_index, iv.essential()};
}

}  // namespace

Diagram to_diagram(const Barcode& barcode, std::optional<double> clamp) {
  Diagram out;
  for (int d = 0; d < 2; ++d) {
    for (const auto& iv : barcode.finite[d]) out.points[d].push_back(point_of(iv));
    if (!clamp) continue;
    for (const auto& iv : barcode.essential[d]) {
      if (iv.birth_value == *clamp) continue;
      DiagramPoint p = point_of(iv);
      p.death = *clamp;
      out.points[d].push_back(p);
    }
  }
  return out;
}

WassersteinMatching wasserstein_matching(const Diagram& pred, const Diagram& gt) {
  WassersteinMatching out;
  for (int d = 0; d < 2; ++d) {
    const auto& lp = pred.points[d];
    const auto& gp = gt.points[d];
    const std::size_t n = lp.size(), m = gp.size(), size = n + m;
    // Rows: prediction points, then diagonal slots; columns: ground-truth
    // points, then diagonal slots. Diagonal slots are interchangeable.
    std::vector<double> cost(size * size, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        double c = 0.0;
        if (i < n && j < m) {
          c = point_cost(lp[i], gp[j]);
        } else if (i < n) {
          c = diagonal_cost(lp[i]);
        } else if (j < m) {
          c = diagonal_cost(gp[j]);
        }
        cost[i * size + j] = c;
      }
    }
    const auto col_of = solve_assignment(cost, size);
    std::vector<bool> gt_taken(m, false);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = col_of[i];
      if (j < m) {
        out.matched[d].emplace_back(lp[i], gp[j]);
        gt_taken[j] = true;
        total += point_cost(lp[i], gp[j]);
      } else {
        out.unmatched_pred[d].push_back(lp[i]);
        total += diagonal_cost(lp[i]);
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (gt_taken[j]) continue;
      out.unmatched_gt[d].push_back(gp[j]);
      total += diagonal_cost(gp[j]);
    }
    out.cost[d] = total;
  }
  return out;
}

double wasserstein_loss(const Diagram& pred, const Diagram& gt) {
  return wasserstein_matching(pred, gt).total();
}

std::pair<Diagram, Diagram> diagrams_of(const GrayImage& pred, const GrayImage& gt,
                                        const MatchOptions& options) {
  require_same_shape(pred, gt);
  GridOptions g;
  g.construction = options.construction;
  g.direction = options.direction;
  g.relative = options.relative;
  if (options.relative) {
    g.frame_value =
        default_frame_value(options.direction, std::min(pred.min_value(), gt.min_value()),
                            std::max(pred.max_value(), gt.max_value()));
  }
  const double clamp = essential_clamp(options.direction);
  return {to_diagram(compute_barcode(CubicalGrid(pred, g), false), clamp),
          to_diagram(compute_barcode(CubicalGrid(gt, g), false), clamp)};
}

WassersteinMatching wasserstein_matching(const GrayImage& pred, const GrayImage& gt,
                                         const MatchOptions& options) {
  const auto [dp, dg] = diagrams_of(pred, gt, options);
  return wasserstein_matching(dp, dg);
}

WassersteinMatching as_point_matching(const BettiMatching& tau) {
  WassersteinMatching out;
  const auto matches = clamped_matches(tau);
  for (int d = 0; d < 2; ++d) {
    double total = 0.0;
    for (const auto& m : matches[d]) {
      if (m.pred && m.gt) {
        const auto a = point_of(*m.pred), b = point_of(*m.gt);
        out.matched[d].emplace_back(a, b);
        total += point_cost(a, b);
      } else if (m.pred) {
        out.unmatched_pred[d].push_back(point_of(*m.pred));
        total += diagonal_cost(out.unmatched_pred[d].back());
      } else {
        out.unmatched_gt[d].push_back(point_of(*m.gt));
        total += diagonal_cost(out.unmatched_gt[d].back());
      }
    }
    out.cost[d] = total;
  }
  return out;
}

double matching_precision(const BettiMatching& tau, const WassersteinMatching& gamma) {
  std::size_t assessed = 0, correct = 0;
  for (int d = 0; d < 2; ++d) {
    std::unordered_map<std::uint32_t, std::uint32_t> partner;
    std::unordered_set<std::uint32_t> known;
    for (const auto& m : tau.matched[d]) {
      partner.emplace(m.pred.birth_index, m.gt.birth_index);
      known.insert(m.pred.birth_index);
    }
    for (const auto& iv : tau.unmatched_pred[d]) known.insert(iv.birth_index);
    for (const auto& m : tau.matched_essential[d]) known.insert(m.pred.birth_index);
    for (const auto& iv : tau.unmatched_essential_pred[d]) known.insert(iv.birth_index);

    for (const auto& [p, g] : gamma.matched[d]) {
      if (!known.count(p.id)) {
        throw Error(ErrorCode::MismatchedInputs,
                    "point matching refers to an interval absent from the Betti matching");
      }
      if (p.essential) continue;
      ++assessed;
      const auto it = partner.find(p.id);
      if (it != partner.end() && !g.essential && it->second == g.id) ++correct;
    }
  }
  return assessed == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(assessed);
}

TopologyErrors betti_number_error(const GrayImage& pred, const GrayImage& gt) {
  require_binary(pred, "prediction");
  require_binary(gt, "ground truth");
  require_same_shape(pred, gt);
  const auto bp = betti_numbers_at(build_grid(pred, Construction::V, Direction::Superlevel, false), 0.5);
  const auto bg = betti_numbers_at(build_grid(gt, Construction::V, Direction::Superlevel, false), 0.5);
  TopologyErrors out;
  out.per_dim = {std::labs(bp.b0 - bg.b0), std::labs(bp.b1 - bg.b1)};
  return out;
}

double dice(const GrayImage& pred, const GrayImage& gt) {
  require_binary(pred, "prediction");
  require_binary(gt, "ground truth");
  require_same_shape(pred, gt);
  double inter = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    inter += pred.values()[i] * gt.values()[i];
    sum += pred.values()[i] + gt.values()[i];
  }
  return sum == 0.0 ? 1.0 : 2.0 * inter / sum;
}

double accuracy(const GrayImage& pred, const GrayImage& gt) {
  require_binary(pred, "prediction");
  require_binary(gt, "ground truth");
  require_same_shape(pred, gt);
  std::size_t equal = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) equal += pred.values()[i] == gt.values()[i];
  return static_cast<double>(equal) / static_cast<double>(pred.size());
}

}  // namespace betti

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace betti::testing {

GrayImage from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<double> v;
  for (const auto& r : rows) v.insert(v.end(), r.begin(), r.end());
  return GrayImage(rows.size(), rows.empty() ? 0 : rows[0].size(), std::move(v));
}

GrayImage nested_i() { return from_rows({{20, 27, 26}, {21, 49, 25}, {22, 23, 24}}); }
GrayImage nested_j1() { return from_rows({{0, 1, 2}, {7, 39, 3}, {6, 5, 4}}); }
GrayImage nested_j2() { return from_rows({{0, 1, 2}, {7, 19, 3}, {6, 5, 4}}); }
GrayImage small_image() { return from_rows({{4, 1, 5}, {8, 3, 6}, {7, 2, 9}}); }

GrayImage rings(std::size_t rows, std::size_t cols, std::size_t side,
                const std::vector<std::pair<std::size_t, std::size_t>>& corners) {
  GrayImage img = GrayImage::filled(rows, cols, 0.0);
  for (const auto& [r0, c0] : corners) {
    for (std::size_t i = 0; i < side; ++i) {
      img(r0, c0 + i) = 1.0;
      img(r0 + side - 1, c0 + i) = 1.0;
      img(r0 + i, c0) = 1.0;
      img(r0 + i, c0 + side - 1) = 1.0;
    }
  }
  return img;
}

GrayImage disjoint_rings_pred() { return rings(11, 11, 3, {{1, 1}, {1, 7}}); }
GrayImage disjoint_rings_gt() { return rings(11, 11, 3, {{7, 1}, {7, 7}}); }

GrayImage random_distinct(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::vector<double> v(rows * cols);
  std::iota(v.begin(), v.end(), 0.0);
  std::shuffle(v.begin(), v.end(), rng);
  return GrayImage(rows, cols, std::move(v));
}

GrayImage random_binary(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = coin(rng) ? 1.0 : 0.0;
  return GrayImage(rows, cols, std::move(v));
}

GrayImage random_real(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = u(rng);
  return GrayImage(rows, cols, std::move(v));
}

GrayImage random_levels(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int levels) {
  std::uniform_int_distribution<int> u(0, levels - 1);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = u(rng);
  return GrayImage(rows, cols, std::move(v));
}

Diagram random_diagram(std::mt19937_64& rng, std::size_t max_points, int denominator) {
  std::uniform_int_distribution<std::size_t> count(0, max_points);
  std::uniform_int_distribution<int> coord(0, denominator);
  Diagram d;
  for (int dim = 0; dim < 2; ++dim) {
    const std::size_t n = count(rng);
    std::uint32_t id = 0;
    while (d.points[dim].size() < n) {
      const int a = coord(rng), b = coord(rng);
      if (a == b) continue;
      d.points[dim].push_back({static_cast<double>(std::max(a, b)) / denominator,
                               static_cast<double>(std::min(a, b)) / denominator, id++, false});
    }
  }
  return d;
}

double brute_force_wasserstein(const std::vector<DiagramPoint>& a,
                               const std::vector<DiagramPoint>& b) {
  auto diag = [](const DiagramPoint& p) { return 0.5 * (p.birth - p.death) * (p.birth - p.death); };
  std::vector<bool> used(b.size(), false);
  std::function<double(std::size_t)> go = [&](std::size_t i) -> double {
    if (i == a.size()) {
      double rest = 0.0;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!used[j]) rest += diag(b[j]);
      }
      return rest;
    }
    double best = diag(a[i]) + go(i + 1);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      const double db = a[i].birth - b[j].birth, dd = a[i].death - b[j].death;
      best = std::min(best, db * db + dd * dd + go(i + 1));
      used[j] = false;
    }
    return best;
  };
  return go(0);
}

namespace {

void put_pixel(std::ostringstream& os, const CubicalGrid& grid, const Interval& iv) {
  auto pixel = [&](const CellId& c) {
    const auto px = grid.critical_pixel(grid.key_of(c));
    if (px) {
      os << px->row << ':' << px->col;
    } else {
      os << "frame";
    }
  };
  os << iv.dim << '[' << iv.birth_index << ',';
  if (iv.death_index) os << *iv.death_index;
  os << "](";
  pixel(iv.birth_cell);
  if (iv.death_cell) {
    os << ' ';
    pixel(*iv.death_cell);
  }
  os << ')';
}

}  // namespace

std::string matching_signature(const BettiMatching& m) {
  std::ostringstream os;
  const CubicalGrid& p = *m.pred_grid;
  const CubicalGrid& g = *m.gt_grid;
  for (int d = 0; d < 2; ++d) {
    os << "M";
    for (const auto& x : m.matched[d]) {
      put_pixel(os, p, x.pred);
      put_pixel(os, g, x.gt);
    }
    os << "E";
    for (const auto& x : m.matched_essential[d]) {
      put_pixel(os, p, x.pred);
      put_pixel(os, g, x.gt);
    }
    os << "P";
    for (const auto& x : m.unmatched_pred[d]) put_pixel(os, p, x);
    for (const auto& x : m.unmatched_essential_pred[d]) put_pixel(os, p, x);
    os << "G";
    for (const auto& x : m.unmatched_gt[d]) put_pixel(os, g, x);
    for (const auto& x : m.unmatched_essential_gt[d]) put_pixel(os, g, x);
  }
  return os.str();
}

namespace {

std::string signature_of(const GrayImage& pred, const GrayImage& gt, const LossOptions& o) {
  std::string s;
  std::vector<Direction> dirs;
  if (o.filtration != Filtration::Sublevel) dirs.push_back(Direction::Superlevel);
  if (o.filtration != Filtration::Superlevel) dirs.push_back(Direction::Sublevel);
  for (const Direction dir : dirs) {
    MatchOptions mo;
    mo.direction = dir;
    mo.construction = o.construction;
    mo.relative = o.relative;
    s += matching_signature(betti_matching(pred, gt, mo));
    s += '|';
  }
  return s;
}

}  // namespace

GradientCheck check_gradient(const GrayImage& pred, const GrayImage& gt, const LossOptions& options,
                             double eps, double rel_tol) {
  LossOptions with = options;
  with.with_gradient = true;
  LossOptions without = options;
  without.with_gradient = false;
  const LossReport base = betti_matching_loss(pred, gt, with);
  const std::string sig = signature_of(pred, gt, options);

  GradientCheck out;
  out.pixels = pred.size();
  for (std::size_t r = 0; r < pred.rows(); ++r) {
    for (std::size_t c = 0; c < pred.cols(); ++c) {
      GrayImage plus = pred, minus = pred;
      plus(r, c) += eps;
      minus(r, c) -= eps;
      if (signature_of(plus, gt, options) != sig || signature_of(minus, gt, options) != sig) {
        ++out.unstable;
        continue;
      }
      ++out.checked;
      const double fd = (betti_matching_loss(plus, gt, without).loss -
                         betti_matching_loss(minus, gt, without).loss) /
                        (2.0 * eps);
      const double analytic = (*base.gradient)[r * pred.cols() + c];
      const double scale = std::max(std::abs(fd), std::abs(analytic));
      const double err = std::abs(fd - analytic);
      if (scale > 0.0) out.worst_relative_error = std::max(out.worst_relative_error, err / scale);
      if (err > rel_tol * scale + 1e-8) {
        if (out.failures++ == 0) {
          std::ostringstream os;
          os << "pixel (" << r << "," << c << "): analytic " << analytic << " vs fd " << fd;
          out.first_failure = os.str();
        }
      }
    }
  }
  return out;
}

}  // namespace betti::testing

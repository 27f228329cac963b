#include <doctest.h>

#include <cmath>
#include <numeric>

#include "betti/baselines.hpp"
#include "betti/errors.hpp"
#include "betti/matching.hpp"
#include "betti/oracle.hpp"
#include "support.hpp"

using namespace betti;
namespace bt = betti::testing;

namespace {

const MatchOptions kMatchVariants[] = {
    {Direction::Superlevel, Construction::V, false},
    {Direction::Sublevel, Construction::V, false},
    {Direction::Superlevel, Construction::T, false},
    {Direction::Sublevel, Construction::T, false},
    {Direction::Superlevel, Construction::V, true},
    {Direction::Sublevel, Construction::T, true},
};

std::size_t count_finite(const BettiMatching& m, int d) {
  return m.matched[d].size() + m.unmatched_pred[d].size();
}

}  // namespace

TEST_CASE("worked example induced matchings") {
  const GridOptions sub{Construction::V, Direction::Sublevel, false, {}};
  const CubicalGrid i(bt::nested_i(), sub);
  const Barcode bi = compute_barcode(i);
  for (const auto& [j_img, death, reverse] :
       {std::tuple{bt::nested_j1(), 39.0, false}, std::tuple{bt::nested_j2(), 19.0, true}}) {
    const CubicalGrid j(j_img, sub);
    const Barcode bj = compute_barcode(j, false);
    const InducedMatching m = induced_matching(compute_image_barcode(i, j, bi, bj), bi, bj);
    REQUIRE(m.triples[1].size() == 1);
    const MatchedTriple& t = m.triples[1][0];
    CHECK(t.domain.birth_value == 27);
    CHECK(t.domain.death_value == 49);
    CHECK(t.codomain.birth_value == 7);
    CHECK(t.codomain.death_value == death);
    CHECK(t.image.birth_value == 27);
    CHECK(t.image.death_value == death);
    CHECK(t.image.reverse == reverse);
    CHECK(m.unmatched_domain[1].empty());
    CHECK(m.unmatched_codomain[1].empty());
  }
}

TEST_CASE("matched forward triples satisfy the sandwich inequalities") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const GrayImage a = bt::random_real(5, 5, rng);
    const GrayImage b = entrywise_min(a, bt::random_real(5, 5, rng));
    for (const Construction con : {Construction::V, Construction::T}) {
      const GridOptions opt{con, Direction::Sublevel, false, {}};
      const CubicalGrid d(a, opt), c(b, opt);
      const Barcode db = compute_barcode(d), cb = compute_barcode(c, false);
      const InducedMatching m = induced_matching(compute_image_barcode(d, c, db, cb), db, cb);
      for (int dim = 0; dim < 2; ++dim) {
        CHECK(m.triples[dim].size() + m.unmatched_domain[dim].size() == db.finite[dim].size());
        CHECK(m.triples[dim].size() + m.unmatched_codomain[dim].size() == cb.finite[dim].size());
        for (const auto& t : m.triples[dim]) {
          CHECK(t.domain.birth_index == t.image.birth_index);
          CHECK(*t.codomain.death_index == t.image.death_index);
          if (t.image.reverse) continue;
          // codomain birth <= image birth = domain birth < image death = codomain death <= domain death
          CHECK(t.codomain.birth_value <= t.domain.birth_value);
          CHECK(t.domain.birth_value < t.codomain.death_value);
          CHECK(t.codomain.death_value <= t.domain.death_value);
        }
      }
    }
  }
}

TEST_CASE("identical images match themselves with zero loss") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const GrayImage img = bt::random_real(6, 5, rng);
    for (const auto& opt : kMatchVariants) {
      const BettiMatching m = betti_matching(img, img, opt);
      for (int d = 0; d < 2; ++d) {
        CHECK(m.unmatched_pred[d].empty());
        CHECK(m.unmatched_gt[d].empty());
        CHECK(m.unmatched_essential_pred[d].empty());
        CHECK(m.unmatched_essential_gt[d].empty());
        for (const auto& x : m.matched[d]) CHECK(x.pred == x.gt);
        for (const auto& x : m.matched_essential[d]) CHECK(x.pred == x.gt);
        CHECK(m.matched[d].size() == compute_barcode(*m.pred_grid).finite[d].size());
      }
      const LossReport r = betti_matching_loss(m, true);
      CHECK(r.loss == 0.0);
      for (const double g : *r.gradient) CHECK(g == 0.0);
    }
  }
}

TEST_CASE("error laws on binary pairs") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 4 + trial % 6;
    const GrayImage p = bt::random_binary(n, n, rng, 0.3 + 0.05 * (trial % 8));
    const GrayImage g = bt::random_binary(n, n, rng, 0.5);
    const MatchOptions opt{};
    const TopologyErrors pg = betti_matching_error(p, g, opt);
    const TopologyErrors gp = betti_matching_error(g, p, opt);
    CHECK(pg == gp);
    const TopologyErrors beta = betti_number_error(p, g);
    for (int d = 0; d < 2; ++d) {
      CHECK(pg.per_dim[d] >= beta.per_dim[d]);
      CHECK((pg.per_dim[d] - beta.per_dim[d]) % 2 == 0);
    }
    LossOptions lo;
    CHECK(betti_matching_loss(p, g, lo).loss == static_cast<double>(pg.total()));
    lo.filtration = Filtration::Sublevel;
    MatchOptions sub{};
    sub.direction = Direction::Sublevel;
    CHECK(betti_matching_loss(p, g, lo).loss ==
          static_cast<double>(betti_matching_error(p, g, sub).total()));
    lo.filtration = Filtration::Superlevel;
    lo.relative = true;
    MatchOptions rel{};
    rel.relative = true;
    CHECK(betti_matching_loss(p, g, lo).loss ==
          static_cast<double>(betti_matching_error(p, g, rel).total()));
  }
}

TEST_CASE("disjoint rings are not matched") {
  const GrayImage p = bt::disjoint_rings_pred();
  const GrayImage g = bt::disjoint_rings_gt();
  const BettiMatching m = betti_matching(p, g);
  CHECK(m.matched[1].empty());
  CHECK(m.unmatched_pred[1].size() == 2);
  CHECK(m.unmatched_gt[1].size() == 2);
  const TopologyErrors e = betti_matching_error(m);
  CHECK(e.per_dim[1] == 4);
  CHECK(e.per_dim[0] == 2);
  CHECK(betti_number_error(p, g).per_dim[1] == 0);
}

TEST_CASE("a slightly shifted ring is matched") {
  const GrayImage g = bt::rings(9, 9, 5, {{1, 1}});
  const GrayImage p = bt::rings(9, 9, 5, {{1, 2}});
  const BettiMatching m = betti_matching(p, g);
  CHECK(m.matched[1].size() == 1);
  CHECK(betti_matching_error(m).total() == 0);
}

TEST_CASE("loss and gradient on a dimmed ring") {
  // Ring at 0.9 on a 0.1 background against the binary ring.
  const GrayImage g = bt::rings(5, 5, 3, {{1, 1}});
  std::vector<double> v(g.values().begin(), g.values().end());
  for (auto& x : v) x = x == 1.0 ? 0.9 : 0.1;
  const GrayImage l(5, 5, v);
  LossOptions lo;
  lo.with_gradient = true;
  const LossReport r = betti_matching_loss(l, g, lo);
  // essential: 2 * 0.1^2, hole: 2 * (0.1^2 + 0.1^2)
  CHECK(r.loss == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(r.per_dim[0].matched == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(r.per_dim[1].matched == doctest::Approx(0.04).epsilon(1e-12));
  const auto& grad = *r.gradient;
  CHECK(grad[2 * 5 + 2] == doctest::Approx(0.4));
  CHECK(std::accumulate(grad.begin(), grad.end(), 0.0) == doctest::Approx(-0.4));
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (v[i] == 0.1 && i != 12) CHECK(grad[i] == 0.0);
  }
}

TEST_CASE("bothlevel is the sum of both directions") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const GrayImage l = bt::random_real(6, 6, rng);
    const GrayImage g = bt::random_binary(6, 6, rng);
    LossOptions lo;
    lo.with_gradient = true;
    lo.filtration = Filtration::Superlevel;
    const LossReport sup = betti_matching_loss(l, g, lo);
    lo.filtration = Filtration::Sublevel;
    const LossReport sub = betti_matching_loss(l, g, lo);
    lo.filtration = Filtration::Bothlevel;
    const LossReport both = betti_matching_loss(l, g, lo);
    CHECK(both.loss == sup.loss + sub.loss);
    for (std::size_t i = 0; i < l.size(); ++i) {
      CHECK((*both.gradient)[i] == (*sup.gradient)[i] + (*sub.gradient)[i]);
    }
  }
}

TEST_CASE("loss is twice the cost of the Betti matching as a point matching") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 40; ++trial) {
    const GrayImage l = bt::random_real(6, 6, rng);
    const GrayImage g = bt::random_binary(6, 6, rng);
    for (const auto& opt : kMatchVariants) {
      const BettiMatching m = betti_matching(l, g, opt);
      const double loss = betti_matching_loss(m, false).loss;
      CHECK(loss == doctest::Approx(2.0 * as_point_matching(m).total()).epsilon(1e-12));
      // The optimal transport plan never costs more than the Betti matching.
      const auto [dl, dg] = diagrams_of(l, g, opt);
      CHECK(wasserstein_loss(dl, dg) <= as_point_matching(m).total() + 1e-12);
    }
  }
}

TEST_CASE("analytic gradient agrees with finite differences") {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    const GrayImage l = bt::random_real(5, 5, rng);
    const GrayImage g = bt::random_binary(5, 5, rng);
    for (const Filtration f : {Filtration::Superlevel, Filtration::Sublevel, Filtration::Bothlevel}) {
      for (const bool relative : {false, true}) {
        LossOptions lo;
        lo.filtration = f;
        lo.relative = relative;
        const bt::GradientCheck chk = bt::check_gradient(l, g, lo);
        INFO(chk.first_failure);
        CHECK(chk.failures == 0);
        CHECK(chk.checked > 0);
      }
    }
  }
}

TEST_CASE("counts are consistent with the barcodes") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const GrayImage l = bt::random_real(5, 6, rng);
    const GrayImage g = bt::random_binary(5, 6, rng);
    for (const auto& opt : kMatchVariants) {
      const BettiMatching m = betti_matching(l, g, opt);
      const Barcode bl = compute_barcode(*m.pred_grid);
      const Barcode bg = compute_barcode(*m.gt_grid);
      for (int d = 0; d < 2; ++d) {
        CHECK(count_finite(m, d) == bl.finite[d].size());
        CHECK(m.matched[d].size() + m.unmatched_gt[d].size() == bg.finite[d].size());
        CHECK(m.matched_essential[d].size() + m.unmatched_essential_pred[d].size() ==
              bl.essential[d].size());
        CHECK(m.matched_essential[d].size() + m.unmatched_essential_gt[d].size() ==
              bg.essential[d].size());
      }
    }
  }
}

TEST_CASE("input validation") {
  const GrayImage a = GrayImage::filled(3, 3, 0.0);
  const GrayImage b = GrayImage::filled(3, 4, 0.0);
  try {
    (void)betti_matching(a, b);
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
  try {
    (void)betti_matching_error(GrayImage::filled(3, 3, 0.5), a);
    FAIL("expected NotBinary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBinary);
  }
  CHECK(essential_clamp(Direction::Sublevel) == 1.0);
  CHECK(essential_clamp(Direction::Superlevel) == 0.0);
  CHECK(std::string(to_string(Filtration::Bothlevel)) == "bothlevel");
}

TEST_CASE("clamped matches drop collapsed essentials") {
  // An all-zero image has a single essential class born at 0, which the
  // superlevel clamp sends onto the diagonal.
  const GrayImage z = GrayImage::filled(4, 4, 0.0);
  const GrayImage g = bt::rings(4, 4, 3, {{0, 0}});
  const BettiMatching m = betti_matching(z, g);
  const auto cm = clamped_matches(m);
  for (const auto& x : cm[0]) CHECK(!x.pred.has_value());
  CHECK(cm[0].size() == 1);
  CHECK(betti_matching_loss(m, false).loss == 2.0);
}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>

#include "betti/oracle.hpp"
#include "betti/persistence.hpp"
#include "support.hpp"

using namespace betti;
namespace bt = betti::testing;

namespace {

const GridOptions kVariants[] = {
    {Construction::V, Direction::Sublevel, false, {}},
    {Construction::V, Direction::Superlevel, false, {}},
    {Construction::T, Direction::Sublevel, false, {}},
    {Construction::T, Direction::Superlevel, false, {}},
    {Construction::V, Direction::Sublevel, true, {}},
    {Construction::V, Direction::Superlevel, true, {}},
    {Construction::T, Direction::Sublevel, true, {}},
    {Construction::T, Direction::Superlevel, true, {}},
};

void check_against_oracle(const GrayImage& img, const GridOptions& opt) {
  const CubicalGrid g(img, opt);
  std::string why;
  const bool same = oracle::same_barcode(compute_barcode(g), oracle::reduce_boundary_matrix(g), &why);
  INFO(why);
  CHECK(same);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("worked example barcodes") {
  const GridOptions sub{Construction::V, Direction::Sublevel, false, {}};
  struct Expect {
    GrayImage img;
    double e0, b1, d1;
  };
  const Expect cases[] = {{bt::nested_i(), 20, 27, 49},
                          {bt::nested_j1(), 0, 7, 39},
                          {bt::nested_j2(), 0, 7, 19}};
  for (const auto& c : cases) {
    const CubicalGrid g(c.img, sub);
    const Barcode b = compute_barcode(g);
    REQUIRE(b.essential0().size() == 1);
    CHECK(b.essential0()[0].birth_value == c.e0);
    CHECK(b.essential0()[0].death_value == kInf);
    CHECK(b.essential0()[0].essential());
    CHECK(b.dim0().empty());
    CHECK(b.essential1().empty());
    REQUIRE(b.dim1().size() == 1);
    CHECK(b.dim1()[0].birth_value == c.b1);
    CHECK(b.dim1()[0].death_value == c.d1);
    CHECK(b.dim1()[0].death_cell == CellId{2, 1, 1});
  }
}

TEST_CASE("superlevel barcodes run downwards") {
  const GrayImage img = bt::from_rows({{0, 0, 0, 0, 0},
                                      {0, 1, 1, 1, 0},
                                      {0, 1, 0, 1, 0},
                                      {0, 1, 1, 1, 0},
                                      {0, 0, 0, 0, 0}});
  const CubicalGrid g(img, {Construction::V, Direction::Superlevel, false, {}});
  const Barcode b = compute_barcode(g);
  REQUIRE(b.essential0().size() == 1);
  CHECK(b.essential0()[0].birth_value == 1);
  CHECK(b.essential0()[0].death_value == -kInf);
  REQUIRE(b.dim1().size() == 1);
  CHECK(b.dim1()[0].birth_value == 1);
  CHECK(b.dim1()[0].death_value == 0);
  CHECK(b.dim0().empty());
}

TEST_CASE("degenerate images") {
  for (const auto& opt : kVariants) {
    const Barcode one = compute_barcode(CubicalGrid(GrayImage(1, 1, {3.0}), opt));
    CHECK(one.essential0().size() == 1);
    CHECK(one.dim0().empty());
    CHECK(one.dim1().empty());
    const Barcode flat = compute_barcode(CubicalGrid(GrayImage::filled(4, 3, 2.0), opt));
    CHECK(flat.essential0().size() == 1);
    CHECK(flat.dim0().empty());
    CHECK(flat.dim1().empty());
    check_against_oracle(GrayImage(1, 5, {3, 1, 4, 1, 5}), opt);
    check_against_oracle(GrayImage(5, 1, {2, 7, 1, 8, 2}), opt);
  }
}

TEST_CASE("matches the reduction oracle on random images") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
    const GrayImage imgs[] = {bt::random_distinct(rows, cols, rng),
                              bt::random_binary(rows, cols, rng),
                              bt::random_levels(rows, cols, rng, 3)};
    for (const auto& img : imgs) {
      for (const auto& opt : kVariants) check_against_oracle(img, opt);
    }
  }
}

TEST_CASE("Euler characteristic at every threshold") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const GrayImage img = bt::random_levels(5, 4, rng, 4);
    for (const auto& opt : kVariants) {
      const CubicalGrid g(img, opt);
      const Barcode b = compute_barcode(g);
      for (int level = -1; level <= 4; ++level) {
        const double t = level;
        long chi = 0;
        for (CellKey k = 0; k < g.num_cells(); ++k) {
          if (g.internal_value(k) <= g.to_internal(t)) chi += g.dim_of(k) == 1 ? -1 : 1;
        }
        const BettiNumbers beta = betti_numbers_at(b, t);
        CHECK(beta.b0 - beta.b1 == chi);
        CHECK(betti_numbers_at(g, t) == beta);
      }
    }
  }
}

TEST_CASE("Betti numbers match flood fill on binarizations") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const GrayImage img = bt::random_real(6, 7, rng);
    const CubicalGrid g(img, {Construction::V, Direction::Superlevel, false, {}});
    const Barcode b = compute_barcode(g);
    for (const double t : {0.2, 0.5, 0.8}) {
      std::vector<double> bin(img.values().begin(), img.values().end());
      for (auto& x : bin) x = x >= t ? 1.0 : 0.0;
      CHECK(betti_numbers_at(b, t) == oracle::betti_flood_fill(GrayImage(6, 7, bin)));
    }
  }
}

TEST_CASE("pair and cell bookkeeping") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const GrayImage img = bt::random_distinct(4, 5, rng);
    for (const auto& opt : kVariants) {
      const CubicalGrid g(img, opt);
      const Barcode b = compute_barcode(g);
      CHECK(b.critical_edges.size() == g.num_squares());
      CHECK(b.critical_edges.size() + b.columns_to_reduce.size() == g.num_edges());
      for (std::size_t i = 1; i < b.critical_edges.size(); ++i) {
        CHECK(g.index_of(b.critical_edges[i - 1]) > g.index_of(b.critical_edges[i]));
      }
      for (std::size_t i = 1; i < b.columns_to_reduce.size(); ++i) {
        CHECK(g.index_of(b.columns_to_reduce[i - 1]) < g.index_of(b.columns_to_reduce[i]));
      }
      // Each dim-1 interval is born at a critical edge.
      std::size_t positive = 0;
      for (const auto& iv : b.dim1()) {
        CHECK(std::find(b.critical_edges.begin(), b.critical_edges.end(),
                        g.key_of(iv.birth_cell)) != b.critical_edges.end());
        ++positive;
      }
      CHECK(positive <= b.critical_edges.size());

      // Full reduction: every cell is paired or essential.
      oracle::BoundaryMatrix m = oracle::boundary_matrix(g, g);
      const auto pairs = oracle::reduce(m);
      CHECK(2 * pairs.size() + b.essential0().size() + b.essential1().size() == g.num_cells());
      CHECK(b.essential0().size() == 1);
      CHECK(b.essential1().empty());
    }
  }
}

TEST_CASE("increasing relabeling preserves the refined pairing") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const GrayImage img = bt::random_distinct(5, 5, rng);
    std::vector<double> mapped(img.values().begin(), img.values().end());
    for (auto& x : mapped) x = x * x * x + 0.25 * x - 7.0;
    const GrayImage img2(5, 5, mapped);
    for (const auto& opt : kVariants) {
      const Barcode a = compute_barcode(CubicalGrid(img, opt));
      const Barcode b = compute_barcode(CubicalGrid(img2, opt));
      auto f = [](double x) { return std::isinf(x) ? x : x * x * x + 0.25 * x - 7.0; };
      for (int d = 0; d < 2; ++d) {
        REQUIRE(a.finite[d].size() == b.finite[d].size());
        REQUIRE(a.essential[d].size() == b.essential[d].size());
        for (std::size_t i = 0; i < a.finite[d].size(); ++i) {
          CHECK(a.finite[d][i].birth_cell == b.finite[d][i].birth_cell);
          CHECK(a.finite[d][i].death_cell == b.finite[d][i].death_cell);
          CHECK(f(a.finite[d][i].birth_value) == b.finite[d][i].birth_value);
          CHECK(f(a.finite[d][i].death_value) == b.finite[d][i].death_value);
        }
        for (std::size_t i = 0; i < a.essential[d].size(); ++i) {
          CHECK(a.essential[d][i].birth_cell == b.essential[d][i].birth_cell);
          CHECK(f(a.essential[d][i].birth_value) == b.essential[d][i].birth_value);
        }
      }
    }
  }
}

TEST_CASE("relative frame closes border loops") {
  // A U shape open at the border has no hole until the frame closes it.
  const GrayImage img = bt::from_rows({{1, 0, 1}, {1, 0, 1}, {1, 1, 1}});
  const Barcode plain =
      compute_barcode(CubicalGrid(img, {Construction::V, Direction::Superlevel, false, {}}));
  CHECK(plain.dim1().empty());
  const Barcode rel =
      compute_barcode(CubicalGrid(img, {Construction::V, Direction::Superlevel, true, {}}));
  REQUIRE(rel.dim1().size() == 1);
  CHECK(rel.dim1()[0].birth_value == 1);
  CHECK(rel.dim1()[0].death_value == 0);
}

TEST_CASE("make_interval") {
  const CubicalGrid g(bt::nested_i(), {Construction::V, Direction::Sublevel, false, {}});
  const CellKey birth = g.key_of({1, 0, 1, Orientation::Horizontal});
  const CellKey death = g.key_of({2, 0, 0});
  const Interval iv = make_interval(g, 1, birth, death);
  CHECK(iv.birth_value == 27);
  CHECK(iv.death_value == 49);
  CHECK(iv.birth_index == g.index_of(birth));
  CHECK(*iv.death_index == g.index_of(death));
  const Interval e = make_interval(g, 0, g.key_of({0, 0, 0}), std::nullopt);
  CHECK(e.essential());
  CHECK(e.death_value == kInf);
}

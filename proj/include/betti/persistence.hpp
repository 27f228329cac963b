#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "betti/grid.hpp"

namespace betti {

/// Refined interval: values are in image units (superlevel intervals run
/// downwards), indices are positions in the grid's compatible order.
/// Essential intervals have no death cell and an infinite death value
/// (+inf sublevel, -inf superlevel).
struct Interval {
  int dim = 0;
  double birth_value = 0.0;
  double death_value = 0.0;
  CellId birth_cell;
  std::optional<CellId> death_cell;
  std::uint32_t birth_index = 0;
  std::optional<std::uint32_t> death_index;

  bool essential() const noexcept { return !death_index.has_value(); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Barcode {
  Direction direction = Direction::Sublevel;
  std::array<std::vector<Interval>, 2> finite;
  std::array<std::vector<Interval>, 2> essential;
  // Edges that merged two dual classes, in decreasing refined order.
  std::vector<CellKey> critical_edges;
  // Edges handed to the dimension-0 sweep, in increasing refined order.
  std::vector<CellKey> columns_to_reduce;

  const std::vector<Interval>& dim0() const noexcept { return finite[0]; }
  const std::vector<Interval>& dim1() const noexcept { return finite[1]; }
  const std::vector<Interval>& essential0() const noexcept { return essential[0]; }
  const std::vector<Interval>& essential1() const noexcept { return essential[1]; }
};

Barcode compute_barcode(const CubicalGrid& grid, bool keep_critical = true);

struct BettiNumbers {
  int b0 = 0;
  int b1 = 0;
  friend bool operator==(const BettiNumbers&, const BettiNumbers&) = default;
};

/// Betti numbers of the sublevel (superlevel) complex at a threshold, read
/// off the intervals alive there.
BettiNumbers betti_numbers_at(const Barcode& barcode, double threshold);
BettiNumbers betti_numbers_at(const CubicalGrid& grid, double threshold);

// Builds an Interval for a (birth, death) cell pair of a grid.
Interval make_interval(const CubicalGrid& grid, int dim, CellKey birth,
                       std::optional<CellKey> death);

}  // namespace betti

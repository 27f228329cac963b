#include "betti/persistence.hpp"

#include <limits>

#include "betti/union_find.hpp"

namespace betti {

Interval make_interval(const CubicalGrid& grid, int dim, CellKey birth,
                       std::optional<CellKey> death) {
  Interval iv;
  iv.dim = dim;
  iv.birth_cell = grid.cell_of(birth);
  iv.birth_index = grid.index_of(birth);
  iv.birth_value = grid.value(birth);
  if (death) {
    iv.death_cell = grid.cell_of(*death);
    iv.death_index = grid.index_of(*death);
    iv.death_value = grid.value(*death);
  } else {
    iv.death_value = grid.to_public(std::numeric_limits<double>::infinity());
  }
  return iv;
}

Barcode compute_barcode(const CubicalGrid& grid, bool keep_critical) {
  Barcode out;
  out.direction = grid.direction();
  const std::uint32_t n_squares = grid.num_squares();
  constexpr std::uint32_t kOutside = DualVertexId::kOutside;
  const auto edges = grid.edges();

  // Dimension 1 through the dual graph: squares plus one outside vertex,
  // swept in decreasing order so the elder dual class has the larger index.
  BirthUnionFind dual(n_squares + 1, ElderRule::MaxBirth);
  for (std::uint32_t s = 0; s < n_squares; ++s) {
    dual.set_birth(s, grid.index_of(grid.square_key(s)));
  }
  dual.set_birth(n_squares, std::numeric_limits<std::uint32_t>::max());
  auto dual_vertex = [&](std::uint32_t s) { return s == kOutside ? n_squares : s; };

  std::vector<CellKey> columns;
  columns.reserve(edges.size());
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
    const CellKey e = *it;
    const auto [a, b] = grid.edge_squares(e);
    const std::uint32_t x = dual.find(dual_vertex(a));
    const std::uint32_t y = dual.find(dual_vertex(b));
    if (x == y) {
      columns.push_back(e);
      continue;
    }
    const std::uint32_t death = dual.younger_birth(x, y);
    if (keep_critical) out.critical_edges.push_back(e);
    const CellKey square = grid.key_at(death);
    if (grid.internal_value(e) != grid.internal_value(square)) {
      out.finite[1].push_back(make_interval(grid, 1, e, square));
    }
    dual.unite(x, y);
  }
  // The dual graph of the full grid is connected, so every bounded dual
  // class eventually merges with the outside: no essential 1-classes.

  // Dimension 0 over the cleared columns in increasing order.
  out.columns_to_reduce.assign(columns.rbegin(), columns.rend());
  BirthUnionFind primal(grid.num_vertices(), ElderRule::MinBirth);
  for (std::uint32_t v = 0; v < grid.num_vertices(); ++v) primal.set_birth(v, grid.index_of(v));
  for (const CellKey e : out.columns_to_reduce) {
    const auto [u, v] = grid.edge_vertices(e);
    const std::uint32_t x = primal.find(u);
    const std::uint32_t y = primal.find(v);
    if (x == y) continue;
    const CellKey vertex = grid.key_at(primal.younger_birth(x, y));
    if (grid.internal_value(vertex) != grid.internal_value(e)) {
      out.finite[0].push_back(make_interval(grid, 0, vertex, e));
    }
    primal.unite(x, y);
  }
  for (std::uint32_t v = 0; v < grid.num_vertices(); ++v) {
    if (primal.is_root(v)) {
      out.essential[0].push_back(make_interval(grid, 0, grid.key_at(primal.birth(v)), std::nullopt));
    }
  }
  return out;
}

BettiNumbers betti_numbers_at(const Barcode& barcode, double threshold) {
  const bool sub = barcode.direction == Direction::Sublevel;
  auto alive = [&](const Interval& iv) {
    return sub ? (iv.birth_value <= threshold && threshold < iv.death_value)
               : (iv.birth_value >= threshold && threshold > iv.death_value);
  };
  std::array<int, 2> counts{0, 0};
  for (int d = 0; d < 2; ++d) {
    for (const auto& iv : barcode.finite[d]) counts[d] += alive(iv) ? 1 : 0;
    for (const auto& iv : barcode.essential[d]) counts[d] += alive(iv) ? 1 : 0;
  }
  return {counts[0], counts[1]};
}

BettiNumbers betti_numbers_at(const CubicalGrid& grid, double threshold) {
  return betti_numbers_at(compute_barcode(grid, false), threshold);
}

}  // namespace betti

#include "betti/oracle.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>
#include <tuple>

#include "betti/errors.hpp"

namespace betti::oracle {

namespace {

void guard(const CubicalGrid& grid) {
  if (grid.num_cells() > kMaxCells) {
    throw Error(ErrorCode::TooLarge,
                std::to_string(grid.num_cells()) + " cells exceed the oracle limit of " +
                    std::to_string(kMaxCells));
  }
}

std::vector<CellKey> faces(const CubicalGrid& grid, CellKey key) {
  const CellId c = grid.cell_of(key);
  if (c.dim == 1) {
    const auto [a, b] = grid.edge_vertices(key);
    return {a, b};
  }
  if (c.dim == 2) {
    return {grid.key_of({1, c.row, c.col, Orientation::Horizontal}),
            grid.key_of({1, c.row + 1, c.col, Orientation::Horizontal}),
            grid.key_of({1, c.row, c.col, Orientation::Vertical}),
            grid.key_of({1, c.row, c.col + 1, Orientation::Vertical})};
  }
  return {};
}

}  // namespace

BoundaryMatrix boundary_matrix(const CubicalGrid& rows_from, const CubicalGrid& columns_from) {
  guard(columns_from);
  const std::uint32_t n = columns_from.num_cells();
  BoundaryMatrix m;
  m.columns.resize(n);
  m.column_cells.resize(n);
  m.row_cells.resize(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    m.column_cells[j] = columns_from.key_at(j);
    m.row_cells[j] = rows_from.key_at(j);
    auto& col = m.columns[j];
    for (const CellKey f : faces(columns_from, m.column_cells[j])) col.push_back(rows_from.index_of(f));
    std::sort(col.begin(), col.end());
  }
  return m;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> reduce(BoundaryMatrix& matrix) {
  constexpr std::uint32_t kNone = 0xffffffffu;
  const std::size_t n = matrix.columns.size();
  std::vector<std::uint32_t> column_with_low(n, kNone);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::uint32_t> scratch;
  for (std::uint32_t j = 0; j < n; ++j) {
    auto& col = matrix.columns[j];
    while (!col.empty() && column_with_low[col.back()] != kNone) {
      const auto& other = matrix.columns[column_with_low[col.back()]];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      column_with_low[col.back()] = j;
      pairs.emplace_back(col.back(), j);
    }
  }
  // Reduced form: pivots are pairwise distinct.
  std::vector<bool> seen(n, false);
  for (const auto& col : matrix.columns) {
    if (col.empty()) continue;
    if (seen[col.back()]) throw std::logic_error("reduced matrix has a repeated pivot");
    seen[col.back()] = true;
  }
  return pairs;
}

Barcode reduce_boundary_matrix(const CubicalGrid& grid) {
  BoundaryMatrix m = boundary_matrix(grid, grid);
  const auto pairs = reduce(m);
  Barcode out;
  out.direction = grid.direction();
  std::vector<bool> paired(grid.num_cells(), false);
  for (const auto& [row, col] : pairs) {
    paired[row] = paired[col] = true;
    const CellKey birth = grid.key_at(row);
    const CellKey death = grid.key_at(col);
    if (grid.internal_value(birth) == grid.internal_value(death)) continue;
    const int dim = grid.dim_of(birth);
    out.finite[dim].push_back(make_interval(grid, dim, birth, death));
  }
  for (std::uint32_t i = 0; i < grid.num_cells(); ++i) {
    if (paired[i]) continue;
    const CellKey cell = grid.key_at(i);
    const int dim = grid.dim_of(cell);
    if (dim > 1) {
      throw std::logic_error("essential class in dimension 2 on a planar grid");
    }
    out.essential[dim].push_back(make_interval(grid, dim, cell, std::nullopt));
  }
  return out;
}

ImageBarcode reduce_image_matrix(const CubicalGrid& domain, const CubicalGrid& codomain) {
  require_comparable(domain, codomain);
  BoundaryMatrix m = boundary_matrix(domain, codomain);
  const auto pairs = reduce(m);
  ImageBarcode out;
  for (const auto& [row, col] : pairs) {
    const CellKey birth = domain.key_at(row);
    const CellKey death = codomain.key_at(col);
    const int dim = domain.dim_of(birth);
    out.pairs[dim].push_back(make_image_pair(domain, codomain, dim, birth, death));
  }
  return out;
}

BettiNumbers betti_flood_fill(const GrayImage& binary, double threshold) {
  require_binary(binary, "image");
  const std::size_t rows = binary.rows(), cols = binary.cols();
  auto fg = [&](std::size_t r, std::size_t c) { return binary(r, c) >= threshold; };
  long vertices = 0, edges = 0, squares = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!fg(r, c)) continue;
      ++vertices;
      if (c + 1 < cols && fg(r, c + 1)) ++edges;
      if (r + 1 < rows && fg(r + 1, c)) ++edges;
      if (r + 1 < rows && c + 1 < cols && fg(r, c + 1) && fg(r + 1, c) && fg(r + 1, c + 1)) {
        ++squares;
      }
    }
  }
  std::vector<bool> seen(rows * cols, false);
  std::vector<std::size_t> stack;
  long components = 0;
  for (std::size_t start = 0; start < rows * cols; ++start) {
    if (seen[start] || !fg(start / cols, start % cols)) continue;
    ++components;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      const std::size_t r = p / cols, c = p % cols;
      const std::size_t next[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& q : next) {
        // Unsigned wrap-around puts out-of-range neighbours past the bounds.
        if (q[0] >= rows || q[1] >= cols) continue;
        const std::size_t idx = q[0] * cols + q[1];
        if (seen[idx] || !fg(q[0], q[1])) continue;
        seen[idx] = true;
        stack.push_back(idx);
      }
    }
  }
  const long euler = vertices - edges + squares;
  return {static_cast<int>(components), static_cast<int>(components - euler)};
}

}  // namespace betti::oracle

namespace betti::oracle {

namespace {

using IntervalKey = std::tuple<int, std::uint32_t, std::uint32_t, double, double>;

std::vector<IntervalKey> keys_of(const Barcode& b) {
  std::vector<IntervalKey> keys;
  for (int d = 0; d < 2; ++d) {
    for (const auto* list : {&b.finite[d], &b.essential[d]}) {
      for (const auto& iv : *list) {
        keys.emplace_back(d, iv.birth_index, iv.death_index.value_or(0xffffffffu), iv.birth_value,
                          iv.death_value);
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::string describe(const IntervalKey& k) {
  return "dim " + std::to_string(std::get<0>(k)) + " [" + std::to_string(std::get<3>(k)) + ", " +
         std::to_string(std::get<4>(k)) + ") refined (" + std::to_string(std::get<1>(k)) + ", " +
         std::to_string(std::get<2>(k)) + ")";
}

template <typename Key, typename Describe>
bool same_keys(const std::vector<Key>& a, const std::vector<Key>& b, std::string* why,
               Describe describe_key) {
  if (a == b) return true;
  if (why) {
    std::vector<Key> only_a, only_b;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
    *why = std::to_string(only_a.size()) + " only in fast path, " +
           std::to_string(only_b.size()) + " only in reference";
    if (!only_a.empty()) *why += "; e.g. fast " + describe_key(only_a.front());
    if (!only_b.empty()) *why += "; e.g. reference " + describe_key(only_b.front());
  }
  return false;
}

}  // namespace

bool same_barcode(const Barcode& fast, const Barcode& reference, std::string* why) {
  return same_keys(keys_of(fast), keys_of(reference), why, describe);
}

bool same_image_barcode(const ImageBarcode& fast, const ImageBarcode& reference,
                        std::string* why) {
  using Key = std::tuple<int, std::uint32_t, std::uint32_t, bool>;
  auto keys = [](const ImageBarcode& b) {
    std::vector<Key> out;
    for (int d = 0; d < 2; ++d) {
      for (const auto& p : b.pairs[d]) out.emplace_back(d, p.birth_index, p.death_index, p.reverse);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return same_keys(keys(fast), keys(reference), why, [](const Key& k) {
    return "dim " + std::to_string(std::get<0>(k)) + " refined (" +
           std::to_string(std::get<1>(k)) + ", " + std::to_string(std::get<2>(k)) + ")" +
           (std::get<3>(k) ? " reverse" : "");
  });
}

}  // namespace betti::oracle

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "betti/grid.hpp"
#include "betti/image_persistence.hpp"
#include "betti/persistence.hpp"

namespace betti::oracle {

// Reference implementations: plain GF(2) column reduction without clearing
// or duality, and flood-fill Betti numbers. Meant for test-sized inputs.

inline constexpr std::uint32_t kMaxCells = 40000;

/// Boundary matrix over GF(2) in a chosen cell order: column j holds the
/// sorted row positions of the codimension-1 faces of the j-th column cell.
struct BoundaryMatrix {
  std::vector<std::vector<std::uint32_t>> columns;
  std::vector<CellKey> column_cells;
  std::vector<CellKey> row_cells;
};

/// Columns ordered by `columns_from`, rows by `rows_from`.
BoundaryMatrix boundary_matrix(const CubicalGrid& rows_from, const CubicalGrid& columns_from);

/// Standard left-to-right reduction. Returns the (row, column) pivot pairs;
/// throws std::logic_error if two reduced columns share a pivot.
std::vector<std::pair<std::uint32_t, std::uint32_t>> reduce(BoundaryMatrix& matrix);

/// Barcode by full reduction; zero-persistence pairs are dropped exactly as
/// in compute_barcode. Critical edges and columns are left empty.
Barcode reduce_boundary_matrix(const CubicalGrid& grid);

/// All persistence pairs of the reduction with rows in domain order and
/// columns in codomain order, reverse pairs flagged.
ImageBarcode reduce_image_matrix(const CubicalGrid& domain, const CubicalGrid& codomain);

/// Betti numbers of {pixel >= threshold} as a V-construction complex:
/// 4-connected components for b0, b1 = b0 - (V - E + F).
BettiNumbers betti_flood_fill(const GrayImage& binary, double threshold = 0.5);

}  // namespace betti::oracle

namespace betti::oracle {

/// Refined comparison: the same (dim, birth index, death index) triples
/// with the same values, finite and essential alike. On mismatch `why`
/// receives a short description.
bool same_barcode(const Barcode& fast, const Barcode& reference, std::string* why = nullptr);

/// Same (dim, birth index, death index, reverse) pairs.
bool same_image_barcode(const ImageBarcode& fast, const ImageBarcode& reference,
                        std::string* why = nullptr);

}  // namespace betti::oracle

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "betti/grid.hpp"
#include "betti/persistence.hpp"

namespace betti {

/// Persistence pair of the map induced by the inclusion of the domain
/// filtration into the codomain filtration. The birth cell is indexed in the
/// domain order and the death cell in the codomain order. Reverse pairs
/// (birth not strictly before death) carry no image interval.
struct ImagePair {
  int dim = 0;
  CellId birth_cell;
  std::uint32_t birth_index = 0;
  double birth_value = 0.0;
  CellId death_cell;
  std::uint32_t death_index = 0;
  double death_value = 0.0;
  bool reverse = false;

  friend bool operator==(const ImagePair&, const ImagePair&) = default;
};

struct ImageBarcode {
  std::array<std::vector<ImagePair>, 2> pairs;

  const std::vector<ImagePair>& dim0() const noexcept { return pairs[0]; }
  const std::vector<ImagePair>& dim1() const noexcept { return pairs[1]; }
};

/// Throws IncompatibleGrids or NotComparable unless the domain sublevel sets
/// are contained in the codomain ones (domain >= codomain cellwise, in the
/// internal sublevel orientation).
void require_comparable(const CubicalGrid& domain, const CubicalGrid& codomain);

// Builds an ImagePair from a domain birth cell and a codomain death cell.
ImagePair make_image_pair(const CubicalGrid& domain, const CubicalGrid& codomain, int dim,
                          CellKey birth, CellKey death);

/// Image barcode from the domain's critical edges and the codomain's
/// columns-to-reduce. Both barcodes must come from compute_barcode on the
/// given grids; the domain barcode must have been computed with
/// keep_critical = true.
ImageBarcode compute_image_barcode(const CubicalGrid& domain, const CubicalGrid& codomain,
                                   const Barcode& domain_barcode,
                                   const Barcode& codomain_barcode);

}  // namespace betti

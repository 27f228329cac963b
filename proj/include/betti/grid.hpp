#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "betti/image.hpp"

namespace betti {

enum class Construction { V, T };
enum class Direction { Sublevel, Superlevel };
enum class Orientation : std::uint8_t { Horizontal = 0, Vertical = 1 };

const char* to_string(Construction c) noexcept;
const char* to_string(Direction d) noexcept;

/// A cell of the cubical grid, addressed on the vertex lattice. Squares and
/// vertices are anchored at their top-left vertex; orientation only matters
/// for edges (a horizontal edge joins (r,c)-(r,c+1), a vertical one
/// (r,c)-(r+1,c)).
struct CellId {
  int dim = 0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  Orientation orientation = Orientation::Horizontal;

  friend auto operator<=>(const CellId&, const CellId&) = default;
};

/// Vertex of the dual graph: a square, or the single vertex standing for the
/// unbounded region outside the grid.
struct DualVertexId {
  static constexpr std::uint32_t kOutside = 0xffffffffu;
  std::uint32_t square = kOutside;  // square offset (row * square_cols + col)

  bool outside() const noexcept { return square == kOutside; }
  friend bool operator==(const DualVertexId&, const DualVertexId&) = default;
};

struct PixelCoord {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Dense key of a cell. Layout: vertices, horizontal edges, vertical edges,
/// squares; each block row-major. Keys agree between grids of equal shape.
using CellKey = std::uint32_t;

struct GridOptions {
  Construction construction = Construction::V;
  Direction direction = Direction::Sublevel;
  bool relative = false;
  // Frame value in image units. Defaults to the image minimum (sublevel) or
  // maximum (superlevel), so the frame is present from the first level on.
  std::optional<double> frame_value;
};

/// Filtered cubical grid complex of an image. Values are stored in the
/// sublevel orientation: a superlevel grid holds negated pixel values, and
/// value() undoes the negation. The refined (compatible) order sorts cells
/// by (value, dim, row, col, orientation).
class CubicalGrid {
 public:
  CubicalGrid(const GrayImage& img, const GridOptions& options);

  Construction construction() const noexcept { return construction_; }
  Direction direction() const noexcept { return direction_; }
  bool relative() const noexcept { return relative_; }
  std::optional<double> frame_value() const noexcept { return frame_value_; }

  // Shape of the input image before any frame padding.
  std::uint32_t image_rows() const noexcept { return image_rows_; }
  std::uint32_t image_cols() const noexcept { return image_cols_; }
  // Shape after padding.
  std::uint32_t pixel_rows() const noexcept { return pixel_rows_; }
  std::uint32_t pixel_cols() const noexcept { return pixel_cols_; }

  std::uint32_t vertex_rows() const noexcept { return vrows_; }
  std::uint32_t vertex_cols() const noexcept { return vcols_; }
  std::uint32_t num_vertices() const noexcept { return n_vertices_; }
  std::uint32_t num_horizontal_edges() const noexcept { return n_hedges_; }
  std::uint32_t num_vertical_edges() const noexcept { return n_vedges_; }
  std::uint32_t num_edges() const noexcept { return n_hedges_ + n_vedges_; }
  std::uint32_t num_squares() const noexcept { return n_squares_; }
  std::uint32_t num_cells() const noexcept { return static_cast<std::uint32_t>(values_.size()); }

  // -- key level access (hot paths) --
  int dim_of(CellKey key) const noexcept;
  CellKey key_of(const CellId& cell) const;
  CellId cell_of(CellKey key) const;
  bool valid_cell(const CellId& cell) const noexcept;

  double internal_value(CellKey key) const noexcept { return values_[key]; }
  double value(CellKey key) const noexcept { return to_public(values_[key]); }
  std::uint32_t index_of(CellKey key) const noexcept { return index_[key]; }
  CellKey key_at(std::uint32_t refined_index) const noexcept { return order_[refined_index]; }

  std::span<const double> internal_values() const noexcept { return values_; }
  std::span<const std::uint32_t> index_map() const noexcept { return index_; }
  // Edge keys in increasing refined order.
  std::span<const CellKey> edges() const noexcept { return edges_; }

  std::array<CellKey, 2> edge_vertices(CellKey edge) const noexcept;
  // Square offsets; DualVertexId::kOutside for the outside vertex.
  std::array<std::uint32_t, 2> edge_squares(CellKey edge) const noexcept;
  CellKey square_key(std::uint32_t square_offset) const noexcept {
    return n_vertices_ + n_hedges_ + n_vedges_ + square_offset;
  }

  // -- cell level access --
  std::pair<CellId, CellId> boundary(const CellId& edge) const;
  std::pair<DualVertexId, DualVertexId> dual_boundary(const CellId& edge) const;
  CellId index_to_coord(std::uint32_t refined_index) const;
  std::uint32_t coord_to_index(const CellId& cell) const;
  double coord_to_value(const CellId& cell) const;

  /// Pixel whose value defines the cell's filtration value (ties go to the
  /// lexicographically smallest candidate), in unpadded image coordinates.
  /// Empty when that pixel belongs to the relative frame.
  std::optional<PixelCoord> critical_pixel(CellKey key) const;

  double to_public(double internal) const noexcept {
    return direction_ == Direction::Superlevel ? -internal : internal;
  }
  double to_internal(double public_value) const noexcept {
    return direction_ == Direction::Superlevel ? -public_value : public_value;
  }

  bool same_complex(const CubicalGrid& other) const noexcept;

 private:
  double pixel_internal(std::uint32_t r, std::uint32_t c) const noexcept {
    return pixels_[static_cast<std::size_t>(r) * pixel_cols_ + c];
  }
  std::optional<PixelCoord> unpad(std::uint32_t r, std::uint32_t c) const noexcept;
  void fill_values_v();
  void fill_values_t();
  void sort_cells();

  Construction construction_;
  Direction direction_;
  bool relative_;
  std::optional<double> frame_value_;
  std::uint32_t image_rows_, image_cols_;
  std::uint32_t pixel_rows_, pixel_cols_;
  std::uint32_t vrows_, vcols_;
  std::uint32_t n_vertices_, n_hedges_, n_vedges_, n_squares_;

  std::vector<double> pixels_;  // padded image, internal orientation
  std::vector<double> values_;
  std::vector<std::uint32_t> index_;
  std::vector<CellKey> order_;
  std::vector<CellKey> edges_;
};

CubicalGrid build_grid(const GrayImage& img, Construction construction, Direction direction,
                       bool relative);

inline CubicalGrid build_grid(const GrayImage& img, const GridOptions& options) {
  return CubicalGrid(img, options);
}

// Frame value for relative grids: the extreme value of the given range that
// enters the filtration first. Binary images keep a binary frame.
double default_frame_value(Direction direction, double min_value, double max_value) noexcept;

}  // namespace betti

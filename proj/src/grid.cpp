#include "betti/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "betti/errors.hpp"

namespace betti {

const char* to_string(Construction c) noexcept { return c == Construction::V ? "v" : "t"; }

const char* to_string(Direction d) noexcept {
  return d == Direction::Sublevel ? "sublevel" : "superlevel";
}

double default_frame_value(Direction direction, double min_value, double max_value) noexcept {
  return direction == Direction::Sublevel ? min_value : max_value;
}

CubicalGrid build_grid(const GrayImage& img, Construction construction, Direction direction,
                       bool relative) {
  GridOptions options;
  options.construction = construction;
  options.direction = direction;
  options.relative = relative;
  return CubicalGrid(img, options);
}

CubicalGrid::CubicalGrid(const GrayImage& img, const GridOptions& options)
    : construction_(options.construction),
      direction_(options.direction),
      relative_(options.relative) {
  constexpr std::size_t kMaxSide = (std::size_t{1} << 28) - 4;
  if (img.rows() > kMaxSide || img.cols() > kMaxSide) {
    throw Error(ErrorCode::TooLarge, "image side exceeds addressable grid size");
  }
  image_rows_ = static_cast<std::uint32_t>(img.rows());
  image_cols_ = static_cast<std::uint32_t>(img.cols());
  const std::uint32_t pad = relative_ ? 1 : 0;
  pixel_rows_ = image_rows_ + 2 * pad;
  pixel_cols_ = image_cols_ + 2 * pad;

  const double sign = direction_ == Direction::Superlevel ? -1.0 : 1.0;
  double frame_internal = 0.0;
  if (relative_) {
    frame_value_ = options.frame_value.value_or(
        default_frame_value(direction_, img.min_value(), img.max_value()));
    if (!std::isfinite(*frame_value_)) {
      throw Error(ErrorCode::NonFiniteValue, "frame value is not finite");
    }
    frame_internal = sign * *frame_value_;
  }
  pixels_.assign(static_cast<std::size_t>(pixel_rows_) * pixel_cols_, frame_internal);
  for (std::uint32_t r = 0; r < image_rows_; ++r) {
    for (std::uint32_t c = 0; c < image_cols_; ++c) {
      pixels_[static_cast<std::size_t>(r + pad) * pixel_cols_ + (c + pad)] = sign * img(r, c);
    }
  }

  if (construction_ == Construction::V) {
    vrows_ = pixel_rows_;
    vcols_ = pixel_cols_;
  } else {
    vrows_ = pixel_rows_ + 1;
    vcols_ = pixel_cols_ + 1;
  }
  n_vertices_ = vrows_ * vcols_;
  n_hedges_ = vrows_ * (vcols_ - 1);
  n_vedges_ = (vrows_ - 1) * vcols_;
  n_squares_ = (vrows_ - 1) * (vcols_ - 1);
  const std::size_t total = std::size_t{n_vertices_} + n_hedges_ + n_vedges_ + n_squares_;
  if (total >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::TooLarge, "grid has too many cells");
  }
  values_.resize(total);

  if (construction_ == Construction::V) {
    fill_values_v();
  } else {
    fill_values_t();
  }
  sort_cells();
}

void CubicalGrid::fill_values_v() {
  const std::uint32_t hbase = n_vertices_;
  const std::uint32_t vbase = hbase + n_hedges_;
  const std::uint32_t sbase = vbase + n_vedges_;
  for (std::uint32_t r = 0; r < vrows_; ++r) {
    for (std::uint32_t c = 0; c < vcols_; ++c) {
      const double here = pixel_internal(r, c);
      values_[r * vcols_ + c] = here;
      if (c + 1 < vcols_) {
        values_[hbase + r * (vcols_ - 1) + c] = std::max(here, pixel_internal(r, c + 1));
      }
      if (r + 1 < vrows_) {
        values_[vbase + r * vcols_ + c] = std::max(here, pixel_internal(r + 1, c));
      }
      if (r + 1 < vrows_ && c + 1 < vcols_) {
        values_[sbase + r * (vcols_ - 1) + c] =
            std::max({here, pixel_internal(r, c + 1), pixel_internal(r + 1, c),
                      pixel_internal(r + 1, c + 1)});
      }
    }
  }
}

void CubicalGrid::fill_values_t() {
  const std::uint32_t hbase = n_vertices_;
  const std::uint32_t vbase = hbase + n_hedges_;
  const std::uint32_t sbase = vbase + n_vedges_;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Square (r,c) of the vertex lattice is pixel (r,c); lower cells take the
  // minimum over their incident squares.
  auto square = [&](std::int64_t r, std::int64_t c) {
    if (r < 0 || c < 0 || r >= pixel_rows_ || c >= pixel_cols_) return kInf;
    return pixel_internal(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c));
  };
  for (std::uint32_t r = 0; r < vrows_; ++r) {
    for (std::uint32_t c = 0; c < vcols_; ++c) {
      const std::int64_t ri = r, ci = c;
      values_[r * vcols_ + c] =
          std::min({square(ri - 1, ci - 1), square(ri - 1, ci), square(ri, ci - 1), square(ri, ci)});
      if (c + 1 < vcols_) {
        values_[hbase + r * (vcols_ - 1) + c] = std::min(square(ri - 1, ci), square(ri, ci));
      }
      if (r + 1 < vrows_) {
        values_[vbase + r * vcols_ + c] = std::min(square(ri, ci - 1), square(ri, ci));
      }
      if (r + 1 < vrows_ && c + 1 < vcols_) {
        values_[sbase + r * (vcols_ - 1) + c] = pixel_internal(r, c);
      }
    }
  }
}

void CubicalGrid::sort_cells() {
  struct Entry {
    double value;
    std::uint64_t tie;
    CellKey key;
  };
  const std::uint32_t n = num_cells();
  std::vector<Entry> entries(n);
  for (CellKey k = 0; k < n; ++k) {
    const CellId cell = cell_of(k);
    const std::uint64_t tie = (std::uint64_t(cell.dim) << 60) | (std::uint64_t(cell.row) << 31) |
                              (std::uint64_t(cell.col) << 1) |
                              std::uint64_t(cell.orientation == Orientation::Vertical);
    entries[k] = {values_[k], tie, k};
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.tie < b.tie;
  });
  order_.resize(n);
  index_.resize(n);
  edges_.clear();
  edges_.reserve(num_edges());
  for (std::uint32_t i = 0; i < n; ++i) {
    const CellKey k = entries[i].key;
    order_[i] = k;
    index_[k] = i;
    if (dim_of(k) == 1) edges_.push_back(k);
  }
}

int CubicalGrid::dim_of(CellKey key) const noexcept {
  if (key < n_vertices_) return 0;
  if (key < n_vertices_ + n_hedges_ + n_vedges_) return 1;
  return 2;
}

CellId CubicalGrid::cell_of(CellKey key) const {
  if (key >= num_cells()) {
    throw Error(ErrorCode::IndexOutOfRange, "cell key " + std::to_string(key));
  }
  if (key < n_vertices_) return {0, key / vcols_, key % vcols_, Orientation::Horizontal};
  key -= n_vertices_;
  if (key < n_hedges_) return {1, key / (vcols_ - 1), key % (vcols_ - 1), Orientation::Horizontal};
  key -= n_hedges_;
  if (key < n_vedges_) return {1, key / vcols_, key % vcols_, Orientation::Vertical};
  key -= n_vedges_;
  return {2, key / (vcols_ - 1), key % (vcols_ - 1), Orientation::Horizontal};
}

bool CubicalGrid::valid_cell(const CellId& cell) const noexcept {
  switch (cell.dim) {
    case 0:
      return cell.row < vrows_ && cell.col < vcols_;
    case 1:
      if (cell.orientation == Orientation::Horizontal) {
        return cell.row < vrows_ && cell.col + 1 < vcols_;
      }
      return cell.row + 1 < vrows_ && cell.col < vcols_;
    case 2:
      return cell.row + 1 < vrows_ && cell.col + 1 < vcols_;
    default:
      return false;
  }
}

CellKey CubicalGrid::key_of(const CellId& cell) const {
  if (!valid_cell(cell)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "cell (dim " + std::to_string(cell.dim) + ", " + std::to_string(cell.row) + ", " +
                    std::to_string(cell.col) + ") outside grid");
  }
  switch (cell.dim) {
    case 0:
      return cell.row * vcols_ + cell.col;
    case 1:
      if (cell.orientation == Orientation::Horizontal) {
        return n_vertices_ + cell.row * (vcols_ - 1) + cell.col;
      }
      return n_vertices_ + n_hedges_ + cell.row * vcols_ + cell.col;
    default:
      return n_vertices_ + n_hedges_ + n_vedges_ + cell.row * (vcols_ - 1) + cell.col;
  }
}

std::array<CellKey, 2> CubicalGrid::edge_vertices(CellKey edge) const noexcept {
  if (edge < n_vertices_ + n_hedges_) {
    const std::uint32_t off = edge - n_vertices_;
    const std::uint32_t r = off / (vcols_ - 1), c = off % (vcols_ - 1);
    return {r * vcols_ + c, r * vcols_ + c + 1};
  }
  const std::uint32_t off = edge - n_vertices_ - n_hedges_;
  return {off, off + vcols_};
}

std::array<std::uint32_t, 2> CubicalGrid::edge_squares(CellKey edge) const noexcept {
  constexpr std::uint32_t out = DualVertexId::kOutside;
  const std::uint32_t scols = vcols_ - 1;
  if (edge < n_vertices_ + n_hedges_) {
    const std::uint32_t off = edge - n_vertices_;
    const std::uint32_t r = off / scols, c = off % scols;
    const std::uint32_t above = r > 0 ? (r - 1) * scols + c : out;
    const std::uint32_t below = r + 1 < vrows_ ? r * scols + c : out;
    return above == out ? std::array{below, above} : std::array{above, below};
  }
  const std::uint32_t off = edge - n_vertices_ - n_hedges_;
  const std::uint32_t r = off / vcols_, c = off % vcols_;
  const std::uint32_t left = c > 0 ? r * scols + c - 1 : out;
  const std::uint32_t right = c + 1 < vcols_ ? r * scols + c : out;
  return left == out ? std::array{right, left} : std::array{left, right};
}

std::pair<CellId, CellId> CubicalGrid::boundary(const CellId& edge) const {
  if (edge.dim != 1) {
    throw Error(ErrorCode::WrongDimension, "boundary expects an edge");
  }
  const auto [a, b] = edge_vertices(key_of(edge));
  return {cell_of(a), cell_of(b)};
}

std::pair<DualVertexId, DualVertexId> CubicalGrid::dual_boundary(const CellId& edge) const {
  if (edge.dim != 1) {
    throw Error(ErrorCode::WrongDimension, "dual boundary expects an edge");
  }
  const auto [a, b] = edge_squares(key_of(edge));
  return {DualVertexId{a}, DualVertexId{b}};
}

CellId CubicalGrid::index_to_coord(std::uint32_t refined_index) const {
  if (refined_index >= num_cells()) {
    throw Error(ErrorCode::IndexOutOfRange, "refined index " + std::to_string(refined_index));
  }
  return cell_of(order_[refined_index]);
}

std::uint32_t CubicalGrid::coord_to_index(const CellId& cell) const { return index_[key_of(cell)]; }

double CubicalGrid::coord_to_value(const CellId& cell) const { return value(key_of(cell)); }

std::optional<PixelCoord> CubicalGrid::unpad(std::uint32_t r, std::uint32_t c) const noexcept {
  if (!relative_) return PixelCoord{r, c};
  if (r == 0 || c == 0 || r > image_rows_ || c > image_cols_) return std::nullopt;
  return PixelCoord{r - 1, c - 1};
}

std::optional<PixelCoord> CubicalGrid::critical_pixel(CellKey key) const {
  const CellId cell = cell_of(key);
  const double target = values_[key];
  // Candidate pixels in lexicographic order.
  std::array<std::pair<std::int64_t, std::int64_t>, 4> candidates;
  std::size_t count = 0;
  const std::int64_t r = cell.row, c = cell.col;
  if (construction_ == Construction::V) {
    candidates[count++] = {r, c};
    if (cell.dim == 1) {
      candidates[count++] = cell.orientation == Orientation::Horizontal ? std::pair{r, c + 1}
                                                                        : std::pair{r + 1, c};
    } else if (cell.dim == 2) {
      candidates[count++] = {r, c + 1};
      candidates[count++] = {r + 1, c};
      candidates[count++] = {r + 1, c + 1};
    }
  } else {
    if (cell.dim == 0) {
      candidates = {{{r - 1, c - 1}, {r - 1, c}, {r, c - 1}, {r, c}}};
      count = 4;
    } else if (cell.dim == 1) {
      if (cell.orientation == Orientation::Horizontal) {
        candidates[count++] = {r - 1, c};
      } else {
        candidates[count++] = {r, c - 1};
      }
      candidates[count++] = {r, c};
    } else {
      candidates[count++] = {r, c};
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto [pr, pc] = candidates[i];
    if (pr < 0 || pc < 0 || pr >= pixel_rows_ || pc >= pixel_cols_) continue;
    const auto ur = static_cast<std::uint32_t>(pr), uc = static_cast<std::uint32_t>(pc);
    if (pixel_internal(ur, uc) == target) return unpad(ur, uc);
  }
  return std::nullopt;  // unreachable for a consistent grid
}

bool CubicalGrid::same_complex(const CubicalGrid& other) const noexcept {
  return construction_ == other.construction_ && relative_ == other.relative_ &&
         vrows_ == other.vrows_ && vcols_ == other.vcols_;
}

}  // namespace betti

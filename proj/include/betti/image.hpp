#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace betti {

/// Dense row-major 2D array of finite doubles. Construction validates shape
/// and finiteness, so every GrayImage in circulation is usable as-is.
class GrayImage {
 public:
  GrayImage(std::size_t rows, std::size_t cols, std::vector<double> values);

  static GrayImage filled(std::size_t rows, std::size_t cols, double value);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

  std::span<const double> values() const noexcept { return values_; }

  double min_value() const;
  double max_value() const;

  bool same_shape(const GrayImage& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

GrayImage entrywise_min(const GrayImage& a, const GrayImage& b);
GrayImage entrywise_max(const GrayImage& a, const GrayImage& b);

bool is_binary(const GrayImage& img) noexcept;

// Throws NotBinary unless every value is exactly 0 or 1.
void require_binary(const GrayImage& img, const char* what);
void require_same_shape(const GrayImage& a, const GrayImage& b);

}  // namespace betti

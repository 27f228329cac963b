#include "betti/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "betti/errors.hpp"

namespace betti {

GrayImage::GrayImage(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorCode::EmptyImage, "image has zero rows or columns");
  }
  if (values_.size() != rows_ * cols_) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(rows_ * cols_) +
                                              " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::NonFiniteValue,
                  "pixel (" + std::to_string(i / cols_) + ", " + std::to_string(i % cols_) +
                      ") is not finite");
    }
  }
}

GrayImage GrayImage::filled(std::size_t rows, std::size_t cols, double value) {
  return GrayImage(rows, cols, std::vector<double>(rows * cols, value));
}

double GrayImage::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double GrayImage::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

void require_same_shape(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::ShapeMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

namespace {

template <typename Op>
GrayImage combine(const GrayImage& a, const GrayImage& b, Op op) {
  require_same_shape(a, b);
  std::vector<double> out(a.size());
  auto av = a.values();
  auto bv = b.values();
  std::transform(av.begin(), av.end(), bv.begin(), out.begin(), op);
  return GrayImage(a.rows(), a.cols(), std::move(out));
}

}  // namespace

GrayImage entrywise_min(const GrayImage& a, const GrayImage& b) {
  return combine(a, b, [](double x, double y) { return std::min(x, y); });
}

GrayImage entrywise_max(const GrayImage& a, const GrayImage& b) {
  return combine(a, b, [](double x, double y) { return std::max(x, y); });
}

bool is_binary(const GrayImage& img) noexcept {
  auto v = img.values();
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

void require_binary(const GrayImage& img, const char* what) {
  if (!is_binary(img)) {
    throw Error(ErrorCode::NotBinary, std::string(what) + " must contain only 0 and 1");
  }
}

}  // namespace betti

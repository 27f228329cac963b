#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "betti/image.hpp"

namespace betti::io {

enum class ImageFormat { Auto, Pgm, Csv, Npy };

ImageFormat parse_format(std::string_view name);
ImageFormat format_from_extension(const std::filesystem::path& path);

/// PGM (P2/P5, maxval <= 65535) is normalized to [0,1] by maxval; CSV holds
/// one image row per line; NPY v1.0 accepts 2D <f8, <f4 and |u1 arrays.
GrayImage load_image(const std::filesystem::path& path, ImageFormat format = ImageFormat::Auto);

GrayImage parse_pgm(std::string_view bytes);
GrayImage parse_csv(std::string_view text);
GrayImage parse_npy(std::string_view bytes);

std::string to_npy(std::size_t rows, std::size_t cols, std::span<const double> values);
std::string to_csv(const GrayImage& img);

void save_npy(const std::filesystem::path& path, std::size_t rows, std::size_t cols,
              std::span<const double> values);
void save_npy(const std::filesystem::path& path, const GrayImage& img);
void save_csv(const std::filesystem::path& path, const GrayImage& img);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace betti::io

#include "betti/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "betti/errors.hpp"

namespace betti::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedFile, what); }

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_double(std::string_view token, const char* context) {
  std::string t(token);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    malformed(std::string(context) + ": cannot parse '" + t + "' as a number");
  }
  return v;
}

// Reads the next whitespace-separated PGM header token, skipping comments.
std::string_view next_pgm_token(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (is_space(bytes[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !is_space(bytes[pos]) && bytes[pos] != '#') ++pos;
  if (start == pos) malformed("PGM: truncated header");
  return bytes.substr(start, pos - start);
}

std::size_t parse_size(std::string_view token, const char* context) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    malformed(std::string(context) + ": bad integer '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

ImageFormat parse_format(std::string_view name) {
  const std::string n = lower(std::string(name));
  if (n == "auto") return ImageFormat::Auto;
  if (n == "pgm") return ImageFormat::Pgm;
  if (n == "csv") return ImageFormat::Csv;
  if (n == "npy") return ImageFormat::Npy;
  throw Error(ErrorCode::UnsupportedFormat, "unknown image format '" + std::string(name) + "'");
}

ImageFormat format_from_extension(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".pgm") return ImageFormat::Pgm;
  if (ext == ".csv" || ext == ".txt") return ImageFormat::Csv;
  if (ext == ".npy") return ImageFormat::Npy;
  throw Error(ErrorCode::UnsupportedFormat, "cannot infer image format of " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedFile, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::MalformedFile, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::MalformedFile, "failed writing " + path.string());
}

GrayImage load_image(const std::filesystem::path& path, ImageFormat format) {
  if (format == ImageFormat::Auto) format = format_from_extension(path);
  const std::string bytes = read_file(path);
  switch (format) {
    case ImageFormat::Pgm: return parse_pgm(bytes);
    case ImageFormat::Csv: return parse_csv(bytes);
    case ImageFormat::Npy: return parse_npy(bytes);
    case ImageFormat::Auto: break;
  }
  throw Error(ErrorCode::UnsupportedFormat, path.string());
}

GrayImage parse_pgm(std::string_view bytes) {
  std::size_t pos = 0;
  const std::string_view magic = next_pgm_token(bytes, pos);
  if (magic != "P2" && magic != "P5") {
    throw Error(ErrorCode::UnsupportedFormat, "PGM magic '" + std::string(magic) + "'");
  }
  const std::size_t cols = parse_size(next_pgm_token(bytes, pos), "PGM width");
  const std::size_t rows = parse_size(next_pgm_token(bytes, pos), "PGM height");
  const std::size_t maxval = parse_size(next_pgm_token(bytes, pos), "PGM maxval");
  if (maxval == 0 || maxval > 65535) malformed("PGM: maxval out of range");
  const std::size_t count = rows * cols;
  std::vector<double> values;
  values.reserve(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t v = parse_size(next_pgm_token(bytes, pos), "PGM pixel");
      if (v > maxval) malformed("PGM: pixel exceeds maxval");
      values.push_back(static_cast<double>(v) / static_cast<double>(maxval));
    }
  } else {
    ++pos;  // single whitespace byte after maxval
    const std::size_t width = maxval > 255 ? 2 : 1;
    if (bytes.size() < pos + count * width) malformed("PGM: truncated raster");
    for (std::size_t i = 0; i < count; ++i) {
      const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + pos + i * width);
      const std::size_t v = width == 2 ? (std::size_t{p[0]} << 8) | p[1] : p[0];
      if (v > maxval) malformed("PGM: pixel exceeds maxval");
      values.push_back(static_cast<double>(v) / static_cast<double>(maxval));
    }
  }
  return GrayImage(rows, cols, std::move(values));
}

GrayImage parse_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t rows = 0, cols = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
    while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t count = 0;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) comma = line.size();
      std::string_view token = line.substr(start, comma - start);
      while (!token.empty() && is_space(token.back())) token.remove_suffix(1);
      while (!token.empty() && is_space(token.front())) token.remove_prefix(1);
      values.push_back(parse_double(token, "CSV"));
      ++count;
      start = comma + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      malformed("CSV: row " + std::to_string(rows + 1) + " has " + std::to_string(count) +
                " values, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::EmptyImage, "CSV contains no rows");
  return GrayImage(rows, cols, std::move(values));
}

namespace {

// Value of `key` in a numpy header dict, e.g. 'descr': '<f8'.
std::string_view header_field(std::string_view header, std::string_view key) {
  const std::string quoted = "'" + std::string(key) + "'";
  std::size_t p = header.find(quoted);
  if (p == std::string_view::npos) malformed("NPY: header lacks " + quoted);
  p = header.find(':', p);
  if (p == std::string_view::npos) malformed("NPY: bad header");
  ++p;
  while (p < header.size() && is_space(header[p])) ++p;
  std::size_t end = p;
  if (p < header.size() && header[p] == '(') {
    end = header.find(')', p);
    if (end == std::string_view::npos) malformed("NPY: bad shape");
    return header.substr(p, end - p + 1);
  }
  if (p < header.size() && header[p] == '\'') {
    end = header.find('\'', p + 1);
    if (end == std::string_view::npos) malformed("NPY: bad descr");
    return header.substr(p + 1, end - p - 1);
  }
  while (end < header.size() && header[end] != ',' && header[end] != '}') ++end;
  return header.substr(p, end - p);
}

template <typename T>
T read_le(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    auto* b = reinterpret_cast<unsigned char*>(&v);
    std::reverse(b, b + sizeof(T));
  }
  return v;
}

}  // namespace

GrayImage parse_npy(std::string_view bytes) {
  if (bytes.size() < 10 || bytes.substr(0, 6) != "\x93NUMPY") malformed("NPY: bad magic");
  const auto major = static_cast<unsigned char>(bytes[6]);
  std::size_t header_len = 0, offset = 0;
  if (major == 1) {
    header_len = read_le<std::uint16_t>(bytes.data() + 8);
    offset = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) malformed("NPY: truncated");
    header_len = read_le<std::uint32_t>(bytes.data() + 8);
    offset = 12;
  } else {
    throw Error(ErrorCode::UnsupportedFormat, "NPY version " + std::to_string(major));
  }
  if (bytes.size() < offset + header_len) malformed("NPY: truncated header");
  const std::string_view header = bytes.substr(offset, header_len);
  const std::string_view descr = header_field(header, "descr");
  const std::string_view fortran = header_field(header, "fortran_order");
  std::string_view shape = header_field(header, "shape");

  std::vector<std::size_t> dims;
  shape.remove_prefix(1);
  shape.remove_suffix(1);
  std::size_t p = 0;
  while (p < shape.size()) {
    std::size_t q = shape.find(',', p);
    if (q == std::string_view::npos) q = shape.size();
    std::string_view tok = shape.substr(p, q - p);
    while (!tok.empty() && is_space(tok.front())) tok.remove_prefix(1);
    while (!tok.empty() && is_space(tok.back())) tok.remove_suffix(1);
    if (!tok.empty()) dims.push_back(parse_size(tok, "NPY shape"));
    p = q + 1;
  }
  if (dims.size() != 2) {
    throw Error(ErrorCode::NotTwoDimensional,
                "NPY array has " + std::to_string(dims.size()) + " dimensions");
  }
  const std::size_t rows = dims[0], cols = dims[1], count = rows * cols;

  std::size_t width = 0;
  if (descr == "<f8") {
    width = 8;
  } else if (descr == "<f4") {
    width = 4;
  } else if (descr == "|u1" || descr == "<u1") {
    width = 1;
  } else {
    throw Error(ErrorCode::UnsupportedFormat, "NPY dtype '" + std::string(descr) + "'");
  }
  const std::size_t data = offset + header_len;
  if (bytes.size() < data + count * width) malformed("NPY: truncated data");
  std::vector<double> raw(count);
  for (std::size_t i = 0; i < count; ++i) {
    const char* e = bytes.data() + data + i * width;
    raw[i] = width == 8 ? read_le<double>(e)
             : width == 4 ? static_cast<double>(read_le<float>(e))
                          : static_cast<double>(static_cast<unsigned char>(*e));
  }
  if (fortran.substr(0, 4) == "True") {
    std::vector<double> row_major(count);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) row_major[r * cols + c] = raw[c * rows + r];
    }
    raw.swap(row_major);
  }
  return GrayImage(rows, cols, std::move(raw));
}

std::string to_npy(std::size_t rows, std::size_t cols, std::span<const double> values) {
  std::string header = "{'descr': '<f8', 'fortran_order': False, 'shape': (" +
                       std::to_string(rows) + ", " + std::to_string(cols) + "), }";
  // Pad so magic + length + header + newline is a multiple of 64.
  const std::size_t unpadded = 10 + header.size() + 1;
  header.append((64 - unpadded % 64) % 64, ' ');
  header.push_back('\n');
  std::string out = "\x93NUMPY";
  out.push_back('\x01');
  out.push_back('\x00');
  const auto len = static_cast<std::uint16_t>(header.size());
  out.push_back(static_cast<char>(len & 0xff));
  out.push_back(static_cast<char>(len >> 8));
  out += header;
  for (double v : values) {
    char b[8];
    std::memcpy(b, &v, 8);
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + 8);
    out.append(b, 8);
  }
  return out;
}

std::string to_csv(const GrayImage& img) {
  std::string out;
  char buf[32];
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      if (c) out.push_back(',');
      const auto res = std::to_chars(buf, buf + sizeof buf, img(r, c));
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

void save_npy(const std::filesystem::path& path, std::size_t rows, std::size_t cols,
              std::span<const double> values) {
  write_file(path, to_npy(rows, cols, values));
}

void save_npy(const std::filesystem::path& path, const GrayImage& img) {
  save_npy(path, img.rows(), img.cols(), img.values());
}

void save_csv(const std::filesystem::path& path, const GrayImage& img) {
  write_file(path, to_csv(img));
}

}  // namespace betti::io

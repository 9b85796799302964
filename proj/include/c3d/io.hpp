#pragma once

#include <png.h>

#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "c3d/image.hpp"

namespace c3d {

// Integer raster as stored in a file: interleaved samples, 8 or 16 bits.
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 0;
  int bit_depth = 0;
  std::vector<std::uint16_t> samples;

  std::uint16_t max_code() const { return bit_depth == 16 ? 65535 : 255; }
};

// Float raster as stored in PFM: interleaved, top row first in memory.
struct FloatRaster {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> samples;
};

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error("cannot open " + path.string());
  return f;
}

struct PngMessage {
  char text[256] = {};
};

inline void png_error_fn(png_structp png, png_const_charp msg) {
  auto* m = static_cast<PngMessage*>(png_get_error_ptr(png));
  if (m) std::snprintf(m->text, sizeof m->text, "%s", msg);
  png_longjmp(png, 1);
}
inline void png_warning_fn(png_structp, png_const_charp) {}

// No C++ objects with non-trivial destructors are created between setjmp and
// any libpng call in these two functions.
inline bool png_read_impl(std::FILE* fp, Raster* out, std::vector<std::uint8_t>* buffer,
                          std::vector<png_bytep>* rows, PngMessage* msg) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, msg, png_error_fn, png_warning_fn);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (depth == 16) png_set_swap(png);  // host little-endian samples
  png_read_update_info(png, info);
  out->width = static_cast<int>(png_get_image_width(png, info));
  out->height = static_cast<int>(png_get_image_height(png, info));
  out->channels = png_get_channels(png, info);
  out->bit_depth = png_get_bit_depth(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  buffer->resize(rowbytes * out->height);
  rows->resize(out->height);
  for (int y = 0; y < out->height; ++y) (*rows)[y] = buffer->data() + rowbytes * y;
  png_read_image(png, rows->data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

inline bool png_write_impl(std::FILE* fp, const Raster& r, const std::vector<png_bytep>& rows,
                           PngMessage* msg) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, msg, png_error_fn, png_warning_fn);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, fp);
  const int color = r.channels == 1   ? PNG_COLOR_TYPE_GRAY
                    : r.channels == 3 ? PNG_COLOR_TYPE_RGB
                                      : PNG_COLOR_TYPE_RGB_ALPHA;
  png_set_IHDR(png, info, r.width, r.height, r.bit_depth, color, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (r.bit_depth == 16) png_set_swap(png);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

inline std::string lower_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

}  // namespace detail

inline Raster read_png(const std::filesystem::path& path) {
  auto fp = detail::open_file(path, "rb");
  std::uint8_t sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw Error(path.string() + " is not a PNG file");
  std::rewind(fp.get());
  Raster r;
  std::vector<std::uint8_t> buffer;
  std::vector<png_bytep> rows;
  detail::PngMessage msg;
  if (!detail::png_read_impl(fp.get(), &r, &buffer, &rows, &msg))
    throw Error("failed to decode " + path.string() + ": " + msg.text);
  const std::size_t n = static_cast<std::size_t>(r.width) * r.height * r.channels;
  r.samples.resize(n);
  if (r.bit_depth == 16) {
    std::memcpy(r.samples.data(), buffer.data(), n * 2);
  } else {
    for (std::size_t i = 0; i < n; ++i) r.samples[i] = buffer[i];
  }
  return r;
}

inline void write_png(const std::filesystem::path& path, const Raster& r) {
  if (r.bit_depth != 8 && r.bit_depth != 16) throw Error("PNG writer supports 8 or 16 bits only");
  if (r.channels != 1 && r.channels != 3 && r.channels != 4) throw Error("PNG writer: bad channel count");
  const std::size_t per_row = static_cast<std::size_t>(r.width) * r.channels;
  std::vector<std::uint8_t> buffer(per_row * r.height * (r.bit_depth / 8));
  if (r.bit_depth == 16) {
    std::memcpy(buffer.data(), r.samples.data(), buffer.size());
  } else {
    for (std::size_t i = 0; i < buffer.size(); ++i) buffer[i] = static_cast<std::uint8_t>(r.samples[i]);
  }
  std::vector<png_bytep> rows(r.height);
  for (int y = 0; y < r.height; ++y) rows[y] = buffer.data() + per_row * (r.bit_depth / 8) * y;
  auto fp = detail::open_file(path, "wb");
  detail::PngMessage msg;
  if (!detail::png_write_impl(fp.get(), r, rows, &msg))
    throw Error("failed to encode " + path.string() + ": " + msg.text);
}

// Binary PPM (P6) or PGM (P5), maxval up to 65535.
inline Raster read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string magic;
  in >> magic;
  if (magic != "P6" && magic != "P5") throw Error(path.string() + ": unsupported PNM variant " + magic);
  auto next_int = [&]() {
    in >> std::ws;
    while (in.peek() == '#') {
      std::string skip;
      std::getline(in, skip);
      in >> std::ws;
    }
    int v = 0;
    in >> v;
    return v;
  };
  Raster r;
  r.width = next_int();
  r.height = next_int();
  const int maxval = next_int();
  in.get();
  if (r.width < 1 || r.height < 1 || maxval < 1 || maxval > 65535) throw Error(path.string() + ": bad PNM header");
  if (maxval != 255 && maxval != 65535) throw Error(path.string() + ": unsupported bit depth (maxval " + std::to_string(maxval) + ")");
  r.channels = magic == "P6" ? 3 : 1;
  r.bit_depth = maxval == 255 ? 8 : 16;
  const std::size_t n = static_cast<std::size_t>(r.width) * r.height * r.channels;
  r.samples.resize(n);
  if (r.bit_depth == 8) {
    std::vector<std::uint8_t> bytes(n);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(n));
    for (std::size_t i = 0; i < n; ++i) r.samples[i] = bytes[i];
  } else {
    std::vector<std::uint8_t> bytes(2 * n);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(2 * n));
    for (std::size_t i = 0; i < n; ++i) r.samples[i] = static_cast<std::uint16_t>(bytes[2 * i] << 8 | bytes[2 * i + 1]);
  }
  if (!in) throw Error(path.string() + ": truncated PNM data");
  return r;
}

inline Raster read_raster(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error("file not found: " + path.string());
  const std::string ext = detail::lower_extension(path);
  if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") return read_pnm(path);
  return read_png(path);
}

inline RgbImage load_rgb(const std::filesystem::path& path) {
  const Raster r = read_raster(path);
  if (r.bit_depth != 8 && r.bit_depth != 16)
    throw Error(path.string() + ": unsupported bit depth " + std::to_string(r.bit_depth));
  if (r.channels != 3)
    throw Error(path.string() + ": expected 3 channels, found " + std::to_string(r.channels));
  RgbImage img(r.width, r.height);
  const double code = r.max_code();
  auto out = img.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<float>(r.samples[i] / code);
  return img;
}

inline Raster quantize(const RgbImage& img, int bit_depth = 8) {
  Raster r{img.width(), img.height(), 3, bit_depth, {}};
  const float code = static_cast<float>(r.max_code());
  auto in = img.values();
  r.samples.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    r.samples[i] = static_cast<std::uint16_t>(std::lround(std::clamp(in[i], 0.0f, 1.0f) * code));
  return r;
}

inline void save_rgb(const RgbImage& img, const std::filesystem::path& path, int bit_depth = 8) {
  write_png(path, quantize(img, bit_depth));
}

inline FloatRaster read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string magic;
  FloatRaster r;
  double scale = 0.0;
  in >> magic >> r.width >> r.height >> scale;
  in.get();
  if (magic != "Pf" && magic != "PF") throw Error(path.string() + ": not a PFM file");
  if (!in || r.width < 1 || r.height < 1 || scale == 0.0) throw Error(path.string() + ": bad PFM header");
  r.channels = magic == "PF" ? 3 : 1;
  const std::size_t row = static_cast<std::size_t>(r.width) * r.channels;
  std::vector<std::uint32_t> words(row * r.height);
  in.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(words.size() * 4));
  if (!in) throw Error(path.string() + ": truncated PFM data");
  const bool file_little = scale < 0.0;
  const bool host_little = std::endian::native == std::endian::little;
  r.samples.resize(words.size());
  for (int y = 0; y < r.height; ++y) {
    // PFM stores the bottom row first.
    const std::size_t src = row * (r.height - 1 - y);
    for (std::size_t i = 0; i < row; ++i) {
      std::uint32_t w = words[src + i];
      if (file_little != host_little) w = __builtin_bswap32(w);
      r.samples[row * y + i] = std::bit_cast<float>(w);
    }
  }
  return r;
}

inline void write_pfm(const std::filesystem::path& path, const FloatRaster& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << (r.channels == 3 ? "PF" : "Pf") << "\n" << r.width << " " << r.height << "\n"
      << (std::endian::native == std::endian::little ? "-1.0" : "1.0") << "\n";
  const std::size_t row = static_cast<std::size_t>(r.width) * r.channels;
  for (int y = r.height - 1; y >= 0; --y)
    out.write(reinterpret_cast<const char*>(r.samples.data() + row * y), static_cast<std::streamsize>(row * 4));
  if (!out) throw Error("failed writing " + path.string());
}

// Any supported single-channel raster as raw float values (PNG codes are not rescaled).
inline ScalarField load_scalar_field(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error("file not found: " + path.string());
  ScalarField f;
  if (detail::lower_extension(path) == ".pfm") {
    const FloatRaster r = read_pfm(path);
    if (r.channels != 1) throw Error(path.string() + ": expected a single-channel PFM");
    f = ScalarField(r.width, r.height);
    std::copy(r.samples.begin(), r.samples.end(), f.values().begin());
  } else {
    const Raster r = read_raster(path);
    if (r.channels != 1) throw Error(path.string() + ": expected a single-channel raster");
    f = ScalarField(r.width, r.height);
    for (std::size_t i = 0; i < r.samples.size(); ++i) f[i] = r.samples[i];
  }
  return f;
}

// Any supported raster as floats: integer codes scaled to [0,1], PFM values as stored.
inline FloatRaster load_field(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error("file not found: " + path.string());
  if (detail::lower_extension(path) == ".pfm") return read_pfm(path);
  const Raster r = read_raster(path);
  FloatRaster f{r.width, r.height, r.channels, std::vector<float>(r.samples.size())};
  const double code = r.max_code();
  for (std::size_t i = 0; i < r.samples.size(); ++i) f.samples[i] = static_cast<float>(r.samples[i] / code);
  return f;
}

}  // namespace c3d

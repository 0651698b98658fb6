#include "pansharp/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "pansharp/error.hpp"

namespace pansharp::io {

namespace fs = std::filesystem;

namespace {

constexpr std::array<char, 4> kRawMagic = {'P', 'S', 'R', 'W'};

std::string describe(const fs::path& path) { return "'" + path.string() + "'"; }

template <typename T>
T to_little_endian(T value) {
  if constexpr (std::endian::native == std::endian::little) {
    return value;
  } else {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
}

template <typename T>
void write_le(std::ostream& out, T value) {
  const T le = to_little_endian(value);
  out.write(reinterpret_cast<const char*>(&le), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return to_little_endian(value);
}

// ---------------------------------------------------------------- raw-f64

MultiBandImage read_raw(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + describe(path));
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kRawMagic) throw IoError(describe(path) + " is not a raw-f64 raster");
  const auto width = read_le<std::uint32_t>(in);
  const auto height = read_le<std::uint32_t>(in);
  const auto bands = read_le<std::uint32_t>(in);
  if (!in) throw IoError(describe(path) + ": truncated raw-f64 header");
  if (width == 0 || height == 0 || bands == 0) {
    throw IoError(describe(path) + ": zero-sized raw-f64 image");
  }
  const std::size_t n = std::size_t{width} * height;
  std::vector<Raster> out;
  out.reserve(bands);
  for (std::uint32_t b = 0; b < bands; ++b) {
    std::vector<double> samples(n);
    in.read(reinterpret_cast<char*>(samples.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw IoError(describe(path) + ": truncated raw-f64 payload");
    if constexpr (std::endian::native != std::endian::little) {
      for (double& v : samples) v = to_little_endian(v);
    }
    out.emplace_back(width, height, std::move(samples));
  }
  return MultiBandImage(std::move(out));
}

void write_raw(const MultiBandImage& img, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + describe(path) + " for writing");
  out.write(kRawMagic.data(), kRawMagic.size());
  write_le(out, static_cast<std::uint32_t>(img.width()));
  write_le(out, static_cast<std::uint32_t>(img.height()));
  write_le(out, static_cast<std::uint32_t>(img.band_count()));
  for (const auto& band : img.bands()) {
    for (double v : band.samples()) write_le(out, v);
  }
  if (!out) throw IoError("write failed for " + describe(path));
}

// ---------------------------------------------------------------- PNG

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + describe(path));
  return f;
}

// libpng reports errors with longjmp; everything touched after setjmp lives
// in the caller's frame so nothing needs unwinding.
detail::DecodedRaster read_png(const fs::path& path) {
  FilePtr file = open_file(path, "rb");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng initialisation failed");
  }

  detail::DecodedRaster decoded;
  std::vector<png_byte> bytes;
  std::vector<png_bytep> rows;
  const char* failure = nullptr;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(describe(path) + " is not a readable PNG");
  }

  png_init_io(png, file.get());
  png_read_info(png, info);
  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);

  if (color & PNG_COLOR_MASK_PALETTE) {
    failure = "palette PNGs are not supported";
  } else if (depth != 8 && depth != 16) {
    failure = "unsupported PNG bit depth (need 8 or 16)";
  } else if (width == 0 || height == 0) {
    failure = "zero-sized PNG";
  }
  if (failure) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(describe(path) + ": " + failure);
  }

  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  const std::size_t channels = png_get_channels(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  bytes.resize(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = bytes.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  decoded.width = width;
  decoded.height = height;
  decoded.channels = channels;
  decoded.bit_depth = static_cast<unsigned>(depth);
  const std::size_t count = decoded.width * decoded.height * channels;
  decoded.interleaved.resize(count);
  if (depth == 8) {
    for (std::size_t k = 0; k < count; ++k) decoded.interleaved[k] = bytes[k];
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      decoded.interleaved[k] = static_cast<double>((bytes[2 * k] << 8) | bytes[2 * k + 1]);
    }
  }
  return decoded;
}

void write_png(const MultiBandImage& img, const fs::path& path, unsigned depth,
               ClampMode clamp) {
  if (img.band_count() != 1 && img.band_count() != 3) {
    throw InvalidArgument("PNG output needs 1 or 3 bands, image has " +
                          std::to_string(img.band_count()));
  }
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const std::size_t nb = img.band_count();
  const std::size_t bytes_per_sample = depth / 8;

  // Quantize before touching libpng so range errors surface as exceptions.
  std::vector<png_byte> bytes(w * h * nb * bytes_per_sample);
  for (std::size_t b = 0; b < nb; ++b) {
    const auto s = img[b].samples();
    for (std::size_t k = 0; k < w * h; ++k) {
      const std::uint32_t q = quantize_sample(s[k], depth, clamp);
      const std::size_t at = (k * nb + b) * bytes_per_sample;
      if (depth == 8) {
        bytes[at] = static_cast<png_byte>(q);
      } else {
        bytes[at] = static_cast<png_byte>(q >> 8);
        bytes[at + 1] = static_cast<png_byte>(q & 0xff);
      }
    }
  }

  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot open " + describe(path) + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng initialisation failed");
  }
  std::vector<png_bytep> rows(h);
  const std::size_t rowbytes = w * nb * bytes_per_sample;
  for (std::size_t y = 0; y < h; ++y) rows[y] = bytes.data() + y * rowbytes;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encoding failed for " + describe(path));
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h),
               static_cast<int>(depth), nb == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

enum class Container { Png, Tiff, Raw };

Container sniff(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + describe(path));
  std::array<unsigned char, 8> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got >= 8 && png_sig_cmp(head.data(), 0, 8) == 0) return Container::Png;
  if (got >= 4 && ((head[0] == 'I' && head[1] == 'I' && head[2] == 42 && head[3] == 0) ||
                   (head[0] == 'M' && head[1] == 'M' && head[2] == 0 && head[3] == 42))) {
    return Container::Tiff;
  }
  if (got >= 4 && std::memcmp(head.data(), kRawMagic.data(), 4) == 0) return Container::Raw;
  throw IoError(describe(path) + ": unrecognised image container");
}

}  // namespace

ImageFormat parse_format(std::string_view name) {
  if (name == "png8" || name == "png") return ImageFormat::Png8;
  if (name == "png16") return ImageFormat::Png16;
  if (name == "tiff8") return ImageFormat::Tiff8;
  if (name == "tiff16" || name == "tiff") return ImageFormat::Tiff16;
  if (name == "raw-f64" || name == "raw") return ImageFormat::RawF64;
  throw InvalidArgument("unknown image format '" + std::string(name) + "'");
}

std::string_view format_name(ImageFormat format) {
  switch (format) {
    case ImageFormat::Png8: return "png8";
    case ImageFormat::Png16: return "png16";
    case ImageFormat::Tiff8: return "tiff8";
    case ImageFormat::Tiff16: return "tiff16";
    case ImageFormat::RawF64: return "raw-f64";
  }
  return "unknown";
}

ImageFormat format_for_path(const fs::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".png") return ImageFormat::Png8;
  if (ext == ".tif" || ext == ".tiff") return ImageFormat::Tiff16;
  return ImageFormat::RawF64;
}

std::uint32_t quantize_sample(double value, unsigned bit_depth, ClampMode clamp) {
  const double max_code = std::ldexp(1.0, static_cast<int>(bit_depth)) - 1.0;
  double rounded = std::floor(value + 0.5);
  if (clamp == ClampMode::ClampToDepth) {
    rounded = std::clamp(rounded, 0.0, max_code);
  } else if (rounded < 0.0 || rounded > max_code) {
    throw InvalidArgument("sample " + std::to_string(value) + " is outside the " +
                          std::to_string(bit_depth) + "-bit range and clamping is off");
  }
  return static_cast<std::uint32_t>(rounded);
}

namespace detail {

MultiBandImage deinterleave(const DecodedRaster& decoded) {
  const std::size_t n = decoded.width * decoded.height;
  std::vector<Raster> bands;
  bands.reserve(decoded.channels);
  for (std::size_t c = 0; c < decoded.channels; ++c) {
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = decoded.interleaved[k * decoded.channels + c];
    bands.emplace_back(decoded.width, decoded.height, std::move(s));
  }
  return MultiBandImage(std::move(bands));
}

}  // namespace detail

MultiBandImage load_image(const fs::path& path, ImageFormat format) {
  if (!fs::exists(path)) throw IoError(describe(path) + " does not exist");
  const Container actual = sniff(path);
  const auto expect_depth = [&](const detail::DecodedRaster& d, unsigned depth) {
    if (d.bit_depth != depth) {
      throw IoError(describe(path) + " is " + std::to_string(d.bit_depth) +
                    "-bit, declared format " + std::string(format_name(format)));
    }
    return detail::deinterleave(d);
  };
  switch (format) {
    case ImageFormat::Png8:
    case ImageFormat::Png16:
      if (actual != Container::Png) throw IoError(describe(path) + " is not a PNG file");
      return expect_depth(read_png(path), format == ImageFormat::Png8 ? 8 : 16);
    case ImageFormat::Tiff8:
    case ImageFormat::Tiff16:
      if (actual != Container::Tiff) throw IoError(describe(path) + " is not a TIFF file");
      return expect_depth(detail::read_tiff(path), format == ImageFormat::Tiff8 ? 8 : 16);
    case ImageFormat::RawF64:
      if (actual != Container::Raw) throw IoError(describe(path) + " is not a raw-f64 file");
      return read_raw(path);
  }
  throw InvalidArgument("unknown image format");
}

MultiBandImage load_image(const fs::path& path) {
  if (!fs::exists(path)) throw IoError(describe(path) + " does not exist");
  switch (sniff(path)) {
    case Container::Png: return detail::deinterleave(read_png(path));
    case Container::Tiff: return detail::deinterleave(detail::read_tiff(path));
    case Container::Raw: return read_raw(path);
  }
  throw IoError(describe(path) + ": unrecognised image container");
}

void save_image(const MultiBandImage& img, const fs::path& path, ImageFormat format,
                ClampMode clamp) {
  switch (format) {
    case ImageFormat::Png8: write_png(img, path, 8, clamp); return;
    case ImageFormat::Png16: write_png(img, path, 16, clamp); return;
    case ImageFormat::Tiff8: detail::write_tiff(img, path, 8, clamp); return;
    case ImageFormat::Tiff16: detail::write_tiff(img, path, 16, clamp); return;
    case ImageFormat::RawF64: write_raw(img, path); return;
  }
}

}  // namespace pansharp::io

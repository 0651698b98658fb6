#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "pansharp/raster.hpp"

namespace pansharp::io {

enum class ImageFormat { Png8, Png16, Tiff8, Tiff16, RawF64 };

enum class ClampMode { None, ClampToDepth };

/// Parses "png8", "png16", "tiff8", "tiff16", "tiff" (= tiff16) and "raw-f64".
ImageFormat parse_format(std::string_view name);
std::string_view format_name(ImageFormat format);

/// Guesses the format from the extension: .png -> png8, .tif/.tiff -> tiff16,
/// anything else -> raw-f64.
ImageFormat format_for_path(const std::filesystem::path& path);

/// Loads `path` as the declared container. Integer samples convert to reals
/// without rescaling. For PNG and TIFF the file's bit depth must match the
/// declared depth; use load_image(path) to accept whatever depth is stored.
MultiBandImage load_image(const std::filesystem::path& path, ImageFormat format);

/// Sniffs the container from magic bytes and loads at the stored depth.
MultiBandImage load_image(const std::filesystem::path& path);

/// Integer formats round half up after optional clamping to [0, 2^depth - 1].
/// PNG holds 1 or 3 bands; TIFF and raw-f64 hold any band count.
void save_image(const MultiBandImage& img, const std::filesystem::path& path,
                ImageFormat format, ClampMode clamp = ClampMode::None);

/// Quantizes one sample for an integer depth; exposed for tests.
std::uint32_t quantize_sample(double value, unsigned bit_depth, ClampMode clamp);

namespace detail {
struct DecodedRaster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 0;
  unsigned bit_depth = 0;
  std::vector<double> interleaved;  // pixel-major, channel-minor
};

MultiBandImage deinterleave(const DecodedRaster& decoded);

DecodedRaster read_tiff(const std::filesystem::path& path);
void write_tiff(const MultiBandImage& img, const std::filesystem::path& path,
                unsigned bit_depth, ClampMode clamp);
}  // namespace detail

}  // namespace pansharp::io

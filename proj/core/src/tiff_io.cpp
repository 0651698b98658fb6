// Baseline TIFF: uncompressed, chunky (interleaved), unsigned 8/16-bit samples.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "pansharp/error.hpp"
#include "pansharp/image_io.hpp"

namespace pansharp::io::detail {

namespace fs = std::filesystem;

namespace {

enum Tag : std::uint16_t {
  kImageWidth = 256,
  kImageLength = 257,
  kBitsPerSample = 258,
  kCompression = 259,
  kPhotometric = 262,
  kStripOffsets = 273,
  kSamplesPerPixel = 277,
  kRowsPerStrip = 278,
  kStripByteCounts = 279,
  kPlanarConfig = 284,
  kExtraSamples = 338,
  kSampleFormat = 339,
};

enum FieldType : std::uint16_t { kByte = 1, kShort = 3, kLong = 4 };

class Reader {
 public:
  Reader(std::vector<unsigned char> bytes, const fs::path& path)
      : bytes_(std::move(bytes)), path_(path.string()) {
    if (bytes_.size() < 8) fail("truncated header");
    if (bytes_[0] == 'I' && bytes_[1] == 'I') {
      big_endian_ = false;
    } else if (bytes_[0] == 'M' && bytes_[1] == 'M') {
      big_endian_ = true;
    } else {
      fail("bad byte-order mark");
    }
    if (u16(2) != 42) fail("bad TIFF magic");
  }

  std::uint16_t u16(std::size_t at) const {
    need(at, 2);
    return big_endian_ ? static_cast<std::uint16_t>((bytes_[at] << 8) | bytes_[at + 1])
                       : static_cast<std::uint16_t>(bytes_[at] | (bytes_[at + 1] << 8));
  }

  std::uint32_t u32(std::size_t at) const {
    need(at, 4);
    if (big_endian_) {
      return (std::uint32_t{bytes_[at]} << 24) | (std::uint32_t{bytes_[at + 1]} << 16) |
             (std::uint32_t{bytes_[at + 2]} << 8) | std::uint32_t{bytes_[at + 3]};
    }
    return std::uint32_t{bytes_[at]} | (std::uint32_t{bytes_[at + 1]} << 8) |
           (std::uint32_t{bytes_[at + 2]} << 16) | (std::uint32_t{bytes_[at + 3]} << 24);
  }

  // Values of one IFD entry, widened to u32.
  std::vector<std::uint32_t> values(std::size_t entry) const {
    const std::uint16_t type = u16(entry + 2);
    const std::uint32_t count = u32(entry + 4);
    std::size_t size = 0;
    switch (type) {
      case kByte: size = 1; break;
      case kShort: size = 2; break;
      case kLong: size = 4; break;
      default: fail("unsupported IFD field type " + std::to_string(type));
    }
    const std::size_t total = size * count;
    const std::size_t base = total <= 4 ? entry + 8 : u32(entry + 8);
    need(base, total);
    std::vector<std::uint32_t> out(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::size_t at = base + i * size;
      out[i] = size == 1 ? bytes_[at] : size == 2 ? u16(at) : u32(at);
    }
    return out;
  }

  const std::vector<unsigned char>& bytes() const { return bytes_; }
  bool big_endian() const { return big_endian_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw IoError("'" + path_ + "': " + what);
  }

  void need(std::size_t at, std::size_t len) const {
    if (at > bytes_.size() || len > bytes_.size() - at) fail("truncated TIFF data");
  }

 private:
  std::vector<unsigned char> bytes_;
  std::string path_;
  bool big_endian_ = false;
};

std::uint32_t single(const std::map<std::uint16_t, std::vector<std::uint32_t>>& tags,
                     std::uint16_t tag, std::uint32_t fallback, const Reader& r) {
  const auto it = tags.find(tag);
  if (it == tags.end()) return fallback;
  if (it->second.empty()) r.fail("empty TIFF tag " + std::to_string(tag));
  return it->second.front();
}

}  // namespace

DecodedRaster read_tiff(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  const Reader r(std::move(bytes), path);

  const std::uint32_t ifd = r.u32(4);
  const std::uint16_t entries = r.u16(ifd);
  std::map<std::uint16_t, std::vector<std::uint32_t>> tags;
  for (std::uint16_t i = 0; i < entries; ++i) {
    const std::size_t entry = ifd + 2 + std::size_t{i} * 12;
    tags[r.u16(entry)] = r.values(entry);
  }

  const std::uint32_t width = single(tags, kImageWidth, 0, r);
  const std::uint32_t height = single(tags, kImageLength, 0, r);
  if (width == 0 || height == 0) r.fail("zero-sized TIFF");
  const std::uint32_t spp = single(tags, kSamplesPerPixel, 1, r);
  if (single(tags, kCompression, 1, r) != 1) r.fail("compressed TIFFs are not supported");
  if (single(tags, kPhotometric, 1, r) == 3) r.fail("palette TIFFs are not supported");
  if (spp > 1 && single(tags, kPlanarConfig, 1, r) != 1) {
    r.fail("planar TIFFs are not supported");
  }
  if (single(tags, kSampleFormat, 1, r) != 1) r.fail("only unsigned integer TIFFs are supported");

  const auto bits_it = tags.find(kBitsPerSample);
  const std::uint32_t bits = bits_it == tags.end() ? 1 : single(tags, kBitsPerSample, 1, r);
  if (bits_it != tags.end() &&
      std::any_of(bits_it->second.begin(), bits_it->second.end(),
                  [&](std::uint32_t b) { return b != bits; })) {
    r.fail("mixed per-channel bit depths are not supported");
  }
  if (bits != 8 && bits != 16) {
    r.fail("unsupported TIFF bit depth " + std::to_string(bits) + " (need 8 or 16)");
  }

  const auto offsets = tags.find(kStripOffsets);
  const auto counts = tags.find(kStripByteCounts);
  if (offsets == tags.end()) r.fail("missing StripOffsets");

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t expected = std::size_t{width} * height * spp * bytes_per_sample;
  std::vector<unsigned char> payload;
  payload.reserve(expected);
  for (std::size_t s = 0; s < offsets->second.size() && payload.size() < expected; ++s) {
    std::size_t len = expected - payload.size();
    if (counts != tags.end() && s < counts->second.size()) {
      len = std::min<std::size_t>(len, counts->second[s]);
    }
    r.need(offsets->second[s], len);
    const auto first = r.bytes().begin() + offsets->second[s];
    payload.insert(payload.end(), first, first + static_cast<std::ptrdiff_t>(len));
  }
  if (payload.size() != expected) r.fail("strip data shorter than image");

  DecodedRaster out;
  out.width = width;
  out.height = height;
  out.channels = spp;
  out.bit_depth = bits;
  const std::size_t count = std::size_t{width} * height * spp;
  out.interleaved.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (bits == 8) {
      out.interleaved[k] = payload[k];
    } else {
      const unsigned lo = payload[2 * k + (r.big_endian() ? 1 : 0)];
      const unsigned hi = payload[2 * k + (r.big_endian() ? 0 : 1)];
      out.interleaved[k] = static_cast<double>((hi << 8) | lo);
    }
  }
  return out;
}

void write_tiff(const MultiBandImage& img, const fs::path& path, unsigned bit_depth,
                ClampMode clamp) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const std::size_t spp = img.band_count();
  const std::size_t bytes_per_sample = bit_depth / 8;
  const std::size_t data_bytes = w * h * spp * bytes_per_sample;
  if (data_bytes > 0xFFFF'0000u) throw InvalidArgument("image too large for baseline TIFF");

  std::vector<unsigned char> data(data_bytes);
  for (std::size_t b = 0; b < spp; ++b) {
    const auto s = img[b].samples();
    for (std::size_t k = 0; k < w * h; ++k) {
      const std::uint32_t q = quantize_sample(s[k], bit_depth, clamp);
      const std::size_t at = (k * spp + b) * bytes_per_sample;
      data[at] = static_cast<unsigned char>(q & 0xff);
      if (bit_depth == 16) data[at + 1] = static_cast<unsigned char>(q >> 8);
    }
  }

  const std::uint16_t photometric = spp == 3 || spp == 4 ? 2 : 1;
  const std::size_t colour_channels = photometric == 2 ? 3 : 1;
  const std::size_t extra = spp - colour_channels;

  struct Entry {
    std::uint16_t tag;
    std::uint16_t type;
    std::vector<std::uint32_t> values;
  };
  std::vector<Entry> entries = {
      {kImageWidth, kLong, {static_cast<std::uint32_t>(w)}},
      {kImageLength, kLong, {static_cast<std::uint32_t>(h)}},
      {kBitsPerSample, kShort, std::vector<std::uint32_t>(spp, bit_depth)},
      {kCompression, kShort, {1}},
      {kPhotometric, kShort, {photometric}},
      {kStripOffsets, kLong, {8}},
      {kSamplesPerPixel, kShort, {static_cast<std::uint32_t>(spp)}},
      {kRowsPerStrip, kLong, {static_cast<std::uint32_t>(h)}},
      {kStripByteCounts, kLong, {static_cast<std::uint32_t>(data_bytes)}},
      {kPlanarConfig, kShort, {1}},
  };
  if (extra > 0) entries.push_back({kExtraSamples, kShort, std::vector<std::uint32_t>(extra, 0)});

  // Layout: header | pixel data | IFD | out-of-line tag values.
  std::size_t ifd_offset = 8 + data_bytes;
  ifd_offset += ifd_offset % 2;
  const std::size_t ifd_size = 2 + entries.size() * 12 + 4;
  std::size_t overflow_offset = ifd_offset + ifd_size;

  std::vector<unsigned char> file(ifd_offset, 0);
  auto put16 = [&](std::vector<unsigned char>& buf, std::uint32_t v) {
    buf.push_back(static_cast<unsigned char>(v & 0xff));
    buf.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  };
  auto put32 = [&](std::vector<unsigned char>& buf, std::uint32_t v) {
    put16(buf, v & 0xffff);
    put16(buf, v >> 16);
  };
  file[0] = 'I';
  file[1] = 'I';
  file[2] = 42;
  file[3] = 0;
  const auto ifd32 = static_cast<std::uint32_t>(ifd_offset);
  for (int i = 0; i < 4; ++i) file[4 + i] = static_cast<unsigned char>((ifd32 >> (8 * i)) & 0xff);
  std::copy(data.begin(), data.end(), file.begin() + 8);

  std::vector<unsigned char> overflow;
  put16(file, static_cast<std::uint32_t>(entries.size()));
  for (const auto& e : entries) {
    const std::size_t size = e.type == kShort ? 2 : 4;
    put16(file, e.tag);
    put16(file, e.type);
    put32(file, static_cast<std::uint32_t>(e.values.size()));
    std::vector<unsigned char>& target =
        size * e.values.size() <= 4 ? file : overflow;
    if (&target == &overflow) {
      put32(file, static_cast<std::uint32_t>(overflow_offset + overflow.size()));
    }
    const std::size_t before = target.size();
    for (std::uint32_t v : e.values) {
      if (size == 2) {
        put16(target, v);
      } else {
        put32(target, v);
      }
    }
    if (&target == &file) {
      while (target.size() - before < 4) target.push_back(0);
    } else if (overflow.size() % 2) {
      overflow.push_back(0);
    }
  }
  put32(file, 0);
  file.insert(file.end(), overflow.begin(), overflow.end());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(file.data()), static_cast<std::streamsize>(file.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace pansharp::io::detail

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "oracles/random_images.hpp"
#include "pansharp/error.hpp"
#include "pansharp/image_io.hpp"

using namespace pansharp;
namespace fs = std::filesystem;

namespace {

fs::path fixture(const char* name) { return fs::path(PANSHARP_FIXTURE_DIR) / name; }

fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "pansharp_test_image_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("PNG fixtures decode without rescaling") {
  SUBCASE("all-zero gray") {
    const MultiBandImage img = io::load_image(fixture("gray_zero_2x2.png"), io::ImageFormat::Png8);
    CHECK(img.band_count() == 1);
    CHECK(img[0] == Raster(2, 2, 0.0));
  }
  SUBCASE("constant RGB") {
    const MultiBandImage img = io::load_image(fixture("rgb_102030_2x2.png"), io::ImageFormat::Png8);
    REQUIRE(img.band_count() == 3);
    CHECK(img[0] == Raster(2, 2, 10.0));
    CHECK(img[1] == Raster(2, 2, 20.0));
    CHECK(img[2] == Raster(2, 2, 30.0));
  }
  SUBCASE("16-bit gray keeps raw codes") {
    const MultiBandImage img = io::load_image(fixture("gray16_2x2.png"), io::ImageFormat::Png16);
    CHECK(img[0] == Raster(2, 2, std::vector<double>{0, 1000, 65535, 300}));
  }
  SUBCASE("declared depth must match") {
    CHECK_THROWS_AS(io::load_image(fixture("gray16_2x2.png"), io::ImageFormat::Png8), IoError);
  }
  SUBCASE("unsupported variants") {
    CHECK_THROWS_AS(io::load_image(fixture("palette_2x2.png")), IoError);
    CHECK_THROWS_AS(io::load_image(fixture("bilevel_2x2.png")), IoError);
  }
}

TEST_CASE("TIFF fixtures written by another encoder") {
  const MultiBandImage rgb = io::load_image(fixture("rgb_3x2.tif"), io::ImageFormat::Tiff8);
  REQUIRE(rgb.band_count() == 3);
  CHECK(rgb[0] == Raster(3, 2, std::vector<double>{0, 30, 60, 90, 120, 150}));
  CHECK(rgb[1] == Raster(3, 2, std::vector<double>{10, 40, 70, 100, 130, 160}));
  const MultiBandImage g = io::load_image(fixture("gray16_2x2.tif"));
  CHECK(g[0] == Raster(2, 2, std::vector<double>{0, 1000, 65535, 300}));
  CHECK_THROWS_AS(io::load_image(fixture("rgb_3x2_lzw.tif")), IoError);
}

TEST_CASE("raw-f64 layout is byte exact") {
  const fs::path path = scratch("four.psrw");
  {
    std::ofstream out(path, std::ios::binary);
    out.write("PSRW", 4);
    const std::uint32_t header[3] = {2, 2, 1};
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    const double values[4] = {0.5, 1.5, 2.5, 3.5};
    out.write(reinterpret_cast<const char*>(values), sizeof values);
  }
  const MultiBandImage img = io::load_image(path, io::ImageFormat::RawF64);
  CHECK(img[0] == Raster(2, 2, std::vector<double>{0.5, 1.5, 2.5, 3.5}));

  // And the writer produces the same bytes.
  const fs::path again = scratch("four_again.psrw");
  io::save_image(img, again, io::ImageFormat::RawF64);
  std::ifstream a(path, std::ios::binary), b(again, std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(a)), {});
  const std::string sb((std::istreambuf_iterator<char>(b)), {});
  CHECK(sa == sb);
}

TEST_CASE("raw-f64 round trip is bit exact for random images") {
  testing::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const MultiBandImage img = testing::random_image(rng, 8, 8, 3, -1e6, 1e6);
    const fs::path path = scratch("rt.psrw");
    io::save_image(img, path, io::ImageFormat::RawF64);
    CHECK(io::load_image(path) == img);
  }
}

TEST_CASE("integer encodings round half up and clamp on request") {
  CHECK(io::quantize_sample(300.2, 8, io::ClampMode::ClampToDepth) == 255);
  CHECK(io::quantize_sample(77.5, 8, io::ClampMode::ClampToDepth) == 78);
  CHECK(io::quantize_sample(77.49, 8, io::ClampMode::None) == 77);
  CHECK(io::quantize_sample(-3.0, 16, io::ClampMode::ClampToDepth) == 0);
  CHECK_THROWS_AS(io::quantize_sample(300.2, 8, io::ClampMode::None), InvalidArgument);
  CHECK_THROWS_AS(io::quantize_sample(-0.6, 8, io::ClampMode::None), InvalidArgument);

  const MultiBandImage img({Raster(2, 1, std::vector<double>{300.2, 77.5})});
  for (auto format : {io::ImageFormat::Png8, io::ImageFormat::Tiff8}) {
    const fs::path path = scratch(format == io::ImageFormat::Png8 ? "q.png" : "q.tif");
    io::save_image(img, path, format, io::ClampMode::ClampToDepth);
    CHECK(io::load_image(path, format)[0] == Raster(2, 1, std::vector<double>{255, 78}));
    CHECK_THROWS_AS(io::save_image(img, path, format, io::ClampMode::None), InvalidArgument);
  }
}

TEST_CASE("integer formats round trip integral samples") {
  testing::Rng rng(5);
  std::vector<Raster> bands;
  for (int b = 0; b < 3; ++b) {
    bands.push_back(Raster::generate(7, 5, [&](std::size_t, std::size_t) {
      return std::floor(rng.uniform(0, 65535.99));
    }));
  }
  const MultiBandImage img(bands);
  for (auto format : {io::ImageFormat::Png16, io::ImageFormat::Tiff16}) {
    const fs::path path = scratch(format == io::ImageFormat::Png16 ? "rt16.png" : "rt16.tif");
    io::save_image(img, path, format);
    CHECK(io::load_image(path, format) == img);
  }
  // TIFF also carries band counts PNG cannot.
  const MultiBandImage five = testing::random_image(rng, 4, 3, 5, 0, 200);
  const fs::path path = scratch("five.tif");
  io::save_image(five, path, io::ImageFormat::Tiff8, io::ClampMode::ClampToDepth);
  CHECK(io::load_image(path).band_count() == 5);
}

TEST_CASE("format and path errors") {
  const MultiBandImage two({Raster(2, 2), Raster(2, 2)});
  CHECK_THROWS_AS(io::save_image(two, scratch("two.png"), io::ImageFormat::Png8), InvalidArgument);
  CHECK_THROWS_AS(io::load_image(scratch("missing.psrw")), IoError);
  CHECK_THROWS_AS(io::load_image(fixture("rgb_102030_2x2.png"), io::ImageFormat::RawF64), IoError);
  CHECK_THROWS_AS(io::parse_format("jpeg"), InvalidArgument);
  CHECK(io::format_for_path("a/b.TIF") == io::ImageFormat::Tiff16);
  CHECK(io::format_for_path("x.png") == io::ImageFormat::Png8);
  CHECK(io::format_for_path("x.psrw") == io::ImageFormat::RawF64);

  const fs::path zero = scratch("zero.psrw");
  {
    std::ofstream out(zero, std::ios::binary);
    out.write("PSRW", 4);
    const std::uint32_t header[3] = {0, 2, 1};
    out.write(reinterpret_cast<const char*>(header), sizeof header);
  }
  CHECK_THROWS_AS(io::load_image(zero), IoError);
}

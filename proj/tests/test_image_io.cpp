#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "c2g/image_io.hpp"
#include "oracle.hpp"

using namespace c2g;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = std::string(C2G_DATA_DIR) + "/fixtures/";

fs::path temp_path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "c2g_image_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(ImageIo, RgbPngRoundTrip) {
  std::mt19937_64 rng(1);
  const RgbImage img = oracle::random_rgb(rng, 23, 17);
  const fs::path p = temp_path("rgb.png");
  write_png(p.string(), img);
  EXPECT_EQ(read_image(p.string()), img);
}

TEST(ImageIo, GrayPngRoundTripIsSingleChannel) {
  RgbImage img(256, 2);
  for (int x = 0; x < 256; ++x) {
    const auto v = static_cast<std::uint8_t>(x);
    img.at(x, 0) = img.at(x, 1) = {v, v, v};
  }
  const fs::path gray = temp_path("gray.png");
  write_png(gray.string(), img);
  EXPECT_EQ(read_image(gray.string()), img);
  // A colour PNG of the same size needs about three times the samples.
  RgbImage colored = img;
  colored.at(0, 0) = {1, 2, 3};
  const fs::path rgb = temp_path("rgb_large.png");
  write_png(rgb.string(), colored);
  EXPECT_LT(fs::file_size(gray), fs::file_size(rgb));
}

TEST(ImageIo, DecodesGrayscaleAndPalettePng) {
  const RgbImage gray = read_image(kFixtures + "gray8.png");
  ASSERT_EQ(gray.width, 3);
  EXPECT_EQ(gray.at(0, 0), (Rgb8{0, 0, 0}));
  EXPECT_EQ(gray.at(1, 0), (Rgb8{128, 128, 128}));
  EXPECT_EQ(gray.at(2, 0), (Rgb8{255, 255, 255}));
  const RgbImage pal = read_image(kFixtures + "palette.png");
  EXPECT_EQ(pal.at(0, 0), (Rgb8{10, 20, 30}));
  EXPECT_EQ(pal.at(1, 0), (Rgb8{200, 100, 50}));
}

TEST(ImageIo, CompositesAlphaOntoWhite) {
  const RgbImage img = read_image(kFixtures + "alpha.png");
  EXPECT_EQ(img.at(0, 0), (Rgb8{255, 0, 0}));
  EXPECT_EQ(img.at(1, 0), (Rgb8{255, 255, 255}));
  const Rgb8 half = img.at(2, 0);
  EXPECT_EQ(half.g, 255);
  EXPECT_GT(half.r, 60);
  EXPECT_LT(half.r, 230);
  EXPECT_EQ(half.r, half.b);
}

TEST(ImageIo, DecodesJpeg) {
  const RgbImage img = read_image(kFixtures + "solid.jpg");
  ASSERT_EQ(img.width, 6);
  ASSERT_EQ(img.height, 4);
  for (const Rgb8& px : img.pixels) {
    EXPECT_NEAR(px.r, 200, 3);
    EXPECT_NEAR(px.g, 30, 3);
    EXPECT_NEAR(px.b, 90, 3);
  }
}

TEST(ImageIo, ErrorsAreIoErrors) {
  EXPECT_THROW(read_image(kFixtures + "missing.png"), IoError);
  EXPECT_THROW(read_image(kFixtures + "not_an_image.png"), IoError);
  EXPECT_THROW(write_png("/nonexistent-dir/x.png", RgbImage(2, 2)), IoError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "c2g/image.hpp"

using namespace c2g;

TEST(Plane, StoresRowMajor) {
  Plane p(3, 2);
  p(2, 1) = 5.0;
  EXPECT_EQ(p[5], 5.0);
  EXPECT_EQ(p.row(1)[2], 5.0);
  EXPECT_EQ(p.size(), 6u);
}

TEST(Plane, RejectsEmptyDimensions) {
  EXPECT_THROW(Plane(0, 4), InvalidArgument);
  EXPECT_THROW(Plane(4, -1), InvalidArgument);
  EXPECT_THROW(RgbImage(0, 1), InvalidArgument);
}

TEST(Plane, ArithmeticMatchesElementwise) {
  Plane x(2, 2), y(2, 2);
  for (int i = 0; i < 4; ++i) {
    x[i] = i + 1.0;
    y[i] = 10.0 * (i + 1);
  }
  const Plane s = x + y;
  const Plane d = y - x;
  const Plane m = 2.0 * x;
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(s[i], 11.0 * (i + 1));
    EXPECT_EQ(d[i], 9.0 * (i + 1));
    EXPECT_EQ(m[i], 2.0 * (i + 1));
  }
  EXPECT_DOUBLE_EQ(dot(x, y), 10.0 * (1 + 4 + 9 + 16));
  EXPECT_DOUBLE_EQ(norm2(x), std::sqrt(30.0));
  EXPECT_EQ(norm_inf(d), 36.0);
  axpy(-1.0, x, y);
  EXPECT_EQ(y, d);
}

TEST(Plane, ShapeMismatchThrows) {
  EXPECT_THROW(Plane(2, 3) + Plane(3, 2), DimensionMismatch);
  EXPECT_THROW(dot(Plane(2, 2), Plane(4, 1)), DimensionMismatch);
}

TEST(Plane, AllFiniteDetectsNanAndInf) {
  Plane p(2, 2, 1.0);
  EXPECT_TRUE(all_finite(p));
  p[3] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(all_finite(p));
  p[3] = std::numeric_limits<double>::infinity();
  EXPECT_FALSE(all_finite(p));
}

TEST(RgbImage, ValidateChecksPixelCount) {
  RgbImage img(2, 2);
  EXPECT_NO_THROW(img.validate());
  img.pixels.pop_back();
  EXPECT_THROW(img.validate(), InvalidArgument);
}

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcdf {

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb8 &, const Rgb8 &) = default;
};

struct Gray8 {
  std::uint8_t v = 0;

  friend bool operator==(const Gray8 &, const Gray8 &) = default;
};

// Real-valued view of an RGB colour; the vector's length is its brightness
// and its direction carries hue and saturation.
struct ColorVec3 {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  double dot(const ColorVec3 &o) const { return r * o.r + g * o.g + b * o.b; }
  double norm() const { return std::sqrt(dot(*this)); }

  friend bool operator==(const ColorVec3 &, const ColorVec3 &) = default;
};

class DimensionMismatch : public std::invalid_argument {
public:
  DimensionMismatch(int w0, int h0, int w1, int h1);

  int width_a, height_a, width_b, height_b;
};

class ImageTooSmall : public std::invalid_argument {
public:
  ImageTooSmall(const std::string &what, int min_w, int min_h, int w, int h);
};

// Round half away from zero, then clamp to [0,255]. Every float to 8-bit
// conversion in the library goes through this.
inline std::uint8_t round_to_u8(double x) {
  if (!(x > 0.0)) return 0;  // also maps NaN to 0
  const double r = std::round(x);
  return r >= 255.0 ? std::uint8_t{255} : static_cast<std::uint8_t>(r);
}

/// Row-major raster with the origin at the top-left corner.
template <class Pixel> class Image {
public:
  Image(int width, int height, Pixel fill = {})
      : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  Image(int width, int height, std::vector<Pixel> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * height)
      throw std::invalid_argument("pixel count " +
                                  std::to_string(pixels_.size()) +
                                  " does not match " + std::to_string(width) +
                                  "x" + std::to_string(height));
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }

  const Pixel &at(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  Pixel &at(int x, int y) {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const Pixel> pixels() const { return pixels_; }
  std::span<Pixel> pixels() { return pixels_; }

  std::span<const Pixel> row(int y) const {
    return pixels().subspan(static_cast<std::size_t>(y) * width_, width_);
  }
  std::span<Pixel> row(int y) {
    return pixels().subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  bool same_shape(int w, int h) const { return w == width_ && h == height_; }
  template <class Other> bool same_shape(const Image<Other> &o) const {
    return same_shape(o.width(), o.height());
  }

  friend bool operator==(const Image &, const Image &) = default;

private:
  static void check_dims(int w, int h) {
    if (w < 1 || h < 1)
      throw std::invalid_argument("image dimensions must be positive, got " +
                                  std::to_string(w) + "x" + std::to_string(h));
  }

  int width_;
  int height_;
  std::vector<Pixel> pixels_;
};

using RgbImage = Image<Rgb8>;
using GrayImage = Image<Gray8>;

template <class A, class B>
void require_same_shape(const Image<A> &a, const Image<B> &b) {
  if (!a.same_shape(b))
    throw DimensionMismatch(a.width(), a.height(), b.width(), b.height());
}

/// A registered visible/infrared pair. Registration itself is assumed; only
/// the dimensions are checked.
class ImagePair {
public:
  const std::string &id() const { return id_; }
  const RgbImage &visible() const { return visible_; }
  const GrayImage &infrared() const { return infrared_; }
  int width() const { return visible_.width(); }
  int height() const { return visible_.height(); }

private:
  friend ImagePair make_pair(std::string id, RgbImage visible,
                             GrayImage infrared);
  ImagePair(std::string id, RgbImage visible, GrayImage infrared)
      : id_(std::move(id)), visible_(std::move(visible)),
        infrared_(std::move(infrared)) {}

  std::string id_;
  RgbImage visible_;
  GrayImage infrared_;
};

// Throws DimensionMismatch when the two rasters differ in size.
ImagePair make_pair(std::string id, RgbImage visible, GrayImage infrared);

// BT.601 luma: 0.299 r + 0.587 g + 0.114 b.
Gray8 luma(Rgb8 p);
GrayImage to_gray(const RgbImage &image);

inline ColorVec3 vec_of(Rgb8 p) { return {double(p.r), double(p.g), double(p.b)}; }

// Gray replicated into three equal channels.
RgbImage gray_to_rgb(const GrayImage &image);

} // namespace fcdf

#include "fcdfusion/image.hpp"

namespace fcdf {

namespace {

std::string shape(int w, int h) {
  return std::to_string(w) + "x" + std::to_string(h);
}

} // namespace

DimensionMismatch::DimensionMismatch(int w0, int h0, int w1, int h1)
    : std::invalid_argument("dimension mismatch: " + shape(w0, h0) + " vs " +
                            shape(w1, h1)),
      width_a(w0), height_a(h0), width_b(w1), height_b(h1) {}

ImageTooSmall::ImageTooSmall(const std::string &what, int min_w, int min_h,
                             int w, int h)
    : std::invalid_argument(what + " needs at least " + shape(min_w, min_h) +
                            ", got " + shape(w, h)) {}

ImagePair make_pair(std::string id, RgbImage visible, GrayImage infrared) {
  require_same_shape(visible, infrared);
  return ImagePair(std::move(id), std::move(visible), std::move(infrared));
}

Gray8 luma(Rgb8 p) {
  return {round_to_u8(0.299 * p.r + 0.587 * p.g + 0.114 * p.b)};
}

GrayImage to_gray(const RgbImage &image) {
  GrayImage out(image.width(), image.height());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = luma(src[i]);
  return out;
}

RgbImage gray_to_rgb(const GrayImage &image) {
  RgbImage out(image.width(), image.height());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i)
    dst[i] = {src[i].v, src[i].v, src[i].v};
  return out;
}

} // namespace fcdf

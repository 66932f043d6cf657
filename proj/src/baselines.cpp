#include "fcdfusion/baselines.hpp"

#include <algorithm>
#include <cctype>

#include "fcdfusion/parallel.hpp"

namespace fcdf {

UnknownMethod::UnknownMethod(std::string_view name)
    : std::invalid_argument("unknown fusion method '" + std::string(name) +
                            "' (expected fcd, rgb, yiq or hsv)") {}

void FusionMethod::validate() const {
  if (kind == MethodKind::Fcd) fcd.validate();
  if (kind == MethodKind::HsvAvg && (!std::isfinite(hsv_gamma) || hsv_gamma <= 0.0))
    throw std::invalid_argument("HSV-AVG gamma must be finite and > 0");
}

std::string FusionMethod::name() const {
  switch (kind) {
  case MethodKind::Fcd: return "fcd";
  case MethodKind::RgbAvg: return "rgb";
  case MethodKind::YiqAvg: return "yiq";
  case MethodKind::HsvAvg: return "hsv";
  }
  return "?";
}

std::string FusionMethod::label() const {
  switch (kind) {
  case MethodKind::Fcd: return "FCDFusion";
  case MethodKind::RgbAvg: return "RGB-AVG";
  case MethodKind::YiqAvg: return "YIQ-AVG";
  case MethodKind::HsvAvg: return "HSV-AVG";
  }
  return "?";
}

FusionMethod parse_method(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (key == "fcd" || key == "fcdfusion") return FusionMethod::fcdfusion();
  if (key == "rgb" || key == "rgb-avg") return FusionMethod::rgb_avg();
  if (key == "yiq" || key == "yiq-avg") return FusionMethod::yiq_avg();
  if (key == "hsv" || key == "hsv-avg") return FusionMethod::hsv_avg();
  throw UnknownMethod(name);
}

Rgb8 fuse_rgb_avg(Rgb8 visible, std::uint8_t infrared) {
  return kernel::rgb_avg(visible, infrared);
}

Rgb8 fuse_yiq_avg(Rgb8 visible, std::uint8_t infrared) {
  return kernel::yiq_avg<double>(visible, infrared);
}

Rgb8 fuse_hsv_avg(Rgb8 visible, std::uint8_t infrared, double gamma) {
  return kernel::hsv_avg<double>(visible, infrared, gamma);
}

Rgb8 fuse_pixel_with(const FusionMethod &method, Rgb8 visible,
                     std::uint8_t infrared) {
  switch (method.kind) {
  case MethodKind::Fcd: return fuse_pixel(visible, infrared, method.fcd);
  case MethodKind::RgbAvg: return fuse_rgb_avg(visible, infrared);
  case MethodKind::YiqAvg: return fuse_yiq_avg(visible, infrared);
  case MethodKind::HsvAvg: return fuse_hsv_avg(visible, infrared, method.hsv_gamma);
  }
  return visible;
}

namespace {

template <class PixelFn>
RgbImage map_pixels(const ImagePair &pair, unsigned threads, PixelFn fn) {
  RgbImage out(pair.width(), pair.height());
  for_row_bands(pair.height(), resolve_threads(threads), [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      auto v = pair.visible().row(y);
      auto i = pair.infrared().row(y);
      auto o = out.row(y);
      for (std::size_t x = 0; x < v.size(); ++x) o[x] = fn(v[x], i[x].v);
    }
  });
  return out;
}

} // namespace

RgbImage fuse_image_with(const FusionMethod &method, const ImagePair &pair,
                         unsigned threads) {
  method.validate();
  switch (method.kind) {
  case MethodKind::Fcd:
    return fuse_image(pair, method.fcd, threads);
  case MethodKind::RgbAvg:
    return map_pixels(pair, threads, kernel::rgb_avg);
  case MethodKind::YiqAvg:
    return map_pixels(pair, threads, kernel::yiq_avg<double>);
  case MethodKind::HsvAvg: {
    const double gamma = method.hsv_gamma;
    return map_pixels(pair, threads, [gamma](Rgb8 c, std::uint8_t v) {
      return kernel::hsv_avg<double>(c, v, gamma);
    });
  }
  }
  throw UnknownMethod("?");
}

} // namespace fcdf

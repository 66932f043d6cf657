#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fcdfusion/colorspace.hpp"
#include "fcdfusion/fcd.hpp"

namespace fcdf {

enum class MethodKind { Fcd, RgbAvg, YiqAvg, HsvAvg };

class UnknownMethod : public std::invalid_argument {
public:
  explicit UnknownMethod(std::string_view name);
};

struct FusionMethod {
  MethodKind kind = MethodKind::Fcd;
  FcdParams fcd{};        // used by Fcd
  double hsv_gamma = 1.0; // used by HsvAvg; 1 is plain HSV averaging

  static FusionMethod fcdfusion(FcdParams p = {}) { return {MethodKind::Fcd, p, 1.0}; }
  static FusionMethod rgb_avg() { return {MethodKind::RgbAvg, {}, 1.0}; }
  static FusionMethod yiq_avg() { return {MethodKind::YiqAvg, {}, 1.0}; }
  static FusionMethod hsv_avg(double gamma = 1.0) { return {MethodKind::HsvAvg, {}, gamma}; }

  void validate() const;

  // Short name used on the command line and in reports: fcd, rgb, yiq, hsv.
  std::string name() const;
  // Display name, e.g. "FCDFusion", "HSV-AVG".
  std::string label() const;
};

// Accepts the short names and the display names (case-insensitive).
FusionMethod parse_method(std::string_view name);

Rgb8 fuse_rgb_avg(Rgb8 visible, std::uint8_t infrared);
Rgb8 fuse_yiq_avg(Rgb8 visible, std::uint8_t infrared);
Rgb8 fuse_hsv_avg(Rgb8 visible, std::uint8_t infrared, double gamma = 1.0);

Rgb8 fuse_pixel_with(const FusionMethod &method, Rgb8 visible,
                     std::uint8_t infrared);
RgbImage fuse_image_with(const FusionMethod &method, const ImagePair &pair,
                         unsigned threads = 1);

namespace kernel {

// Integer only: (c + v_i + 1) >> 1 is the midpoint rounded half up.
inline Rgb8 rgb_avg(Rgb8 c, std::uint8_t infrared) {
  const int v = infrared;
  return {static_cast<std::uint8_t>((c.r + v + 1) >> 1),
          static_cast<std::uint8_t>((c.g + v + 1) >> 1),
          static_cast<std::uint8_t>((c.b + v + 1) >> 1)};
}

// Halving is an exponent decrement, not a multiply.
template <class Real> Real halve(Real x) {
  using std::ldexp;
  return ldexp(x, -1);
}

template <class Real> Yiq<Real> yiq_avg_fuse(Yiq<Real> c, std::uint8_t infrared) {
  c.y = halve(c.y + Real(double(infrared)));
  return c;
}

// The infrared value is lifted to the [0,1] V scale (and gamma corrected when
// gamma != 1) as the fused V is formed, then the colour is rebuilt.
template <class Real>
Rgb8 hsv_avg_to_rgb(const Hsv<Real> &c, std::uint8_t infrared, double gamma) {
  Real lifted = Real(double(infrared)) / Real(255.0);
  if (gamma != 1.0) {
    using std::pow;
    lifted = pow(lifted, gamma);
  }
  return hsv_to_rgb<Real>(c.h, c.s, halve(c.v + lifted));
}

template <class Real> Rgb8 yiq_avg(Rgb8 c, std::uint8_t infrared) {
  const auto f = yiq_avg_fuse(rgb_to_yiq<Real>(c), infrared);
  return yiq_to_rgb<Real>(f.y, f.i, f.q);
}

template <class Real> Rgb8 hsv_avg(Rgb8 c, std::uint8_t infrared, double gamma) {
  return hsv_avg_to_rgb<Real>(rgb_to_hsv<Real>(c), infrared, gamma);
}

} // namespace kernel

} // namespace fcdf

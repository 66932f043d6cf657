#include "fcdfusion/colorspace.hpp"

namespace fcdf {

YiqColor rgb_to_yiq(Rgb8 p) {
  const auto c = kernel::rgb_to_yiq<double>(p);
  return {c.y, c.i, c.q};
}

Rgb8 yiq_to_rgb(const YiqColor &c) {
  return kernel::yiq_to_rgb<double>(c.y, c.i, c.q);
}

HsvColor rgb_to_hsv(Rgb8 p) {
  const auto c = kernel::rgb_to_hsv<double>(p);
  return {c.h, c.s, c.v};
}

Rgb8 hsv_to_rgb(const HsvColor &c) {
  return kernel::hsv_to_rgb<double>(c.h, c.s, c.v);
}

} // namespace fcdf

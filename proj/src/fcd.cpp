#include "fcdfusion/fcd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fcdfusion/parallel.hpp"

namespace fcdf {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void FcdParams::validate() const {
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw std::invalid_argument("gamma must be finite and > 0, got " +
                                std::to_string(gamma));
}

double scaling_ratio(std::uint8_t infrared, double gamma) {
  return kernel::scaling_ratio<double>(infrared, gamma);
}

int max_component(Rgb8 c) {
  return std::max({int(c.r), int(c.g), int(c.b), 1});
}

ScaleFactor scale_factor(double alpha, int max_channel, bool averaging) {
  return {kernel::scale_factor<double>(alpha, max_channel, averaging)};
}

Rgb8 fuse_pixel(Rgb8 visible, std::uint8_t infrared, const FcdParams &params) {
  return kernel::fuse_pixel<double>(visible, infrared, params.gamma,
                                    params.averaging);
}

RgbImage fuse_image(const ImagePair &pair, const FcdParams &params,
                    unsigned threads) {
  params.validate();
  RgbImage out(pair.width(), pair.height());
  const auto &vis = pair.visible();
  const auto &ir = pair.infrared();
  const double gamma = params.gamma;
  const bool averaging = params.averaging;
  for_row_bands(pair.height(), resolve_threads(threads), [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      auto v = vis.row(y);
      auto i = ir.row(y);
      auto o = out.row(y);
      for (std::size_t x = 0; x < v.size(); ++x)
        o[x] = kernel::fuse_pixel<double>(v[x], i[x].v, gamma, averaging);
    }
  });
  return out;
}

} // namespace fcdf

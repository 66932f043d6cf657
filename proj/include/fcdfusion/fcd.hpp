#pragma once

#include <cstdint>

#include "fcdfusion/counted_real.hpp"
#include "fcdfusion/image.hpp"

namespace fcdf {

struct FcdParams {
  double gamma = 2.0;   // exponent applied to the normalised infrared value
  bool averaging = true; // average the scale with 1 (k = (alpha*beta_m + 1)/2)

  // Throws std::invalid_argument unless gamma is finite and positive.
  void validate() const;
  // Only an exact 2.0 takes the squaring fast path.
  bool squared_fast_path() const { return gamma == 2.0; }
};

struct ScaleFactor {
  double k = 0.0;
};

// (v_i / 255)^gamma, squared with one multiply when gamma == 2.
double scaling_ratio(std::uint8_t infrared, double gamma);

// max(r, g, b, 1): the floor of 1 keeps the later division defined.
int max_component(Rgb8 c);

// With averaging: alpha * ((v_m + 255) >> 1) / v_m + 0.5.
// Without:        alpha * (v_m + 255) / v_m.
ScaleFactor scale_factor(double alpha, int max_channel, bool averaging);

Rgb8 fuse_pixel(Rgb8 visible, std::uint8_t infrared, const FcdParams &params);

// Pixel-wise fuse_pixel over the pair. `threads` > 1 splits rows across
// workers; the result does not depend on the thread count.
RgbImage fuse_image(const ImagePair &pair, const FcdParams &params,
                    unsigned threads = 1);

namespace kernel {

// The kernel is written once over its scalar type so that the FLOP audit
// can run it with CountedReal.

template <class Real> Real scaling_ratio(std::uint8_t infrared, double gamma) {
  const Real alpha = Real(double(infrared)) / Real(255.0);
  if (gamma == 2.0) return alpha * alpha;
  using std::pow;
  return pow(alpha, gamma);
}

template <class Real>
Real scale_factor(Real alpha, int max_channel, bool averaging) {
  if (averaging) {
    // (v_m + 255) / 2 as an integer shift
    const Real half_ceiling = Real(double((max_channel + 255) >> 1));
    return half_ceiling * alpha / Real(double(max_channel)) + Real(0.5);
  }
  return Real(double(max_channel + 255)) * alpha / Real(double(max_channel));
}

template <class Real>
Rgb8 fuse_pixel(Rgb8 c, std::uint8_t infrared, double gamma, bool averaging) {
  const Real alpha = scaling_ratio<Real>(infrared, gamma);
  const Real k = scale_factor<Real>(alpha, max_component(c), averaging);
  return {round_to_u8(to_double(k * Real(double(c.r)))),
          round_to_u8(to_double(k * Real(double(c.g)))),
          round_to_u8(to_double(k * Real(double(c.b))))};
}

} // namespace kernel

} // namespace fcdf

#pragma once

#include <cstdint>
#include <string_view>

#include "fcdfusion/baselines.hpp"
#include "fcdfusion/counted_real.hpp"

namespace fcdf {

// Counting convention: one FLOP per floating multiply or divide. Adds,
// comparisons, integer shifts, halving and clamps are free. Exponentiation
// (only on non-default gamma settings) is reported separately.
//
// Stage mapping of the instrumented kernels:
//   RGB-AVG    integer midpoint                               (0, 0, 0)
//   YIQ-AVG    3x3 forward | halve(y + v_i) | 3x3 inverse      (9, 0, 9)
//   HSV-AVG    r,g,b /255, s, hue mul+div | halve(v + lift) |
//              lift v_i/255, V*255, h/60, p, q, t              (6, 0, 8)
//   FCDFusion  v_i/255, square, k mul+div, 3 channel scales    (0, 7, 0)
// The infrared lift v_i/255 is charged to HSV-AVG's to-RGB column because
// it is formed together with the fused V right before reconstruction.
struct FlopRow {
  std::uint64_t from_rgb = 0;
  std::uint64_t fusion = 0;
  std::uint64_t to_rgb = 0;
  std::uint64_t exponentiations = 0; // per pixel, not included in total()

  std::uint64_t total() const { return from_rgb + fusion + to_rgb; }
  friend bool operator==(const FlopRow &, const FlopRow &) = default;
};

FlopRow per_pixel_flops(const FusionMethod &method);
// Throws UnknownMethod for names outside the four fast methods.
FlopRow per_pixel_flops(std::string_view method_name);

std::uint64_t total_flops(const FusionMethod &method, int width, int height);

struct FlopAudit {
  FlopCount from_rgb;
  FlopCount fusion;
  FlopCount to_rgb;
  std::uint64_t pixels = 0;

  FlopCount total() const {
    FlopCount t = from_rgb;
    t += fusion;
    t += to_rgb;
    return t;
  }
};

/// Runs the reference kernel for `method` over every pixel of `pair` with
/// counting scalars and reports the dynamic multiply/divide tallies per
/// stage. `fused`, when given, receives the kernel output.
FlopAudit audit_flops(const FusionMethod &method, const ImagePair &pair,
                      RgbImage *fused = nullptr);

// Total counted multiplies and divides; equals total_flops on every method.
std::uint64_t measured_flop_audit(const FusionMethod &method,
                                  const ImagePair &pair);

} // namespace fcdf

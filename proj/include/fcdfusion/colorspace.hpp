#pragma once

#include <algorithm>
#include <array>
#include <cstdint>

#include "fcdfusion/counted_real.hpp"
#include "fcdfusion/image.hpp"

namespace fcdf {

// NTSC YIQ. y shares the 0..255 scale of the RGB channels.
struct YiqColor {
  double y = 0.0;
  double i = 0.0;
  double q = 0.0;
};

// Hexcone HSV: h in degrees [0,360), s and v in [0,1].
struct HsvColor {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

inline constexpr Matrix3 kRgbToYiq{{{0.299, 0.587, 0.114},
                                    {0.596, -0.274, -0.322},
                                    {0.211, -0.523, 0.312}}};

constexpr Matrix3 inverse(const Matrix3 &m) {
  const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  Matrix3 r{};
  r[0][0] = c00 / det;
  r[1][0] = c01 / det;
  r[2][0] = c02 / det;
  r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return r;
}

// Exact inverse of the forward matrix, so round trips only lose to rounding.
inline constexpr Matrix3 kYiqToRgb = inverse(kRgbToYiq);

YiqColor rgb_to_yiq(Rgb8 p);
Rgb8 yiq_to_rgb(const YiqColor &c);
HsvColor rgb_to_hsv(Rgb8 p);
Rgb8 hsv_to_rgb(const HsvColor &c);

namespace kernel {

template <class Real> struct Yiq { Real y, i, q; };
template <class Real> struct Hsv { Real h, s, v; };

// 9 multiplies.
template <class Real> Yiq<Real> rgb_to_yiq(Rgb8 p) {
  const Real r(double(p.r)), g(double(p.g)), b(double(p.b));
  const auto &m = kRgbToYiq;
  return {r * Real(m[0][0]) + g * Real(m[0][1]) + b * Real(m[0][2]),
          r * Real(m[1][0]) + g * Real(m[1][1]) + b * Real(m[1][2]),
          r * Real(m[2][0]) + g * Real(m[2][1]) + b * Real(m[2][2])};
}

// 9 multiplies.
template <class Real> Rgb8 yiq_to_rgb(Real y, Real i, Real q) {
  const auto &m = kYiqToRgb;
  return {round_to_u8(to_double(y * Real(m[0][0]) + i * Real(m[0][1]) + q * Real(m[0][2]))),
          round_to_u8(to_double(y * Real(m[1][0]) + i * Real(m[1][1]) + q * Real(m[1][2]))),
          round_to_u8(to_double(y * Real(m[2][0]) + i * Real(m[2][1]) + q * Real(m[2][2])))};
}

// 6 divides/multiplies: three channel normalisations, one for saturation,
// a multiply and a divide for hue. Denominators are substituted rather than
// branched around so every pixel costs the same.
template <class Real> Hsv<Real> rgb_to_hsv(Rgb8 p) {
  const Real scale(255.0);
  const Real r = Real(double(p.r)) / scale;
  const Real g = Real(double(p.g)) / scale;
  const Real b = Real(double(p.b)) / scale;
  const Real hi = std::max({r, g, b});
  const Real lo = std::min({r, g, b});
  const Real delta = hi - lo;

  Real num(0.0);
  double offset = 0.0;
  if (delta > Real(0.0)) {
    if (p.r >= p.g && p.r >= p.b) {
      num = g - b;
    } else if (p.g >= p.b) {
      num = b - r;
      offset = 120.0;
    } else {
      num = r - g;
      offset = 240.0;
    }
  }
  const Real s = delta / (hi > Real(0.0) ? hi : Real(1.0));
  Real h = Real(60.0) * num / (delta > Real(0.0) ? delta : Real(1.0)) + Real(offset);
  if (h < Real(0.0)) h += Real(360.0);
  return {h, s, hi};
}

// 7 multiplies/divides: V scaled to 8 bits, the sector split of h, then the
// three hexcone ramps p, q, t (1 + 2 + 2).
template <class Real> Rgb8 hsv_to_rgb(Real h, Real s, Real v) {
  using std::floor;
  const Real value = v * Real(255.0);
  const Real hh = h / Real(60.0);
  const Real sector_floor = floor(hh);
  const Real f = hh - sector_floor;
  const Real p = value * (Real(1.0) - s);
  const Real q = value * (Real(1.0) - s * f);
  const Real t = value * (Real(1.0) - s * (Real(1.0) - f));

  int sector = static_cast<int>(to_double(sector_floor)) % 6;
  if (sector < 0) sector += 6;
  auto u8 = [](Real x) { return round_to_u8(to_double(x)); };
  switch (sector) {
  case 0: return {u8(value), u8(t), u8(p)};
  case 1: return {u8(q), u8(value), u8(p)};
  case 2: return {u8(p), u8(value), u8(t)};
  case 3: return {u8(p), u8(q), u8(value)};
  case 4: return {u8(t), u8(p), u8(value)};
  default: return {u8(value), u8(p), u8(q)};
  }
}

} // namespace kernel

} // namespace fcdf

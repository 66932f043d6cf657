#include "fcdfusion/flops.hpp"

namespace fcdf {

FlopRow per_pixel_flops(const FusionMethod &method) {
  switch (method.kind) {
  case MethodKind::RgbAvg:
    return {0, 0, 0, 0};
  case MethodKind::YiqAvg:
    return {9, 0, 9, 0};
  case MethodKind::HsvAvg:
    return method.hsv_gamma == 1.0 ? FlopRow{6, 0, 8, 0} : FlopRow{6, 0, 8, 1};
  case MethodKind::Fcd:
    // Generic gamma trades the squaring multiply for an exponentiation.
    return method.fcd.squared_fast_path() ? FlopRow{0, 7, 0, 0}
                                          : FlopRow{0, 6, 0, 1};
  }
  throw UnknownMethod(method.name());
}

FlopRow per_pixel_flops(std::string_view method_name) {
  return per_pixel_flops(parse_method(method_name));
}

std::uint64_t total_flops(const FusionMethod &method, int width, int height) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("image dimensions must be positive");
  return per_pixel_flops(method).total() * static_cast<std::uint64_t>(width) *
         static_cast<std::uint64_t>(height);
}

namespace {

// Accumulates the counter delta since the last mark into a stage.
class StageMeter {
public:
  StageMeter() : last_(CountedReal::counter()) {}
  void charge(FlopCount &stage) {
    const FlopCount now = CountedReal::counter();
    stage += now - last_;
    last_ = now;
  }

private:
  FlopCount last_;
};

} // namespace

FlopAudit audit_flops(const FusionMethod &method, const ImagePair &pair,
                      RgbImage *fused) {
  method.validate();
  using R = CountedReal;
  FlopAudit audit;
  RgbImage out(pair.width(), pair.height());
  auto vis = pair.visible().pixels();
  auto ir = pair.infrared().pixels();
  auto dst = out.pixels();
  StageMeter meter;

  for (std::size_t i = 0; i < vis.size(); ++i) {
    const Rgb8 c = vis[i];
    const std::uint8_t v = ir[i].v;
    switch (method.kind) {
    case MethodKind::RgbAvg:
      dst[i] = kernel::rgb_avg(c, v);
      meter.charge(audit.fusion);
      break;
    case MethodKind::YiqAvg: {
      const auto yiq = kernel::rgb_to_yiq<R>(c);
      meter.charge(audit.from_rgb);
      const auto f = kernel::yiq_avg_fuse(yiq, v);
      meter.charge(audit.fusion);
      dst[i] = kernel::yiq_to_rgb<R>(f.y, f.i, f.q);
      meter.charge(audit.to_rgb);
      break;
    }
    case MethodKind::HsvAvg: {
      const auto hsv = kernel::rgb_to_hsv<R>(c);
      meter.charge(audit.from_rgb);
      dst[i] = kernel::hsv_avg_to_rgb<R>(hsv, v, method.hsv_gamma);
      meter.charge(audit.to_rgb);
      break;
    }
    case MethodKind::Fcd:
      dst[i] = kernel::fuse_pixel<R>(c, v, method.fcd.gamma, method.fcd.averaging);
      meter.charge(audit.fusion);
      break;
    }
  }
  audit.pixels = vis.size();
  if (fused) *fused = std::move(out);
  return audit;
}

std::uint64_t measured_flop_audit(const FusionMethod &method,
                                  const ImagePair &pair) {
  return audit_flops(method, pair).total().flops();
}

} // namespace fcdf

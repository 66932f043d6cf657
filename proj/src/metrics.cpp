#include "fcdfusion/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fcdf {

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

void require_min(const GrayImage &img, int min_w, int min_h, const char *what) {
  if (img.width() < min_w || img.height() < min_h)
    throw ImageTooSmall(what, min_w, min_h, img.width(), img.height());
}

double px(const GrayImage &img, int x, int y) { return img.at(x, y).v; }

std::array<double, kSsimWindow> gaussian_taps() {
  std::array<double, kSsimWindow> w{};
  double sum = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - kSsimWindow / 2;
    w[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    sum += w[i];
  }
  for (auto &v : w) v /= sum;
  return w;
}

// Separable "valid" filtering of a row-major field.
std::vector<double> filter_valid(const std::vector<double> &src, int w, int h,
                                 const std::array<double, kSsimWindow> &taps) {
  const int ow = w - kSsimWindow + 1;
  const int oh = h - kSsimWindow + 1;
  std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k)
        acc += taps[k] * src[static_cast<std::size_t>(y) * w + x + k];
      tmp[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k)
        acc += taps[k] * tmp[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  return out;
}

} // namespace

std::optional<MetricDirection> metric_direction(std::string_view name) {
  for (const auto &m : kMetrics)
    if (m.name == name) return m.direction;
  return std::nullopt;
}

double color_angle(Rgb8 a, Rgb8 b) {
  const double ar = a.r, ag = a.g, ab = a.b;
  const double br = b.r, bg = b.g, bb = b.b;
  const double dot = ar * br + ag * bg + ab * bb;
  if ((ar == 0 && ag == 0 && ab == 0) || (br == 0 && bg == 0 && bb == 0))
    return 0.0;
  // atan2(|a x b|, a.b) equals arccos of the normalised dot product but
  // stays exact for collinear integer vectors.
  const double cx = ag * bb - ab * bg;
  const double cy = ab * br - ar * bb;
  const double cz = ar * bg - ag * br;
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
}

double color_deviation(const RgbImage &visible, const RgbImage &fused) {
  require_same_shape(visible, fused);
  auto v = visible.pixels();
  auto f = fused.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += color_angle(v[i], f[i]);
  return sum / static_cast<double>(v.size());
}

Histogram histogram(const GrayImage &img) {
  Histogram h{};
  for (auto p : img.pixels()) h[p.v] += 1.0;
  const double n = static_cast<double>(img.size());
  for (auto &c : h) c /= n;
  return h;
}

double entropy(const GrayImage &img) {
  double e = 0.0;
  for (double p : histogram(img)) e += plogp(p);
  return e;
}

double cross_entropy_single(const GrayImage &reference, const GrayImage &fused) {
  require_same_shape(reference, fused);
  const auto p = histogram(reference);
  const auto q = histogram(fused);
  const double eps = 1.0 / (2.0 * static_cast<double>(reference.size()));
  double ce = 0.0;
  for (int k = 0; k < 256; ++k)
    if (p[k] > 0.0) ce += p[k] * std::log2(p[k] / (q[k] > 0.0 ? q[k] : eps));
  return ce;
}

double mutual_information_single(const GrayImage &a, const GrayImage &b) {
  require_same_shape(a, b);
  std::vector<double> joint(256 * 256, 0.0);
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) joint[pa[i].v * 256 + pb[i].v] += 1.0;
  const double n = static_cast<double>(pa.size());
  Histogram ha{}, hb{};
  double hab = 0.0;
  for (int i = 0; i < 256; ++i)
    for (int j = 0; j < 256; ++j) {
      const double p = joint[i * 256 + j] / n;
      ha[i] += p;
      hb[j] += p;
      hab += plogp(p);
    }
  double ea = 0.0, eb = 0.0;
  for (int i = 0; i < 256; ++i) {
    ea += plogp(ha[i]);
    eb += plogp(hb[i]);
  }
  return ea + eb - hab;
}

double average_gradient(const GrayImage &img) {
  require_min(img, 2, 2, "average gradient");
  double sum = 0.0;
  for (int y = 0; y + 1 < img.height(); ++y)
    for (int x = 0; x + 1 < img.width(); ++x) {
      const double dx = px(img, x + 1, y) - px(img, x, y);
      const double dy = px(img, x, y + 1) - px(img, x, y);
      sum += std::sqrt((dx * dx + dy * dy) / 2.0);
    }
  return sum / (static_cast<double>(img.width() - 1) * (img.height() - 1));
}

double edge_intensity(const GrayImage &img) {
  require_min(img, 3, 3, "edge intensity");
  double sum = 0.0;
  for (int y = 1; y + 1 < img.height(); ++y)
    for (int x = 1; x + 1 < img.width(); ++x) {
      const double gx = (px(img, x + 1, y - 1) + 2 * px(img, x + 1, y) + px(img, x + 1, y + 1)) -
                        (px(img, x - 1, y - 1) + 2 * px(img, x - 1, y) + px(img, x - 1, y + 1));
      const double gy = (px(img, x - 1, y + 1) + 2 * px(img, x, y + 1) + px(img, x + 1, y + 1)) -
                        (px(img, x - 1, y - 1) + 2 * px(img, x, y - 1) + px(img, x + 1, y - 1));
      sum += std::sqrt(gx * gx + gy * gy);
    }
  return sum / (static_cast<double>(img.width() - 2) * (img.height() - 2));
}

double std_deviation(const GrayImage &img) {
  const double n = static_cast<double>(img.size());
  double mean = 0.0;
  for (auto p : img.pixels()) mean += p.v;
  mean /= n;
  double var = 0.0;
  for (auto p : img.pixels()) var += (p.v - mean) * (p.v - mean);
  return std::sqrt(var / n);
}

double spatial_frequency(const GrayImage &img) {
  require_min(img, 2, 2, "spatial frequency");
  double rf = 0.0, cf = 0.0;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x + 1 < img.width(); ++x) {
      const double d = px(img, x + 1, y) - px(img, x, y);
      rf += d * d;
    }
  for (int y = 0; y + 1 < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const double d = px(img, x, y + 1) - px(img, x, y);
      cf += d * d;
    }
  rf /= static_cast<double>(img.width() - 1) * img.height();
  cf /= static_cast<double>(img.height() - 1) * img.width();
  return std::sqrt(rf + cf);
}

double mse(const GrayImage &a, const GrayImage &b) {
  require_same_shape(a, b);
  auto pa = a.pixels();
  auto pb = b.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = double(pa[i].v) - double(pb[i].v);
    sum += d * d;
  }
  return sum / static_cast<double>(pa.size());
}

double psnr_single(const GrayImage &a, const GrayImage &b) {
  const double m = mse(a, b);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / m);
}

double rmse_single(const GrayImage &a, const GrayImage &b) {
  return std::sqrt(mse(a, b)) / 255.0;
}

double ssim_single(const GrayImage &a, const GrayImage &b) {
  require_same_shape(a, b);
  require_min(a, kSsimWindow, kSsimWindow, "SSIM");
  const int w = a.width(), h = a.height();
  const std::size_t n = a.size();
  std::vector<double> fa(n), fb(n), faa(n), fbb(n), fab(n);
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = pa[i].v;
    fb[i] = pb[i].v;
    faa[i] = fa[i] * fa[i];
    fbb[i] = fb[i] * fb[i];
    fab[i] = fa[i] * fb[i];
  }
  const auto taps = gaussian_taps();
  const auto mu_a = filter_valid(fa, w, h, taps);
  const auto mu_b = filter_valid(fb, w, h, taps);
  const auto e_aa = filter_valid(faa, w, h, taps);
  const auto e_bb = filter_valid(fbb, w, h, taps);
  const auto e_ab = filter_valid(fab, w, h, taps);

  constexpr double c1 = (0.01 * 255) * (0.01 * 255);
  constexpr double c2 = (0.03 * 255) * (0.03 * 255);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i], mb = mu_b[i];
    const double va = e_aa[i] - ma * ma;
    const double vb = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    sum += ((2 * ma * mb + c1) * (2 * cov + c2)) /
           ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return sum / static_cast<double>(mu_a.size());
}

namespace {

// Shared grayscale views of one evaluation.
struct GrayViews {
  GrayImage visible;
  const GrayImage &infrared;
  GrayImage fused;

  GrayViews(const ImagePair &pair, const RgbImage &f)
      : visible(to_gray(pair.visible())), infrared(pair.infrared()),
        fused(to_gray(f)) {
    require_same_shape(pair.visible(), f);
  }

  template <class Fn> double mean(Fn fn) const {
    return 0.5 * (fn(visible, fused) + fn(infrared, fused));
  }
};

} // namespace

double cross_entropy(const ImagePair &pair, const RgbImage &fused) {
  return GrayViews(pair, fused).mean(cross_entropy_single);
}

double mutual_information(const ImagePair &pair, const RgbImage &fused) {
  const GrayViews g(pair, fused);
  return mutual_information_single(g.visible, g.fused) +
         mutual_information_single(g.infrared, g.fused);
}

double psnr(const ImagePair &pair, const RgbImage &fused) {
  return GrayViews(pair, fused).mean(psnr_single);
}

double rmse(const ImagePair &pair, const RgbImage &fused) {
  return GrayViews(pair, fused).mean(rmse_single);
}

double ssim(const ImagePair &pair, const RgbImage &fused) {
  return GrayViews(pair, fused).mean(ssim_single);
}

std::optional<double> MetricReport::get(std::string_view name) const {
  auto it = values.find(std::string(name));
  if (it == values.end()) return std::nullopt;
  return it->second;
}

MetricReport evaluate_all(const ImagePair &pair, const RgbImage &fused,
                          std::string method) {
  MetricReport report;
  report.pair_id = pair.id();
  report.method = std::move(method);
  const GrayViews g(pair, fused);

  auto record = [&](const char *name, auto &&compute) {
    try {
      report.values[name] = compute();
    } catch (const std::invalid_argument &e) {
      report.errors[name] = e.what();
    }
  };
  record("CD", [&] { return color_deviation(pair.visible(), fused); });
  record("CE", [&] { return g.mean(cross_entropy_single); });
  record("EN", [&] { return entropy(g.fused); });
  record("MI", [&] {
    return mutual_information_single(g.visible, g.fused) +
           mutual_information_single(g.infrared, g.fused);
  });
  record("AG", [&] { return average_gradient(g.fused); });
  record("EI", [&] { return edge_intensity(g.fused); });
  record("SD", [&] { return std_deviation(g.fused); });
  record("SF", [&] { return spatial_frequency(g.fused); });
  record("PSNR", [&] { return g.mean(psnr_single); });
  record("SSIM", [&] { return g.mean(ssim_single); });
  record("RMSE", [&] { return g.mean(rmse_single); });
  return report;
}

} // namespace fcdf

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcdfusion/image.hpp"

namespace fcdf {

// Grayscale evaluation protocol: structural/statistical metrics look at the
// BT.601 luma of the visible and fused images and at the raw infrared image.
// CD alone looks at colour.

enum class MetricDirection { HigherIsBetter, LowerIsBetter };

struct MetricInfo {
  std::string_view name;
  MetricDirection direction;
};

// Canonical report keys, in report column order.
inline constexpr std::array<MetricInfo, 11> kMetrics{{
    {"CD", MetricDirection::LowerIsBetter},
    {"CE", MetricDirection::LowerIsBetter},
    {"EN", MetricDirection::HigherIsBetter},
    {"MI", MetricDirection::HigherIsBetter},
    {"AG", MetricDirection::HigherIsBetter},
    {"EI", MetricDirection::HigherIsBetter},
    {"SD", MetricDirection::HigherIsBetter},
    {"SF", MetricDirection::HigherIsBetter},
    {"PSNR", MetricDirection::HigherIsBetter},
    {"SSIM", MetricDirection::HigherIsBetter},
    {"RMSE", MetricDirection::LowerIsBetter},
}};

std::optional<MetricDirection> metric_direction(std::string_view name);

/// Mean angle in radians between corresponding visible and fused colour
/// vectors. Pixels where either vector is zero contribute 0.
double color_deviation(const RgbImage &visible, const RgbImage &fused);

// Angle between two colours, in [0, pi].
double color_angle(Rgb8 a, Rgb8 b);

using Histogram = std::array<double, 256>;

// Normalised 256-bin histogram.
Histogram histogram(const GrayImage &img);

double entropy(const GrayImage &img);

// Relative entropy sum p log2(p/q) of the two histograms; empty bins of the
// second histogram are replaced by 1 / (2 * pixel count).
double cross_entropy_single(const GrayImage &reference, const GrayImage &fused);

// Mutual information from the 256x256 joint histogram, in bits.
double mutual_information_single(const GrayImage &a, const GrayImage &b);

double average_gradient(const GrayImage &img);
double edge_intensity(const GrayImage &img);
double std_deviation(const GrayImage &img);
double spatial_frequency(const GrayImage &img);

double mse(const GrayImage &a, const GrayImage &b);
// +inf when the images are identical.
double psnr_single(const GrayImage &a, const GrayImage &b);
// sqrt(MSE) / 255.
double rmse_single(const GrayImage &a, const GrayImage &b);
// Gaussian-windowed SSIM (11x11, sigma 1.5, K1 0.01, K2 0.03, L 255) averaged
// over every fully contained window position.
double ssim_single(const GrayImage &a, const GrayImage &b);

// Dual-reference forms. The visible side is compared through its luma.
// CE, PSNR, RMSE and SSIM average the two references; MI sums them.
double cross_entropy(const ImagePair &pair, const RgbImage &fused);
double mutual_information(const ImagePair &pair, const RgbImage &fused);
double psnr(const ImagePair &pair, const RgbImage &fused);
double rmse(const ImagePair &pair, const RgbImage &fused);
double ssim(const ImagePair &pair, const RgbImage &fused);

struct MetricReport {
  std::string pair_id;
  std::string method;
  std::map<std::string, double> values;
  // metric name -> reason, for metrics that could not be computed
  std::map<std::string, std::string> errors;

  std::optional<double> get(std::string_view name) const;
};

// Every metric in kMetrics. Size errors become entries in `errors`.
MetricReport evaluate_all(const ImagePair &pair, const RgbImage &fused,
                          std::string method = {});

} // namespace fcdf

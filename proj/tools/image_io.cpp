#include "fcdfusion/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace fcdf::io {

namespace {

cv::Mat load_8bit(const std::filesystem::path &path) {
  if (!std::filesystem::is_regular_file(path))
    throw ImageIoError("cannot read image: " + path.string());
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (m.empty()) throw ImageIoError("cannot decode image: " + path.string());
  if (m.depth() != CV_8U)
    throw ImageIoError("only 8-bit images are supported: " + path.string());
  if (m.channels() != 1 && m.channels() != 3 && m.channels() != 4)
    throw ImageIoError("unsupported channel count " +
                       std::to_string(m.channels()) + ": " + path.string());
  return m;
}

// OpenCV hands back BGR(A) order.
Rgb8 rgb_at(const cv::Mat &m, int x, int y) {
  const auto *p = m.ptr<std::uint8_t>(y) + static_cast<std::size_t>(x) * m.channels();
  if (m.channels() == 1) return {p[0], p[0], p[0]};
  return {p[2], p[1], p[0]};
}

void write_mat(const std::filesystem::path &path, const cv::Mat &m) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), m, {cv::IMWRITE_PNG_COMPRESSION, 6});
  } catch (const cv::Exception &e) {
    throw ImageIoError("cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw ImageIoError("cannot write " + path.string());
}

} // namespace

bool is_supported_extension(const std::filesystem::path &path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".ppm" || ext == ".bmp";
}

RgbImage read_rgb(const std::filesystem::path &path) {
  const cv::Mat m = load_8bit(path);
  RgbImage out(m.cols, m.rows);
  for (int y = 0; y < m.rows; ++y)
    for (int x = 0; x < m.cols; ++x) out.at(x, y) = rgb_at(m, x, y);
  return out;
}

GrayImage read_infrared(const std::filesystem::path &path,
                        std::vector<std::string> *warnings) {
  const cv::Mat m = load_8bit(path);
  GrayImage out(m.cols, m.rows);
  bool converted = false;
  for (int y = 0; y < m.rows; ++y)
    for (int x = 0; x < m.cols; ++x) {
      const Rgb8 c = rgb_at(m, x, y);
      if (c.r == c.g && c.g == c.b) {
        out.at(x, y) = {c.r};
      } else {
        out.at(x, y) = luma(c);
        converted = true;
      }
    }
  if (converted && warnings)
    warnings->push_back("infrared image " + path.string() +
                        " has unequal channels; converted with BT.601 luma");
  return out;
}

void write_png(const std::filesystem::path &path, const RgbImage &image) {
  cv::Mat m(image.height(), image.width(), CV_8UC3);
  for (int y = 0; y < image.height(); ++y) {
    auto *dst = m.ptr<std::uint8_t>(y);
    for (const Rgb8 &p : image.row(y)) {
      *dst++ = p.b;
      *dst++ = p.g;
      *dst++ = p.r;
    }
  }
  write_mat(path, m);
}

void write_png(const std::filesystem::path &path, const GrayImage &image) {
  cv::Mat m(image.height(), image.width(), CV_8UC1);
  for (int y = 0; y < image.height(); ++y) {
    auto *dst = m.ptr<std::uint8_t>(y);
    for (const Gray8 &p : image.row(y)) *dst++ = p.v;
  }
  write_mat(path, m);
}

void write_ppm(const std::filesystem::path &path, const RgbImage &image) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ImageIoError("cannot write " + path.string());
  f << "P6\n" << image.width() << ' ' << image.height() << "\n255\n";
  for (const Rgb8 &p : image.pixels()) {
    const char px[3] = {char(p.r), char(p.g), char(p.b)};
    f.write(px, 3);
  }
  if (!f) throw ImageIoError("cannot write " + path.string());
}

} // namespace fcdf::io

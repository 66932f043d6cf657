#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcdfusion/image.hpp"

namespace fcdf::io {

class ImageIoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// PNG, PPM and BMP at 8 bits per channel. An alpha channel is dropped and a
// single-channel file is replicated into RGB.
RgbImage read_rgb(const std::filesystem::path &path);

// Single-channel files load directly. Three-channel files are accepted when
// every pixel has equal channels; otherwise they are converted with BT.601
// luma and a warning is appended.
GrayImage read_infrared(const std::filesystem::path &path,
                        std::vector<std::string> *warnings = nullptr);

// 8-bit RGB PNG without alpha. Parent directories must exist.
void write_png(const std::filesystem::path &path, const RgbImage &image);
void write_png(const std::filesystem::path &path, const GrayImage &image);

// Binary PPM (P6); used for dependency-free fixtures.
void write_ppm(const std::filesystem::path &path, const RgbImage &image);

bool is_supported_extension(const std::filesystem::path &path);

} // namespace fcdf::io

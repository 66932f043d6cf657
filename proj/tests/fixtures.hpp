#pragma once

// Synthetic on-disk datasets for the batch front end.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "fcdfusion/io.hpp"
#include "oracles.hpp"

namespace fixture {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    static std::atomic<int> serial{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = fs::temp_directory_path() /
            ("fcdf-" + tag + "-" + std::to_string(stamp) + "-" + std::to_string(serial++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const fs::path &path() const { return path_; }
  fs::path operator/(const std::string &name) const { return path_ / name; }

private:
  fs::path path_;
};

inline void write_pair(const fs::path &dir, const std::string &id, int w, int h,
                       oracle::Rng &rng, const std::string &ext = ".png") {
  const auto vis = rng.rgb_image(w, h);
  const auto ir = rng.gray_image(w, h);
  if (ext == ".ppm") {
    fcdf::io::write_ppm(dir / (id + "_vi.ppm"), vis);
    fcdf::io::write_ppm(dir / (id + "_ir.ppm"), fcdf::gray_to_rgb(ir));
  } else {
    fcdf::io::write_png(dir / (id + "_vi" + ext), vis);
    fcdf::io::write_png(dir / (id + "_ir" + ext), ir);
  }
}

// `count` pairs named p00, p01, ...
inline void write_dataset(const fs::path &dir, int count, int w, int h, std::uint64_t seed) {
  fs::create_directories(dir);
  oracle::Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const std::string id = (i < 10 ? "p0" : "p") + std::to_string(i);
    write_pair(dir, id, w, h, rng);
  }
}

inline std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<std::string> lines(const fs::path &p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

} // namespace fixture

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcdf {

class DatasetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PairEntry {
  std::string id;
  std::filesystem::path visible;
  std::filesystem::path infrared;
};

struct DatasetManifest {
  std::vector<PairEntry> pairs;
  std::vector<std::string> warnings; // orphan files and similar, non-fatal
};

/// Pairs found under `root`. A `manifest.tsv` in the directory takes over;
/// otherwise files named `<id>_vi.<ext>` and `<id>_ir.<ext>` (png, ppm, bmp)
/// are matched and listed by id. Throws DatasetError when the directory is
/// unreadable or yields no pairs.
DatasetManifest discover_pairs(const std::filesystem::path &root);

/// Three tab-separated columns per line: id, visible path, infrared path.
/// Relative paths resolve against the manifest's directory. Blank lines and
/// lines starting with '#' are skipped. Ids must be unique and every file
/// must exist.
DatasetManifest load_manifest(const std::filesystem::path &manifest);

} // namespace fcdf

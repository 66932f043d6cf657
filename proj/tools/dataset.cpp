#include "fcdfusion/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fcdfusion/io.hpp"

namespace fcdf {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_tabs(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) out.push_back(field);
  return out;
}

} // namespace

DatasetManifest load_manifest(const fs::path &manifest) {
  std::ifstream in(manifest);
  if (!in) throw DatasetError("cannot read manifest " + manifest.string());
  const fs::path base = manifest.parent_path();
  DatasetManifest out;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3)
      throw DatasetError(manifest.string() + ":" + std::to_string(lineno) +
                         ": expected 3 tab-separated columns, got " +
                         std::to_string(cols.size()));
    PairEntry e{cols[0], base / cols[1], base / cols[2]};
    if (!seen.insert(e.id).second)
      throw DatasetError(manifest.string() + ":" + std::to_string(lineno) +
                         ": duplicate pair id '" + e.id + "'");
    for (const auto &p : {e.visible, e.infrared})
      if (!fs::exists(p))
        throw DatasetError(manifest.string() + ":" + std::to_string(lineno) +
                           ": missing file " + p.string());
    out.pairs.push_back(std::move(e));
  }
  if (out.pairs.empty())
    throw DatasetError("manifest " + manifest.string() + " lists no pairs");
  return out;
}

DatasetManifest discover_pairs(const fs::path &root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw DatasetError("cannot read dataset directory " + root.string());
  if (fs::exists(root / "manifest.tsv")) return load_manifest(root / "manifest.tsv");

  std::map<std::string, fs::path> visible, infrared;
  DatasetManifest out;
  fs::directory_iterator it(root, ec);
  if (ec) throw DatasetError("cannot read dataset directory " + root.string() +
                             ": " + ec.message());
  for (const auto &entry : it) {
    if (!entry.is_regular_file() || !io::is_supported_extension(entry.path()))
      continue;
    const std::string stem = entry.path().stem().string();
    if (stem.size() < 4) continue;
    const std::string suffix = stem.substr(stem.size() - 3);
    const std::string id = stem.substr(0, stem.size() - 3);
    if (id.empty()) continue;
    if (suffix != "_vi" && suffix != "_ir") continue;
    auto &slot = suffix == "_vi" ? visible : infrared;
    if (!slot.emplace(id, entry.path()).second)
      out.warnings.push_back("several files for '" + stem + "'; keeping " +
                             slot[id].filename().string());
  }

  for (const auto &[id, vis] : visible) {
    auto ir = infrared.find(id);
    if (ir == infrared.end()) {
      out.warnings.push_back("orphan visible image " + vis.filename().string());
      continue;
    }
    out.pairs.push_back({id, vis, ir->second});
  }
  for (const auto &[id, ir] : infrared)
    if (!visible.count(id))
      out.warnings.push_back("orphan infrared image " + ir.filename().string());

  if (out.pairs.empty()) {
    std::string msg = "no image pairs found in " + root.string();
    for (const auto &w : out.warnings) msg += "; " + w;
    throw DatasetError(msg);
  }
  return out;
}

} // namespace fcdf

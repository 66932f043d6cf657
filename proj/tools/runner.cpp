#include "fcdfusion/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "fcdfusion/flops.hpp"
#include "fcdfusion/io.hpp"
#include "fcdfusion/parallel.hpp"

namespace fcdf {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- config --

std::vector<FusionMethod> RunConfig::resolved_methods() const {
  std::vector<FusionMethod> out = methods;
  for (auto &m : out)
    if (m.kind == MethodKind::Fcd) m.fcd = FcdParams{gamma, !no_averaging};
  return out;
}

void RunConfig::validate() const {
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  FcdParams{gamma, !no_averaging}.validate();
  for (double g : gammas)
    if (!std::isfinite(g) || g <= 0.0)
      throw std::invalid_argument("ablation gammas must be finite and > 0");
  if (reps < 5) throw std::invalid_argument("bench needs at least 5 repetitions");
}

namespace {

std::vector<std::string> split_commas(std::string_view list) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(list)};
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

} // namespace

std::vector<FusionMethod> parse_method_list(std::string_view list) {
  std::vector<FusionMethod> out;
  for (const auto &name : split_commas(list)) {
    auto m = parse_method(name);
    const bool dup = std::any_of(out.begin(), out.end(),
                                 [&](const FusionMethod &o) { return o.kind == m.kind; });
    if (!dup) out.push_back(m);
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view list) {
  std::vector<double> out;
  for (const auto &item : split_commas(list)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::optional<AblationKind> parse_ablation_kind(std::string_view s) {
  if (s == "gamma") return AblationKind::Gamma;
  if (s == "averaging") return AblationKind::Averaging;
  return std::nullopt;
}

// --------------------------------------------------------------- helpers --

namespace {

struct LoadedPair {
  std::optional<ImagePair> pair;
  std::string error;
  std::vector<std::string> warnings;
};

LoadedPair load_pair(const PairEntry &entry) {
  LoadedPair out;
  try {
    auto vis = io::read_rgb(entry.visible);
    auto ir = io::read_infrared(entry.infrared, &out.warnings);
    out.pair = make_pair(entry.id, std::move(vis), std::move(ir));
  } catch (const std::exception &e) {
    out.error = e.what();
  }
  return out;
}

// Pair-level work queue. Each index is handled by exactly one worker; callers
// store results by index so output order never depends on scheduling.
template <class Fn> void for_each_index(std::size_t n, unsigned threads, Fn &&fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, resolve_threads(threads)), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < n; i = next++) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
}

std::ofstream open_report(const fs::path &path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io::ImageIoError("cannot write report " + path.string());
  return f;
}

fs::path means_path(const fs::path &report) {
  fs::path p = report;
  p.replace_filename(report.stem().string() + "_means" + report.extension().string());
  return p;
}

bool ensure_dir(const fs::path &dir, RunResult &result) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    result.warnings.push_back("cannot create output directory " + dir.string() +
                              (ec ? ": " + ec.message() : ""));
    result.exit_code = kExitFatal;
    return false;
  }
  return true;
}

int exit_for(std::size_t failed, std::size_t total) {
  if (failed == 0) return kExitOk;
  return failed == total ? kExitFatal : kExitPartial;
}

void append(std::vector<std::string> &dst, const std::vector<std::string> &src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

std::string metric_cell(const std::map<std::string, double> &values, std::string_view name) {
  auto it = values.find(std::string(name));
  return it == values.end() ? std::string{} : format_real(it->second);
}

RgbImage hconcat(const std::vector<RgbImage> &tiles) {
  int width = 0;
  for (const auto &t : tiles) width += t.width();
  RgbImage out(width, tiles.front().height());
  int x0 = 0;
  for (const auto &t : tiles) {
    for (int y = 0; y < t.height(); ++y)
      std::copy(t.row(y).begin(), t.row(y).end(), out.row(y).begin() + x0);
    x0 += t.width();
  }
  return out;
}

} // namespace

// ------------------------------------------------------------------ fuse --

RunResult run_fuse(const RunConfig &config, const DatasetManifest &manifest) {
  config.validate();
  RunResult result;
  result.warnings = manifest.warnings;
  const auto methods = config.resolved_methods();
  for (const auto &m : methods)
    if (!ensure_dir(config.out_dir / m.name(), result)) return result;

  struct Outcome {
    std::string error;
    std::vector<std::string> warnings;
    std::vector<fs::path> written;
  };
  std::vector<Outcome> outcomes(manifest.pairs.size());
  for_each_index(manifest.pairs.size(), config.threads, [&](std::size_t i) {
    const auto &entry = manifest.pairs[i];
    auto &out = outcomes[i];
    auto loaded = load_pair(entry);
    out.warnings = std::move(loaded.warnings);
    if (!loaded.pair) {
      out.error = loaded.error;
      return;
    }
    try {
      for (const auto &m : methods) {
        const fs::path path = config.out_dir / m.name() / (entry.id + ".png");
        io::write_png(path, fuse_image_with(m, *loaded.pair));
        out.written.push_back(path);
      }
    } catch (const std::exception &e) {
      out.error = e.what();
    }
  });

  std::size_t failed = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    append(result.warnings, outcomes[i].warnings);
    if (!outcomes[i].error.empty()) {
      ++failed;
      result.warnings.push_back("skipped pair " + manifest.pairs[i].id + ": " +
                                outcomes[i].error);
    }
    result.written.insert(result.written.end(), outcomes[i].written.begin(),
                          outcomes[i].written.end());
  }
  if (!config.report.empty()) {
    auto f = open_report(config.report);
    f << kFuseStatusHeader << '\n';
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const bool ok = outcomes[i].error.empty();
      std::string detail = ok ? std::to_string(outcomes[i].written.size()) + " images"
                              : outcomes[i].error;
      std::replace(detail.begin(), detail.end(), ',', ';');
      f << manifest.pairs[i].id << ',' << (ok ? "ok" : "skipped") << ',' << detail << '\n';
    }
    result.written.push_back(config.report);
  }
  result.exit_code = exit_for(failed, manifest.pairs.size());
  return result;
}

// ------------------------------------------------------------------ eval --

std::vector<MethodMeans> dataset_means(const std::vector<EvalRow> &rows,
                                       const std::vector<std::string> &methods) {
  std::vector<MethodMeans> out;
  for (const auto &method : methods) {
    MethodMeans mm;
    mm.method = method;
    std::map<std::string, std::pair<double, std::size_t>> finite;
    std::map<std::string, std::size_t> infinite;
    double flops = 0.0;
    for (const auto &row : rows) {
      if (row.report.method != method) continue;
      ++mm.pairs;
      flops += static_cast<double>(row.flops_total);
      for (const auto &[name, v] : row.report.values) {
        if (std::isfinite(v)) {
          finite[name].first += v;
          ++finite[name].second;
        } else {
          ++infinite[name];
        }
      }
    }
    for (const auto &info : kMetrics) {
      const std::string name(info.name);
      if (auto it = finite.find(name); it != finite.end() && it->second.second > 0)
        mm.values[name] = it->second.first / static_cast<double>(it->second.second);
      else if (infinite.count(name))
        mm.values[name] = std::numeric_limits<double>::infinity();
    }
    mm.flops_total = mm.pairs ? flops / static_cast<double>(mm.pairs) : 0.0;
    out.push_back(std::move(mm));
  }
  return out;
}

RunResult run_eval(const RunConfig &config, const DatasetManifest &manifest) {
  config.validate();
  RunResult result;
  result.warnings = manifest.warnings;
  const auto methods = config.resolved_methods();
  const fs::path report = config.report.empty() ? config.out_dir / "eval.csv" : config.report;

  struct Outcome {
    std::string error;
    std::vector<std::string> warnings;
    std::vector<EvalRow> rows;
  };
  std::vector<Outcome> outcomes(manifest.pairs.size());
  for_each_index(manifest.pairs.size(), config.threads, [&](std::size_t i) {
    const auto &entry = manifest.pairs[i];
    auto &out = outcomes[i];
    auto loaded = load_pair(entry);
    out.warnings = std::move(loaded.warnings);
    if (!loaded.pair) {
      out.error = loaded.error;
      return;
    }
    const auto &pair = *loaded.pair;
    for (const auto &m : methods) {
      std::optional<RgbImage> fused;
      if (config.fused_dir.empty()) {
        fused = fuse_image_with(m, pair);
      } else {
        const fs::path path = config.fused_dir / m.name() / (entry.id + ".png");
        try {
          fused = io::read_rgb(path);
          require_same_shape(pair.visible(), *fused);
        } catch (const std::exception &e) {
          out.warnings.push_back("no usable fused image for " + entry.id + "/" +
                                 m.name() + ", row omitted: " + e.what());
          continue;
        }
      }
      out.rows.push_back({evaluate_all(pair, *fused, m.name()),
                          total_flops(m, pair.width(), pair.height())});
      for (const auto &[name, why] : out.rows.back().report.errors)
        out.warnings.push_back(entry.id + "/" + m.name() + ": " + name + " unavailable: " + why);
    }
  });

  std::vector<EvalRow> rows;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    append(result.warnings, outcomes[i].warnings);
    if (!outcomes[i].error.empty()) {
      ++failed;
      result.warnings.push_back("skipped pair " + manifest.pairs[i].id + ": " +
                                outcomes[i].error);
    }
    for (auto &r : outcomes[i].rows) rows.push_back(std::move(r));
  }

  auto f = open_report(report);
  f << kEvalHeader << '\n';
  for (const auto &row : rows) {
    f << row.report.pair_id << ',' << row.report.method;
    for (const auto &info : kMetrics) f << ',' << metric_cell(row.report.values, info.name);
    f << ',' << row.flops_total << '\n';
  }
  result.written.push_back(report);

  std::vector<std::string> names;
  for (const auto &m : methods) names.push_back(m.name());
  const fs::path means = means_path(report);
  auto g = open_report(means);
  g << kEvalMeansHeader << '\n';
  for (const auto &mm : dataset_means(rows, names)) {
    g << mm.method << ',' << mm.pairs;
    for (const auto &info : kMetrics) g << ',' << metric_cell(mm.values, info.name);
    g << ',' << format_real(mm.flops_total) << '\n';
  }
  result.written.push_back(means);
  result.exit_code = exit_for(failed, manifest.pairs.size());
  return result;
}

// -------------------------------------------------------------- ablation --

RunResult run_ablation(AblationKind kind, const RunConfig &config,
                       const DatasetManifest &manifest) {
  config.validate();
  RunResult result;
  result.warnings = manifest.warnings;
  const std::string tag = kind == AblationKind::Gamma ? "ablate-gamma" : "ablate-averaging";
  const fs::path root = config.out_dir / tag;
  const fs::path report = config.report.empty() ? config.out_dir / (tag + ".csv") : config.report;
  if (kind == AblationKind::Gamma && config.gammas.empty())
    throw std::invalid_argument("gamma ablation needs at least one gamma");

  struct Setting {
    std::string name;
    FusionMethod method;
  };
  std::vector<Setting> settings;
  if (kind == AblationKind::Gamma) {
    settings.push_back({"hsv-avg", FusionMethod::hsv_avg()});
    for (double g : config.gammas)
      settings.push_back({"fcd_g" + format_real(g),
                          FusionMethod::fcdfusion({g, !config.no_averaging})});
  } else {
    settings.push_back({"fcd_avg", FusionMethod::fcdfusion({config.gamma, true})});
    settings.push_back({"fcd_noavg", FusionMethod::fcdfusion({config.gamma, false})});
  }

  struct Outcome {
    std::string error;
    std::vector<std::string> warnings;
    std::vector<std::string> lines;
    std::vector<fs::path> written;
  };
  std::vector<Outcome> outcomes(manifest.pairs.size());
  for_each_index(manifest.pairs.size(), config.threads, [&](std::size_t i) {
    const auto &entry = manifest.pairs[i];
    auto &out = outcomes[i];
    auto loaded = load_pair(entry);
    out.warnings = std::move(loaded.warnings);
    if (!loaded.pair) {
      out.error = loaded.error;
      return;
    }
    const auto &pair = *loaded.pair;
    try {
      const fs::path dir = root / entry.id;
      fs::create_directories(dir);
      std::vector<RgbImage> tiles{pair.visible(), gray_to_rgb(pair.infrared())};
      for (const auto &s : settings) {
        auto fused = fuse_image_with(s.method, pair);
        const GrayImage fused_gray = to_gray(fused);
        const bool is_fcd = s.method.kind == MethodKind::Fcd;
        std::ostringstream line;
        line << entry.id << ',' << s.name << ','
             << format_real(is_fcd ? s.method.fcd.gamma : s.method.hsv_gamma) << ','
             << (is_fcd ? (s.method.fcd.averaging ? "1" : "0") : "") << ','
             << format_real(color_deviation(pair.visible(), fused)) << ','
             << format_real(entropy(fused_gray)) << ','
             << format_real(std_deviation(fused_gray));
        out.lines.push_back(line.str());
        const fs::path path = dir / (s.name + ".png");
        io::write_png(path, fused);
        out.written.push_back(path);
        tiles.push_back(std::move(fused));
      }
      const fs::path grid = dir / "grid.png";
      io::write_png(grid, hconcat(tiles));
      out.written.push_back(grid);
    } catch (const std::exception &e) {
      out.error = e.what();
    }
  });

  auto f = open_report(report);
  f << kAblationHeader << '\n';
  std::size_t failed = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    append(result.warnings, outcomes[i].warnings);
    if (!outcomes[i].error.empty()) {
      ++failed;
      result.warnings.push_back("skipped pair " + manifest.pairs[i].id + ": " +
                                outcomes[i].error);
      continue;
    }
    for (const auto &l : outcomes[i].lines) f << l << '\n';
    result.written.insert(result.written.end(), outcomes[i].written.begin(),
                          outcomes[i].written.end());
  }
  result.written.push_back(report);
  result.exit_code = exit_for(failed, manifest.pairs.size());
  return result;
}

// ----------------------------------------------------------------- bench --

RunResult run_bench(const RunConfig &config, const DatasetManifest &manifest) {
  config.validate();
  RunResult result;
  result.warnings = manifest.warnings;
  const fs::path report = config.report.empty() ? config.out_dir / "bench.csv" : config.report;

  std::vector<ImagePair> pairs;
  std::size_t failed = 0;
  for (const auto &entry : manifest.pairs) {
    auto loaded = load_pair(entry);
    append(result.warnings, loaded.warnings);
    if (loaded.pair) {
      pairs.push_back(std::move(*loaded.pair));
    } else {
      ++failed;
      result.warnings.push_back("skipped pair " + entry.id + ": " + loaded.error);
    }
  }

  auto f = open_report(report);
  f << kBenchHeader << '\n';
  using clock = std::chrono::steady_clock;
  for (const auto &m : config.resolved_methods()) {
    std::uint64_t pixels = 0, model = 0, audited = 0;
    for (const auto &p : pairs) {
      pixels += static_cast<std::uint64_t>(p.width()) * p.height();
      model += total_flops(m, p.width(), p.height());
      audited += measured_flop_audit(m, p);
    }
    // Timings are single-threaded; one warmup pass, then the median pass.
    std::vector<double> ns_per_pixel;
    std::size_t sink = 0;
    for (int rep = 0; rep <= config.reps; ++rep) {
      const auto t0 = clock::now();
      for (const auto &p : pairs) sink += fuse_image_with(m, p).pixels()[0].r;
      const auto t1 = clock::now();
      if (rep > 0 && pixels > 0)
        ns_per_pixel.push_back(
            std::chrono::duration<double, std::nano>(t1 - t0).count() /
            static_cast<double>(pixels));
    }
    double median = std::numeric_limits<double>::quiet_NaN();
    if (!ns_per_pixel.empty()) {
      std::sort(ns_per_pixel.begin(), ns_per_pixel.end());
      const std::size_t n = ns_per_pixel.size();
      median = n % 2 ? ns_per_pixel[n / 2]
                     : 0.5 * (ns_per_pixel[n / 2 - 1] + ns_per_pixel[n / 2]);
    }
    (void)sink;
    f << m.name() << ',' << pixels << ',' << per_pixel_flops(m).total() << ','
      << model << ',' << audited << ',' << format_real(median) << ','
      << format_real(median > 0 ? 1e3 / median : std::numeric_limits<double>::infinity())
      << '\n';
  }
  result.written.push_back(report);
  result.exit_code = exit_for(failed, manifest.pairs.size());
  return result;
}

} // namespace fcdf

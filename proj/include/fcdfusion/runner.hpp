#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcdfusion/baselines.hpp"
#include "fcdfusion/dataset.hpp"
#include "fcdfusion/metrics.hpp"

namespace fcdf {

enum ExitCode : int { kExitOk = 0, kExitPartial = 1, kExitFatal = 2 };

struct RunConfig {
  std::vector<FusionMethod> methods;
  double gamma = 2.0;        // FCDFusion exponent
  bool no_averaging = false; // FCDFusion without the k averaging step
  std::filesystem::path out_dir = "out";
  std::filesystem::path report; // empty: subcommand default under out_dir
  unsigned threads = 1;         // 0 = hardware concurrency
  std::vector<double> gammas{0.5, 1.0, 2.0, 2.2}; // ablation settings
  int reps = 5;                                    // timed bench repetitions
  std::filesystem::path fused_dir; // eval: read fused images instead of fusing

  // Methods with the FCDFusion gamma/averaging settings applied.
  std::vector<FusionMethod> resolved_methods() const;
  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// "fcd,rgb,yiq,hsv" -> methods; throws UnknownMethod.
std::vector<FusionMethod> parse_method_list(std::string_view list);
// "0.5,1,2" -> values; throws std::invalid_argument.
std::vector<double> parse_real_list(std::string_view list);

// Six significant digits, '.' separator, literal inf / nan.
std::string format_real(double v);

inline constexpr std::string_view kEvalHeader =
    "pair_id,method,CD,CE,EN,MI,AG,EI,SD,SF,PSNR,SSIM,RMSE,flops_total";
inline constexpr std::string_view kEvalMeansHeader =
    "method,pairs,CD,CE,EN,MI,AG,EI,SD,SF,PSNR,SSIM,RMSE,flops_total";
inline constexpr std::string_view kBenchHeader =
    "method,pixels,flops_per_pixel,model_flops,audited_flops,ns_per_pixel,mpix_per_s";
inline constexpr std::string_view kAblationHeader =
    "pair_id,setting,gamma,averaging,CD,EN,SD";
inline constexpr std::string_view kFuseStatusHeader = "pair_id,status,detail";

struct EvalRow {
  MetricReport report;
  std::uint64_t flops_total = 0;
};

// Per-method dataset means over `rows`, in `methods` order. Non-finite values
// (PSNR of identical images) and missing metrics are left out of each mean.
struct MethodMeans {
  std::string method;
  std::size_t pairs = 0;
  std::map<std::string, double> values;
  double flops_total = 0.0;
};
std::vector<MethodMeans> dataset_means(const std::vector<EvalRow> &rows,
                                       const std::vector<std::string> &methods);

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> written;
};

// <out>/<method>/<id>.png for every pair and method. With a report path a
// status CSV is written as well.
RunResult run_fuse(const RunConfig &config, const DatasetManifest &manifest);

// Metric CSV at `report` (default <out>/eval.csv) plus per-method means in
// <report stem>_means.csv.
RunResult run_eval(const RunConfig &config, const DatasetManifest &manifest);

enum class AblationKind { Gamma, Averaging };
std::optional<AblationKind> parse_ablation_kind(std::string_view s);

// Fused variants and a side-by-side grid per pair under <out>/ablate-<kind>/,
// CD/EN/SD per setting in `report` (default <out>/ablate-<kind>.csv).
RunResult run_ablation(AblationKind kind, const RunConfig &config,
                       const DatasetManifest &manifest);

// Model vs audited FLOPs and single-thread timing per method, written to
// `report` (default <out>/bench.csv).
RunResult run_bench(const RunConfig &config, const DatasetManifest &manifest);

} // namespace fcdf

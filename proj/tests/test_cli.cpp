#include "doctest.h"

#include <cstdlib>

#include "fcdfusion/runner.hpp"
#include "fixtures.hpp"

using namespace fcdf;
using fixture::TempDir;
namespace fs = std::filesystem;

namespace {

RunConfig config_for(const TempDir &tmp, std::string methods = "fcd,rgb,yiq,hsv") {
  RunConfig c;
  c.methods = parse_method_list(methods);
  c.out_dir = tmp / "out";
  return c;
}

std::vector<std::string> split(const std::string &s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::map<std::string, std::string> row_map(const std::string &header, const std::string &row) {
  std::map<std::string, std::string> m;
  const auto h = split(header), r = split(row);
  REQUIRE(h.size() == r.size());
  for (std::size_t i = 0; i < h.size(); ++i) m[h[i]] = r[i];
  return m;
}

} // namespace

TEST_CASE("discover_pairs") {
  TempDir tmp("discover");
  oracle::Rng rng(1);
  SUBCASE("one pair by naming convention") {
    fixture::write_pair(tmp.path(), "man", 4, 3, rng);
    const auto m = discover_pairs(tmp.path());
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0].id == "man");
    CHECK(m.pairs[0].visible.filename() == "man_vi.png");
    CHECK(m.pairs[0].infrared.filename() == "man_ir.png");
    CHECK(m.warnings.empty());
  }
  SUBCASE("ppm pairs and orphans") {
    fixture::write_pair(tmp.path(), "b", 4, 3, rng, ".ppm");
    fixture::write_pair(tmp.path(), "a", 4, 3, rng);
    io::write_png(tmp / "lonely_ir.png", GrayImage(2, 2));
    std::ofstream(tmp / "notes_vi.txt") << "x";
    const auto m = discover_pairs(tmp.path());
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.pairs[0].id == "a");
    CHECK(m.pairs[1].id == "b");
    REQUIRE(m.warnings.size() == 1);
    CHECK(m.warnings[0].find("lonely_ir.png") != std::string::npos);
  }
  SUBCASE("only an orphan is a zero-pairs error naming the orphan") {
    io::write_png(tmp / "x_vi.png", RgbImage(2, 2));
    try {
      (void)discover_pairs(tmp.path());
      FAIL("expected DatasetError");
    } catch (const DatasetError &e) {
      const std::string msg = e.what();
      CHECK(msg.find("no image pairs") != std::string::npos);
      CHECK(msg.find("orphan visible image x_vi.png") != std::string::npos);
    }
  }
  SUBCASE("missing directory") {
    CHECK_THROWS_AS(discover_pairs(tmp / "nope"), DatasetError);
  }
  SUBCASE("manifest with 21 rows keeps file order") {
    fs::create_directories(tmp / "img");
    std::ofstream tsv(tmp / "manifest.tsv");
    tsv << "# id\tvisible\tinfrared\n";
    for (int i = 20; i >= 0; --i) {
      const std::string id = "pair" + std::to_string(i);
      fixture::write_pair(tmp / "img", id, 3, 3, rng);
      tsv << id << "\timg/" << id << "_vi.png\timg/" << id << "_ir.png\n";
    }
    tsv.close();
    const auto m = discover_pairs(tmp.path());
    REQUIRE(m.pairs.size() == 21);
    CHECK(m.pairs.front().id == "pair20");
    CHECK(m.pairs.back().id == "pair0");
    CHECK(fs::exists(m.pairs[5].visible));
  }
  SUBCASE("manifest errors") {
    fixture::write_pair(tmp.path(), "a", 3, 3, rng);
    std::ofstream(tmp / "dup.tsv") << "a\ta_vi.png\ta_ir.png\na\ta_vi.png\ta_ir.png\n";
    CHECK_THROWS_AS(load_manifest(tmp / "dup.tsv"), DatasetError);
    std::ofstream(tmp / "missing.tsv") << "a\ta_vi.png\tnothere.png\n";
    CHECK_THROWS_AS(load_manifest(tmp / "missing.tsv"), DatasetError);
    std::ofstream(tmp / "cols.tsv") << "a\ta_vi.png\n";
    CHECK_THROWS_AS(load_manifest(tmp / "cols.tsv"), DatasetError);
  }
}

TEST_CASE("image io") {
  TempDir tmp("io");
  oracle::Rng rng(2);
  const auto img = rng.rgb_image(7, 5);
  io::write_png(tmp / "a.png", img);
  CHECK(io::read_rgb(tmp / "a.png") == img);
  io::write_ppm(tmp / "a.ppm", img);
  CHECK(io::read_rgb(tmp / "a.ppm") == img);

  SUBCASE("three-channel infrared with equal channels is accepted silently") {
    const auto g = rng.gray_image(7, 5);
    io::write_png(tmp / "g.png", gray_to_rgb(g));
    std::vector<std::string> warnings;
    CHECK(io::read_infrared(tmp / "g.png", &warnings) == g);
    CHECK(warnings.empty());
  }
  SUBCASE("colour infrared is converted with a warning") {
    std::vector<std::string> warnings;
    CHECK(io::read_infrared(tmp / "a.png", &warnings) == to_gray(img));
    CHECK(warnings.size() == 1);
  }
  SUBCASE("undecodable files") {
    std::ofstream(tmp / "bad.png") << "not a png";
    CHECK_THROWS_AS(io::read_rgb(tmp / "bad.png"), io::ImageIoError);
    CHECK_THROWS_AS(io::read_rgb(tmp / "absent.png"), io::ImageIoError);
  }
}

TEST_CASE("run_fuse") {
  TempDir tmp("fuse");
  fixture::write_dataset(tmp / "data", 1, 9, 7, 3);
  const auto manifest = discover_pairs(tmp / "data");

  SUBCASE("one pair, four methods, four images") {
    auto r = run_fuse(config_for(tmp), manifest);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.written.size() == 4);
    for (const char *m : {"fcd", "rgb", "yiq", "hsv"})
      CHECK(fs::exists(tmp / "out" / m / "p00.png"));
    const auto pair = make_pair("p00", io::read_rgb(manifest.pairs[0].visible),
                                io::read_infrared(manifest.pairs[0].infrared));
    CHECK(io::read_rgb(tmp / "out/fcd/p00.png") == fuse_image(pair, {}));
    CHECK(io::read_rgb(tmp / "out/hsv/p00.png") ==
          fuse_image_with(FusionMethod::hsv_avg(), pair));
  }
  SUBCASE("repeat runs and thread counts give identical bytes") {
    fixture::write_dataset(tmp / "five", 5, 33, 21, 4);
    const auto five = discover_pairs(tmp / "five");
    auto a = config_for(tmp);
    a.out_dir = tmp / "a";
    auto b = a;
    b.out_dir = tmp / "b";
    b.threads = 8;
    auto c = a;
    c.out_dir = tmp / "c";
    REQUIRE(run_fuse(a, five).exit_code == kExitOk);
    REQUIRE(run_fuse(b, five).exit_code == kExitOk);
    REQUIRE(run_fuse(c, five).exit_code == kExitOk);
    int compared = 0;
    for (const auto &e : fs::recursive_directory_iterator(tmp / "a")) {
      if (!e.is_regular_file()) continue;
      const auto rel = fs::relative(e.path(), tmp / "a");
      CHECK(fixture::slurp(e.path()) == fixture::slurp(tmp / "b" / rel));
      CHECK(fixture::slurp(e.path()) == fixture::slurp(tmp / "c" / rel));
      ++compared;
    }
    CHECK(compared == 20);
  }
  SUBCASE("a corrupt pair is skipped and reported") {
    std::ofstream(tmp / "data" / "zz_vi.png") << "garbage";
    io::write_png(tmp / "data" / "zz_ir.png", GrayImage(9, 7));
    auto cfg = config_for(tmp, "fcd");
    cfg.report = tmp / "status.csv";
    const auto r = run_fuse(cfg, discover_pairs(tmp / "data"));
    CHECK(r.exit_code == kExitPartial);
    CHECK(fs::exists(tmp / "out/fcd/p00.png"));
    CHECK_FALSE(fs::exists(tmp / "out/fcd/zz.png"));
    const auto status = fixture::lines(tmp / "status.csv");
    REQUIRE(status.size() == 3);
    CHECK(status[0] == kFuseStatusHeader);
    CHECK(status[1] == "p00,ok,1 images");
    CHECK(status[2].rfind("zz,skipped,", 0) == 0);
  }
  SUBCASE("all pairs failing is fatal") {
    DatasetManifest bad{{{"x", tmp / "none_vi.png", tmp / "none_ir.png"}}, {}};
    CHECK(run_fuse(config_for(tmp), bad).exit_code == kExitFatal);
  }
  SUBCASE("mismatched sizes are a skipped pair") {
    io::write_png(tmp / "data" / "mm_vi.png", RgbImage(5, 5));
    io::write_png(tmp / "data" / "mm_ir.png", GrayImage(5, 4));
    const auto r = run_fuse(config_for(tmp, "rgb"), discover_pairs(tmp / "data"));
    CHECK(r.exit_code == kExitPartial);
    bool mentioned = false;
    for (const auto &w : r.warnings) mentioned |= w.find("dimension mismatch") != std::string::npos;
    CHECK(mentioned);
  }
  SUBCASE("unwritable output directory is fatal") {
    std::ofstream(tmp / "blocker") << "file, not a directory";
    auto cfg = config_for(tmp);
    cfg.out_dir = tmp / "blocker";
    CHECK(run_fuse(cfg, manifest).exit_code == kExitFatal);
  }
}

TEST_CASE("run_eval") {
  TempDir tmp("eval");

  SUBCASE("golden headers") {
    CHECK(kEvalHeader == "pair_id,method,CD,CE,EN,MI,AG,EI,SD,SF,PSNR,SSIM,RMSE,flops_total");
    CHECK(kEvalMeansHeader ==
          "method,pairs,CD,CE,EN,MI,AG,EI,SD,SF,PSNR,SSIM,RMSE,flops_total");
    CHECK(kBenchHeader ==
          "method,pixels,flops_per_pixel,model_flops,audited_flops,ns_per_pixel,mpix_per_s");
    CHECK(kAblationHeader == "pair_id,setting,gamma,averaging,CD,EN,SD");
  }
  SUBCASE("identical trivial pair") {
    fs::create_directories(tmp / "d");
    io::write_png(tmp / "d/t_vi.png", RgbImage(12, 12, Rgb8{60, 60, 60}));
    io::write_png(tmp / "d/t_ir.png", GrayImage(12, 12, Gray8{60}));
    auto cfg = config_for(tmp, "rgb");
    REQUIRE(run_eval(cfg, discover_pairs(tmp / "d")).exit_code == kExitOk);
    const auto rows = fixture::lines(tmp / "out/eval.csv");
    REQUIRE(rows.size() == 2);
    const auto m = row_map(rows[0], rows[1]);
    CHECK(m.at("CD") == "0");
    CHECK(m.at("RMSE") == "0");
    CHECK(m.at("SSIM") == "1");
    CHECK(m.at("PSNR") == "inf");
    CHECK(m.at("flops_total") == "0");
  }
  SUBCASE("21 pairs, four methods") {
    fixture::write_dataset(tmp / "d", 21, 12, 11, 5);
    auto cfg = config_for(tmp);
    cfg.threads = 4;
    cfg.report = tmp / "reports/metrics.csv";
    const auto r = run_eval(cfg, discover_pairs(tmp / "d"));
    CHECK(r.exit_code == kExitOk);
    const auto rows = fixture::lines(tmp / "reports/metrics.csv");
    CHECK(rows.size() == 1 + 84);
    CHECK(rows[1].rfind("p00,fcd,", 0) == 0);
    CHECK(rows[2].rfind("p00,rgb,", 0) == 0);
    CHECK(rows.back().rfind("p20,hsv,", 0) == 0);
    const auto means = fixture::lines(tmp / "reports/metrics_means.csv");
    REQUIRE(means.size() == 1 + 4);
    CHECK(means[0] == kEvalMeansHeader);
    CHECK(row_map(means[0], means[1]).at("pairs") == "21");
    CHECK(row_map(means[0], means[1]).at("method") == "fcd");
    CHECK(row_map(means[0], means[1]).at("flops_total") == "924");
  }
  SUBCASE("flops column at 452x368") {
    oracle::Rng rng(6);
    fs::create_directories(tmp / "d");
    fixture::write_pair(tmp / "d", "big", 452, 368, rng);
    auto cfg = config_for(tmp, "fcd,hsv,yiq");
    REQUIRE(run_eval(cfg, discover_pairs(tmp / "d")).exit_code == kExitOk);
    const auto rows = fixture::lines(tmp / "out/eval.csv");
    REQUIRE(rows.size() == 4);
    CHECK(row_map(rows[0], rows[1]).at("flops_total") == "1164352");
    CHECK(row_map(rows[0], rows[2]).at("flops_total") == "2328704");
    CHECK(row_map(rows[0], rows[3]).at("flops_total") == "2994048");
  }
  SUBCASE("pre-fused images; a missing one omits its row with a warning") {
    fixture::write_dataset(tmp / "d", 2, 12, 12, 7);
    const auto manifest = discover_pairs(tmp / "d");
    auto cfg = config_for(tmp, "fcd,rgb");
    cfg.out_dir = tmp / "fused";
    REQUIRE(run_fuse(cfg, manifest).exit_code == kExitOk);
    fs::remove(tmp / "fused/rgb/p01.png");

    auto direct = config_for(tmp, "fcd,rgb");
    direct.report = tmp / "direct.csv";
    REQUIRE(run_eval(direct, manifest).exit_code == kExitOk);
    auto from_disk = direct;
    from_disk.report = tmp / "disk.csv";
    from_disk.fused_dir = tmp / "fused";
    const auto r = run_eval(from_disk, manifest);
    CHECK(r.exit_code == kExitOk);
    bool warned = false;
    for (const auto &w : r.warnings) warned |= w.find("p01/rgb") != std::string::npos;
    CHECK(warned);
    auto want = fixture::lines(tmp / "direct.csv");
    want.erase(want.begin() + 4);  // p01,rgb
    CHECK(fixture::lines(tmp / "disk.csv") == want);
  }
  SUBCASE("small images leave SSIM empty and warn") {
    fixture::write_dataset(tmp / "d", 1, 6, 6, 8);
    const auto r = run_eval(config_for(tmp, "fcd"), discover_pairs(tmp / "d"));
    CHECK(r.exit_code == kExitOk);
    const auto rows = fixture::lines(tmp / "out/eval.csv");
    CHECK(row_map(rows[0], rows[1]).at("SSIM").empty());
    CHECK_FALSE(r.warnings.empty());
  }
}

TEST_CASE("dataset_means") {
  std::vector<EvalRow> rows(3);
  const double inf = std::numeric_limits<double>::infinity();
  rows[0].report = {"a", "fcd", {{"PSNR", 10.0}, {"CD", 1.0}}, {}};
  rows[1].report = {"b", "fcd", {{"PSNR", inf}, {"CD", 3.0}}, {}};
  rows[2].report = {"a", "rgb", {{"PSNR", inf}}, {}};
  rows[0].flops_total = 7;
  rows[1].flops_total = 21;
  const auto means = dataset_means(rows, {"fcd", "rgb"});
  REQUIRE(means.size() == 2);
  CHECK(means[0].pairs == 2);
  CHECK(means[0].values.at("PSNR") == 10.0);
  CHECK(means[0].values.at("CD") == 2.0);
  CHECK(means[0].flops_total == 14.0);
  CHECK(std::isinf(means[1].values.at("PSNR")));
  CHECK(means[1].values.count("CD") == 0);
}

TEST_CASE("format_real and list parsing") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(1.0 / 3.0) == "0.333333");
  CHECK(format_real(1164352.0) == "1.16435e+06");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(parse_real_list("0.5, 1,2.2") == std::vector<double>{0.5, 1.0, 2.2});
  CHECK_THROWS_AS(parse_real_list("1,x"), std::invalid_argument);
  CHECK(parse_method_list("fcd,FCD,hsv").size() == 2);
  CHECK_THROWS_AS(parse_method_list("fcd,nope"), UnknownMethod);
  RunConfig c;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // no methods
  c.methods = parse_method_list("fcd");
  CHECK_NOTHROW(c.validate());
  c.gamma = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.gamma = 2;
  c.reps = 4;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("run_ablation") {
  TempDir tmp("ablate");
  fixture::write_dataset(tmp / "d", 2, 10, 8, 9);
  const auto manifest = discover_pairs(tmp / "d");
  auto cfg = config_for(tmp, "fcd");

  SUBCASE("gamma defaults: four FCDFusion variants beside HSV-AVG") {
    const auto r = run_ablation(AblationKind::Gamma, cfg, manifest);
    CHECK(r.exit_code == kExitOk);
    for (const char *s : {"fcd_g0.5", "fcd_g1", "fcd_g2", "fcd_g2.2", "hsv-avg", "grid"})
      CHECK(fs::exists(tmp / "out/ablate-gamma/p01" / (std::string(s) + ".png")));
    const auto rows = fixture::lines(tmp / "out/ablate-gamma.csv");
    REQUIRE(rows.size() == 1 + 2 * 5);
    int fcd_rows = 0;
    for (const auto &l : rows) fcd_rows += l.find(",fcd_g") != std::string::npos;
    CHECK(fcd_rows == 2 * 4);
    // grid: visible | infrared | hsv-avg | four variants
    const auto grid = io::read_rgb(tmp / "out/ablate-gamma/p00/grid.png");
    CHECK(grid.width() == 7 * 10);
    CHECK(grid.height() == 8);
  }
  SUBCASE("averaging: two variants") {
    const auto r = run_ablation(AblationKind::Averaging, cfg, manifest);
    CHECK(r.exit_code == kExitOk);
    const auto rows = fixture::lines(tmp / "out/ablate-averaging.csv");
    REQUIRE(rows.size() == 1 + 2 * 2);
    CHECK(rows[1].rfind("p00,fcd_avg,2,1,", 0) == 0);
    CHECK(rows[2].rfind("p00,fcd_noavg,2,0,", 0) == 0);
  }
  SUBCASE("custom gamma list") {
    cfg.gammas = {3.0};
    run_ablation(AblationKind::Gamma, cfg, manifest);
    CHECK(fixture::lines(tmp / "out/ablate-gamma.csv").size() == 1 + 2 * 2);
    cfg.gammas.clear();
    CHECK_THROWS_AS(run_ablation(AblationKind::Gamma, cfg, manifest), std::invalid_argument);
  }
  CHECK(parse_ablation_kind("averaging") == AblationKind::Averaging);
  CHECK_FALSE(parse_ablation_kind("noise").has_value());
}

TEST_CASE("run_bench") {
  TempDir tmp("bench");
  fs::create_directories(tmp / "d");
  io::write_png(tmp / "d/one_vi.png", RgbImage(1, 1, Rgb8{10, 20, 30}));
  io::write_png(tmp / "d/one_ir.png", GrayImage(1, 1, Gray8{40}));
  auto cfg = config_for(tmp);
  const auto r = run_bench(cfg, discover_pairs(tmp / "d"));
  CHECK(r.exit_code == kExitOk);
  const auto rows = fixture::lines(tmp / "out/bench.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == kBenchHeader);
  const auto fcd = row_map(rows[0], rows[1]);
  CHECK(fcd.at("method") == "fcd");
  CHECK(fcd.at("pixels") == "1");
  CHECK(fcd.at("model_flops") == "7");
  CHECK(fcd.at("audited_flops") == "7");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto m = row_map(rows[0], rows[i]);
    CHECK(m.at("model_flops") == m.at("audited_flops"));
    CHECK(std::stod(m.at("ns_per_pixel")) > 0.0);
  }
  CHECK(row_map(rows[0], rows[4]).at("model_flops") == "14");
}

#ifdef FCDF_CLI_PATH
TEST_CASE("command line front end") {
  TempDir tmp("binary");
  fixture::write_dataset(tmp / "d", 2, 12, 12, 10);
  auto run = [&](const std::string &args) {
    const std::string cmd = std::string("\"") + FCDF_CLI_PATH + "\" " + args + " > \"" +
                            (tmp / "stdout.txt").string() + "\" 2> \"" +
                            (tmp / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
#ifdef _WIN32
    return status;
#else
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
  };
  const std::string data = (tmp / "d").string(), out = (tmp / "out").string();

  SUBCASE("config file with flag override") {
    std::ofstream(tmp / "run.ini") << "input=" << data << "\nout=" << out
                                   << "\nmethods=rgb,hsv\nthreads=2\n";
    CHECK(run("fuse --config \"" + (tmp / "run.ini").string() + "\" --methods fcd") == 0);
    CHECK(fs::exists(tmp / "out/fcd/p00.png"));
    CHECK_FALSE(fs::exists(tmp / "out/rgb"));
    CHECK(fixture::lines(tmp / "stdout.txt").size() == 2);
  }
  SUBCASE("eval, bench and ablate") {
    CHECK(run("eval --input \"" + data + "\" --out \"" + out + "\" --methods fcd,yiq") == 0);
    CHECK(fixture::lines(tmp / "out/eval.csv").size() == 5);
    CHECK(run("bench --input \"" + data + "\" --out \"" + out + "\" --reps 5") == 0);
    CHECK(fixture::lines(tmp / "out/bench.csv").size() == 5);
    CHECK(run("ablate --kind averaging --input \"" + data + "\" --out \"" + out + "\"") == 0);
    CHECK(fs::exists(tmp / "out/ablate-averaging/p01/fcd_noavg.png"));
  }
  SUBCASE("errors") {
    CHECK(run("fuse --input \"" + (tmp / "absent").string() + "\"") == 2);
    CHECK(run("fuse --input \"" + data + "\" --methods sharpen") == 2);
    CHECK(run("fuse --input \"" + data + "\" --gamma 0") == 2);
    CHECK(run("") == 2);
    CHECK(run("ablate --kind noise --input \"" + data + "\"") == 2);
    CHECK(run("--help") == 0);
  }
}
#endif

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "fcdfusion/baselines.hpp"
#include "fcdfusion/colorspace.hpp"
#include "fcdfusion/fcd.hpp"
#include "fcdfusion/flops.hpp"
#include "fcdfusion/metrics.hpp"

namespace py = pybind11;
using namespace fcdf;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

RgbImage rgb_from(const U8Array &a, const char *what) {
  if (a.ndim() != 3 || a.shape(2) != 3)
    throw py::value_error(std::string(what) + " must have shape (H, W, 3)");
  RgbImage img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::memcpy(img.pixels().data(), a.data(), img.size() * sizeof(Rgb8));
  return img;
}

GrayImage gray_from(const U8Array &a, const char *what) {
  if (a.ndim() != 2) throw py::value_error(std::string(what) + " must have shape (H, W)");
  GrayImage img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::memcpy(img.pixels().data(), a.data(), img.size());
  return img;
}

py::array_t<std::uint8_t> to_array(const RgbImage &img) {
  py::array_t<std::uint8_t> out({img.height(), img.width(), 3});
  std::memcpy(out.mutable_data(), img.pixels().data(), img.size() * sizeof(Rgb8));
  return out;
}

FusionMethod method_from(const std::string &name, double gamma, bool averaging) {
  FusionMethod m = parse_method(name);
  if (m.kind == MethodKind::Fcd) m.fcd = {gamma, averaging};
  return m;
}

ImagePair pair_from(const U8Array &visible, const U8Array &infrared) {
  return make_pair("array", rgb_from(visible, "visible"), gray_from(infrared, "infrared"));
}

Rgb8 rgb_tuple(std::array<int, 3> c) {
  for (int v : c)
    if (v < 0 || v > 255) throw py::value_error("colour channels must be in [0, 255]");
  return {std::uint8_t(c[0]), std::uint8_t(c[1]), std::uint8_t(c[2])};
}

} // namespace

PYBIND11_MODULE(_fcdfusion, m) {
  m.doc() = "Fast colour-preserving visible/infrared image fusion";
  static_assert(sizeof(Rgb8) == 3 && sizeof(Gray8) == 1);

  m.def(
      "fuse",
      [](const U8Array &visible, const U8Array &infrared, const std::string &method, double gamma,
         bool averaging, unsigned threads) {
        auto pair = pair_from(visible, infrared);
        const auto fm = method_from(method, gamma, averaging);
        RgbImage out(1, 1);
        {
          py::gil_scoped_release nogil;
          out = fuse_image_with(fm, pair, threads);
        }
        return to_array(out);
      },
      py::arg("visible"), py::arg("infrared"), py::arg("method") = "fcd", py::arg("gamma") = 2.0,
      py::arg("averaging") = true, py::arg("threads") = 1,
      "Fuse an (H, W, 3) visible image with an (H, W) infrared image; uint8 in, uint8 out.");

  m.def(
      "fuse_pixel",
      [](std::array<int, 3> rgb, int infrared, const std::string &method, double gamma,
         bool averaging) {
        if (infrared < 0 || infrared > 255) throw py::value_error("infrared must be in [0, 255]");
        const Rgb8 f = fuse_pixel_with(method_from(method, gamma, averaging), rgb_tuple(rgb),
                                       std::uint8_t(infrared));
        return py::make_tuple(f.r, f.g, f.b);
      },
      py::arg("rgb"), py::arg("infrared"), py::arg("method") = "fcd", py::arg("gamma") = 2.0,
      py::arg("averaging") = true);

  m.def(
      "evaluate",
      [](const U8Array &visible, const U8Array &infrared, const U8Array &fused) {
        auto pair = pair_from(visible, infrared);
        const auto r = evaluate_all(pair, rgb_from(fused, "fused"));
        py::dict out;
        for (const auto &info : kMetrics) {
          const std::string name(info.name);
          auto it = r.values.find(name);
          out[name.c_str()] = it == r.values.end() ? py::object(py::none()) : py::float_(it->second);
        }
        return out;
      },
      py::arg("visible"), py::arg("infrared"), py::arg("fused"),
      "All eleven metrics; None where the image is too small for a metric.");

  m.def(
      "color_deviation",
      [](const U8Array &visible, const U8Array &fused) {
        return color_deviation(rgb_from(visible, "visible"), rgb_from(fused, "fused"));
      },
      py::arg("visible"), py::arg("fused"));

  m.def(
      "per_pixel_flops",
      [](const std::string &method, double gamma, bool averaging) {
        const auto row = per_pixel_flops(method_from(method, gamma, averaging));
        py::dict d;
        d["from_rgb"] = row.from_rgb;
        d["fusion"] = row.fusion;
        d["to_rgb"] = row.to_rgb;
        d["exponentiations"] = row.exponentiations;
        d["total"] = row.total();
        return d;
      },
      py::arg("method"), py::arg("gamma") = 2.0, py::arg("averaging") = true);

  m.def(
      "total_flops",
      [](const std::string &method, int width, int height, double gamma, bool averaging) {
        return total_flops(method_from(method, gamma, averaging), width, height);
      },
      py::arg("method"), py::arg("width"), py::arg("height"), py::arg("gamma") = 2.0,
      py::arg("averaging") = true);

  m.def(
      "audit_flops",
      [](const U8Array &visible, const U8Array &infrared, const std::string &method, double gamma,
         bool averaging) {
        return measured_flop_audit(method_from(method, gamma, averaging),
                                   pair_from(visible, infrared));
      },
      py::arg("visible"), py::arg("infrared"), py::arg("method") = "fcd", py::arg("gamma") = 2.0,
      py::arg("averaging") = true,
      "Multiplies and divides counted while running the instrumented kernel.");

  m.def(
      "rgb_to_yiq",
      [](std::array<int, 3> rgb) {
        const auto c = rgb_to_yiq(rgb_tuple(rgb));
        return py::make_tuple(c.y, c.i, c.q);
      },
      py::arg("rgb"));
  m.def(
      "rgb_to_hsv",
      [](std::array<int, 3> rgb) {
        const auto c = rgb_to_hsv(rgb_tuple(rgb));
        return py::make_tuple(c.h, c.s, c.v);
      },
      py::arg("rgb"), "Hue in degrees, saturation and value in [0, 1].");
}

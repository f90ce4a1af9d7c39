#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hfsr/dictionary.hpp"
#include "hfsr/image.hpp"
#include "hfsr/metrics.hpp"
#include "hfsr/pipeline.hpp"

namespace hfsr {

/// One ground-truth image prepared for evaluation: HR cropped to dimensions
/// divisible by the scale, LR produced by bicubic degradation to 1/s.
struct BenchmarkItem {
  std::string name;
  RgbImage hr;        // cropped ground truth
  RgbImage lr;        // degraded input
  ImagePlane hr_y;    // Y of the ground truth, [0,1]
};

/// Crop so width and height divide evenly by the integer part of scale,
/// then degrade by Keys-bicubic resize to 1/scale.
BenchmarkItem prepare_benchmark_item(const std::string &name, const RgbImage &hr, double scale);

/// Per-image upscale timing in seconds, parallel to EvalReport rows.
struct BenchmarkRun {
  EvalReport report;
  std::vector<std::vector<double>> seconds;  // [image][method]
};

/// Runs each named method ("hfsr", "hfsr-conv", "bicubic", "nearest") over
/// the items and scores Y-channel PSNR against the ground truth.
BenchmarkRun run_benchmark(const std::vector<BenchmarkItem> &items,
                           const std::vector<std::string> &methods,
                           const Dictionary &dict, const SRConfig &config,
                           const std::function<void(const std::string &)> &progress = {});

/// Upscales one image with a named method. "hfsr-conv" and "hfsr-none" force
/// the corresponding refinement mode.
RgbImage upscale_with_method(const RgbImage &lr, const std::string &method,
                             const Dictionary &dict, const SRConfig &config);

/// Y-only variant on the real-valued [0,1] scale, used for scoring.
ImagePlane upscale_y_with_method(const RgbImage &lr, const std::string &method,
                                 const Dictionary &dict, const SRConfig &config);

ImagePlane luma01(const RgbImage &img);

}  // namespace hfsr

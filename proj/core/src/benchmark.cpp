#include "hfsr/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace hfsr {

ImagePlane luma01(const RgbImage &img) {
  return scale_plane(rgb_to_ycbcr(img).y, 1.0 / 255.0);
}

namespace {

RgbImage crop(const RgbImage &img, int w, int h) {
  RgbImage out(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      const size_t src = static_cast<size_t>(r) * img.width + c;
      const size_t dst = static_cast<size_t>(r) * w + c;
      out.r[dst] = img.r[src];
      out.g[dst] = img.g[src];
      out.b[dst] = img.b[src];
    }
  return out;
}

uint8_t quantize(double v) {
  return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

RgbImage planes_to_rgb_resized(const YCbCrPlanes &src, const ImagePlane &y_hr) {
  YCbCrPlanes hr;
  hr.y = y_hr;
  hr.cb = resize_bicubic(src.cb, y_hr.width, y_hr.height);
  hr.cr = resize_bicubic(src.cr, y_hr.width, y_hr.height);
  return ycbcr_to_rgb(hr);
}

}  // namespace

BenchmarkItem prepare_benchmark_item(const std::string &name, const RgbImage &hr, double scale) {
  if (scale <= 1.0) throw std::invalid_argument("prepare_benchmark_item: scale must be > 1");
  const int s = std::max(2, static_cast<int>(std::lround(scale)));
  const int w = (hr.width / s) * s;
  const int h = (hr.height / s) * s;
  if (w < s || h < s) throw std::invalid_argument("prepare_benchmark_item: image too small");

  BenchmarkItem item;
  item.name = name;
  item.hr = crop(hr, w, h);
  item.hr_y = luma01(item.hr);

  // Keys-bicubic degradation to 1/s, per channel, then requantized so the LR
  // input is a legitimate 8-bit image.
  const int lw = w / s, lh = h / s;
  auto down_channel = [&](const std::vector<uint8_t> &ch) {
    ImagePlane p(w, h);
    for (size_t i = 0; i < ch.size(); ++i) p.data[i] = ch[i];
    return resize_bicubic(p, lw, lh);
  };
  const ImagePlane r = down_channel(item.hr.r);
  const ImagePlane g = down_channel(item.hr.g);
  const ImagePlane b = down_channel(item.hr.b);
  item.lr = RgbImage(lw, lh);
  for (size_t i = 0; i < item.lr.size(); ++i) {
    item.lr.r[i] = quantize(r.data[i]);
    item.lr.g[i] = quantize(g.data[i]);
    item.lr.b[i] = quantize(b.data[i]);
  }
  return item;
}

RgbImage upscale_with_method(const RgbImage &lr, const std::string &method,
                             const Dictionary &dict, const SRConfig &config) {
  const YCbCrPlanes planes = rgb_to_ycbcr(lr);
  if (method == "nearest") {
    const int f = static_cast<int>(std::lround(config.upscale));
    if (std::abs(config.upscale - f) > 1e-9)
      throw std::invalid_argument("nearest method needs an integer scale");
    YCbCrPlanes hr{upsample_nearest(planes.y, f), upsample_nearest(planes.cb, f),
                   upsample_nearest(planes.cr, f)};
    return ycbcr_to_rgb(hr);
  }
  if (method == "bicubic") {
    return planes_to_rgb_resized(planes, upsample_bicubic(planes.y, config.upscale));
  }
  if (method == "hfsr" || method == "hfsr-conv" || method == "hfsr-none") {
    SRConfig cfg = config;
    if (method == "hfsr-conv") cfg.refinement_mode = RefinementMode::Conventional;
    if (method == "hfsr-none") cfg.refinement_mode = RefinementMode::None;
    return super_resolve_rgb(lr, dict, cfg);
  }
  throw std::invalid_argument("unknown method: " + method);
}

// Real-valued Y in [0,1]; scoring happens before any 8-bit re-quantization.
ImagePlane upscale_y_with_method(const RgbImage &lr, const std::string &method,
                                 const Dictionary &dict, const SRConfig &config) {
  const ImagePlane y = luma01(lr);
  if (method == "nearest") {
    const int f = static_cast<int>(std::lround(config.upscale));
    if (std::abs(config.upscale - f) > 1e-9)
      throw std::invalid_argument("nearest method needs an integer scale");
    return upsample_nearest(y, f);
  }
  if (method == "bicubic") {
    ImagePlane out = upsample_bicubic(y, config.upscale);
    for (double &v : out.data) v = std::clamp(v, 0.0, 1.0);
    return out;
  }
  if (method == "hfsr" || method == "hfsr-conv" || method == "hfsr-none") {
    SRConfig cfg = config;
    if (method == "hfsr-conv") cfg.refinement_mode = RefinementMode::Conventional;
    if (method == "hfsr-none") cfg.refinement_mode = RefinementMode::None;
    return SRPipeline(dict, cfg).super_resolve_plane(y);
  }
  throw std::invalid_argument("unknown method: " + method);
}

BenchmarkRun run_benchmark(const std::vector<BenchmarkItem> &items,
                           const std::vector<std::string> &methods,
                           const Dictionary &dict, const SRConfig &config,
                           const std::function<void(const std::string &)> &progress) {
  if (items.empty()) throw std::invalid_argument("run_benchmark: no images");
  BenchmarkRun run;
  run.report.methods = methods;
  for (const BenchmarkItem &item : items) {
    run.report.image_names.push_back(item.name);
    std::vector<double> row, times;
    for (const std::string &method : methods) {
      const auto t0 = std::chrono::steady_clock::now();
      const ImagePlane up_y = upscale_y_with_method(item.lr, method, dict, config);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.push_back(psnr(item.hr_y, up_y));
      times.push_back(secs);
      if (progress) progress(item.name + " / " + method);
    }
    run.report.psnr_db.push_back(std::move(row));
    run.seconds.push_back(std::move(times));
  }
  run.report.finalize_means();
  return run;
}

}  // namespace hfsr

#include "hfsr/image.hpp"

#include <algorithm>
#include <cmath>

namespace hfsr {

namespace {

uint8_t clamp_u8(double v) {
  return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Keys cubic kernel, a = -0.5.
double keys_kernel(double x) {
  constexpr double a = -0.5;
  x = std::abs(x);
  if (x < 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return (((x - 5.0) * x + 8.0) * x - 4.0) * a;
  return 0.0;
}

// Precomputed resampling taps for one axis.
struct AxisTaps {
  std::vector<int> index;      // flattened [out][tap]
  std::vector<double> weight;  // same layout
  int taps = 0;
};

// Half-pixel-center mapping; kernel stretched by the ratio when shrinking.
AxisTaps bicubic_axis(int in_size, int out_size) {
  const double ratio = static_cast<double>(in_size) / out_size;
  const double support_scale = std::max(ratio, 1.0);
  const double support = 2.0 * support_scale;
  AxisTaps t;
  t.taps = static_cast<int>(std::ceil(support)) * 2 + 1;
  t.index.resize(static_cast<size_t>(out_size) * t.taps);
  t.weight.resize(static_cast<size_t>(out_size) * t.taps);
  for (int o = 0; o < out_size; ++o) {
    const double center = (o + 0.5) * ratio - 0.5;
    const int left = static_cast<int>(std::floor(center - support)) + 1;
    double sum = 0.0;
    for (int k = 0; k < t.taps; ++k) {
      const int i = left + k;
      const double w = keys_kernel((center - i) / support_scale);
      t.index[static_cast<size_t>(o) * t.taps + k] = std::clamp(i, 0, in_size - 1);
      t.weight[static_cast<size_t>(o) * t.taps + k] = w;
      sum += w;
    }
    for (int k = 0; k < t.taps; ++k)
      t.weight[static_cast<size_t>(o) * t.taps + k] /= sum;
  }
  return t;
}

// Area-overlap taps: output cell o covers [o*r, (o+1)*r) in input units.
AxisTaps area_axis(int in_size, int out_size) {
  const double ratio = static_cast<double>(in_size) / out_size;
  AxisTaps t;
  t.taps = static_cast<int>(std::ceil(ratio)) + 1;
  t.index.resize(static_cast<size_t>(out_size) * t.taps);
  t.weight.resize(static_cast<size_t>(out_size) * t.taps, 0.0);
  for (int o = 0; o < out_size; ++o) {
    const double lo = o * ratio;
    const double hi = (o + 1) * ratio;
    const int first = static_cast<int>(std::floor(lo));
    for (int k = 0; k < t.taps; ++k) {
      const int i = std::min(first + k, in_size - 1);
      const double overlap =
          std::max(0.0, std::min(hi, first + k + 1.0) - std::max(lo, static_cast<double>(first + k)));
      t.index[static_cast<size_t>(o) * t.taps + k] = i;
      t.weight[static_cast<size_t>(o) * t.taps + k] = overlap / ratio;
    }
  }
  return t;
}

ImagePlane resample_separable(const ImagePlane &in, int out_w, int out_h,
                              const AxisTaps &xt, const AxisTaps &yt) {
  // horizontal pass
  ImagePlane tmp(out_w, in.height);
  for (int r = 0; r < in.height; ++r) {
    const double *row = in.data.data() + static_cast<size_t>(r) * in.width;
    for (int o = 0; o < out_w; ++o) {
      double acc = 0.0;
      for (int k = 0; k < xt.taps; ++k)
        acc += xt.weight[static_cast<size_t>(o) * xt.taps + k] *
               row[xt.index[static_cast<size_t>(o) * xt.taps + k]];
      tmp.at(r, o) = acc;
    }
  }
  // vertical pass
  ImagePlane out(out_w, out_h);
  for (int o = 0; o < out_h; ++o) {
    for (int c = 0; c < out_w; ++c) {
      double acc = 0.0;
      for (int k = 0; k < yt.taps; ++k)
        acc += yt.weight[static_cast<size_t>(o) * yt.taps + k] *
               tmp.at(yt.index[static_cast<size_t>(o) * yt.taps + k], c);
      out.at(o, c) = acc;
    }
  }
  return out;
}

}  // namespace

YCbCrPlanes rgb_to_ycbcr(const RgbImage &img) {
  YCbCrPlanes p{ImagePlane(img.width, img.height), ImagePlane(img.width, img.height),
                ImagePlane(img.width, img.height)};
  for (size_t i = 0; i < img.size(); ++i) {
    const double r = img.r[i], g = img.g[i], b = img.b[i];
    p.y.data[i] = 0.299 * r + 0.587 * g + 0.114 * b;
    p.cb.data[i] = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b;
    p.cr.data[i] = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b;
  }
  return p;
}

RgbImage ycbcr_to_rgb(const YCbCrPlanes &planes) {
  const ImagePlane &y = planes.y;
  if (planes.cb.width != y.width || planes.cb.height != y.height ||
      planes.cr.width != y.width || planes.cr.height != y.height)
    throw std::invalid_argument("ycbcr_to_rgb: plane size mismatch");
  RgbImage img(y.width, y.height);
  for (size_t i = 0; i < y.size(); ++i) {
    const double yy = y.data[i];
    const double cb = planes.cb.data[i] - 128.0;
    const double cr = planes.cr.data[i] - 128.0;
    img.r[i] = clamp_u8(yy + 1.402 * cr);
    img.g[i] = clamp_u8(yy - 0.344136 * cb - 0.714136 * cr);
    img.b[i] = clamp_u8(yy + 1.772 * cb);
  }
  return img;
}

std::vector<PatchView> extract_patches(const ImagePlane &plane, int patch_w, int overlap) {
  if (patch_w > plane.width || patch_w > plane.height)
    throw std::invalid_argument("extract_patches: plane smaller than one patch");
  if (overlap < 0 || overlap >= patch_w)
    throw std::invalid_argument("extract_patches: need 0 <= overlap < patch_w");

  const int stride = patch_w - overlap;
  auto origins = [&](int size) {
    std::vector<int> v;
    for (int o = 0;; o += stride) {
      if (o + patch_w >= size) {
        v.push_back(size - patch_w);  // clamp flush to the border
        break;
      }
      v.push_back(o);
    }
    return v;
  };
  const std::vector<int> rows = origins(plane.height);
  const std::vector<int> cols = origins(plane.width);

  std::vector<PatchView> patches;
  patches.reserve(rows.size() * cols.size());
  for (int r : rows) {
    for (int c : cols) {
      PatchView p{r, c, patch_w, patch_w, {}};
      p.pixels.resize(static_cast<size_t>(patch_w) * patch_w);
      for (int i = 0; i < patch_w; ++i)
        for (int j = 0; j < patch_w; ++j)
          p.pixels[static_cast<size_t>(i) * patch_w + j] = plane.at(r + i, c + j);
      patches.push_back(std::move(p));
    }
  }
  return patches;
}

ImagePlane downsample(const ImagePlane &plane, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw std::invalid_argument("downsample: zero output dimensions");
  if (out_w > plane.width || out_h > plane.height)
    throw std::invalid_argument("downsample: output larger than input");
  return resample_separable(plane, out_w, out_h, area_axis(plane.width, out_w),
                            area_axis(plane.height, out_h));
}

ImagePlane resize_bicubic(const ImagePlane &plane, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw std::invalid_argument("resize_bicubic: zero output dimensions");
  return resample_separable(plane, out_w, out_h, bicubic_axis(plane.width, out_w),
                            bicubic_axis(plane.height, out_h));
}

ImagePlane upsample_bicubic(const ImagePlane &plane, double factor) {
  if (factor < 1.0) throw std::invalid_argument("upsample_bicubic: factor must be >= 1");
  const int ow = static_cast<int>(std::lround(plane.width * factor));
  const int oh = static_cast<int>(std::lround(plane.height * factor));
  if (ow == plane.width && oh == plane.height) return plane;
  return resize_bicubic(plane, ow, oh);
}

ImagePlane upsample_nearest(const ImagePlane &plane, int factor) {
  if (factor < 1) throw std::invalid_argument("upsample_nearest: factor must be >= 1");
  ImagePlane out(plane.width * factor, plane.height * factor);
  for (int r = 0; r < out.height; ++r)
    for (int c = 0; c < out.width; ++c)
      out.at(r, c) = plane.at(r / factor, c / factor);
  return out;
}

}  // namespace hfsr

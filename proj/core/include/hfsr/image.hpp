#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hfsr {

/// Single-channel 2-D grid of real-valued pixels, row-major.
/// The pipeline keeps intensities in [0,1]; color conversion works on the
/// [0,255] scale. Carriers for both live here, the scale is up to the caller.
struct ImagePlane {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  ImagePlane() = default;
  ImagePlane(int w, int h, double fill = 0.0)
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
    if (w < 1 || h < 1) throw std::invalid_argument("ImagePlane: dimensions must be >= 1");
  }

  double &at(int row, int col) { return data[static_cast<size_t>(row) * width + col]; }
  double at(int row, int col) const { return data[static_cast<size_t>(row) * width + col]; }
  size_t size() const { return data.size(); }
};

/// 8-bit RGB image, planar storage.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> r, g, b;

  RgbImage() = default;
  RgbImage(int w, int h)
      : width(w), height(h),
        r(static_cast<size_t>(w) * h), g(static_cast<size_t>(w) * h),
        b(static_cast<size_t>(w) * h) {
    if (w < 1 || h < 1) throw std::invalid_argument("RgbImage: dimensions must be >= 1");
  }
  size_t size() const { return r.size(); }
};

/// Patch sampled from an ImagePlane. Pixels are vectorized so that patch
/// coordinate (i, j) (i = row) lands at index i*w + j.
struct PatchView {
  int row = 0;
  int col = 0;
  int h = 0;
  int w = 0;
  std::vector<double> pixels;
};

struct YCbCrPlanes {
  ImagePlane y, cb, cr;
};

// Full-range BT.601. Planes come back as reals on the [0,255] scale,
// not re-quantized.
YCbCrPlanes rgb_to_ycbcr(const RgbImage &img);
RgbImage ycbcr_to_rgb(const YCbCrPlanes &planes);

/// Raster-scan patch grid with stride = patch_w - overlap. A final origin
/// that would overshoot the border is clamped flush so every pixel is covered.
std::vector<PatchView> extract_patches(const ImagePlane &plane, int patch_w, int overlap);

/// Area-weighted average resampling. Linear in the input and defined for
/// fractional ratios (7 -> 6 etc).
ImagePlane downsample(const ImagePlane &plane, int out_w, int out_h);

/// Keys bicubic (a = -0.5) resampling with edge clamping. Antialiases
/// (kernel stretched by the ratio) when shrinking.
ImagePlane resize_bicubic(const ImagePlane &plane, int out_w, int out_h);

/// Bicubic upscale to round(factor * size).
ImagePlane upsample_bicubic(const ImagePlane &plane, double factor);

/// Pixel replication into factor x factor blocks.
ImagePlane upsample_nearest(const ImagePlane &plane, int factor);

inline ImagePlane scale_plane(const ImagePlane &p, double s) {
  ImagePlane out = p;
  for (double &v : out.data) v *= s;
  return out;
}

}  // namespace hfsr

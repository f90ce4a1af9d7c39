#include "hfsr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace hfsr {

std::vector<ScaleStep> default_scale_schedule() {
  return {{7.0 / 6.0, 1}, {8.0 / 6.0, 1}, {9.0 / 6.0, 1},
          {10.0 / 6.0, 1}, {11.0 / 6.0, 0}, {12.0 / 6.0, 2}};
}

void SRConfig::validate() const {
  if (patch_w < 1) throw std::invalid_argument("SRConfig: patch_w must be >= 1");
  if (overlap < 0 || overlap >= patch_w)
    throw std::invalid_argument("SRConfig: need 0 <= overlap < patch_w");
  if (upscale <= 1.0) throw std::invalid_argument("SRConfig: upscale must be > 1");
  if (lambda1 <= 0 || lambda2 <= 0) throw std::invalid_argument("SRConfig: lambdas must be > 0");
  if (epsilon_weight <= 0) throw std::invalid_argument("SRConfig: epsilon_weight must be > 0");
  if (scale_schedule.empty()) throw std::invalid_argument("SRConfig: empty scale schedule");
  for (const ScaleStep &s : scale_schedule) {
    if (s.scale <= 1.0 || s.scale > upscale + 1e-12)
      throw std::invalid_argument("SRConfig: schedule scales must lie in (1, upscale]");
    if (s.iters < 0) throw std::invalid_argument("SRConfig: negative iteration count");
  }
  if (std::abs(scale_schedule.back().scale - upscale) > 1e-12)
    throw std::invalid_argument("SRConfig: final schedule scale must equal upscale");
}

namespace {

std::vector<ScaleStep> resolve_schedule(const SRConfig &config) {
  switch (config.refinement_mode) {
    case RefinementMode::MultiScale:
      return config.scale_schedule;
    case RefinementMode::Conventional:
      return {{config.upscale, 6}};
    case RefinementMode::None:
      return {};
  }
  return {};
}

// D * Phi_sbar: every HR column area-averaged back to the base patch size.
Eigen::MatrixXd downsampled_dictionary_matrix(const Dictionary &dict, double scale) {
  const int hw = scaled_dim(dict.base_patch_w, scale);
  const int hh = scaled_dim(dict.base_patch_h, scale);
  const int m = dict.base_patch_w * dict.base_patch_h;
  Eigen::MatrixXd out(m, dict.size());
  for (int k = 0; k < dict.size(); ++k) {
    const std::vector<double> atom = render_atom(dict, k, scale);
    ImagePlane plane(hw, hh);
    plane.data = atom;
    const ImagePlane down = downsample(plane, dict.base_patch_w, dict.base_patch_h);
    out.col(k) = Eigen::Map<const Eigen::VectorXd>(down.data.data(), m);
  }
  return out;
}

void add_sparse_columns(Eigen::VectorXd &acc, const Eigen::MatrixXd &mat, const SparseCode &code,
                        double sign) {
  for (auto &[k, v] : code.coefficients) acc += mat.col(k) * (sign * v);
}

void parallel_for(int count, int threads, const std::function<void(int)> &body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    });
  }
  for (std::thread &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

SRPipeline::SRPipeline(const Dictionary &dict, const SRConfig &config)
    : dict_(dict), config_(config), schedule_(resolve_schedule(config)),
      lr_solver_(render_dictionary_matrix(dict, 1.0)),
      hr_matrix_(render_dictionary_matrix(dict, config.upscale)) {
  config_.validate();
  down_mats_.reserve(schedule_.size());
  for (const ScaleStep &step : schedule_) {
    down_mats_.push_back(step.iters > 0 ? downsampled_dictionary_matrix(dict_, step.scale)
                                        : Eigen::MatrixXd());
  }
}

SparseCode SRPipeline::code_patch_coarse(const Eigen::VectorXd &patch) const {
  return lr_solver_.solve(patch, {config_.lambda1, config_.solver_max_iters,
                                  config_.solver_tolerance});
}

SparseCode SRPipeline::refine_patch(const Eigen::VectorXd &patch, const SparseCode &alpha0) const {
  const int n = dict_.size();
  Eigen::VectorXd fine = alpha0.dense(n);
  if (!schedule_.empty()) {
    const SolverSettings refine_settings{config_.lambda2, config_.solver_max_iters,
                                         config_.solver_tolerance};
    // Each iteration recodes the residual of the cumulative representation
    // under the current scale's degradation and folds the correction in, so
    // every scheduled scale is driven toward consistency with the original
    // patch (at a fixed scale this reduces to the telescoping form).
    for (size_t s = 0; s < schedule_.size(); ++s) {
      for (int it = 0; it < schedule_[s].iters; ++it) {
        const Eigen::VectorXd residual = patch - down_mats_[s] * fine;
        const SparseCode delta = lr_solver_.solve(residual, refine_settings);
        for (auto &[k, v] : delta.coefficients) fine[k] += v;
      }
    }
  }

  // Re-expressed against the original patch so the stored objective is the
  // patch's reconstruction loss at scale 1.
  SparseCode code;
  for (int k = 0; k < n; ++k)
    if (fine[k] != 0.0) code.coefficients.emplace_back(k, fine[k]);
  const Eigen::VectorXd residual = patch - lr_solver_.matrix() * fine;
  code.residual_norm_sq = residual.squaredNorm();
  code.objective = code.residual_norm_sq + config_.lambda1 * fine.cwiseAbs().sum();
  return code;
}

std::vector<double> SRPipeline::synthesize_hr_patch(const SparseCode &alpha) const {
  Eigen::VectorXd hr = Eigen::VectorXd::Zero(hr_matrix_.rows());
  add_sparse_columns(hr, hr_matrix_, alpha, 1.0);
  return {hr.data(), hr.data() + hr.size()};
}

PatchResult SRPipeline::process_patch(const PatchView &patch) const {
  const int m = dict_.base_patch_w * dict_.base_patch_h;
  if (static_cast<int>(patch.pixels.size()) != m)
    throw std::invalid_argument("process_patch: patch size does not match dictionary");
  const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(patch.pixels.data(), m);
  const SparseCode coarse = code_patch_coarse(p);
  const SparseCode fine = refine_patch(p, coarse);
  PatchResult result;
  result.row = patch.row;
  result.col = patch.col;
  result.hr_pixels = synthesize_hr_patch(fine);
  result.loss = fine.objective;
  result.alpha_fine = fine;
  return result;
}

std::vector<PatchResult> SRPipeline::process_plane_patches(const ImagePlane &lr) const {
  const std::vector<PatchView> patches = extract_patches(lr, config_.patch_w, config_.overlap);
  std::vector<PatchResult> results(patches.size());
  parallel_for(static_cast<int>(patches.size()), config_.threads,
               [&](int i) { results[i] = process_patch(patches[i]); });
  return results;
}

ImagePlane SRPipeline::super_resolve_plane(const ImagePlane &lr) const {
  const std::vector<PatchResult> results = process_plane_patches(lr);
  const int out_w = scaled_dim(lr.width, config_.upscale);
  const int out_h = scaled_dim(lr.height, config_.upscale);
  return reconstruct_image(results, out_w, out_h, config_);
}

ImagePlane reconstruct_image(const std::vector<PatchResult> &results, int out_w, int out_h,
                             const SRConfig &config) {
  const int hr_patch = scaled_dim(config.patch_w, config.upscale);
  ImagePlane weighted(out_w, out_h, 0.0);
  ImagePlane weights(out_w, out_h, 0.0);
  ImagePlane sums(out_w, out_h, 0.0);  // uniform fallback when literal weights vanish
  ImagePlane counts(out_w, out_h, 0.0);

  // Fixed summation order (raster order of origins) so the result does not
  // depend on how the patch list was produced.
  std::vector<const PatchResult *> ordered;
  ordered.reserve(results.size());
  for (const PatchResult &pr : results) ordered.push_back(&pr);
  std::stable_sort(ordered.begin(), ordered.end(), [](const PatchResult *a, const PatchResult *b) {
    return std::tie(a->row, a->col) < std::tie(b->row, b->col);
  });

  for (const PatchResult *prp : ordered) {
    const PatchResult &pr = *prp;
    const int r0 = scaled_dim(pr.row, config.upscale);
    const int c0 = scaled_dim(pr.col, config.upscale);
    if (r0 < 0 || c0 < 0 || r0 + hr_patch > out_h || c0 + hr_patch > out_w)
      throw std::invalid_argument("reconstruct_image: patch footprint outside output plane");
    double w = 1.0;
    switch (config.weighting_mode) {
      case WeightingMode::InverseLoss:
        w = 1.0 / (pr.loss + config.epsilon_weight);
        break;
      case WeightingMode::LiteralLoss:
        w = pr.loss;
        break;
      case WeightingMode::Uniform:
        w = 1.0;
        break;
    }
    for (int i = 0; i < hr_patch; ++i)
      for (int j = 0; j < hr_patch; ++j) {
        const double v = pr.hr_pixels[static_cast<size_t>(i) * hr_patch + j];
        weighted.at(r0 + i, c0 + j) += w * v;
        weights.at(r0 + i, c0 + j) += w;
        sums.at(r0 + i, c0 + j) += v;
        counts.at(r0 + i, c0 + j) += 1.0;
      }
  }

  ImagePlane out(out_w, out_h);
  for (size_t i = 0; i < out.size(); ++i) {
    if (counts.data[i] == 0.0)
      throw std::runtime_error("reconstruct_image: uncovered output pixel");
    const double v = weights.data[i] > 0.0 ? weighted.data[i] / weights.data[i]
                                           : sums.data[i] / counts.data[i];
    out.data[i] = std::clamp(v, 0.0, 1.0);
  }
  return out;
}

RgbImage super_resolve_rgb(const RgbImage &img, const Dictionary &dict, const SRConfig &config) {
  const YCbCrPlanes planes = rgb_to_ycbcr(img);
  const SRPipeline pipeline(dict, config);
  const ImagePlane y_hr = pipeline.super_resolve_plane(scale_plane(planes.y, 1.0 / 255.0));
  YCbCrPlanes hr;
  hr.y = scale_plane(y_hr, 255.0);
  hr.cb = resize_bicubic(planes.cb, y_hr.width, y_hr.height);
  hr.cr = resize_bicubic(planes.cr, y_hr.width, y_hr.height);
  return ycbcr_to_rgb(hr);
}

}  // namespace hfsr

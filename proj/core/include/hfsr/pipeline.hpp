#pragma once

#include <vector>

#include "hfsr/dictionary.hpp"
#include "hfsr/image.hpp"
#include "hfsr/solver.hpp"

namespace hfsr {

struct ScaleStep {
  double scale;
  int iters;
};

enum class RefinementMode { MultiScale, Conventional, None };
enum class WeightingMode { InverseLoss, LiteralLoss, Uniform };

std::vector<ScaleStep> default_scale_schedule();

/// All pipeline hyperparameters. Defaults reproduce the published x2 setup:
/// 6x6 patches, overlap 4, lambda1 = lambda2 = 1e-4, scale ladder
/// 7/6..12/6 with iteration counts [1,1,1,1,0,2].
struct SRConfig {
  int patch_w = 6;
  int overlap = 4;
  double upscale = 2.0;
  double lambda1 = 1e-4;
  double lambda2 = 1e-4;
  std::vector<ScaleStep> scale_schedule = default_scale_schedule();
  RefinementMode refinement_mode = RefinementMode::MultiScale;
  WeightingMode weighting_mode = WeightingMode::InverseLoss;
  double epsilon_weight = 1e-8;
  double solver_tolerance = 1e-7;
  int solver_max_iters = 1000;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

/// Per-patch outcome: the refined code, the synthesized HR pixels and the
/// patch's objective loss on the original LR pixels (the reconstruction
/// weight source).
struct PatchResult {
  int row = 0;  // origin in the LR plane
  int col = 0;
  SparseCode alpha_fine;
  std::vector<double> hr_pixels;  // length (patch_w*upscale)^2
  double loss = 0.0;
};

/// Orchestrates patch coding, residual refinement and HR synthesis against
/// one dictionary. Rendering and Gram matrices for every schedule scale are
/// precomputed at construction; all methods are const and thread-safe.
class SRPipeline {
 public:
  SRPipeline(const Dictionary &dict, const SRConfig &config);

  SparseCode code_patch_coarse(const Eigen::VectorXd &patch) const;
  SparseCode refine_patch(const Eigen::VectorXd &patch, const SparseCode &alpha0) const;
  std::vector<double> synthesize_hr_patch(const SparseCode &alpha) const;

  PatchResult process_patch(const PatchView &patch) const;

  /// All patch results for a plane, raster order, processed in parallel.
  std::vector<PatchResult> process_plane_patches(const ImagePlane &lr) const;
  ImagePlane super_resolve_plane(const ImagePlane &lr) const;

  const SRConfig &config() const { return config_; }
  const Dictionary &dictionary() const { return dict_; }

 private:
  Dictionary dict_;
  SRConfig config_;
  std::vector<ScaleStep> schedule_;       // resolved from refinement_mode
  LassoSolver lr_solver_;                 // Phi_1
  std::vector<Eigen::MatrixXd> down_mats_;  // D * Phi_sbar per schedule entry
  Eigen::MatrixXd hr_matrix_;             // Phi_upscale
};

/// Per-pixel weighted average of overlapping HR patches, clamped to [0,1].
/// Weights follow weighting_mode; summation order is the raster order of
/// patch origins so results do not depend on how patches were produced.
ImagePlane reconstruct_image(const std::vector<PatchResult> &results, int out_w, int out_h,
                             const SRConfig &config);

/// Y through the sparse-coding pipeline, Cb/Cr through bicubic, back to RGB.
RgbImage super_resolve_rgb(const RgbImage &img, const Dictionary &dict, const SRConfig &config);

}  // namespace hfsr

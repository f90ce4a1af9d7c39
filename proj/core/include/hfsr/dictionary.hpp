#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

namespace hfsr {

// One oriented smoothed-step atom: arctan((i cos t + j sin t + b)/xi) / pi.
struct AhfParams {
  double theta;
  double b;
  double xi;  // > 0, edge smoothness
};

// Oriented stripe atom: sin((i cos t + j sin t + b) * a).
struct SineParams {
  double theta;
  double a;
  double b;
};

// Separable cosine product indexed by integer frequencies (a, b);
// (0,0) is the DC patch.
struct DctParams {
  double a;
  double b;
};

using AtomParams = std::variant<AhfParams, SineParams, DctParams>;

/// Parameter grids for dictionary generation, plus the norm filter.
/// Defaults reproduce the published configuration.
struct GridSpec {
  int ahf_theta_count = 16;      // evenly on [0, 2*pi)
  double ahf_b_min = -6.0;
  double ahf_b_max = 6.0;
  int ahf_b_count = 12;
  std::vector<double> ahf_xi_values = {0.005};  // log-midpoint of [1e-4, 0.1]

  int sine_theta_count = 6;      // evenly on [0, pi)
  std::vector<double> sine_b_values = {0, 1, 2, 3, 4, 5, 6};
  std::vector<double> sine_a_values = {2.5, 2.25, 2.0};

  int dct_a_max = 5;  // a in 0..dct_a_max
  int dct_b_max = 5;

  double norm_filter_threshold = 1.0;

  bool include_ahf = true;
  bool include_sine = true;
  bool include_dct = true;
};

/// Function-generated dictionary: atom parameters plus the L2 norm of each
/// atom rendered at scale 1, which is the normalization divisor at every
/// scale. Renderable at any scale s >= 1.
struct Dictionary {
  std::vector<AtomParams> atoms;
  std::vector<double> norm_factors;
  int base_patch_w = 6;
  int base_patch_h = 6;

  int size() const { return static_cast<int>(atoms.size()); }
};

/// f(i, j, params) for 0-based patch-local coordinates; i indexes rows.
double eval_atom(const AtomParams &params, double i, double j, int patch_w, int patch_h);

/// Cartesian product of the grids, rendered at scale 1; atoms whose
/// un-normalized L2 norm falls below the threshold are dropped, the rest keep
/// their norm as norm_factor. Atom order: AHF, Sine, DCT, each grid in a
/// fixed nested loop order. Throws if nothing survives the filter.
Dictionary build_dictionary(const GridSpec &spec, int patch_w, int patch_h);

/// Number of grid points before the norm filter.
int grid_size(const GridSpec &spec);

/// Normalized atom k rendered at the given scale: HR pixel (i, j) is
/// eval_atom(params, i/scale, j/scale) / norm_factors[k], output size
/// round(w*scale) x round(h*scale).
std::vector<double> render_atom(const Dictionary &dict, int k, double scale);

/// Matrix whose column k is render_atom(dict, k, scale). Unit-norm columns
/// at scale 1.
Eigen::MatrixXd render_dictionary_matrix(const Dictionary &dict, double scale);

inline int scaled_dim(int base, double scale) {
  return static_cast<int>(std::lround(base * scale));
}

/// Plain-text parameter table, one atom per line:
///   family param... norm_factor
void save_dictionary(const Dictionary &dict, const std::string &path);
Dictionary load_dictionary(const std::string &path);

}  // namespace hfsr

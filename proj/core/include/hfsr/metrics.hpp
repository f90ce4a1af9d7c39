#pragma once

#include <string>
#include <vector>

#include "hfsr/image.hpp"

namespace hfsr {

/// 10*log10(MAX^2 / MSE) with MAX = 1 on the internal scale; +inf when the
/// planes are identical. No border crop.
double psnr(const ImagePlane &reference, const ImagePlane &candidate);

struct EvalReport {
  std::vector<std::string> methods;
  std::vector<std::string> image_names;
  // psnr_db[i][m] = PSNR of method m on image i
  std::vector<std::vector<double>> psnr_db;
  std::vector<double> mean_psnr;  // per method

  void finalize_means();
  std::string to_csv() const;
  std::string to_text() const;
};

}  // namespace hfsr

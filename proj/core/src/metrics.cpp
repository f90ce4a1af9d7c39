#include "hfsr/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hfsr {

double psnr(const ImagePlane &reference, const ImagePlane &candidate) {
  if (reference.width != candidate.width || reference.height != candidate.height)
    throw std::invalid_argument("psnr: dimension mismatch");
  double mse = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    const double d = reference.data[i] - candidate.data[i];
    mse += d * d;
  }
  mse /= static_cast<double>(reference.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

void EvalReport::finalize_means() {
  mean_psnr.assign(methods.size(), 0.0);
  if (image_names.empty()) return;
  for (const auto &row : psnr_db)
    for (size_t m = 0; m < methods.size(); ++m) mean_psnr[m] += row[m];
  for (double &v : mean_psnr) v /= static_cast<double>(image_names.size());
}

std::string EvalReport::to_csv() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "image";
  for (const auto &m : methods) out << "," << m;
  out << "\n";
  for (size_t i = 0; i < image_names.size(); ++i) {
    out << image_names[i];
    for (size_t m = 0; m < methods.size(); ++m) out << "," << psnr_db[i][m];
    out << "\n";
  }
  out << "mean";
  for (size_t m = 0; m < methods.size(); ++m) out << "," << mean_psnr[m];
  out << "\n";
  return out.str();
}

std::string EvalReport::to_text() const {
  size_t name_w = 5;
  for (const auto &n : image_names) name_w = std::max(name_w, n.size());
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << std::left << std::setw(static_cast<int>(name_w) + 2) << "image";
  for (const auto &m : methods)
    out << std::right << std::setw(static_cast<int>(std::max<size_t>(m.size(), 8)) + 2) << m;
  out << "\n";
  auto row = [&](const std::string &name, const std::vector<double> &vals) {
    out << std::left << std::setw(static_cast<int>(name_w) + 2) << name;
    for (size_t m = 0; m < methods.size(); ++m)
      out << std::right << std::setw(static_cast<int>(std::max<size_t>(methods[m].size(), 8)) + 2)
          << vals[m];
    out << "\n";
  };
  for (size_t i = 0; i < image_names.size(); ++i) row(image_names[i], psnr_db[i]);
  row("mean", mean_psnr);
  return out.str();
}

}  // namespace hfsr

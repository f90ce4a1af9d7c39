#include "hfsr/dictionary.hpp"

#include "hfsr/errors.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hfsr {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = 0.5 * (lo + hi);
    return v;
  }
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  return v;
}

std::vector<AtomParams> grid_atoms(const GridSpec &spec) {
  std::vector<AtomParams> atoms;
  if (spec.include_ahf) {
    const auto bs = linspace(spec.ahf_b_min, spec.ahf_b_max, spec.ahf_b_count);
    for (int t = 0; t < spec.ahf_theta_count; ++t) {
      const double theta = 2.0 * kPi * t / spec.ahf_theta_count;
      for (double b : bs)
        for (double xi : spec.ahf_xi_values) atoms.push_back(AhfParams{theta, b, xi});
    }
  }
  if (spec.include_sine) {
    for (int t = 0; t < spec.sine_theta_count; ++t) {
      const double theta = kPi * t / spec.sine_theta_count;
      for (double b : spec.sine_b_values)
        for (double a : spec.sine_a_values) atoms.push_back(SineParams{theta, a, b});
    }
  }
  if (spec.include_dct) {
    for (int a = 0; a <= spec.dct_a_max; ++a)
      for (int b = 0; b <= spec.dct_b_max; ++b)
        atoms.push_back(DctParams{static_cast<double>(a), static_cast<double>(b)});
  }
  return atoms;
}

}  // namespace

double eval_atom(const AtomParams &params, double i, double j, int patch_w, int patch_h) {
  if (auto *p = std::get_if<AhfParams>(&params))
    return std::atan((i * std::cos(p->theta) + j * std::sin(p->theta) + p->b) / p->xi) / kPi;
  if (auto *p = std::get_if<SineParams>(&params))
    return std::sin((i * std::cos(p->theta) + j * std::sin(p->theta) + p->b) * p->a);
  const auto &p = std::get<DctParams>(params);
  return std::cos(kPi * p.a * (i + 0.5) / patch_w) * std::cos(kPi * p.b * (j + 0.5) / patch_h);
}

int grid_size(const GridSpec &spec) {
  int n = 0;
  if (spec.include_ahf)
    n += spec.ahf_theta_count * spec.ahf_b_count * static_cast<int>(spec.ahf_xi_values.size());
  if (spec.include_sine)
    n += spec.sine_theta_count * static_cast<int>(spec.sine_b_values.size()) *
         static_cast<int>(spec.sine_a_values.size());
  if (spec.include_dct) n += (spec.dct_a_max + 1) * (spec.dct_b_max + 1);
  return n;
}

Dictionary build_dictionary(const GridSpec &spec, int patch_w, int patch_h) {
  if (patch_w < 1 || patch_h < 1) throw std::invalid_argument("build_dictionary: bad patch size");
  if (spec.norm_filter_threshold < 0)
    throw std::invalid_argument("build_dictionary: negative norm threshold");

  Dictionary dict;
  dict.base_patch_w = patch_w;
  dict.base_patch_h = patch_h;
  for (const AtomParams &params : grid_atoms(spec)) {
    double norm_sq = 0.0;
    for (int i = 0; i < patch_h; ++i)
      for (int j = 0; j < patch_w; ++j) {
        const double v = eval_atom(params, i, j, patch_w, patch_h);
        norm_sq += v * v;
      }
    const double norm = std::sqrt(norm_sq);
    if (norm < spec.norm_filter_threshold) continue;
    dict.atoms.push_back(params);
    dict.norm_factors.push_back(norm);
  }
  if (dict.atoms.empty())
    throw NumericalError("build_dictionary: every atom fell below the norm threshold");
  return dict;
}

std::vector<double> render_atom(const Dictionary &dict, int k, double scale) {
  if (k < 0 || k >= dict.size()) throw std::out_of_range("render_atom: atom index out of range");
  if (scale < 1.0) throw std::invalid_argument("render_atom: scale must be >= 1");
  const int w = scaled_dim(dict.base_patch_w, scale);
  const int h = scaled_dim(dict.base_patch_h, scale);
  const double inv_norm = 1.0 / dict.norm_factors[k];
  std::vector<double> out(static_cast<size_t>(w) * h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j)
      out[static_cast<size_t>(i) * w + j] =
          eval_atom(dict.atoms[k], i / scale, j / scale, dict.base_patch_w, dict.base_patch_h) *
          inv_norm;
  return out;
}

Eigen::MatrixXd render_dictionary_matrix(const Dictionary &dict, double scale) {
  const int rows = scaled_dim(dict.base_patch_w, scale) * scaled_dim(dict.base_patch_h, scale);
  Eigen::MatrixXd m(rows, dict.size());
  for (int k = 0; k < dict.size(); ++k) {
    const std::vector<double> atom = render_atom(dict, k, scale);
    m.col(k) = Eigen::Map<const Eigen::VectorXd>(atom.data(), rows);
  }
  return m;
}

void save_dictionary(const Dictionary &dict, const std::string &path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.precision(17);
  f << "# hfsr dictionary v1\n";
  f << "patch " << dict.base_patch_w << " " << dict.base_patch_h << "\n";
  for (int k = 0; k < dict.size(); ++k) {
    if (auto *p = std::get_if<AhfParams>(&dict.atoms[k]))
      f << "ahf " << p->theta << " " << p->b << " " << p->xi;
    else if (auto *p = std::get_if<SineParams>(&dict.atoms[k]))
      f << "sine " << p->theta << " " << p->a << " " << p->b;
    else {
      const auto &d = std::get<DctParams>(dict.atoms[k]);
      f << "dct " << d.a << " " << d.b;
    }
    f << " " << dict.norm_factors[k] << "\n";
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

Dictionary load_dictionary(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  Dictionary dict;
  std::string line;
  bool have_patch = false;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "patch") {
      ss >> dict.base_patch_w >> dict.base_patch_h;
      have_patch = true;
    } else if (tag == "ahf") {
      AhfParams p{};
      double norm;
      ss >> p.theta >> p.b >> p.xi >> norm;
      dict.atoms.push_back(p);
      dict.norm_factors.push_back(norm);
    } else if (tag == "sine") {
      SineParams p{};
      double norm;
      ss >> p.theta >> p.a >> p.b >> norm;
      dict.atoms.push_back(p);
      dict.norm_factors.push_back(norm);
    } else if (tag == "dct") {
      DctParams p{};
      double norm;
      ss >> p.a >> p.b >> norm;
      dict.atoms.push_back(p);
      dict.norm_factors.push_back(norm);
    } else {
      throw std::runtime_error("bad dictionary line: " + line);
    }
    if (!ss) throw std::runtime_error("bad dictionary line: " + line);
  }
  if (!have_patch || dict.atoms.empty())
    throw std::runtime_error("incomplete dictionary file: " + path);
  return dict;
}

}  // namespace hfsr

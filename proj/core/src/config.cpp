#include "hfsr/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hfsr {

namespace {

std::string trim(const std::string &s) {
  const size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string &key, const std::string &v) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
  }
}

int to_int(const std::string &key, const std::string &v) {
  try {
    size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (...) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + v + "'");
  }
}

std::vector<double> to_double_list(const std::string &key, const std::string &v) {
  std::vector<double> out;
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
  return out;
}

}  // namespace

RefinementMode parse_refinement_mode(const std::string &s) {
  if (s == "multi" || s == "multi_scale") return RefinementMode::MultiScale;
  if (s == "conv" || s == "conventional") return RefinementMode::Conventional;
  if (s == "none") return RefinementMode::None;
  throw std::invalid_argument("unknown refinement mode: " + s);
}

WeightingMode parse_weighting_mode(const std::string &s) {
  if (s == "inverse" || s == "inverse_loss") return WeightingMode::InverseLoss;
  if (s == "literal" || s == "literal_loss") return WeightingMode::LiteralLoss;
  if (s == "uniform") return WeightingMode::Uniform;
  throw std::invalid_argument("unknown weighting mode: " + s);
}

// "scale:iters,scale:iters,..." where scale may be a ratio like 7/6.
std::vector<ScaleStep> parse_scale_schedule(const std::string &s) {
  std::vector<ScaleStep> steps;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    const size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("bad schedule entry (want scale:iters): " + item);
    std::string scale_str = trim(item.substr(0, colon));
    double scale;
    const size_t slash = scale_str.find('/');
    if (slash != std::string::npos) {
      scale = to_double("schedule", trim(scale_str.substr(0, slash))) /
              to_double("schedule", trim(scale_str.substr(slash + 1)));
    } else {
      scale = to_double("schedule", scale_str);
    }
    steps.push_back({scale, to_int("schedule", trim(item.substr(colon + 1)))});
  }
  if (steps.empty()) throw std::invalid_argument("empty scale schedule");
  return steps;
}

std::map<std::string, std::string> parse_config_text(const std::string &text) {
  std::map<std::string, std::string> entries;
  std::istringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return entries;
}

std::map<std::string, std::string> parse_config_file(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

void apply_config_entry(SRConfig &sr, GridSpec &grid, const std::string &key,
                        const std::string &value) {
  if (key == "patch_w") sr.patch_w = to_int(key, value);
  else if (key == "overlap") sr.overlap = to_int(key, value);
  else if (key == "upscale") sr.upscale = to_double(key, value);
  else if (key == "lambda1") sr.lambda1 = to_double(key, value);
  else if (key == "lambda2") sr.lambda2 = to_double(key, value);
  else if (key == "scale_schedule") sr.scale_schedule = parse_scale_schedule(value);
  else if (key == "refinement_mode") sr.refinement_mode = parse_refinement_mode(value);
  else if (key == "weighting_mode") sr.weighting_mode = parse_weighting_mode(value);
  else if (key == "epsilon_weight") sr.epsilon_weight = to_double(key, value);
  else if (key == "solver_tolerance") sr.solver_tolerance = to_double(key, value);
  else if (key == "solver_max_iters") sr.solver_max_iters = to_int(key, value);
  else if (key == "threads") sr.threads = to_int(key, value);
  else if (key == "ahf_theta_count") grid.ahf_theta_count = to_int(key, value);
  else if (key == "ahf_b_min") grid.ahf_b_min = to_double(key, value);
  else if (key == "ahf_b_max") grid.ahf_b_max = to_double(key, value);
  else if (key == "ahf_b_count") grid.ahf_b_count = to_int(key, value);
  else if (key == "ahf_xi_values") grid.ahf_xi_values = to_double_list(key, value);
  else if (key == "sine_theta_count") grid.sine_theta_count = to_int(key, value);
  else if (key == "sine_b_values") grid.sine_b_values = to_double_list(key, value);
  else if (key == "sine_a_values") grid.sine_a_values = to_double_list(key, value);
  else if (key == "dct_a_max") grid.dct_a_max = to_int(key, value);
  else if (key == "dct_b_max") grid.dct_b_max = to_int(key, value);
  else if (key == "norm_filter_threshold") grid.norm_filter_threshold = to_double(key, value);
  else if (key == "include_ahf") grid.include_ahf = to_int(key, value) != 0;
  else if (key == "include_sine") grid.include_sine = to_int(key, value) != 0;
  else if (key == "include_dct") grid.include_dct = to_int(key, value) != 0;
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void apply_config(SRConfig &sr, GridSpec &grid,
                  const std::map<std::string, std::string> &entries) {
  for (const auto &[k, v] : entries) apply_config_entry(sr, grid, k, v);
}

}  // namespace hfsr

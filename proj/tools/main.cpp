#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <variant>

#include "hfsr/benchmark.hpp"
#include "hfsr/config.hpp"
#include "hfsr/dictionary.hpp"
#include "hfsr/errors.hpp"
#include "hfsr/image_io.hpp"
#include "hfsr/metrics.hpp"
#include "hfsr/pipeline.hpp"

namespace fs = std::filesystem;
using namespace hfsr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string config_path;
  std::map<std::string, std::string> overrides;  // flag-level, applied last
};

void add_common_flags(CLI::App *cmd, CommonOpts &opts) {
  cmd->add_option("--config", opts.config_path, "key=value config file (HFSR_CONFIG as fallback)");
  auto capture = [&opts](const std::string &key) {
    return [&opts, key](const std::string &v) { opts.overrides[key] = v; };
  };
  cmd->add_option_function<std::string>("--scale", capture("upscale"), "upscaling factor");
  cmd->add_option_function<std::string>("--patch", capture("patch_w"), "LR patch size");
  cmd->add_option_function<std::string>("--overlap", capture("overlap"), "patch overlap");
  cmd->add_option_function<std::string>("--lambda1", capture("lambda1"), "coarse coding lambda");
  cmd->add_option_function<std::string>("--lambda2", capture("lambda2"), "refinement lambda");
  cmd->add_option_function<std::string>("--refine", [&opts](const std::string &v) {
    opts.overrides["refinement_mode"] = v;
  }, "refinement mode: multi|conv|none");
  cmd->add_option_function<std::string>("--weighting", [&opts](const std::string &v) {
    opts.overrides["weighting_mode"] = v;
  }, "reconstruction weighting: inverse|literal|uniform");
  cmd->add_option_function<std::string>("--threads", capture("threads"), "worker thread count");
  cmd->add_option_function<std::string>("--seed", [](const std::string &) {},
                                        "reserved; the pipeline is deterministic");
}

std::pair<SRConfig, GridSpec> resolve_config(const CommonOpts &opts) {
  SRConfig sr;
  GridSpec grid;
  std::string path = opts.config_path;
  if (path.empty()) {
    if (const char *env = std::getenv("HFSR_CONFIG")) path = env;
  }
  if (!path.empty()) apply_config(sr, grid, parse_config_file(path));
  for (const auto &[k, v] : opts.overrides) apply_config_entry(sr, grid, k, v);
  return {sr, grid};
}

std::string family_name(const AtomParams &p) {
  if (std::holds_alternative<AhfParams>(p)) return "ahf";
  if (std::holds_alternative<SineParams>(p)) return "sine";
  return "dct";
}

int cmd_upscale(const std::string &input, const std::string &output, const std::string &method,
                const CommonOpts &opts) {
  auto [config, grid] = resolve_config(opts);
  config.validate();
  const RgbImage lr = load_image(input);

  const auto t0 = std::chrono::steady_clock::now();
  RgbImage out;
  if (method == "hfsr") {
    const Dictionary dict = build_dictionary(grid, config.patch_w, config.patch_w);
    const YCbCrPlanes planes = rgb_to_ycbcr(lr);
    const SRPipeline pipeline(dict, config);
    const std::vector<PatchResult> results =
        pipeline.process_plane_patches(scale_plane(planes.y, 1.0 / 255.0));
    double mean_loss = 0.0;
    for (const PatchResult &r : results) mean_loss += r.loss;
    mean_loss /= static_cast<double>(results.size());

    const ImagePlane y_hr = reconstruct_image(
        results, scaled_dim(lr.width, config.upscale), scaled_dim(lr.height, config.upscale),
        config);
    YCbCrPlanes hr{scale_plane(y_hr, 255.0), resize_bicubic(planes.cb, y_hr.width, y_hr.height),
                   resize_bicubic(planes.cr, y_hr.width, y_hr.height)};
    out = ycbcr_to_rgb(hr);
    std::cout << "dictionary size: " << dict.size() << "\n";
    std::cout << "patches: " << results.size() << ", mean patch loss: " << mean_loss << "\n";
  } else {
    Dictionary unused;
    out = upscale_with_method(lr, method, unused, config);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  save_image(out, output);
  std::cout << method << ": " << lr.width << "x" << lr.height << " -> " << out.width << "x"
            << out.height << " in " << secs << " s -> " << output << "\n";
  return kExitOk;
}

int cmd_benchmark(const std::string &dataset_dir, std::vector<std::string> methods,
                  const std::string &report_prefix, const CommonOpts &opts) {
  auto [config, grid] = resolve_config(opts);
  config.validate();

  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dataset_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (char &c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".png" || ext == ".bmp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no PNG/BMP images in " + dataset_dir);

  std::vector<BenchmarkItem> items;
  for (const fs::path &f : files) {
    try {
      items.push_back(prepare_benchmark_item(f.stem().string(), load_image(f.string()),
                                             config.upscale));
    } catch (const std::exception &e) {
      std::cerr << "warning: skipping " << f << ": " << e.what() << "\n";
    }
  }
  if (items.empty()) throw std::runtime_error("no readable images in " + dataset_dir);

  const bool needs_dict =
      std::any_of(methods.begin(), methods.end(),
                  [](const std::string &m) { return m.rfind("hfsr", 0) == 0; });
  Dictionary dict;
  if (needs_dict) dict = build_dictionary(grid, config.patch_w, config.patch_w);

  const BenchmarkRun run = run_benchmark(items, methods, dict, config, [](const std::string &s) {
    std::cerr << "  done: " << s << "\n";
  });

  std::cout << run.report.to_text();
  std::ofstream(report_prefix + ".csv") << run.report.to_csv();
  std::ofstream(report_prefix + ".txt") << run.report.to_text();

  std::ofstream manifest(report_prefix + ".manifest.txt");
  manifest << "dataset " << dataset_dir << "\n";
  manifest << "methods";
  for (const auto &m : methods) manifest << " " << m;
  manifest << "\nconfig upscale=" << config.upscale << " patch_w=" << config.patch_w
           << " overlap=" << config.overlap << " lambda1=" << config.lambda1
           << " lambda2=" << config.lambda2 << "\n";
  for (size_t i = 0; i < items.size(); ++i) {
    manifest << items[i].name;
    for (size_t m = 0; m < methods.size(); ++m) manifest << " " << run.seconds[i][m] << "s";
    manifest << "\n";
  }
  manifest << "outputs " << report_prefix << ".csv " << report_prefix << ".txt\n";
  return kExitOk;
}

int cmd_dict(const std::string &export_path, const CommonOpts &opts) {
  auto [config, grid] = resolve_config(opts);
  const int pre = grid_size(grid);
  const Dictionary dict = build_dictionary(grid, config.patch_w, config.patch_w);
  std::map<std::string, int> family_counts;
  for (const AtomParams &a : dict.atoms) ++family_counts[family_name(a)];
  std::cout << "pre-filter atoms:  " << pre << "\n";
  std::cout << "post-filter atoms: " << dict.size() << "\n";
  for (const auto &[fam, count] : family_counts)
    std::cout << "  " << fam << ": " << count << "\n";
  if (!export_path.empty()) {
    save_dictionary(dict, export_path);
    std::cout << "exported to " << export_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"HFSR: sparse-coding single-image super resolution with a "
               "function-generated dictionary"};
  app.require_subcommand(1);

  CommonOpts up_opts, bench_opts, dict_opts;
  std::string input, output, method = "hfsr";
  auto *up = app.add_subcommand("upscale", "Upscale a single image");
  up->add_option("input", input, "input PNG/BMP")->required();
  up->add_option("output", output, "output image path")->required();
  up->add_option("--method", method, "hfsr|bicubic|nearest")
      ->check(CLI::IsMember({"hfsr", "bicubic", "nearest"}));
  add_common_flags(up, up_opts);

  std::string dataset, report_prefix = "benchmark_report";
  std::vector<std::string> methods = {"nearest", "bicubic", "hfsr"};
  auto *bench = app.add_subcommand("benchmark", "PSNR benchmark over a directory of HR images");
  bench->add_option("dataset", dataset, "directory of ground-truth images")->required();
  bench->add_option("--methods", methods, "methods to run (nearest bicubic hfsr hfsr-conv hfsr-none)");
  bench->add_option("--report", report_prefix, "report path prefix (.csv/.txt/.manifest.txt)");
  add_common_flags(bench, bench_opts);

  std::string export_path;
  auto *dictc = app.add_subcommand("dict", "Build and inspect the function dictionary");
  dictc->add_option("--export", export_path, "write the parameter table here");
  add_common_flags(dictc, dict_opts);

  try {
    app.parse(argc, argv);
    if (up->parsed()) return cmd_upscale(input, output, method, up_opts);
    if (bench->parsed()) return cmd_benchmark(dataset, methods, report_prefix, bench_opts);
    return cmd_dict(export_path, dict_opts);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const NumericalError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

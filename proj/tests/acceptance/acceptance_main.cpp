// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//
// Criteria 1-4 score against the published Set14 x2 table and need the real
// dataset; point HFSR_SET14 at a directory of the 14 ground-truth images (or
// place them in data/set14). Without it those criteria are reported as SKIP
// and the same machinery is exercised on the bundled stand-in images instead.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "hfsr/benchmark.hpp"
#include "hfsr/config.hpp"
#include "hfsr/dictionary.hpp"
#include "hfsr/image_io.hpp"
#include "hfsr/metrics.hpp"
#include "hfsr/pipeline.hpp"
#include "hfsr/solver.hpp"

using namespace hfsr;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string &what) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << what << "\n";
  if (!ok) ++failures;
}

void skip(int id, const std::string &what) {
  std::cout << "SKIP  criterion " << id << ": " << what << "\n";
}

std::optional<fs::path> find_dataset(const char *env, const std::vector<std::string> &fallbacks) {
  if (const char *p = std::getenv(env)) {
    if (fs::is_directory(p)) return fs::path(p);
  }
  for (const std::string &f : fallbacks)
    if (fs::is_directory(f)) return fs::path(f);
  return std::nullopt;
}

// Published x2 Y-channel PSNR rows, keyed by a lowercase substring of the
// image file name.
struct TableRow {
  double nearest, bicubic, hfsr_ms;
};
const std::map<std::string, TableRow> kTable = {
    {"baboon", {24.21, 24.67, 25.13}},   {"barbara", {27.18, 27.94, 28.16}},
    {"bridge", {27.94, 28.96, 29.52}},   {"coastguard", {28.19, 29.13, 29.49}},
    {"comic", {24.61, 26.05, 26.90}},    {"face", {33.63, 34.88, 34.46}},
    {"flowers", {28.41, 30.43, 31.29}},  {"foreman", {30.35, 32.66, 33.57}},
    {"lenna", {32.35, 34.74, 35.10}},    {"man", {28.01, 29.27, 29.74}},
    {"butterfly", {30.19, 32.97, 34.00}}, {"pepper", {31.09, 33.08, 33.68}},
    {"ppt3", {25.05, 26.85, 27.47}},     {"zebra", {27.37, 30.68, 31.59}}};

std::string lower(std::string s) {
  for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<std::string> table_key_for(const std::string &stem) {
  const std::string ls = lower(stem);
  // "man" is a substring of several names; check it last and only exact-ish
  for (const auto &[key, row] : kTable) {
    (void)row;
    if (key == "man") continue;
    if (ls.find(key) != std::string::npos) return key;
  }
  if (ls == "man" || ls.find("man") == 0) return std::string("man");
  return std::nullopt;
}

std::vector<BenchmarkItem> load_items(const fs::path &dir, double scale) {
  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string ext = lower(e.path().extension().string());
    if (ext == ".png" || ext == ".bmp") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchmarkItem> items;
  for (const fs::path &f : files) {
    try {
      items.push_back(prepare_benchmark_item(f.stem().string(), load_image(f.string()), scale));
    } catch (const std::exception &e) {
      std::cerr << "warning: skipping " << f << ": " << e.what() << "\n";
    }
  }
  return items;
}

// ---- criteria 1-4: Set14 reproduction ------------------------------------

void run_set14_criteria(const std::optional<fs::path> &dataset) {
  if (!dataset) {
    skip(1, "Set14 baseline reproduction (dataset not available; set HFSR_SET14)");
    skip(2, "HFSR beats bicubic on Set14 (dataset not available)");
    skip(3, "multi-scale vs conventional refinement on Set14 (dataset not available)");
    skip(4, "HFSR absolute PSNR ballpark on Set14 (dataset not available)");
    return;
  }

  SRConfig config;
  const Dictionary dict = build_dictionary(GridSpec{}, config.patch_w, config.patch_w);
  const std::vector<BenchmarkItem> items = load_items(*dataset, config.upscale);
  std::cout << "Set14 dataset: " << *dataset << " (" << items.size() << " images)\n";

  const auto t0 = std::chrono::steady_clock::now();
  const BenchmarkRun run =
      run_benchmark(items, {"nearest", "bicubic", "hfsr", "hfsr-conv"}, dict, config,
                    [](const std::string &s) { std::cerr << "  done: " << s << "\n"; });
  const double total_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << run.report.to_text();
  std::cout << "total benchmark time: " << total_secs << " s\n";

  int matched = 0, base_ok = 0, hfsr_wins = 0, ballpark_ok = 0;
  double mean_multi = 0.0, mean_conv = 0.0;
  for (size_t i = 0; i < items.size(); ++i) {
    const auto key = table_key_for(items[i].name);
    if (!key) continue;
    const TableRow &row = kTable.at(*key);
    ++matched;
    const double p_near = run.report.psnr_db[i][0];
    const double p_bic = run.report.psnr_db[i][1];
    const double p_hfsr = run.report.psnr_db[i][2];
    const double p_conv = run.report.psnr_db[i][3];
    if (std::abs(p_near - row.nearest) <= 0.5 && std::abs(p_bic - row.bicubic) <= 0.5) ++base_ok;
    else
      std::cout << "  baseline mismatch on " << *key << ": nearest " << p_near << " vs "
                << row.nearest << ", bicubic " << p_bic << " vs " << row.bicubic << "\n";
    if (p_hfsr >= p_bic) ++hfsr_wins;
    if (std::abs(p_hfsr - row.hfsr_ms) <= 0.8) ++ballpark_ok;
    mean_multi += p_hfsr;
    mean_conv += p_conv;
  }
  mean_multi /= matched;
  mean_conv /= matched;
  const double margin = mean_multi - mean_conv;

  report(1, matched == 14 && base_ok == 14,
         "nearest+bicubic within +-0.5 dB of the published row on all 14 images (" +
             std::to_string(base_ok) + "/" + std::to_string(matched) + ")");
  report(2, hfsr_wins >= 12 && total_secs < 1800.0,
         "HFSR(multi-scale) >= bicubic on >= 12/14 images (got " + std::to_string(hfsr_wins) +
             ") within the 30-minute budget");
  report(3, margin >= -0.005,
         "mean multi-scale minus conventional margin = " + std::to_string(margin) + " dB");
  report(4, ballpark_ok >= 10,
         "HFSR within +-0.8 dB of the published multi-scale row on >= 10/14 images (got " +
             std::to_string(ballpark_ok) + ")");
}

// Harness exercise on the bundled stand-in images when Set14 is absent.
void run_standin_info(const std::optional<fs::path> &dataset) {
  if (!dataset) {
    std::cout << "INFO  stand-in dataset not found; skipping harness exercise\n";
    return;
  }
  SRConfig config;
  const Dictionary dict = build_dictionary(GridSpec{}, config.patch_w, config.patch_w);
  const std::vector<BenchmarkItem> items = load_items(*dataset, config.upscale);
  const BenchmarkRun run =
      run_benchmark(items, {"nearest", "bicubic", "hfsr", "hfsr-conv"}, dict, config);
  std::cout << "stand-in results (" << *dataset << "):\n" << run.report.to_text();
  int wins = 0;
  for (const auto &row : run.report.psnr_db)
    if (row[2] >= row[1]) ++wins;
  std::cout << "INFO  stand-in: HFSR >= bicubic on " << wins << "/" << items.size()
            << " images; multi-conv margin = "
            << run.report.mean_psnr[2] - run.report.mean_psnr[3] << " dB\n";
}

// ---- criterion 5: solver correctness -------------------------------------

Eigen::MatrixXd random_unit_dict(int m, int n, std::mt19937 &rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd d(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = dist(rng);
  for (int j = 0; j < n; ++j) d.col(j).normalize();
  return d;
}

double objective_of(const Eigen::MatrixXd &d, const Eigen::VectorXd &p, const Eigen::VectorXd &a,
                    double lambda) {
  return (p - d * a).squaredNorm() + lambda * a.cwiseAbs().sum();
}

Eigen::VectorXd ista_reference(const Eigen::MatrixXd &d, const Eigen::VectorXd &p, double lambda,
                               int iters) {
  const Eigen::MatrixXd g = d.transpose() * d;
  const Eigen::VectorXd c = d.transpose() * p;
  const double L = 2.0 * g.selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff();
  const double step = 1.0 / L;
  const double thresh = lambda * step;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(d.cols());
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXd z = a - 2.0 * step * (g * a - c);
    for (int k = 0; k < z.size(); ++k)
      z[k] = z[k] > thresh ? z[k] - thresh : (z[k] < -thresh ? z[k] + thresh : 0.0);
    a = z;
  }
  return a;
}

void run_solver_criterion() {
  std::mt19937 rng(101);
  std::normal_distribution<double> dist(0.0, 1.0);
  const double tol = 1e-7;
  const double lambda = 1e-4;

  int kkt_ok = 0;
  const int kkt_trials = 1000;
  {
    // fixed 36x334 dictionary family; fresh dictionary every 50 instances
    Eigen::MatrixXd d;
    std::unique_ptr<LassoSolver> solver;
    for (int t = 0; t < kkt_trials; ++t) {
      if (t % 50 == 0) {
        d = random_unit_dict(36, 334, rng);
        solver = std::make_unique<LassoSolver>(d);
      }
      Eigen::VectorXd p(36);
      for (int i = 0; i < 36; ++i) p[i] = dist(rng);
      const SparseCode code = solver->solve(p, {lambda, 1000, tol});
      const Eigen::VectorXd a = code.dense(334);
      const Eigen::VectorXd grad = 2.0 * d.transpose() * (d * a - p);
      bool ok = true;
      for (int k = 0; k < 334 && ok; ++k) {
        if (a[k] != 0.0)
          ok = std::abs(grad[k] + lambda * (a[k] > 0 ? 1.0 : -1.0)) <= 10 * tol;
        else
          ok = std::abs(grad[k]) <= lambda + 10 * tol;
      }
      if (ok) ++kkt_ok;
    }
  }

  int gap_ok = 0;
  const int gap_trials = 100;
  for (int t = 0; t < gap_trials; ++t) {
    const Eigen::MatrixXd d = random_unit_dict(10, 20, rng);
    Eigen::VectorXd p(10);
    for (int i = 0; i < 10; ++i) p[i] = dist(rng);
    const double lam = 0.05;
    const SparseCode code = solve_lasso(p, d, {lam, 2000, 1e-9});
    const Eigen::VectorXd ref = ista_reference(d, p, lam, 50000);
    if (code.objective - objective_of(d, p, ref, lam) <= 1e-6) ++gap_ok;
  }

  report(5, kkt_ok == kkt_trials && gap_ok == gap_trials,
         "KKT suite " + std::to_string(kkt_ok) + "/" + std::to_string(kkt_trials) +
             ", reference objective gap " + std::to_string(gap_ok) + "/" +
             std::to_string(gap_trials));
}

// ---- criterion 6: dictionary scaling identity ----------------------------

void run_scaling_criterion() {
  const Dictionary dict = build_dictionary(GridSpec{}, 6, 6);
  std::mt19937 rng(103);
  bool ok = true;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    const int k = static_cast<int>(rng() % dict.size());
    for (int s : {2, 3}) {
      const std::vector<double> lr = render_atom(dict, k, 1.0);
      const std::vector<double> hr = render_atom(dict, k, static_cast<double>(s));
      const int hw = 6 * s;
      for (int i = 0; i < 6 && ok; ++i)
        for (int j = 0; j < 6; ++j)
          if (hr[static_cast<size_t>(s * i) * hw + s * j] != lr[static_cast<size_t>(i) * 6 + j]) {
            ok = false;
            break;
          }
    }
  }
  report(6, ok, "render-at-s sampled at (s*i, s*j) equals render-at-1, exactly, 50 random atoms");
}

// ---- criterion 7: reconstruction oracle ----------------------------------

void run_reconstruction_criterion() {
  SRConfig config;
  std::mt19937 rng(107);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  bool ok = true;
  for (int trial = 0; trial < 20 && ok; ++trial) {
    // synthetic patch layout on a 20x20 LR -> 40x40 HR canvas
    std::vector<PatchResult> results;
    for (int r = 0; r <= 14; r += 2)
      for (int c = 0; c <= 14; c += 2) {
        PatchResult pr;
        pr.row = r;
        pr.col = c;
        pr.loss = dist(rng) * 0.01;
        pr.hr_pixels.resize(144);
        for (double &v : pr.hr_pixels) v = dist(rng);
        results.push_back(pr);
      }
    const ImagePlane out = reconstruct_image(results, 40, 40, config);

    // brute-force per-pixel weighted mean
    for (int y = 0; y < 40 && ok; ++y)
      for (int x = 0; x < 40; ++x) {
        double num = 0.0, den = 0.0;
        for (const PatchResult &pr : results) {
          const int r0 = 2 * pr.row, c0 = 2 * pr.col;
          if (y < r0 || y >= r0 + 12 || x < c0 || x >= c0 + 12) continue;
          const double w = 1.0 / (pr.loss + config.epsilon_weight);
          num += w * pr.hr_pixels[static_cast<size_t>(y - r0) * 12 + (x - c0)];
          den += w;
        }
        const double want = std::clamp(num / den, 0.0, 1.0);
        if (std::abs(out.at(y, x) - want) > 1e-12) {
          ok = false;
          break;
        }
      }
  }
  report(7, ok, "loss-weighted reconstruction matches the brute-force weighted mean, 20 layouts");
}

// ---- criterion 8: self-consistency ---------------------------------------

void run_self_consistency_criterion() {
  const Dictionary dict = build_dictionary(GridSpec{}, 6, 6);
  SRConfig config;
  config.lambda1 = config.lambda2 = 1e-6;
  config.overlap = 0;  // patch grid lands exactly on the atom tiles
  const SRPipeline pipe(dict, config);

  // A round trip can only recover structure that survives the downsample, so
  // tile from atoms whose HR rendering area-averages back to their base
  // rendering (sharp edges and high frequencies alias away).
  std::vector<int> eligible;
  for (int k = 0; k < dict.size(); ++k) {
    const std::vector<double> base = render_atom(dict, k, 1.0);
    ImagePlane plane(12, 12);
    plane.data = render_atom(dict, k, 2.0);
    const ImagePlane down = downsample(plane, 6, 6);
    double gap = 0.0;
    for (int i = 0; i < 36; ++i) gap += (down.data[i] - base[i]) * (down.data[i] - base[i]);
    if (std::sqrt(gap) <= 1e-3) eligible.push_back(k);
  }
  std::cout << "INFO  downsample-consistent atoms: " << eligible.size() << "/" << dict.size()
            << "\n";

  std::mt19937 rng(109);
  const int tiles = 4;  // 24x24 LR, 48x48 HR
  ImagePlane hr_truth(6 * 2 * tiles, 6 * 2 * tiles);
  for (int bi = 0; bi < tiles; ++bi)
    for (int bj = 0; bj < tiles; ++bj) {
      const int k = eligible[rng() % eligible.size()];
      const std::vector<double> hr_atom = render_atom(dict, k, 2.0);
      double peak = 0.0;
      for (double v : hr_atom) peak = std::max(peak, std::abs(v));
      const double amp = 0.45 / peak;
      for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
          hr_truth.at(12 * bi + i, 12 * bj + j) =
              0.5 + amp * hr_atom[static_cast<size_t>(i) * 12 + j];
    }
  const ImagePlane lr = downsample(hr_truth, hr_truth.width / 2, hr_truth.height / 2);
  const ImagePlane sr = pipe.super_resolve_plane(lr);
  const double db = psnr(hr_truth, sr);
  report(8, db >= 35.0,
         "tiled-atom self-consistency PSNR = " + std::to_string(db) + " dB (>= 35 required)");
}

}  // namespace

int main() {
  std::cout << "== acceptance suite ==\n";
  const auto set14 = find_dataset(
      "HFSR_SET14", {"data/set14", "../data/set14", "../../data/set14", "tests/data/set14"});
  run_set14_criteria(set14);
  if (!set14) {
    const auto standin = find_dataset(
        "HFSR_STANDIN",
        {"data/standin", "../data/standin", "../../data/standin", "tests/data/standin"});
    run_standin_info(standin);
  }
  run_solver_criterion();
  run_scaling_criterion();
  run_reconstruction_criterion();
  run_self_consistency_criterion();
  std::cout << (failures == 0 ? "acceptance suite: all executed criteria passed\n"
                              : "acceptance suite: FAILURES present\n");
  return failures == 0 ? 0 : 1;
}

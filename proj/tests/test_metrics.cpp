#include <doctest.h>

#include <cmath>
#include <random>

#include "hfsr/metrics.hpp"

using namespace hfsr;

TEST_CASE("psnr basics") {
  ImagePlane a(4, 4, 0.5);
  SUBCASE("identical planes give +inf") {
    CHECK(std::isinf(psnr(a, a)));
    CHECK(psnr(a, a) > 0);
  }
  SUBCASE("uniform error closed form") {
    ImagePlane b(4, 4, 0.5 + 10.0 / 255.0);
    CHECK(psnr(a, b) == doctest::Approx(20.0 * std::log10(255.0 / 10.0)).epsilon(1e-12));
    CHECK(psnr(a, b) == doctest::Approx(28.1308).epsilon(1e-4));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(psnr(a, ImagePlane(4, 5)), std::invalid_argument);
  }
}

TEST_CASE("psnr against an independent formula implementation") {
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  ImagePlane a(9, 7), b(9, 7);
  for (size_t i = 0; i < a.size(); ++i) {
    a.data[i] = dist(rng);
    b.data[i] = dist(rng);
  }
  double sq = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sq += (a.data[i] - b.data[i]) * (a.data[i] - b.data[i]);
  const double want = 10.0 * std::log10(1.0 * 63.0 / sq);
  CHECK(psnr(a, b) == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("psnr symmetry and error-scaling monotonicity") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  ImagePlane a(8, 8), b(8, 8), c(8, 8);
  for (size_t i = 0; i < a.size(); ++i) {
    a.data[i] = dist(rng);
    const double err = 0.05 * (dist(rng) - 0.5);
    b.data[i] = a.data[i] + err;
    c.data[i] = a.data[i] + 1.7 * err;  // scaled error field
  }
  CHECK(psnr(a, b) == doctest::Approx(psnr(b, a)).epsilon(1e-12));
  CHECK(psnr(a, c) == doctest::Approx(psnr(a, b) - 20.0 * std::log10(1.7)).epsilon(1e-9));
}

TEST_CASE("report formatting") {
  EvalReport rep;
  rep.methods = {"nearest", "bicubic"};
  rep.image_names = {"img1", "img2"};
  rep.psnr_db = {{24.0, 26.0}, {30.0, 32.0}};
  rep.finalize_means();
  REQUIRE(rep.mean_psnr.size() == 2);
  CHECK(rep.mean_psnr[0] == doctest::Approx(27.0));
  CHECK(rep.mean_psnr[1] == doctest::Approx(29.0));

  const std::string csv = rep.to_csv();
  CHECK(csv.find("image,nearest,bicubic") == 0);
  CHECK(csv.find("img1,24.0000,26.0000") != std::string::npos);
  CHECK(csv.find("mean,27.0000,29.0000") != std::string::npos);

  const std::string text = rep.to_text();
  CHECK(text.find("img2") != std::string::npos);
  CHECK(text.find("mean") != std::string::npos);
}

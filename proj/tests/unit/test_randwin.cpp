#include <doctest.h>

#include <cmath>

#include "gaborcert/randwin.hpp"

using namespace gaborcert;

namespace {

// \int_0^x h(x, t) dt by composite Simpson on m panels.
double kernel_integral(double x, int m) {
  const double h = x / m;
  double s = triangle_kernel(x, 0.0) + triangle_kernel(x, x);
  for (int k = 1; k < m; ++k) s += (k % 2 ? 4.0 : 2.0) * triangle_kernel(x, k * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("paths start at one and are reproducible") {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 0xffffffffffffffffULL}) {
    const BrownianPath a = sample_path(seed);
    CHECK(a.values[0] == cplx(1.0, 0.0));
    CHECK(a.values.size() == 4097);
    CHECK(a.values == sample_path(seed).values);
  }
  CHECK(sample_path(1).values != sample_path(2).values);
  const BrownianPath flat = sample_path(5, 1.0 / 64, 1.0, 0.0);
  for (cplx v : flat.values) CHECK(v == cplx(1.0, 0.0));
}

TEST_CASE("gaussian pairs have unit variance") {
  double s1 = 0, s2 = 0, cross = 0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const auto [a, b] = gaussian_pair(42, k);
    s1 += a * a;
    s2 += b * b;
    cross += a * b;
  }
  CHECK(s1 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(cross / n) < 0.01);
}

TEST_CASE("endpoint mean and variance over seeds") {
  const int seeds = 20000;
  const double dt = 1.0 / 64;
  double sum = 0, sum2 = 0;
  for (int s = 0; s < seeds; ++s) {
    const double v = sample_path(s, dt).values.back().real();
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / seeds;
  const double var = sum2 / seeds - mean * mean;
  CHECK(std::abs(mean - 1.0) < 3.0 * std::sqrt(2.0 / seeds));
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("triangle kernel") {
  CHECK(triangle_kernel(0.5, 0.0) == 0.0);
  CHECK(triangle_kernel(0.5, 0.5) == 0.0);
  CHECK(triangle_kernel(0.5, 0.7) == 0.0);
  CHECK(triangle_kernel(1.0, 0.5) == 0.0);
  CHECK(triangle_kernel(0.5, 0.25) == doctest::Approx(std::exp(-10.0)));
}

TEST_CASE("synthesized window endpoints and deterministic path") {
  const Window w = synthesize_window(sample_path(3), KernelConfig{512});
  CHECK(w.samples()->value.front() == cplx(0.0, 0.0));
  CHECK(w.samples()->value.back() == cplx(0.0, 0.0));
  CHECK(w.eval(0.0) == cplx(0.0, 0.0));
  CHECK(w.eval(1.0) == cplx(0.0, 0.0));

  const Window flat = synthesize_window(sample_path(0, 1.0 / 4096, 1.0, 0.0), KernelConfig{257});
  for (double x : {0.125, 0.25, 0.5, 0.75, 0.875}) {
    const double want = kernel_integral(x, 40960);
    CHECK(flat.eval(x).imag() == 0.0);
    CHECK(flat.eval(x).real() > 0.0);
    CHECK(flat.eval(x).real() == doctest::Approx(want).epsilon(1e-4));
  }
}

TEST_CASE("gaussian moments") {
  std::vector<double> one(1025, 1.0), zero(1025, 0.0), lin(1025);
  for (std::size_t k = 0; k < lin.size(); ++k) lin[k] = k / 1024.0;
  GaussianMoments m = gaussian_moments(one, 1.0, 1.0);
  CHECK(m.mean == doctest::Approx(1.0));
  CHECK(m.variance == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  m = gaussian_moments(zero, 1.0, 1.0);
  CHECK(m.mean == 0.0);
  CHECK(m.variance == 0.0);
  m = gaussian_moments(lin, 1.0, 2.0);
  CHECK(m.mean == doctest::Approx(1.0));
  CHECK(m.variance == doctest::Approx(1.0 / 20.0).epsilon(1e-5));
}

TEST_CASE("path integral of a flat path") {
  const BrownianPath flat = sample_path(0, 1.0 / 128, 1.0, 0.0);
  CHECK(std::abs(path_integral(flat, 1.0) - cplx(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(path_integral(flat, 0.3) - cplx(0.3, 0.0)) < 1e-12);
}

TEST_CASE("non-vanishing check") {
  const Window flat = synthesize_window(sample_path(0, 1.0 / 1024, 1.0, 0.0), KernelConfig{257});
  CHECK(verify_nonvanishing(flat).min_abs > 0.0);

  std::vector<double> xs;
  std::vector<cplx> vs;
  for (int k = 0; k <= 100; ++k) {
    xs.push_back(k / 100.0);
    vs.emplace_back(k == 50 ? 0.0 : 1.0, 0.0);
  }
  const NonVanishing nv = verify_nonvanishing(Window::sampled(xs, vs), 1001);
  CHECK(nv.min_abs == 0.0);
  CHECK(nv.argmin == doctest::Approx(0.5));

  for (std::uint64_t s = 0; s < 10; ++s)
    CHECK(verify_nonvanishing(synthesize_window(sample_path(s), KernelConfig{512})).min_abs > 0.0);
}

TEST_CASE("synthesized windows have bounded second differences") {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Window w = normalized(synthesize_window(sample_path(s), KernelConfig{2048}));
    const auto& v = w.samples()->value;
    const double h = 1.0 / 2047;
    for (std::size_t k = 1; k + 1 < v.size(); ++k)
      worst = std::max(worst, std::abs(v[k - 1] - 2.0 * v[k] + v[k + 1]) * w.scale() / (h * h));
  }
  CHECK(std::isfinite(worst));
  CHECK(worst < 1e4);
}

TEST_CASE("normalized windows have unit sup norm") {
  const Window w = normalized(synthesize_window(sample_path(8), KernelConfig{256}));
  CHECK(w.sup_norm() == doctest::Approx(1.0));
}

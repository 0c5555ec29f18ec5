#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gaborcert/window.hpp"

namespace gaborcert {

// Counter-based generator: draw k of stream `seed` depends on (seed, k) only.
std::uint64_t splitmix64(std::uint64_t x);

// Two independent standard normals for (seed, counter) via Box-Muller.
std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t counter);

// Complex Brownian motion sampled at t_k = k dt, values[0] = 1.
struct BrownianPath {
  double dt = 0.0;
  std::vector<cplx> values;
  std::uint64_t seed = 0;
  double component_var = 1.0;

  double horizon() const { return dt * static_cast<double>(values.size() - 1); }
};

// Real and imaginary increments are independent N(0, component_var dt).
// component_var = 0 gives the deterministic path B = 1.
BrownianPath sample_path(std::uint64_t seed, double dt = 1.0 / 4096.0, double horizon = 1.0,
                         double component_var = 1.0);

// exp(-1/t - 1/(x - t) - 1/(1 - x)) for 0 < t < x < 1, else 0.
double triangle_kernel(double x, double t);

struct KernelConfig {
  int quadrature_n = 2048;  // x nodes on [0, 1]
};

// g(x) = \int_0^x B(t) h(x, t) dt by the trapezoid rule on the path grid, at
// quadrature_n uniform nodes of [0, 1]. The result is a Sampled window on
// (0, 1) carrying the path's seed.
Window synthesize_window(const BrownianPath& path, const KernelConfig& kcfg = {});

// \int_0^t B(x) u(x) dx on the path grid (trapezoid).
cplx path_integral(const BrownianPath& path, double t,
                   const std::function<double(double)>& u = [](double) { return 1.0; });

struct GaussianMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// u tabulated on a uniform grid of [0, t] (u.size() >= 2 nodes):
// mean = r \int_0^t u, variance = \int_0^t (\int_0^rho u)^2 d rho.
GaussianMoments gaussian_moments(std::span<const double> u, double t, double r);

struct NonVanishing {
  double min_abs = 0.0;
  double argmin = 0.0;
};

// min |g| over n_core uniform points of [1/8, 7/8].
NonVanishing verify_nonvanishing(const Window& w, int n_core = 4096);

// w scaled so that its sup norm is 1. Random windows are tiny in absolute
// terms (h <= exp(-9)), which would push determinants below fixed floors.
Window normalized(const Window& w);

}  // namespace gaborcert

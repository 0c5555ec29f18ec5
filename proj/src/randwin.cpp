#include "gaborcert/randwin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gaborcert/error.hpp"

namespace gaborcert {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// Uniform on (0, 1].
double uniform(std::uint64_t seed, std::uint64_t k) {
  const std::uint64_t bits = splitmix64(splitmix64(seed) ^ splitmix64(k + 0x632be59bd9b4e019ULL));
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t counter) {
  const double u1 = uniform(seed, 2 * counter);
  const double u2 = uniform(seed, 2 * counter + 1);
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  return {rad * std::cos(th), rad * std::sin(th)};
}

BrownianPath sample_path(std::uint64_t seed, double dt, double horizon, double component_var) {
  if (!(dt > 0.0)) throw ConfigError("sample_path: dt must be positive");
  if (!(horizon >= 1.0)) throw ConfigError("sample_path: horizon must be >= 1");
  if (!(component_var >= 0.0)) throw ConfigError("sample_path: component_var must be >= 0");
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  BrownianPath path;
  path.dt = dt;
  path.seed = seed;
  path.component_var = component_var;
  path.values.resize(steps + 1);
  path.values[0] = {1.0, 0.0};
  const double sd = std::sqrt(component_var * dt);
  for (std::size_t k = 0; k < steps; ++k) {
    cplx inc{0.0, 0.0};
    if (sd > 0.0) {
      const auto [re, im] = gaussian_pair(seed, k);
      inc = {sd * re, sd * im};
    }
    path.values[k + 1] = path.values[k] + inc;
  }
  return path;
}

double triangle_kernel(double x, double t) {
  if (!(t > 0.0 && t < x && x < 1.0)) return 0.0;
  return std::exp(-1.0 / t - 1.0 / (x - t) - 1.0 / (1.0 - x));
}

namespace {

cplx path_value(const BrownianPath& path, double t) {
  const double pos = t / path.dt;
  const auto k = std::min(static_cast<std::size_t>(pos), path.values.size() - 2);
  const double frac = pos - static_cast<double>(k);
  return path.values[k] * (1.0 - frac) + path.values[k + 1] * frac;
}

// \int_0^x B(t) f(t) dt: trapezoid on the path nodes, plus the partial last
// segment up to x.
template <class F>
cplx integrate_to(const BrownianPath& path, double x, F f) {
  if (x <= 0.0) return {0.0, 0.0};
  const double dt = path.dt;
  const auto full = std::min(static_cast<std::size_t>(x / dt), path.values.size() - 1);
  cplx sum{0.0, 0.0};
  double prev_f = f(0.0);
  for (std::size_t k = 0; k < full; ++k) {
    const double next_f = f(dt * static_cast<double>(k + 1));
    sum += 0.5 * dt * (path.values[k] * prev_f + path.values[k + 1] * next_f);
    prev_f = next_f;
  }
  const double t0 = dt * static_cast<double>(full);
  const double rest = x - t0;
  if (rest > 0.0) sum += 0.5 * rest * (path.values[full] * prev_f + path_value(path, x) * f(x));
  return sum;
}

}  // namespace

Window synthesize_window(const BrownianPath& path, const KernelConfig& kcfg) {
  if (kcfg.quadrature_n < 2) throw ConfigError("synthesize_window: quadrature_n must be >= 2");
  if (path.horizon() < 1.0 - 1e-12) throw ConfigError("synthesize_window: path horizon < 1");
  const int n = kcfg.quadrature_n;
  BrownianIntegral data;
  data.seed = path.seed;
  data.dt = path.dt;
  data.component_var = path.component_var;
  data.quadrature_n = n;
  data.samples.x.resize(n);
  data.samples.value.resize(n);
  for (int j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / (n - 1);
    data.samples.x[j] = x;
    data.samples.value[j] =
        integrate_to(path, x, [x](double t) { return triangle_kernel(x, t); });
  }
  return Window::brownian(std::move(data));
}

cplx path_integral(const BrownianPath& path, double t, const std::function<double(double)>& u) {
  if (t > path.horizon() + 1e-12) throw ConfigError("path_integral: t beyond path horizon");
  return integrate_to(path, t, u);
}

GaussianMoments gaussian_moments(std::span<const double> u, double t, double r) {
  if (u.size() < 2) throw ConfigError("gaussian_moments: need at least 2 nodes");
  const double h = t / static_cast<double>(u.size() - 1);
  std::vector<double> cum(u.size(), 0.0);
  for (std::size_t k = 1; k < u.size(); ++k) cum[k] = cum[k - 1] + 0.5 * h * (u[k - 1] + u[k]);
  double var = 0.0;
  for (std::size_t k = 1; k < u.size(); ++k)
    var += 0.5 * h * (cum[k - 1] * cum[k - 1] + cum[k] * cum[k]);
  return {r * cum.back(), var};
}

NonVanishing verify_nonvanishing(const Window& w, int n_core) {
  if (n_core < 2) throw ConfigError("verify_nonvanishing: n_core must be >= 2");
  NonVanishing out{std::numeric_limits<double>::infinity(), 0.0};
  for (int k = 0; k < n_core; ++k) {
    const double x = 0.125 + 0.75 * k / (n_core - 1);
    const double v = std::abs(w.eval(x));
    if (v < out.min_abs) out = {v, x};
  }
  return out;
}

Window normalized(const Window& w) {
  const double s = w.sup_norm();
  if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("normalized: window has zero sup norm");
  return w.scaled(1.0 / s);
}

}  // namespace gaborcert

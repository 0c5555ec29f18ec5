#include "gaborcert/window.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gaborcert/error.hpp"

namespace gaborcert {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx eval_sampled(const Sampled& s, double x) {
  const auto& xs = s.x;
  // upper_bound puts x == xs[i] at segment i with t == 0, so nodes are
  // reproduced exactly.
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin() || it == xs.end()) return {0.0, 0.0};
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return s.value[i] + t * (s.value[i + 1] - s.value[i]);
}

double grid_max_abs(const Window& w, int grid_n) {
  double best = 0.0;
  const double a = w.support_lo();
  const double b = w.support_hi();
  for (int k = 0; k < grid_n; ++k) {
    const double x = a + (b - a) * (k + 0.5) / grid_n;
    best = std::max(best, std::abs(w.eval(x)));
  }
  return best;
}

void validate_nodes(const std::vector<double>& x, const std::vector<cplx>& v) {
  if (x.size() != v.size()) throw ConfigError("sampled window: x/value size mismatch");
  if (x.size() < 2) throw ConfigError("sampled window: need at least two nodes");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
      throw ConfigError("sampled window: non-finite node at index " + std::to_string(i));
    if (i > 0 && !(x[i] > x[i - 1]))
      throw ConfigError("sampled window: x must be strictly increasing (index " +
                        std::to_string(i) + ")");
  }
}

double max_abs_nodes(const Sampled& s) {
  double m = 0.0;
  for (const auto& v : s.value) m = std::max(m, std::abs(v));
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Window::Window(double lo, double hi, WindowKind kind) : lo_(lo), hi_(hi), kind_(std::move(kind)) {
  if (!(lo_ < hi_)) throw ConfigError("window: support_lo must be < support_hi");
}

Window Window::bump() {
  Window w(-1.0, 1.0, Bump{});
  w.sup_norm_hint_ = std::exp(-1.0);
  return w;
}

Window Window::gevrey(int order) {
  if (order < 1) throw ConfigError("gevrey window: order must be a positive integer");
  Window w(-1.0, 1.0, Gevrey{order});
  w.sup_norm_hint_ = std::exp(-1.0);
  return w;
}

Window Window::characteristic(double a, double b) {
  Window w(a, b, Characteristic{});
  w.sup_norm_hint_ = 1.0;
  return w;
}

Window Window::odd_bump() {
  Window w(-1.0, 1.0, OddBump{});
  w.sup_norm_hint_ = grid_max_abs(w, 1 << 16);
  return w;
}

Window Window::poly_bump(double a, double b) {
  Window w(a, b, PolyBump{});
  w.sup_norm_hint_ = 0.25 * (b - a) * (b - a);
  return w;
}

Window Window::sampled(std::vector<double> x, std::vector<cplx> value) {
  validate_nodes(x, value);
  const double lo = x.front();
  const double hi = x.back();
  Sampled s{std::move(x), std::move(value)};
  const double m = max_abs_nodes(s);
  Window w(lo, hi, std::move(s));
  w.sup_norm_hint_ = m;
  return w;
}

Window Window::brownian(BrownianIntegral data) {
  validate_nodes(data.samples.x, data.samples.value);
  const double lo = data.samples.x.front();
  const double hi = data.samples.x.back();
  const double m = max_abs_nodes(data.samples);
  Window w(lo, hi, std::move(data));
  w.sup_norm_hint_ = m;
  return w;
}

std::string Window::kind_name() const {
  return std::visit(overloaded{
                        [](const Bump&) { return std::string("bump"); },
                        [](const Gevrey&) { return std::string("gevrey"); },
                        [](const Characteristic&) { return std::string("char"); },
                        [](const OddBump&) { return std::string("oddbump"); },
                        [](const PolyBump&) { return std::string("poly"); },
                        [](const Sampled&) { return std::string("sampled"); },
                        [](const BrownianIntegral&) { return std::string("brownian"); },
                    },
                    kind_);
}

std::string Window::descriptor() const {
  std::string d = std::visit(
      overloaded{
          [](const Bump&) { return std::string("bump"); },
          [](const Gevrey& g) { return "gevrey:" + std::to_string(g.order); },
          [this](const Characteristic&) { return "char:" + fmt(lo_) + ":" + fmt(hi_); },
          [](const OddBump&) { return std::string("oddbump"); },
          [this](const PolyBump&) { return "poly:" + fmt(lo_) + ":" + fmt(hi_); },
          [](const Sampled& s) { return "sampled[" + std::to_string(s.x.size()) + "]"; },
          [](const BrownianIntegral& b) { return "random:" + std::to_string(b.seed); },
      },
      kind_);
  if (scale_ != 1.0) d += "*" + fmt(scale_);
  return d;
}

cplx Window::eval(double x) const {
  if (!(x > lo_ && x < hi_)) return {0.0, 0.0};
  const cplx v = std::visit(
      overloaded{
          [x](const Bump&) { return cplx(std::exp(1.0 / (x * x * x * x - 1.0)), 0.0); },
          [x](const Gevrey& g) {
            const double base = 1.0 - x * x * x * x;
            return cplx(std::exp(-std::pow(base, -static_cast<double>(g.order))), 0.0);
          },
          [](const Characteristic&) { return cplx(1.0, 0.0); },
          [x](const OddBump&) { return cplx(x * std::exp(1.0 / (x * x - 1.0)), 0.0); },
          [this, x](const PolyBump&) { return cplx((x - lo_) * (hi_ - x), 0.0); },
          [x](const Sampled& s) { return eval_sampled(s, x); },
          [x](const BrownianIntegral& b) { return eval_sampled(b.samples, x); },
      },
      kind_);
  return scale_ == 1.0 ? v : v * scale_;
}

double Window::sup_norm(int grid_n) const {
  if (sup_norm_hint_) return *sup_norm_hint_ * scale_;
  return grid_max_abs(*this, grid_n);
}

Window Window::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw ConfigError("window: scale factor must be positive and finite");
  Window w = *this;
  w.scale_ *= factor;
  return w;
}

const Sampled* Window::samples() const {
  if (const auto* s = std::get_if<Sampled>(&kind_)) return s;
  if (const auto* b = std::get_if<BrownianIntegral>(&kind_)) return &b->samples;
  return nullptr;
}

double inv_sup_on_core(const Window& w, double eps, int grid_n) {
  const double lo = w.support_lo() + eps;
  const double hi = w.support_hi() - eps;
  if (!(lo < hi)) throw EmptyCore("inv_sup_on_core: a + eps >= b - eps");
  if (grid_n < 1) throw ConfigError("inv_sup_on_core: grid_n must be positive");
  double worst = 0.0;
  cplx prev = 0.0;
  for (int k = 0; k < grid_n; ++k) {
    const double x = grid_n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (grid_n - 1);
    const cplx v = w.eval(x);
    const double m = std::abs(v);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    // A real-valued stretch that changes sign has a zero between the nodes.
    if (k > 0 && v.imag() == 0.0 && prev.imag() == 0.0 &&
        std::signbit(v.real()) != std::signbit(prev.real()))
      return std::numeric_limits<double>::infinity();
    worst = std::max(worst, 1.0 / m);
    prev = v;
  }
  return worst;
}

cplx fourier_transform(const Window& w, double xi, int nodes) {
  const double a = w.support_lo();
  const double b = w.support_hi();
  const double h = (b - a) / nodes;
  cplx sum = 0.0;
  for (int k = 0; k <= nodes; ++k) {
    const double x = a + h * k;
    // One-sided limits at the ends, so windows with jumps at a or b (the
    // indicator) keep second-order accuracy.
    const double at = k == 0 ? std::nextafter(a, b) : k == nodes ? std::nextafter(b, a) : x;
    const cplx gx = w.eval(at);
    if (gx == 0.0) continue;
    const double weight = (k == 0 || k == nodes) ? 0.5 : 1.0;
    sum += weight * gx * std::polar(1.0, -2.0 * std::numbers::pi * xi * x);
  }
  return sum * h;
}

namespace {

struct LinearFit {
  double log_c = 0.0;
  double rate = 0.0;
  double sse = 0.0;
};

// Least squares for y ~ log_c - rate * xi^s.
LinearFit fit_for_order(const std::vector<double>& xi, const std::vector<double>& y, double s) {
  const double n = static_cast<double>(xi.size());
  double sz = 0.0, szz = 0.0, sy = 0.0, szy = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double z = -std::pow(xi[i], s);
    sz += z;
    szz += z * z;
    sy += y[i];
    szy += z * y[i];
  }
  LinearFit f;
  const double det = n * szz - sz * sz;
  if (det <= 0.0) {
    f.log_c = sy / n;
  } else {
    f.rate = (n * szy - sz * sy) / det;
    f.log_c = (sy - f.rate * sz) / n;
  }
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double r = y[i] - (f.log_c - f.rate * std::pow(xi[i], s));
    f.sse += r * r;
  }
  return f;
}

}  // namespace

DecayFit fourier_decay_fit(const Window& w, double xi_max, int n_xi, int quadrature_nodes) {
  if (!(xi_max > 1.0)) throw ConfigError("fourier_decay_fit: xi_max must exceed 1");
  if (n_xi < 3) throw ConfigError("fourier_decay_fit: n_xi must be at least 3");

  std::vector<double> xi(n_xi);
  std::vector<double> mag(n_xi);
  for (int k = 0; k < n_xi; ++k) {
    xi[k] = 1.0 + (xi_max - 1.0) * k / (n_xi - 1);
    mag[k] = std::abs(fourier_transform(w, xi[k], quadrature_nodes));
  }

  constexpr double kFloor = 1e-12;
  std::vector<double> ex;
  std::vector<double> ey;
  for (int k = 1; k + 1 < n_xi; ++k) {
    if (!(mag[k] > kFloor)) continue;
    if (mag[k] >= mag[k - 1] && mag[k] >= mag[k + 1]) {
      ex.push_back(xi[k]);
      ey.push_back(std::log(mag[k]));
    }
  }
  if (ex.size() < 8)
    throw DegenerateFit("fourier_decay_fit: only " + std::to_string(ex.size()) +
                        " usable envelope frequencies (need 8)");

  constexpr double kSMax = 2.0;
  constexpr int kGrid = 400;
  double best_s = kSMax / kGrid;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= kGrid; ++i) {
    const double s = kSMax * i / kGrid;
    const double sse = fit_for_order(ex, ey, s).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best_s = s;
    }
  }
  // Golden-section refinement on the bracketing grid cell pair.
  const double step = kSMax / kGrid;
  double lo = std::max(1e-6, best_s - step);
  double hi = std::min(kSMax, best_s + step);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = fit_for_order(ex, ey, c).sse;
  double fd = fit_for_order(ex, ey, d).sse;
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = fit_for_order(ex, ey, c).sse;
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = fit_for_order(ex, ey, d).sse;
    }
  }
  const double s = 0.5 * (lo + hi);
  const LinearFit f = fit_for_order(ex, ey, s);
  DecayFit out;
  out.s_hat = s;
  out.c_hat = std::exp(f.log_c);
  out.rate = f.rate;
  out.points_used = static_cast<int>(ex.size());
  return out;
}

void write_sampled_csv(std::ostream& os, const Window& w) {
  const Sampled* s = w.samples();
  if (!s) throw ConfigError("write_sampled_csv: window is not sampled");
  os << "x,re,im\n";
  os.precision(17);
  for (std::size_t i = 0; i < s->x.size(); ++i) {
    const cplx v = s->value[i] * w.scale();
    os << s->x[i] << ',' << v.real() << ',' << v.imag() << '\n';
  }
}

Window read_sampled_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("sampled csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,re,im") throw ConfigError("sampled csv line 1: expected header 'x,re,im'");
  std::vector<double> xs;
  std::vector<cplx> vs;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f[3];
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(ls, f[k], ','))
        throw ConfigError("sampled csv line " + std::to_string(lineno) + ": expected 3 fields");
    }
    try {
      std::size_t used = 0;
      double vals[3];
      for (int k = 0; k < 3; ++k) {
        vals[k] = std::stod(f[k], &used);
        if (used != f[k].size()) throw std::invalid_argument(f[k]);
      }
      xs.push_back(vals[0]);
      vs.emplace_back(vals[1], vals[2]);
    } catch (const std::exception&) {
      throw ConfigError("sampled csv line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return Window::sampled(std::move(xs), std::move(vs));
}

}  // namespace gaborcert

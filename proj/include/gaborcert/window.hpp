#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gaborcert {

using cplx = std::complex<double>;

// exp(1/(x^4 - 1)) on (-1, 1).
struct Bump {};

// exp(-(1 - x^4)^(-order)) on (-1, 1).
struct Gevrey {
  int order = 1;
};

// Indicator of (a, b).
struct Characteristic {};

// x * exp(1/(x^2 - 1)) on (-1, 1).
struct OddBump {};

// (x - a)(b - x) on (a, b).
struct PolyBump {};

// Piecewise-linear interpolation of complex nodes; x strictly increasing.
struct Sampled {
  std::vector<double> x;
  std::vector<cplx> value;
};

// A Sampled window synthesized from a Brownian path, with its provenance.
struct BrownianIntegral {
  Sampled samples;
  std::uint64_t seed = 0;
  double dt = 0.0;
  double component_var = 1.0;
  int quadrature_n = 0;
};

using WindowKind =
    std::variant<Bump, Gevrey, Characteristic, OddBump, PolyBump, Sampled, BrownianIntegral>;

// A compactly supported window g with supp g = [a, b]. Immutable once built.
//
// eval() is exactly zero outside the open interval (a, b); this is what the
// lattice code relies on when it equates "good pair" with "possibly nonzero
// entry".
class Window {
 public:
  static Window bump();
  static Window gevrey(int order);
  static Window characteristic(double a = 0.0, double b = 1.0);
  static Window odd_bump();
  static Window poly_bump(double a = 0.0, double b = 1.0);
  static Window sampled(std::vector<double> x, std::vector<cplx> value);
  static Window brownian(BrownianIntegral data);

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double support_length() const { return hi_ - lo_; }
  const WindowKind& kind() const { return kind_; }

  // Short name of the kind: "bump", "gevrey", "char", "oddbump", "poly",
  // "sampled", "brownian".
  std::string kind_name() const;

  // Descriptor understood by parse_window_descriptor (where possible).
  std::string descriptor() const;

  double scale() const { return scale_; }
  const std::optional<double>& sup_norm_hint() const { return sup_norm_hint_; }

  cplx eval(double x) const;

  // max |g| over a uniform grid of the support (exact at the nodes for
  // Sampled windows). Uses and fills the cached hint when available.
  double sup_norm(int grid_n = 4096) const;

  // Same window multiplied by a positive constant. Frame properties are
  // invariant under scaling; this only moves absolute determinant floors.
  Window scaled(double factor) const;

  // Nodes of a Sampled / BrownianIntegral window; nullptr otherwise.
  const Sampled* samples() const;

 private:
  Window(double lo, double hi, WindowKind kind);

  double lo_;
  double hi_;
  WindowKind kind_;
  double scale_ = 1.0;
  std::optional<double> sup_norm_hint_;
};

// max over a uniform grid of grid_n points in [a + eps, b - eps] of 1/|g(x)|;
// +infinity if any sampled value is zero, or if real values change sign
// between neighbouring nodes (a zero the grid stepped over). Throws EmptyCore
// when the core is empty.
double inv_sup_on_core(const Window& w, double eps, int grid_n = 4096);

// g^(xi) = \int g(x) exp(-2 pi i xi x) dx by composite trapezoid on `nodes`
// intervals over the support.
cplx fourier_transform(const Window& w, double xi, int nodes = 1 << 14);

struct DecayFit {
  double s_hat = 0.0;   // stretched-exponential order
  double c_hat = 0.0;   // prefactor
  double rate = 0.0;    // k in c * exp(-k xi^s)
  int points_used = 0;  // envelope points entering the fit
};

// Fits |g^(xi)| ~ c exp(-k xi^s) over xi in [1, xi_max].
//
// |g^| oscillates (real even windows have sign changes), so the fit runs on
// the upper envelope: local maxima of |g^| among the frequencies where
// |g^| > 1e-12. For each trial s the pair (log c, k) is an ordinary least
// squares problem; s is found by grid search refined with golden section.
DecayFit fourier_decay_fit(const Window& w, double xi_max, int n_xi = 512,
                           int quadrature_nodes = 1 << 14);

// Sampled-window CSV: header "x,re,im", strictly increasing x.
void write_sampled_csv(std::ostream& os, const Window& w);
Window read_sampled_csv(std::istream& is);

}  // namespace gaborcert

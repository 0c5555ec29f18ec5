#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gaborcert/error.hpp"
#include "gaborcert/window.hpp"

using namespace gaborcert;

namespace {

std::vector<Window> zoo() {
  return {Window::bump(),           Window::gevrey(4),        Window::characteristic(),
          Window::odd_bump(),       Window::poly_bump(-0.5, 2.0),
          Window::characteristic(-3, -1)};
}

}  // namespace

TEST_CASE("eval vanishes outside the open support") {
  std::mt19937_64 rng(1);
  for (const Window& w : zoo()) {
    std::uniform_real_distribution<double> far(-50.0, 50.0);
    int checked = 0;
    while (checked < 10000) {
      const double x = far(rng);
      if (x > w.support_lo() && x < w.support_hi()) continue;
      CHECK(w.eval(x) == cplx(0.0, 0.0));
      ++checked;
    }
    CHECK(w.eval(w.support_lo()) == cplx(0.0, 0.0));
    CHECK(w.eval(w.support_hi()) == cplx(0.0, 0.0));
  }
}

TEST_CASE("named window values") {
  CHECK(Window::bump().eval(2.0) == cplx(0.0, 0.0));
  CHECK(Window::bump().eval(0.0).real() == doctest::Approx(0.3678794).epsilon(1e-7));
  CHECK(Window::odd_bump().eval(0.0) == cplx(0.0, 0.0));
  CHECK(Window::poly_bump().eval(0.1).real() == doctest::Approx(0.09));
  CHECK(Window::characteristic().eval(0.5) == cplx(1.0, 0.0));
}

TEST_CASE("bump is real positive and at most 1/e") {
  for (int k = 1; k < 2000; ++k) {
    const double x = -1.0 + k / 1000.0;
    const cplx v = Window::bump().eval(x);
    CHECK(v.imag() == 0.0);
    CHECK(v.real() > 0.0);
    CHECK(v.real() <= std::exp(-1.0));
  }
}

TEST_CASE("odd bump is odd") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const Window w = Window::odd_bump();
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    CHECK(std::abs(w.eval(-x) + w.eval(x)) <= 1e-300);
  }
}

TEST_CASE("sampled window reproduces its nodes") {
  const Window b = Window::bump();
  std::vector<double> xs;
  std::vector<cplx> vs;
  for (int k = 0; k < 1000; ++k) {
    xs.push_back(-1.0 + 2.0 * k / 999.0);
    vs.push_back(b.eval(xs.back()));
  }
  const Window s = Window::sampled(xs, vs);
  for (std::size_t k = 1; k + 1 < xs.size(); ++k) CHECK(s.eval(xs[k]) == vs[k]);
  // Midpoints interpolate linearly.
  const cplx mid = s.eval(0.5 * (xs[10] + xs[11]));
  CHECK(mid.real() == doctest::Approx(0.5 * (vs[10] + vs[11]).real()));
}

TEST_CASE("sampled window rejects bad grids") {
  CHECK_THROWS_AS(Window::sampled({0.0, 0.0, 1.0}, {1, 1, 1}), ConfigError);
  CHECK_THROWS_AS(Window::sampled({0.0, 1.0}, {1}), ConfigError);
}

TEST_CASE("inv_sup_on_core") {
  CHECK(inv_sup_on_core(Window::characteristic(), 0.2, 37) == 1.0);
  // 1/|g(+-0.5)| = exp(1/(1 - 0.5^4)) = exp(16/15)
  CHECK(inv_sup_on_core(Window::bump(), 0.5, 1001) == doctest::Approx(std::exp(16.0 / 15.0)));
  CHECK(std::isinf(inv_sup_on_core(Window::odd_bump(), 0.1, 1001)));
  // even grids step over g(0) = 0; the sign change still gives it away
  CHECK(std::isinf(inv_sup_on_core(Window::odd_bump(), 0.1, 1000)));
  CHECK_THROWS_AS(inv_sup_on_core(Window::bump(), 1.0, 100), EmptyCore);

  double prev = std::numeric_limits<double>::infinity();
  for (double eps = 0.05; eps < 0.95; eps += 0.05) {
    const double v = inv_sup_on_core(Window::bump(), eps, 4096);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("fourier transform of the characteristic window") {
  // |sinc|: |g^(xi)| = |sin(pi xi)| / (pi xi)
  for (double xi : {0.25, 1.5, 7.3}) {
    const double want = std::abs(std::sin(M_PI * xi)) / (M_PI * xi);
    CHECK(std::abs(fourier_transform(Window::characteristic(), xi)) ==
          doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("fourier decay fit") {
  CHECK(fourier_decay_fit(Window::characteristic(), 80.0).s_hat < 0.1);
  const double g4 = fourier_decay_fit(Window::gevrey(4), 80.0).s_hat;
  CHECK(g4 > 0.55);
  CHECK(g4 < 0.80);

  // Reference exponent from the same fit at 10x quadrature resolution.
  const double bump = fourier_decay_fit(Window::bump(), 80.0).s_hat;
  const double bump_fine = fourier_decay_fit(Window::bump(), 80.0, 512, 10 << 14).s_hat;
  CHECK(bump == doctest::Approx(bump_fine).epsilon(1e-3));
  CHECK(bump > 0.4);
  CHECK(bump < 0.9);
  CHECK(std::abs(bump - 0.4148) < 0.1);

  CHECK_THROWS_AS(fourier_decay_fit(Window::bump(), 1.5, 8), DegenerateFit);
}

TEST_CASE("sampled csv round trip") {
  const Window w = Window::sampled({0.0, 0.25, 1.0}, {{0.0, 0.0}, {0.5, -0.1}, {0.0, 0.0}});
  std::stringstream ss;
  write_sampled_csv(ss, w);
  CHECK(ss.str().rfind("x,re,im\n", 0) == 0);
  const Window r = read_sampled_csv(ss);
  CHECK(r.samples()->x == w.samples()->x);
  CHECK(r.samples()->value == w.samples()->value);

  std::stringstream bad("x,re,im\n0,1,0\n0.5,oops,0\n");
  try {
    read_sampled_csv(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "gaborcert/framebound.hpp"

using namespace gaborcert;

TEST_CASE("truncated G example") {
  const LatticeParams p = LatticeParams::make(0.7, 1.0);
  const TruncatedG t = truncated_g(p, Window::characteristic(), 0.1, 1);
  REQUIRE(t.matrix.rows() == 3);
  REQUIRE(t.columns == std::vector<long>{0, 1});
  const double want[3][2] = {{1, 0}, {1, 0}, {0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) CHECK(t.matrix(i, j) == cplx(want[i][j], 0.0));

  const TruncatedG t0 = truncated_g(p, Window::characteristic(), 0.1, 0);
  CHECK(t0.matrix.rows() == 1);
  CHECK(t0.columns == std::vector<long>{0});
}

TEST_CASE("truncated G shape, sparsity and shift covariance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Window w = Window::bump();
  for (int k = 0; k < 30; ++k) {
    const double alpha = 2.0 * (0.1 + 0.85 * u(rng));
    const double beta = (0.1 + 0.85 * u(rng)) / alpha;
    const LatticeParams p = LatticeParams::make(alpha, beta);
    const double x = alpha * u(rng);
    const int extent = 1 + k % 9;
    const TruncatedG t = truncated_g(p, w, x, extent);
    CHECK(t.matrix.rows() == 2 * extent + 1);
    const long cap = static_cast<long>(std::floor(beta * w.support_length())) + 1;
    for (Eigen::Index i = 0; i < t.matrix.rows(); ++i) {
      long nz = 0;
      for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) nz += t.matrix(i, j) != cplx(0, 0);
      CHECK(nz <= cap);
    }
    // G(x - alpha)(n, m) = G(x)(n + 1, m)
    const TruncatedG s = truncated_g(p, w, x - alpha, extent);
    for (long n = -extent; n < extent; ++n)
      for (std::size_t j = 0; j < s.columns.size(); ++j) {
        const cplx shifted = s.matrix(n + extent, static_cast<Eigen::Index>(j));
        const cplx direct = w.eval(lattice_argument(p, x, n + 1, s.columns[j]));
        CHECK(std::abs(shifted - direct) <= 1e-12);
      }
  }
}

TEST_CASE("characteristic window at alpha = 1/sqrt(2), beta = 1") {
  const LatticeParams p = LatticeParams::make(1 / std::sqrt(2.0), 1.0);
  const Window w = Window::characteristic();
  const FiniteSectionEstimate est = estimate_bounds(p, w, 16, 32);
  CHECK(est.sigma_min_inf == doctest::Approx(1.0));
  // Exact check: each row has a single 1, so columns are orthogonal and the
  // smallest column count is 1.
  for (const SectionSample& s : est.per_x) {
    const TruncatedG t = truncated_g(p, w, s.x, 16, ColumnPolicy::FullSupport);
    long min_count = 1 << 20;
    for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) {
      long c = 0;
      for (Eigen::Index i = 0; i < t.matrix.rows(); ++i) c += t.matrix(i, j) == cplx(1, 0);
      min_count = std::min(min_count, c);
    }
    for (Eigen::Index i = 0; i < t.matrix.rows(); ++i) {
      long c = 0;
      for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) c += t.matrix(i, j) != cplx(0, 0);
      CHECK(c <= 1);
    }
    CHECK(s.sigma_min == doctest::Approx(std::sqrt(static_cast<double>(min_count))));
  }
}

TEST_CASE("full-support sections are nonincreasing in extent") {
  const LatticeParams p = LatticeParams::make(1.0, 1 / std::sqrt(2.0));
  for (const Window& w : {Window::bump(), Window::odd_bump()}) {
    for (double x : {0.13, 0.58, 0.91}) {
      double prev = INFINITY;
      for (int e : {4, 8, 16, 32, 64}) {
        const double s =
            singular_extremes(truncated_g(p, w, x, e, ColumnPolicy::FullSupport).matrix).sigma_min;
        CHECK(s <= prev * (1 + 1e-9));
        prev = s;
      }
    }
  }
}

TEST_CASE("estimate_bounds") {
  const LatticeParams p = LatticeParams::make(1.0, 1 / std::sqrt(2.0));
  const Window w = Window::bump();
  const FiniteSectionEstimate a = estimate_bounds(p, w, 8, 16);
  const FiniteSectionEstimate b = estimate_bounds(p, w, 8, 16, ColumnPolicy::FullSupport, 4);
  CHECK(a.per_x.size() == 16);
  CHECK(a.sigma_min_inf <= a.sigma_max_sup);
  for (std::size_t k = 0; k < a.per_x.size(); ++k) {
    CHECK(a.per_x[k].x == b.per_x[k].x);
    CHECK(a.per_x[k].sigma_min == b.per_x[k].sigma_min);
  }
  const double cap = std::floor(p.beta * w.support_length()) + 1;
  CHECK(a.sigma_max_sup <= upper_bound_rowsum(p, w) * std::sqrt(cap));
}

TEST_CASE("row-sum bound") {
  CHECK(upper_bound_rowsum(LatticeParams::make(0.5, 1.0), Window::characteristic()) == 2.0);
  CHECK(upper_bound_rowsum(LatticeParams::make(1.0, 1 / std::sqrt(2.0)), Window::bump()) ==
        doctest::Approx(2 * std::exp(-1.0)));
  CHECK(upper_bound_rowsum(LatticeParams::make(0.5, 0.4), Window::characteristic()) == 1.0);
}

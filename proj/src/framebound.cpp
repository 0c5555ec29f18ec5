#include "gaborcert/framebound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "gaborcert/error.hpp"

namespace gaborcert {

TruncatedG truncated_g(const LatticeParams& p, const Window& w, double x, int extent,
                       ColumnPolicy policy) {
  if (extent < 0) throw ConfigError("truncated_g: extent must be >= 0");
  TruncatedG t;
  t.row_lo = -extent;
  t.row_hi = extent;
  std::set<long> cols;
  for (long n = t.row_lo; n <= t.row_hi; ++n) {
    const IndexRange r = row_good_columns(p, w, x, n);
    for (long m = r.first; m <= r.last; ++m) cols.insert(m);
  }
  for (long m : cols) {
    if (policy == ColumnPolicy::FullSupport) {
      const IndexRange rows = column_good_rows(p, w, x, m);
      if (rows.first < t.row_lo || rows.last > t.row_hi) continue;
    }
    t.columns.push_back(m);
  }
  const long n_rows = t.row_hi - t.row_lo + 1;
  t.matrix = CMatrix::Zero(n_rows, static_cast<Eigen::Index>(t.columns.size()));
  for (long i = 0; i < n_rows; ++i)
    for (std::size_t j = 0; j < t.columns.size(); ++j)
      t.matrix(i, static_cast<Eigen::Index>(j)) =
          w.eval(lattice_argument(p, x, t.row_lo + i, t.columns[j]));
  return t;
}

FiniteSectionEstimate estimate_bounds(const LatticeParams& p, const Window& w, int extent,
                                      int x_grid_size, ColumnPolicy policy, int workers) {
  if (x_grid_size < 8) throw ConfigError("estimate_bounds: x_grid_size must be >= 8");
  FiniteSectionEstimate est;
  est.extent = extent;
  est.x_grid_size = x_grid_size;
  est.per_x.resize(x_grid_size);

  std::vector<double> edges{0.0};
  if (p.alpha < w.support_length()) {
    const std::vector<double> bp = structure_breakpoints(p, w);
    edges.insert(edges.end(), bp.begin(), bp.end());
  }
  edges.push_back(p.alpha);

  for (int k = 0; k < x_grid_size; ++k) {
    double x = (k + 0.5) * p.alpha / x_grid_size;
    auto it = std::upper_bound(edges.begin(), edges.end(), x);
    const double hi = it == edges.end() ? p.alpha : *it;
    const double lo = *(it - 1);
    const double nudge = 1e-9 * (hi - lo);
    if (x - lo < nudge) x = lo + nudge;
    if (hi - x < nudge) x = hi - nudge;
    est.per_x[k].x = x;
  }

  auto work = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      const SingularExtremes s =
          singular_extremes(truncated_g(p, w, est.per_x[k].x, extent, policy).matrix);
      est.per_x[k].sigma_min = s.sigma_min;
      est.per_x[k].sigma_max = s.sigma_max;
    }
  };
  const int threads = std::clamp(workers, 1, x_grid_size);
  if (threads == 1) {
    work(0, x_grid_size);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(work, t * x_grid_size / threads, (t + 1) * x_grid_size / threads);
    for (std::thread& th : pool) th.join();
  }

  est.sigma_min_inf = std::numeric_limits<double>::infinity();
  est.sigma_max_sup = 0.0;
  for (const SectionSample& s : est.per_x) {
    est.sigma_min_inf = std::min(est.sigma_min_inf, s.sigma_min);
    est.sigma_max_sup = std::max(est.sigma_max_sup, s.sigma_max);
  }
  return est;
}

double upper_bound_rowsum(const LatticeParams& p, const Window& w) {
  return (std::floor(p.beta * w.support_length()) + 1.0) * w.sup_norm();
}

}  // namespace gaborcert

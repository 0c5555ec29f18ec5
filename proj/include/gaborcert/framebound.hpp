#pragma once

#include <vector>

#include "gaborcert/lattice.hpp"
#include "gaborcert/linalg.hpp"
#include "gaborcert/window.hpp"

namespace gaborcert {

// Which columns of G(x) a finite section keeps.
//
// AnyGood: every column with a good pair in some retained row. Columns at the
// edges are cut off, so sigma_min of the section is not monotone in extent.
//
// FullSupport: only columns whose good rows all lie inside the retained rows.
// Then ||G v|| over the kept rows equals ||G(x) v|| for v supported on those
// columns, so sigma_min is >= A(x) and nonincreasing in extent.
enum class ColumnPolicy { AnyGood, FullSupport };

struct TruncatedG {
  CMatrix matrix;
  long row_lo = 0;
  long row_hi = 0;
  std::vector<long> columns;  // increasing
};

// Rows n in [-extent, extent] of G(x).
TruncatedG truncated_g(const LatticeParams& p, const Window& w, double x, int extent,
                       ColumnPolicy policy = ColumnPolicy::AnyGood);

struct SectionSample {
  double x = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

struct FiniteSectionEstimate {
  int extent = 0;
  int x_grid_size = 0;
  double sigma_min_inf = 0.0;
  double sigma_max_sup = 0.0;
  std::vector<SectionSample> per_x;
};

// Grid x_k = (k + 1/2) alpha / x_grid_size; samples closer than 1e-9 to a
// breakpoint are moved 1e-9 * gap inward. workers > 1 splits the grid across
// threads.
FiniteSectionEstimate estimate_bounds(const LatticeParams& p, const Window& w, int extent,
                                      int x_grid_size,
                                      ColumnPolicy policy = ColumnPolicy::FullSupport,
                                      int workers = 1);

// (floor(beta (b - a)) + 1) * ||g||_inf.
double upper_bound_rowsum(const LatticeParams& p, const Window& w);

}  // namespace gaborcert

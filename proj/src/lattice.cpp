#include "gaborcert/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gaborcert/error.hpp"

namespace gaborcert {

namespace {

// Rows tried when row 0 carries no good pair: a run of ceil(1/(alpha beta))
// consecutive rows always contains one.
long anchor_row_span(const LatticeParams& p) {
  return static_cast<long>(std::ceil(1.0 / p.density())) + 1;
}

// First m with x - alpha n + m / beta > a.
long first_above_lo(const LatticeParams& p, const Window& w, double x, long n) {
  const double a = w.support_lo();
  long m = static_cast<long>(std::floor((a - x + p.alpha * static_cast<double>(n)) * p.beta)) - 2;
  while (lattice_argument(p, x, n, m) <= a) ++m;
  while (lattice_argument(p, x, n, m - 1) > a) --m;
  return m;
}

struct ColumnRange {
  long lo = 0;
  long hi = 0;
};

// Range of anchor columns over x in [0, alpha] and all candidate anchor rows.
ColumnRange anchor_column_range(const LatticeParams& p, const Window& w) {
  const double a = w.support_lo();
  const long rows = anchor_row_span(p);
  ColumnRange r;
  r.lo = static_cast<long>(std::floor((a - p.alpha) * p.beta)) - 1;
  r.hi = static_cast<long>(std::floor((a + p.alpha * static_cast<double>(rows)) * p.beta)) + 2;
  return r;
}

}  // namespace

std::optional<Rational> classify_density(double value, ClassifyOptions opts) {
  if (!std::isfinite(value) || value <= 0.0) return std::nullopt;
  long double y = value;
  std::int64_t h_prev = 1, h_prev2 = 0;
  std::int64_t k_prev = 0, k_prev2 = 1;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a_ld = std::floor(y);
    if (a_ld > 1e15L) break;
    const auto a = static_cast<std::int64_t>(a_ld);
    const std::int64_t h = a * h_prev + h_prev2;
    const std::int64_t k = a * k_prev + k_prev2;
    if (k > opts.q_max) break;
    if (std::fabs(static_cast<long double>(value) - static_cast<long double>(h) / k) <
        opts.tolerance) {
      const std::int64_t g = std::gcd(h, k);
      return Rational{h / g, k / g};
    }
    const long double frac = y - a_ld;
    if (frac < 1e-18L) break;
    y = 1.0L / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

LatticeParams LatticeParams::make(double alpha, double beta, ClassifyOptions opts) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw HypothesisViolated("lattice: alpha and beta must be positive and finite");
  if (!(alpha * beta < 1.0)) throw HypothesisViolated("lattice: alpha * beta must be < 1");
  LatticeParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.rational = classify_density(alpha * beta, opts);
  return p;
}

bool is_good(const LatticeParams& p, const Window& w, double x, long n, long m) {
  const double arg = lattice_argument(p, x, n, m);
  return arg > w.support_lo() && arg < w.support_hi();
}

double epsilon(const LatticeParams& p, const Window& w) {
  const double len = w.support_length();
  if (!(p.alpha < len)) throw HypothesisViolated("epsilon: requires alpha < b - a");
  if (!(p.density() < 1.0)) throw HypothesisViolated("epsilon: requires alpha * beta < 1");
  return 0.5 * std::min({len - p.alpha, p.alpha, 1.0 / p.beta - p.alpha});
}

int size_bound(const LatticeParams& p, const Window& w) {
  return static_cast<int>(std::ceil(w.support_length() / (1.0 / p.beta - p.alpha))) + 1;
}

int index_bound(const LatticeParams& p, const Window& w) {
  const long rows = size_bound(p, w) + anchor_row_span(p);
  const ColumnRange cols = anchor_column_range(p, w);
  const long span = std::max({rows, std::labs(cols.lo) + rows, std::labs(cols.hi) + rows});
  return static_cast<int>(span) + 1;
}

BlockSpec anchor_block(const LatticeParams& p, const Window& w, double x) {
  const long rows = anchor_row_span(p);
  for (long n = 0; n <= rows; ++n) {
    const long m = first_above_lo(p, w, x, n);
    if (!is_good(p, w, x, n, m)) continue;
    long l = 0;
    // Arguments along the diagonal increase by 1/beta - alpha > 0, so the
    // first one to reach b ends the block.
    while (is_good(p, w, x, n + l + 1, m + l + 1)) ++l;
    return BlockSpec{n, m, static_cast<int>(l + 1), x};
  }
  throw HypothesisViolated("anchor_block: no good pair near row 0");
}

CMatrix build_mx(const LatticeParams& p, const Window& w, const BlockSpec& spec) {
  CMatrix m(spec.size, spec.size);
  for (int i = 0; i < spec.size; ++i) {
    for (int j = 0; j < spec.size; ++j) {
      m(i, j) = w.eval(lattice_argument(p, spec.x, spec.anchor_n + i, spec.anchor_m + j));
    }
  }
  return m;
}

SeparatorRow separator_row(const LatticeParams& p, const Window& w, double x, long m) {
  const double eps = epsilon(p, w);
  const double b = w.support_hi();
  const double col = x + static_cast<double>(m) / p.beta;
  long n = static_cast<long>(std::floor((col - b) / p.alpha)) - 2;
  while (lattice_argument(p, x, n, m) >= b) ++n;
  while (lattice_argument(p, x, n - 1, m) < b) --n;
  if (!is_good(p, w, x, n, m))
    throw HypothesisViolated("separator_row: column has no good pair (alpha >= b - a?)");
  if (lattice_argument(p, x, n, m) > b - eps) ++n;
  return SeparatorRow{n, lattice_argument(p, x, n, m)};
}

IndexRange row_good_columns(const LatticeParams& p, const Window& w, double x, long n) {
  const long first = first_above_lo(p, w, x, n);
  IndexRange r{first, first - 1};
  while (is_good(p, w, x, n, r.last + 1)) ++r.last;
  return r;
}

IndexRange column_good_rows(const LatticeParams& p, const Window& w, double x, long m) {
  // Arguments decrease in n: the first row below b starts the segment.
  const double b = w.support_hi();
  const double col = x + static_cast<double>(m) / p.beta;
  long n = static_cast<long>(std::floor((col - b) / p.alpha)) - 2;
  while (lattice_argument(p, x, n, m) >= b) ++n;
  while (lattice_argument(p, x, n - 1, m) < b) --n;
  IndexRange r{n, n - 1};
  while (is_good(p, w, x, r.last + 1, m)) ++r.last;
  return r;
}

IndexRange fully_covered_columns(const LatticeParams& p, const Window& w, double x, long row_lo,
                                 long row_hi) {
  long lo = 0, hi = -1;
  bool any = false;
  for (long n = row_lo; n <= row_hi; ++n) {
    const IndexRange cols = row_good_columns(p, w, x, n);
    for (long m = cols.first; m <= cols.last; ++m) {
      const IndexRange rows = column_good_rows(p, w, x, m);
      if (rows.first < row_lo || rows.last > row_hi) continue;
      if (!any) {
        lo = hi = m;
        any = true;
      } else {
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
    }
  }
  return any ? IndexRange{lo, hi} : IndexRange{0, -1};
}

Fingerprint structure_fingerprint(const LatticeParams& p, const Window& w, double x) {
  const BlockSpec spec = anchor_block(p, w, x);
  Fingerprint fp;
  fp.anchor_n = spec.anchor_n;
  fp.anchor_m = spec.anchor_m;
  fp.size = spec.size;
  fp.mask.resize(static_cast<std::size_t>(spec.size) * spec.size);
  for (int i = 0; i < spec.size; ++i)
    for (int j = 0; j < spec.size; ++j)
      fp.mask[static_cast<std::size_t>(i) * spec.size + j] =
          is_good(p, w, x, spec.anchor_n + i, spec.anchor_m + j);
  return fp;
}

std::vector<double> structure_breakpoints(const LatticeParams& p, const Window& w,
                                          std::optional<int> index_bound_override) {
  const long bound = index_bound_override.value_or(index_bound(p, w));
  const long rows = size_bound(p, w) + anchor_row_span(p);
  const ColumnRange cols = anchor_column_range(p, w);
  const long n_lo = std::max(-rows, -bound), n_hi = std::min(rows, bound);
  const long m_lo = std::max(cols.lo - rows, -bound), m_hi = std::min(cols.hi + rows, bound);

  struct Crossing {
    double x;
    long weight;  // |n| + |m|, smaller index pair wins ties
  };
  std::vector<Crossing> found;
  for (long n = n_lo; n <= n_hi; ++n) {
    for (long m = m_lo; m <= m_hi; ++m) {
      for (double edge : {w.support_lo(), w.support_hi()}) {
        const double x = edge + p.alpha * static_cast<double>(n) - static_cast<double>(m) / p.beta;
        if (x > 0.0 && x < p.alpha) found.push_back({x, std::labs(n) + std::labs(m)});
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const Crossing& l, const Crossing& r) {
    return l.x < r.x || (l.x == r.x && l.weight < r.weight);
  });
  std::vector<double> out;
  long kept_weight = 0;
  for (const Crossing& c : found) {
    if (!out.empty() && c.x - out.back() <= 1e-12) {
      if (c.weight < kept_weight) {
        out.back() = c.x;
        kept_weight = c.weight;
      }
      continue;
    }
    out.push_back(c.x);
    kept_weight = c.weight;
  }
  return out;
}

}  // namespace gaborcert

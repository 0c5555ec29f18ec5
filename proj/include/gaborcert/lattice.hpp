#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaborcert/linalg.hpp"
#include "gaborcert/window.hpp"

namespace gaborcert {

// p/q in lowest terms, q > 0.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& l, const Rational& r) {
    // q > 0, so cross multiplication preserves order.
    return l.p * r.q <=> r.p * l.q;
  }
};

struct ClassifyOptions {
  std::int64_t q_max = 100000;
  double tolerance = 1e-12;
};

// First continued-fraction convergent p/q with q <= q_max and
// |value - p/q| < tolerance, or nullopt ("irrational class").
std::optional<Rational> classify_density(double value, ClassifyOptions opts = {});

// Separable lattice alpha Z x beta Z with alpha * beta < 1.
struct LatticeParams {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<Rational> rational;  // nullopt: irrational class

  // Throws HypothesisViolated unless alpha, beta > 0 and alpha * beta < 1.
  static LatticeParams make(double alpha, double beta, ClassifyOptions opts = {});

  double density() const { return alpha * beta; }
  bool irrational() const { return !rational.has_value(); }
  std::string rational_class() const { return rational ? rational->str() : "irrational"; }
};

struct GoodPair {
  long n = 0;  // row (time shift)
  long m = 0;  // column (frequency shift)
  friend bool operator==(const GoodPair&, const GoodPair&) = default;
};

// The square block M_x: rows anchor_n .. anchor_n + size - 1, columns
// anchor_m .. anchor_m + size - 1 of the Ron-Shen matrix G(x).
struct BlockSpec {
  long anchor_n = 0;
  long anchor_m = 0;
  int size = 0;
  double x = 0.0;
};

struct SeparatorRow {
  long n = 0;
  double arg = 0.0;
};

// Good-pair pattern of the anchor block. Two x with equal fingerprints have
// M_x given by the same entry formula, so det(M_x) is one analytic branch.
struct Fingerprint {
  long anchor_n = 0;
  long anchor_m = 0;
  int size = 0;
  std::vector<bool> mask;  // row-major size x size

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

// x - alpha n + m / beta. Every entry of G(x) is g at this argument.
inline double lattice_argument(const LatticeParams& p, double x, long n, long m) {
  return x - p.alpha * static_cast<double>(n) + static_cast<double>(m) / p.beta;
}

// a < x - alpha n + m / beta < b (open interval).
bool is_good(const LatticeParams& p, const Window& w, double x, long n, long m);

// (1/2) min(b - a - alpha, alpha, 1/beta - alpha). Throws HypothesisViolated
// if alpha >= b - a.
double epsilon(const LatticeParams& p, const Window& w);

// ceil((b - a) / (1/beta - alpha)) + 1: no anchor block is larger.
int size_bound(const LatticeParams& p, const Window& w);

// Bound on |n|, |m| of every pair that can influence the anchor block for
// x in (0, alpha).
int index_bound(const LatticeParams& p, const Window& w);

// Block anchored at the first good pair of row 0. If row 0 has no good pair
// (possible when 1/beta > b - a) the first row n > 0 that has one is used.
BlockSpec anchor_block(const LatticeParams& p, const Window& w, double x);

// Entry (i, j) = g(x - alpha (n_x + i) + (m_x + j) / beta).
CMatrix build_mx(const LatticeParams& p, const Window& w, const BlockSpec& spec);

// Row n with (n, m) good, (n, m + 1) not good and the argument inside
// [a + eps, b - eps].
SeparatorRow separator_row(const LatticeParams& p, const Window& w, double x, long m);

// Inclusive index range; empty when last < first.
struct IndexRange {
  long first = 0;
  long last = -1;
  bool empty() const { return last < first; }
};

// Good columns of row n (empty if the row has none).
IndexRange row_good_columns(const LatticeParams& p, const Window& w, double x, long n);

// Good rows of column m (never empty when alpha < b - a).
IndexRange column_good_rows(const LatticeParams& p, const Window& w, double x, long m);

// Columns whose good rows all lie in [row_lo, row_hi] and that have at least
// one good row. Contiguous because good segments move monotonically.
IndexRange fully_covered_columns(const LatticeParams& p, const Window& w, double x, long row_lo,
                                 long row_hi);

Fingerprint structure_fingerprint(const LatticeParams& p, const Window& w, double x);

// Sorted x in (0, alpha) where some pair of the relevance window crosses a or
// b; deduplicated within 1e-12. The fingerprint is constant between
// consecutive entries.
std::vector<double> structure_breakpoints(const LatticeParams& p, const Window& w,
                                          std::optional<int> index_bound_override = {});

}  // namespace gaborcert

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaborcert/lattice.hpp"
#include "gaborcert/linalg.hpp"
#include "gaborcert/window.hpp"

namespace gaborcert {

// Sampled map x -> det(M_x) over (0, alpha).
struct DeterminantProfile {
  std::vector<double> x;
  std::vector<cplx> det;
  std::vector<int> fingerprint_id;        // index into `fingerprints`
  std::vector<Fingerprint> fingerprints;  // distinct, in order of first appearance
  std::vector<double> breakpoints;
};

// samples_per_gap Chebyshev nodes in every gap between consecutive
// breakpoints, kept gap/1000 away from the gap ends.
DeterminantProfile scan_determinant(const LatticeParams& p, const Window& w, int samples_per_gap);

// An interval I (spanned by profile samples) with |det M_x| >= delta on every
// sample inside it.
struct CertifiedInterval {
  double lo = 0.0;
  double hi = 0.0;
  double delta = 0.0;
  int samples = 0;
  int fingerprint_id = -1;
};

// Widest maximal run (by x span) of consecutive samples sharing one
// fingerprint with |det| >= delta_floor. Runs shorter than 3 samples do not
// count.
std::optional<CertifiedInterval> find_certified_interval(const DeterminantProfile& profile,
                                                         double delta_floor);

// One square block of the orthogonal sum: an anchor block M_{x~} placed at
// (anchor.anchor_n, anchor.anchor_m) of G(x), followed by one separator row
// per column up to the next anchor block. Block lower triangular, so
// det(matrix) = anchor_det * prod(separator_entries).
struct CompositeBlock {
  BlockSpec anchor;  // absolute indices in G(x); anchor.x == x
  long first_col = 0;
  long last_col = 0;
  std::vector<long> rows;  // anchor rows, then separator rows by column
  CMatrix matrix;
  cplx anchor_det;
  std::vector<cplx> separator_entries;
  double sigma_min = 0.0;
};

struct BlockDecomposition {
  double x = 0.0;
  int extent = 0;
  std::vector<CompositeBlock> blocks;  // ordered by column
  // Columns of G(x) supported only in rows [-extent, extent]; the blocks
  // cover all of them.
  IndexRange target_columns;
  // Rows between the first and last used row that belong to no block.
  std::vector<long> discarded_rows;
};

// Anchor block of G(x) whose local point x~ = x - alpha n~ + m~ / beta lies
// in [I.lo, I.hi].
struct Hop {
  BlockSpec block;  // absolute indices, block.x == x
  double local_x = 0.0;
};

// Nearest hop whose first column is > after_col. Throws HopNotFound when no
// column within hop_bound steps qualifies.
Hop next_hop(const LatticeParams& p, const Window& w, double x, const CertifiedInterval& interval,
             long after_col, int hop_bound = 10000);

// Nearest hop whose last column is < before_col.
Hop previous_hop(const LatticeParams& p, const Window& w, double x,
                 const CertifiedInterval& interval, long before_col, int hop_bound = 10000);

// Anchor block `from` plus the separator rows for the columns strictly
// between it and `to` (exclusive of `to`'s columns).
CompositeBlock composite_block(const LatticeParams& p, const Window& w, double x,
                               const BlockSpec& from, const BlockSpec& to);

// Replays the orthogonal-sum construction at x: starts from M_x, hops
// forwards and backwards through the certified interval and inserts
// separator rows until every column supported in rows [-extent, extent] is
// covered. extent == 0 returns the anchor block alone.
BlockDecomposition build_block_decomposition(const LatticeParams& p, const Window& w, double x,
                                             const CertifiedInterval& interval, int extent,
                                             int hop_bound = 10000);

// Two anchor blocks and the separators between them as one square matrix.
struct TwoBlockComposite {
  CMatrix matrix;
  cplx first_det;
  cplx second_det;
  std::vector<cplx> separator_entries;
};
TwoBlockComposite two_block_composite(const LatticeParams& p, const Window& w, double x,
                                      const CertifiedInterval& interval, int hop_bound = 10000);

struct CertifyConfig {
  int samples_per_gap = 32;
  double delta_floor = 1e-8;
  int extent = 32;
  int hop_bound = 10000;
  int core_grid = 4096;
  int sup_grid = 4096;
  ClassifyOptions classify{};
};

struct HypothesisReport {
  bool density_below_one = false;
  bool irrational_class = false;
  bool alpha_below_support = false;
  bool sup_norm_finite = false;
  bool inv_sup_core_finite = false;

  bool all() const {
    return density_below_one && irrational_class && alpha_below_support && sup_norm_finite &&
           inv_sup_core_finite;
  }
};

enum class Verdict { Certified, NotCertified };

struct FrameCertificate {
  Verdict verdict = Verdict::NotCertified;
  std::string reason;  // empty when certified
  double alpha = 0.0;
  double beta = 0.0;
  std::string rational_class;
  std::string window;
  HypothesisReport hypotheses;
  double epsilon = 0.0;
  double sup_norm = 0.0;
  double inv_sup_core = 0.0;
  double interval_lo = 0.0;
  double interval_hi = 0.0;
  double delta = 0.0;
  double x_certified = 0.0;
  double block_sigma_min = 0.0;
  double hop_det_min = 0.0;  // smallest |det| over all anchor blocks used
  int block_count = 0;
  int extent = 0;
  int profile_samples = 0;

  bool certified() const { return verdict == Verdict::Certified; }
};

// Hypothesis checks, determinant scan, certified interval, and block
// decomposition at the midpoint of I. Hypothesis failures give a
// NotCertified verdict, never an exception.
FrameCertificate certify_frame(double alpha, double beta, const Window& w,
                               const CertifyConfig& cfg = {});
FrameCertificate certify_frame(const LatticeParams& p, const Window& w,
                               const CertifyConfig& cfg = {});

// Reduced fractions m/n in (0, 1) with n <= order.
std::vector<Rational> farey_interior(int order);

// Ratios at which matrix arguments of an anchor block can collide: the Farey
// fractions of order size_bound(p, w).
std::vector<Rational> forbidden_ratios(const LatticeParams& p, const Window& w);

struct RationalConfig {
  int samples = 4096;
  double zero_tol = 1e-10;
  // Required distance from alpha*beta to every forbidden ratio. The default
  // 0 accepts densities that are themselves forbidden ratios.
  double delta_sep = 0.0;
  double delta_floor = 1e-8;
  int oversample = 8;
};

struct RationalReport {
  Rational ratio;
  std::vector<Rational> forbidden;
  double j_lo = 0.0;  // fingerprint-constant interval J
  double j_hi = 0.0;
  int zero_count = 0;
  std::optional<std::pair<double, double>> certified_subinterval;
  double denominator_threshold = 0.0;  // (Z + 1) / (alpha |J|); heuristic
  double period_min_abs_det = 0.0;     // min |det| over the full-period grid
  bool frame_verdict = false;
};

// Zero counting on a fingerprint-constant interval and the full-period
// determinant check for rational densities. Throws HypothesisViolated if the
// density is in the irrational class, TooCloseToForbiddenRatio if it is
// within delta_sep of a forbidden ratio.
RationalReport rational_analysis(const LatticeParams& p, const Window& w,
                                 const RationalConfig& cfg = {});

}  // namespace gaborcert

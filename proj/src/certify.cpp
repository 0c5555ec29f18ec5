#include "gaborcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include "gaborcert/error.hpp"

namespace gaborcert {

namespace {

int fingerprint_index(std::vector<Fingerprint>& seen, Fingerprint fp) {
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] == fp) return static_cast<int>(i);
  seen.push_back(std::move(fp));
  return static_cast<int>(seen.size()) - 1;
}

// Gap edges 0 = e_0 < e_1 < ... < e_k = alpha.
std::vector<double> gap_edges(const LatticeParams& p, const std::vector<double>& breakpoints) {
  std::vector<double> edges;
  edges.reserve(breakpoints.size() + 2);
  edges.push_back(0.0);
  edges.insert(edges.end(), breakpoints.begin(), breakpoints.end());
  edges.push_back(p.alpha);
  return edges;
}

// Local anchor columns over x~ in (0, alpha) lie in [lo, hi].
struct LocalAnchorColumns {
  long lo = 0;
  long hi = 0;
};

LocalAnchorColumns local_anchor_columns(const LatticeParams& p, const Window& w) {
  const double a = w.support_lo();
  const double rows = std::ceil(1.0 / p.density()) + 1.0;
  LocalAnchorColumns r;
  r.lo = static_cast<long>(std::floor((a - p.alpha) * p.beta)) - 1;
  r.hi = static_cast<long>(std::floor((a + p.alpha * rows) * p.beta)) + 2;
  return r;
}

// Block properties checked directly in G(x).
bool valid_block(const LatticeParams& p, const Window& w, double x, const BlockSpec& b) {
  if (is_good(p, w, x, b.anchor_n, b.anchor_m - 1)) return false;
  for (int k = 0; k < b.size; ++k)
    if (!is_good(p, w, x, b.anchor_n + k, b.anchor_m + k)) return false;
  return !is_good(p, w, x, b.anchor_n + b.size, b.anchor_m + b.size);
}

// Hop candidate for column m~: the unique row n~ with x~ in [0, alpha).
std::optional<Hop> hop_at_column(const LatticeParams& p, const Window& w, double x,
                                 const CertifiedInterval& interval, long col) {
  const double y = x + static_cast<double>(col) / p.beta;
  const long row = static_cast<long>(std::floor(y / p.alpha));
  const double local = lattice_argument(p, x, row, col);
  if (local < interval.lo || local > interval.hi) return std::nullopt;
  const BlockSpec loc = anchor_block(p, w, local);
  BlockSpec abs{row + loc.anchor_n, col + loc.anchor_m, loc.size, x};
  if (!valid_block(p, w, x, abs)) return std::nullopt;
  return Hop{abs, local};
}

CompositeBlock lone_block(const LatticeParams& p, const Window& w, const BlockSpec& b) {
  CompositeBlock c;
  c.anchor = b;
  c.first_col = b.anchor_m;
  c.last_col = b.anchor_m + b.size - 1;
  for (int i = 0; i < b.size; ++i) c.rows.push_back(b.anchor_n + i);
  c.matrix = build_mx(p, w, b);
  c.anchor_det = determinant(c.matrix);
  c.sigma_min = singular_extremes(c.matrix).sigma_min;
  return c;
}

std::vector<double> chebyshev_nodes(double lo, double hi, int count) {
  std::vector<double> out(count);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int k = 0; k < count; ++k) {
    // k = 0 is the leftmost node.
    const double theta = std::numbers::pi * (2.0 * (count - 1 - k) + 1.0) / (2.0 * count);
    out[k] = mid + half * std::cos(theta);
  }
  return out;
}

cplx det_at(const LatticeParams& p, const Window& w, double x) {
  return determinant(build_mx(p, w, anchor_block(p, w, x)));
}

}  // namespace

DeterminantProfile scan_determinant(const LatticeParams& p, const Window& w, int samples_per_gap) {
  if (samples_per_gap < 1) throw ConfigError("scan_determinant: samples_per_gap must be positive");
  if (!(p.alpha < w.support_length()))
    throw HypothesisViolated("scan_determinant: requires alpha < b - a");
  DeterminantProfile prof;
  prof.breakpoints = structure_breakpoints(p, w);
  const std::vector<double> edges = gap_edges(p, prof.breakpoints);
  for (std::size_t g = 0; g + 1 < edges.size(); ++g) {
    const double inset = (edges[g + 1] - edges[g]) * 1e-3;
    for (double x : chebyshev_nodes(edges[g] + inset, edges[g + 1] - inset, samples_per_gap)) {
      const BlockSpec spec = anchor_block(p, w, x);
      prof.x.push_back(x);
      prof.det.push_back(determinant(build_mx(p, w, spec)));
      prof.fingerprint_id.push_back(
          fingerprint_index(prof.fingerprints, structure_fingerprint(p, w, x)));
    }
  }
  return prof;
}

std::optional<CertifiedInterval> find_certified_interval(const DeterminantProfile& profile,
                                                         double delta_floor) {
  std::optional<CertifiedInterval> best;
  const std::size_t n = profile.x.size();
  std::size_t i = 0;
  while (i < n) {
    if (!(std::abs(profile.det[i]) >= delta_floor)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    double run_min = std::abs(profile.det[i]);
    while (j + 1 < n && profile.fingerprint_id[j + 1] == profile.fingerprint_id[i] &&
           std::abs(profile.det[j + 1]) >= delta_floor) {
      ++j;
      run_min = std::min(run_min, std::abs(profile.det[j]));
    }
    const int count = static_cast<int>(j - i + 1);
    const double span = profile.x[j] - profile.x[i];
    if (count >= 3 && (!best || span > best->hi - best->lo)) {
      best = CertifiedInterval{profile.x[i], profile.x[j], run_min, count,
                               profile.fingerprint_id[i]};
    }
    i = j + 1;
  }
  return best;
}

Hop next_hop(const LatticeParams& p, const Window& w, double x, const CertifiedInterval& interval,
             long after_col, int hop_bound) {
  const LocalAnchorColumns local = local_anchor_columns(p, w);
  std::optional<Hop> best;
  for (long col = after_col + 1 - local.hi; col <= after_col + hop_bound; ++col) {
    if (best && col + local.lo > best->block.anchor_m) break;
    const std::optional<Hop> h = hop_at_column(p, w, x, interval, col);
    if (!h || h->block.anchor_m <= after_col) continue;
    if (!best || h->block.anchor_m < best->block.anchor_m) best = h;
  }
  if (!best)
    throw HopNotFound("next_hop: no return to the certified interval within " +
                      std::to_string(hop_bound) + " columns");
  return *best;
}

Hop previous_hop(const LatticeParams& p, const Window& w, double x,
                 const CertifiedInterval& interval, long before_col, int hop_bound) {
  const LocalAnchorColumns local = local_anchor_columns(p, w);
  const long max_size = size_bound(p, w);
  std::optional<Hop> best;
  auto last_col = [](const Hop& h) { return h.block.anchor_m + h.block.size - 1; };
  for (long col = before_col - 1 - local.lo; col >= before_col - hop_bound; --col) {
    if (best && col + local.hi + max_size < last_col(*best)) break;
    const std::optional<Hop> h = hop_at_column(p, w, x, interval, col);
    if (!h || last_col(*h) >= before_col) continue;
    if (!best || last_col(*h) > last_col(*best)) best = h;
  }
  if (!best)
    throw HopNotFound("previous_hop: no return to the certified interval within " +
                      std::to_string(hop_bound) + " columns");
  return *best;
}

CompositeBlock composite_block(const LatticeParams& p, const Window& w, double x,
                               const BlockSpec& from, const BlockSpec& to) {
  CompositeBlock c;
  c.anchor = from;
  c.anchor.x = x;
  c.first_col = from.anchor_m;
  c.last_col = to.anchor_m - 1;
  for (int i = 0; i < from.size; ++i) c.rows.push_back(from.anchor_n + i);
  for (long col = from.anchor_m + from.size; col < to.anchor_m; ++col) {
    const SeparatorRow sep = separator_row(p, w, x, col);
    c.rows.push_back(sep.n);
    c.separator_entries.push_back(w.eval(sep.arg));
  }
  const long width = c.last_col - c.first_col + 1;
  c.matrix.resize(static_cast<Eigen::Index>(c.rows.size()), width);
  for (std::size_t i = 0; i < c.rows.size(); ++i)
    for (long j = 0; j < width; ++j)
      c.matrix(static_cast<Eigen::Index>(i), j) =
          w.eval(lattice_argument(p, x, c.rows[i], c.first_col + j));
  c.anchor_det = determinant(build_mx(p, w, c.anchor));
  c.sigma_min = singular_extremes(c.matrix).sigma_min;
  return c;
}

BlockDecomposition build_block_decomposition(const LatticeParams& p, const Window& w, double x,
                                             const CertifiedInterval& interval, int extent,
                                             int hop_bound) {
  if (extent < 0) throw ConfigError("build_block_decomposition: extent must be >= 0");
  BlockDecomposition out;
  out.x = x;
  out.extent = extent;
  const BlockSpec anchor = anchor_block(p, w, x);
  out.target_columns = fully_covered_columns(p, w, x, -extent, extent);
  if (extent == 0) {
    out.blocks.push_back(lone_block(p, w, anchor));
    return out;
  }

  std::vector<BlockSpec> chain{anchor};
  const long fwd_limit =
      out.target_columns.empty() ? anchor.anchor_m : out.target_columns.last;
  while (chain.size() < 2 || chain.back().anchor_m <= fwd_limit) {
    const BlockSpec& last = chain.back();
    chain.push_back(next_hop(p, w, x, interval, last.anchor_m + last.size - 1, hop_bound).block);
  }
  if (!out.target_columns.empty()) {
    while (chain.front().anchor_m > out.target_columns.first) {
      chain.insert(chain.begin(),
                   previous_hop(p, w, x, interval, chain.front().anchor_m, hop_bound).block);
    }
  }

  std::set<long> used;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    out.blocks.push_back(composite_block(p, w, x, chain[k], chain[k + 1]));
    used.insert(out.blocks.back().rows.begin(), out.blocks.back().rows.end());
  }
  for (long r = *used.begin(); r <= *used.rbegin(); ++r)
    if (!used.count(r)) out.discarded_rows.push_back(r);
  return out;
}

TwoBlockComposite two_block_composite(const LatticeParams& p, const Window& w, double x,
                                      const CertifiedInterval& interval, int hop_bound) {
  const BlockSpec first = anchor_block(p, w, x);
  const BlockSpec second =
      next_hop(p, w, x, interval, first.anchor_m + first.size - 1, hop_bound).block;
  const CompositeBlock head = composite_block(p, w, x, first, second);

  TwoBlockComposite out;
  std::vector<long> rows = head.rows;
  for (int i = 0; i < second.size; ++i) rows.push_back(second.anchor_n + i);
  const long col0 = first.anchor_m;
  const long width = second.anchor_m + second.size - col0;
  out.matrix.resize(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (long j = 0; j < width; ++j)
      out.matrix(static_cast<Eigen::Index>(i), j) =
          w.eval(lattice_argument(p, x, rows[i], col0 + j));
  out.first_det = head.anchor_det;
  out.second_det = determinant(build_mx(p, w, second));
  out.separator_entries = head.separator_entries;
  return out;
}

FrameCertificate certify_frame(double alpha, double beta, const Window& w,
                               const CertifyConfig& cfg) {
  FrameCertificate cert;
  cert.alpha = alpha;
  cert.beta = beta;
  cert.window = w.descriptor();
  cert.extent = cfg.extent;
  HypothesisReport& h = cert.hypotheses;

  h.density_below_one = alpha > 0.0 && beta > 0.0 && alpha * beta < 1.0;
  h.alpha_below_support = alpha < w.support_length();
  const std::optional<Rational> rational = classify_density(alpha * beta, cfg.classify);
  h.irrational_class = !rational.has_value();
  cert.rational_class = rational ? rational->str() : "irrational";
  cert.sup_norm = w.sup_norm(cfg.sup_grid);
  h.sup_norm_finite = std::isfinite(cert.sup_norm);
  if (h.density_below_one && h.alpha_below_support) {
    cert.epsilon = epsilon(LatticeParams::make(alpha, beta, cfg.classify), w);
    cert.inv_sup_core = inv_sup_on_core(w, cert.epsilon, cfg.core_grid);
    h.inv_sup_core_finite = std::isfinite(cert.inv_sup_core);
  } else {
    cert.inv_sup_core = std::numeric_limits<double>::infinity();
  }

  if (!h.density_below_one) {
    cert.reason = "alpha*beta >= 1";
  } else if (!h.alpha_below_support) {
    cert.reason = "support too short: alpha >= b - a";
  } else if (!h.irrational_class) {
    cert.reason = "rational density class " + cert.rational_class;
  } else if (!h.sup_norm_finite) {
    cert.reason = "window not bounded";
  } else if (!h.inv_sup_core_finite) {
    cert.reason = "window vanishes on the core [a + eps, b - eps]";
  }
  if (!h.all()) return cert;

  const LatticeParams p = LatticeParams::make(alpha, beta, cfg.classify);
  const DeterminantProfile profile = scan_determinant(p, w, cfg.samples_per_gap);
  cert.profile_samples = static_cast<int>(profile.x.size());
  const std::optional<CertifiedInterval> interval =
      find_certified_interval(profile, cfg.delta_floor);
  if (!interval) {
    cert.reason = "no interval with |det M_x| >= delta_floor";
    return cert;
  }
  cert.interval_lo = interval->lo;
  cert.interval_hi = interval->hi;
  cert.delta = interval->delta;
  cert.x_certified = 0.5 * (interval->lo + interval->hi);

  BlockDecomposition dec;
  try {
    dec = build_block_decomposition(p, w, cert.x_certified, *interval, cfg.extent, cfg.hop_bound);
  } catch (const HopNotFound& e) {
    cert.reason = e.what();
    return cert;
  }
  cert.block_count = static_cast<int>(dec.blocks.size());
  cert.block_sigma_min = std::numeric_limits<double>::infinity();
  cert.hop_det_min = std::numeric_limits<double>::infinity();
  for (const CompositeBlock& b : dec.blocks) {
    cert.block_sigma_min = std::min(cert.block_sigma_min, b.sigma_min);
    cert.hop_det_min = std::min(cert.hop_det_min, std::abs(b.anchor_det));
  }
  if (!(cert.block_sigma_min > 0.0) || !std::isfinite(cert.block_sigma_min)) {
    cert.reason = "singular block in the decomposition";
    return cert;
  }
  cert.verdict = Verdict::Certified;
  return cert;
}

FrameCertificate certify_frame(const LatticeParams& p, const Window& w, const CertifyConfig& cfg) {
  return certify_frame(p.alpha, p.beta, w, cfg);
}

std::vector<Rational> farey_interior(int order) {
  std::vector<Rational> out;
  for (std::int64_t n = 2; n <= order; ++n)
    for (std::int64_t m = 1; m < n; ++m)
      if (std::gcd(m, n) == 1) out.push_back(Rational{m, n});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> forbidden_ratios(const LatticeParams& p, const Window& w) {
  return farey_interior(size_bound(p, w));
}

namespace {

struct FingerprintInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Widest union of adjacent gaps that share one fingerprint.
FingerprintInterval widest_constant_interval(const LatticeParams& p, const Window& w) {
  const std::vector<double> edges = gap_edges(p, structure_breakpoints(p, w));
  FingerprintInterval best{edges[0], edges[1]};
  std::size_t g = 0;
  while (g + 1 < edges.size()) {
    const Fingerprint fp = structure_fingerprint(p, w, 0.5 * (edges[g] + edges[g + 1]));
    std::size_t h = g + 1;
    while (h + 1 < edges.size() &&
           structure_fingerprint(p, w, 0.5 * (edges[h] + edges[h + 1])) == fp)
      ++h;
    if (edges[h] - edges[g] > best.hi - best.lo) best = {edges[g], edges[h]};
    g = h;
  }
  return best;
}

// Golden-section minimum of |det M_x| on [lo, hi].
double refine_minimum(const LatticeParams& p, const Window& w, double lo, double hi) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
  double fc = std::abs(det_at(p, w, c)), fd = std::abs(det_at(p, w, d));
  for (int it = 0; it < 50; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = std::abs(det_at(p, w, c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = std::abs(det_at(p, w, d));
    }
  }
  return std::min(fc, fd);
}

}  // namespace

RationalReport rational_analysis(const LatticeParams& p, const Window& w,
                                 const RationalConfig& cfg) {
  if (!p.rational) throw HypothesisViolated("rational_analysis: density is in the irrational class");
  if (!(p.alpha < w.support_length()))
    throw HypothesisViolated("rational_analysis: requires alpha < b - a");
  if (cfg.samples < 8) throw ConfigError("rational_analysis: samples must be >= 8");

  RationalReport rep;
  rep.ratio = *p.rational;
  rep.forbidden = forbidden_ratios(p, w);
  if (cfg.delta_sep > 0.0) {
    for (const Rational& q : rep.forbidden) {
      if (std::abs(p.density() - q.value()) < cfg.delta_sep)
        throw TooCloseToForbiddenRatio("rational_analysis: alpha*beta within delta_sep of " +
                                       q.str());
    }
  }

  const FingerprintInterval j = widest_constant_interval(p, w);
  rep.j_lo = j.lo;
  rep.j_hi = j.hi;
  const int n = cfg.samples;
  std::vector<double> xs(n);
  std::vector<cplx> dets(n);
  for (int k = 0; k < n; ++k) {
    xs[k] = j.lo + (j.hi - j.lo) * (k + 0.5) / n;
    dets[k] = det_at(p, w, xs[k]);
  }

  // A sample is "zero" if |det| < zero_tol, directly or after refining a
  // local minimum. Zero clusters and real sign changes each count once.
  std::vector<bool> zero(n, false);
  for (int k = 0; k < n; ++k) zero[k] = std::abs(dets[k]) < cfg.zero_tol;
  for (int k = 1; k + 1 < n; ++k) {
    const double v = std::abs(dets[k]);
    if (zero[k] || v > std::abs(dets[k - 1]) || v > std::abs(dets[k + 1])) continue;
    if (refine_minimum(p, w, xs[k - 1], xs[k + 1]) < cfg.zero_tol) zero[k] = true;
  }
  auto nearly_real = [](cplx z) { return std::abs(z.imag()) <= 1e-9 * std::abs(z); };
  std::vector<bool> split_after(n, false);  // zero strictly between k and k + 1
  for (int k = 0; k + 1 < n; ++k) {
    if (zero[k] || zero[k + 1]) continue;
    if (nearly_real(dets[k]) && nearly_real(dets[k + 1]) &&
        std::signbit(dets[k].real()) != std::signbit(dets[k + 1].real()))
      split_after[k] = true;
  }
  int z = 0;
  for (int k = 0; k < n; ++k) {
    if (zero[k] && (k == 0 || !zero[k - 1])) ++z;
    if (split_after[k]) ++z;
  }
  rep.zero_count = z;

  if (z == 0) {
    rep.certified_subinterval = std::make_pair(j.lo, j.hi);
  } else {
    double best_span = -1.0;
    int k = 0;
    while (k < n) {
      if (zero[k]) {
        ++k;
        continue;
      }
      int e = k;
      while (e + 1 < n && !zero[e + 1] && !split_after[e]) ++e;
      if (e > k && xs[e] - xs[k] > best_span) {
        best_span = xs[e] - xs[k];
        rep.certified_subinterval = std::make_pair(xs[k], xs[e]);
      }
      k = e + 1;
    }
  }
  rep.denominator_threshold = (z + 1) / (p.alpha * (j.hi - j.lo));

  const std::int64_t grid = rep.ratio.q * cfg.oversample;
  const double step = p.alpha / static_cast<double>(grid);
  rep.period_min_abs_det = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < grid; ++k) {
    rep.period_min_abs_det =
        std::min(rep.period_min_abs_det, std::abs(det_at(p, w, step * static_cast<double>(k))));
  }
  rep.frame_verdict = rep.period_min_abs_det >= cfg.delta_floor;
  return rep;
}

}  // namespace gaborcert

#pragma once

// Independent reference computations shared by unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "gaborcert/lattice.hpp"
#include "gaborcert/window.hpp"

namespace oracle {

using gaborcert::cplx;

inline bool good(double a, double b, double arg) { return arg > a && arg < b; }

inline double arg(double alpha, double beta, double x, long n, long m) {
  return x - alpha * n + m / beta;
}

// All good pairs with |n|, |m| <= r.
inline std::set<std::pair<long, long>> good_pairs(const gaborcert::LatticeParams& p,
                                                  const gaborcert::Window& w, double x, long r) {
  std::set<std::pair<long, long>> s;
  for (long n = -r; n <= r; ++n)
    for (long m = -r; m <= r; ++m)
      if (good(w.support_lo(), w.support_hi(), arg(p.alpha, p.beta, x, n, m))) s.insert({n, m});
  return s;
}

struct Block {
  long n = 0, m = 0;
  int size = 0;
  std::vector<std::vector<cplx>> entries;
};

// Anchor block from the enumerated good set: first row n >= 0 with a good
// pair, its smallest good column, then the longest good diagonal.
inline Block anchor(const gaborcert::LatticeParams& p, const gaborcert::Window& w, double x,
                    long r = 64) {
  const auto s = good_pairs(p, w, x, r);
  Block blk;
  for (long n = 0; n <= r; ++n) {
    auto it = std::find_if(s.begin(), s.end(), [n](auto& q) { return q.first == n; });
    if (it == s.end()) continue;
    blk.n = n;
    blk.m = it->second;
    int l = 0;
    while (s.count({n + l + 1, blk.m + l + 1})) ++l;
    blk.size = l + 1;
    break;
  }
  blk.entries.assign(blk.size, std::vector<cplx>(blk.size));
  for (int i = 0; i < blk.size; ++i)
    for (int j = 0; j < blk.size; ++j)
      blk.entries[i][j] = s.count({blk.n + i, blk.m + j})
                              ? w.eval(arg(p.alpha, p.beta, x, blk.n + i, blk.m + j))
                              : cplx(0.0, 0.0);
  return blk;
}

// Every x in (0, alpha) where a pair with |n|, |m| <= r crosses a or b.
inline std::vector<double> crossings(const gaborcert::LatticeParams& p, const gaborcert::Window& w,
                                     long r) {
  std::vector<double> xs;
  for (long n = -r; n <= r; ++n)
    for (long m = -r; m <= r; ++m)
      for (double e : {w.support_lo(), w.support_hi()}) {
        const double x = e + p.alpha * n - m / p.beta;
        // values within rounding of 0 or alpha are the period ends themselves
        if (x > 1e-12 && x < p.alpha - 1e-12) xs.push_back(x);
      }
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs)
    if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
  return out;
}

}  // namespace oracle

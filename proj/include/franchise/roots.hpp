#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "franchise/errors.hpp"

namespace franchise {

struct BisectOptions {
  double abs_tol = 1e-12;
  int max_iter = 200;
};

// Bisection root of fn on [lo, hi]; requires fn(lo) and fn(hi) of opposite sign
// (an endpoint that is exactly zero is returned directly).
template <class F>
double bisect(F&& fn, double lo, double hi, BisectOptions opt = {}) {
  double flo = fn(lo);
  if (flo == 0.0) return lo;
  double fhi = fn(hi);
  if (fhi == 0.0) return hi;
  if (!(lo < hi)) throw_domain("bisect: bracket must satisfy lo < hi");
  if ((flo < 0.0) == (fhi < 0.0)) throw_domain("bisect: no sign change over bracket");
  for (int it = 0; it < opt.max_iter && (hi - lo) > opt.abs_tol; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Grow [lo, hi] upward by doubling hi until fn changes sign relative to fn(lo).
template <class F>
std::optional<std::pair<double, double>> expand_bracket_up(F&& fn, double lo, double hi0,
                                                           int max_doublings = 200) {
  double flo = fn(lo);
  double hi = hi0;
  for (int k = 0; k < max_doublings; ++k) {
    double fhi = fn(hi);
    if (fhi == 0.0 || (flo < 0.0) != (fhi < 0.0)) return std::make_pair(lo, hi);
    hi *= 2.0;
  }
  return std::nullopt;
}

// Sign-change scan over an ordered point list; returns bracketing intervals,
// with an exact zero reported as the degenerate interval [p, p].
template <class F>
std::vector<std::pair<double, double>> scan_sign_changes(F&& fn, const std::vector<double>& pts) {
  std::vector<std::pair<double, double>> out;
  if (pts.empty()) return out;
  double prev = fn(pts.front());
  if (prev == 0.0) out.emplace_back(pts.front(), pts.front());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double cur = fn(pts[i]);
    if (cur == 0.0) {
      out.emplace_back(pts[i], pts[i]);
    } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
      out.emplace_back(pts[i - 1], pts[i]);
    }
    prev = cur;
  }
  return out;
}

}  // namespace franchise

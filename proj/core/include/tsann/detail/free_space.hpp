#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace tsann::detail {

/** A closed subinterval of [0, 1]; lo > hi encodes the empty interval. */
struct Interval {
  double lo = 1.0;
  double hi = 0.0;
  bool empty() const { return lo > hi; }
};

/** { t in [0,1] : |p - (a + t*(b - a))| <= delta }. */
inline Interval edge_interval(double p, double a, double b, double delta) {
  const double d = b - a;
  if (d == 0) {
    return (std::fabs(p - a) <= delta) ? Interval{0.0, 1.0} : Interval{};
  }
  double t1 = (p - delta - a) / d;
  double t2 = (p + delta - a) / d;
  if (t1 > t2) std::swap(t1, t2);
  Interval out{std::max(t1, 0.0), std::min(t2, 1.0)};
  return out.empty() ? Interval{} : out;
}

/**
 * Incremental free-space reachability against a fixed curve.
 *
 * The fixed curve q spans the vertical axis of the diagram; the other curve
 * grows one vertex at a time along the horizontal axis.  The frontier holds,
 * for the growing curve's current last vertex, the reachable interval on
 * every vertical cell boundary, plus whether the bottom boundary is still
 * reachable (true exactly while every vertex seen so far is within delta of
 * q's first vertex).  Feeding all vertices of a curve and asking accepts()
 * reproduces the batch free-space decision; the frontier depends only on the
 * polygonal curve traced so far, not on how its vertex list is split up,
 * because duplicate vertices and interior collinear vertices advance every
 * interval to itself.
 *
 * The q vector passed to the constructor must outlive the frontier (copies
 * of a frontier share it).
 */
class FreeSpaceFrontier {
 public:
  FreeSpaceFrontier(const std::vector<double>* q, double delta)
      : q_(q), delta_(delta) {
    lift_ = (q_->size() == 1);
    col_.resize(rows());
  }

  /** Restarts the diagram with first growing-curve vertex p0. */
  void reset(double p0) {
    last_ = p0;
    bottom_reach_ = std::fabs(p0 - q0()) <= delta_;
    bool open = true;  // boundary climb still connected to the start corner
    for (std::size_t j = 0; j < rows(); ++j) {
      Interval f = edge_interval(p0, qv(j), qv(j + 1), delta_);
      if (open && !f.empty() && f.lo <= 0.0) {
        col_[j] = f;
        open = (f.hi >= 1.0);
      } else {
        col_[j] = Interval{};
        open = false;
      }
    }
  }

  /** Appends vertex x to the growing curve and advances one cell column. */
  void advance(double x) {
    Interval bot = bottom_reach_
                       ? edge_interval(q0(), last_, x, delta_)
                       : Interval{};
    bottom_reach_ = bottom_reach_ && std::fabs(x - q0()) <= delta_;
    for (std::size_t j = 0; j < rows(); ++j) {
      const Interval lef = col_[j];
      Interval right = edge_interval(x, qv(j), qv(j + 1), delta_);
      Interval top = edge_interval(qv(j + 1), last_, x, delta_);
      // Within one convex cell a point on the outgoing boundary is reachable
      // from any incoming bottom point; from the left it must not go down.
      if (!bot.empty()) {
        // right stays as-is
      } else if (!lef.empty()) {
        right.lo = std::max(right.lo, lef.lo);
        if (right.empty()) right = Interval{};
      } else {
        right = Interval{};
      }
      if (!lef.empty()) {
        // top stays as-is
      } else if (!bot.empty()) {
        top.lo = std::max(top.lo, bot.lo);
        if (top.empty()) top = Interval{};
      } else {
        top = Interval{};
      }
      col_[j] = right;
      bot = top;
    }
    last_ = x;
  }

  /** True iff the curves traced so far are within delta (corner reached). */
  bool accepts() const {
    const Interval& corner = col_.back();
    return !corner.empty() && corner.hi >= 1.0;
  }

  /** True iff no extension of the growing curve can ever be accepted. */
  bool dead() const {
    if (bottom_reach_) return false;
    for (const Interval& iv : col_) {
      if (!iv.empty()) return false;
    }
    return true;
  }

 private:
  std::size_t rows() const { return lift_ ? 1 : q_->size() - 1; }
  double q0() const { return (*q_)[0]; }
  double qv(std::size_t j) const { return lift_ ? (*q_)[0] : (*q_)[j]; }

  const std::vector<double>* q_;
  double delta_;
  bool lift_ = false;  // single-vertex q handled as a repeated-value pair
  double last_ = 0.0;
  bool bottom_reach_ = false;
  std::vector<Interval> col_;
};

}  // namespace tsann::detail

#include "tsann/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tsann/detail/free_space.hpp"

namespace tsann {

bool decide_continuous(const TimeSeries& pi, const TimeSeries& tau,
                       double delta) {
  if (pi.empty() || tau.empty()) {
    throw std::invalid_argument("decide_continuous: curves must be non-empty");
  }
  if (!(delta >= 0)) {
    throw std::invalid_argument("decide_continuous: delta must be >= 0");
  }
  if (std::fabs(pi.front() - tau.front()) > delta) return false;
  if (std::fabs(pi.back() - tau.back()) > delta) return false;
  detail::FreeSpaceFrontier frontier(&tau.values, delta);
  frontier.reset(pi.values.front());
  for (std::size_t i = 1; i < pi.size(); ++i) {
    frontier.advance(pi.values[i]);
  }
  return frontier.accepts();
}

double distance_continuous(const TimeSeries& pi, const TimeSeries& tau,
                           double tol) {
  if (!(tol > 0) || !std::isfinite(tol)) {
    throw std::invalid_argument("distance_continuous: tol must be positive");
  }
  if (pi.empty() || tau.empty()) {
    throw std::invalid_argument(
        "distance_continuous: curves must be non-empty");
  }
  // Matching the endpoints is forced, so this is a lower bound...
  double lo = std::max(std::fabs(pi.front() - tau.front()),
                       std::fabs(pi.back() - tau.back()));
  // ...and no pair of matched values can differ by more than the extreme
  // spread, so this is an upper bound.
  const auto [pmin, pmax] = std::minmax_element(pi.values.begin(), pi.values.end());
  const auto [tmin, tmax] = std::minmax_element(tau.values.begin(), tau.values.end());
  double hi = std::max({*pmax - *tmin, *tmax - *pmin, lo});
  if (decide_continuous(pi, tau, lo)) return lo;
  // the spread bound can land a rounding error below what the decision
  // procedure accepts; only ever return a value it verifies
  while (!decide_continuous(pi, tau, hi)) {
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity()) *
         (1.0 + 1e-13);
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // ran out of precision
    if (decide_continuous(pi, tau, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double discrete_frechet(const PointSequence& P, const PointSequence& Q) {
  if (P.dim == 0 || P.dim != Q.dim) {
    throw std::invalid_argument(
        "discrete_frechet: sequences must share a positive dimension");
  }
  if (P.points.empty() || Q.points.empty()) {
    throw std::invalid_argument("discrete_frechet: sequences must be non-empty");
  }
  for (const auto& pt : P.points) {
    if (pt.size() != P.dim) {
      throw std::invalid_argument("discrete_frechet: point has wrong dimension");
    }
  }
  for (const auto& pt : Q.points) {
    if (pt.size() != Q.dim) {
      throw std::invalid_argument("discrete_frechet: point has wrong dimension");
    }
  }
  const std::size_t M = P.points.size();
  const std::size_t N = Q.points.size();
  auto dist2 = [&](std::size_t i, std::size_t j) {
    double s = 0;
    for (std::size_t d = 0; d < P.dim; ++d) {
      const double diff = P.points[i][d] - Q.points[j][d];
      s += diff * diff;
    }
    return s;
  };
  // The max/min recurrence commutes with sqrt, so work on squared distances.
  std::vector<double> prev(N), cur(N);
  prev[0] = dist2(0, 0);
  for (std::size_t j = 1; j < N; ++j) {
    prev[j] = std::max(prev[j - 1], dist2(0, j));
  }
  for (std::size_t i = 1; i < M; ++i) {
    cur[0] = std::max(prev[0], dist2(i, 0));
    for (std::size_t j = 1; j < N; ++j) {
      const double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
      cur[j] = std::max(best, dist2(i, j));
    }
    std::swap(prev, cur);
  }
  return std::sqrt(prev[N - 1]);
}

}  // namespace tsann

#pragma once

#include <cstddef>
#include <vector>

#include "tsann/time_series.hpp"

namespace tsann {

/**
 * Decides whether the continuous Frechet distance between the two curves is
 * at most delta (all comparisons closed, so boundary instances are accepted).
 * Runs the standard free-space reachability propagation, one column of cells
 * at a time, in O(|pi| * |tau|) time and O(|tau|) memory.
 */
bool decide_continuous(const TimeSeries& pi, const TimeSeries& tau,
                       double delta);

/**
 * Approximates the continuous Frechet distance by bisecting the decision
 * procedure.  Returns a value d with decide_continuous(pi, tau, d) true and
 * d within tol of the true distance (never below it).  tol must be positive.
 */
double distance_continuous(const TimeSeries& pi, const TimeSeries& tau,
                           double tol);

/** A polygonal curve in R^dim given by its vertex list. */
struct PointSequence {
  std::size_t dim = 0;
  std::vector<std::vector<double>> points;
};

/**
 * Exact discrete Frechet distance (Euclidean ground metric) via the
 * classic O(|P| * |Q|) dynamic program over coupled traversals.
 */
double discrete_frechet(const PointSequence& P, const PointSequence& Q);

}  // namespace tsann

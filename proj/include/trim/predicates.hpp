#pragma once

#include <Eigen/Dense>

namespace trim {

/// Sign of the signed area of triangle (a, b, c): positive when c lies to the
/// left of the directed line a->b. Filtered double evaluation with an exact
/// floating-point-expansion fallback, so the sign is always correct.
double orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c);

/// Positive when d lies strictly inside the circle through a, b, c (taken in
/// positive orientation), negative outside, zero when cocircular. Exact sign.
double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                const Eigen::Vector2d& d);

}  // namespace trim

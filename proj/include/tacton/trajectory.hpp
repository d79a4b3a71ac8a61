#pragma once

#include <cmath>
#include <vector>

#include "tacton/model.hpp"

namespace tacton {

/// Position on the skin plane in mm, origin at the trajectory centroid.
struct Point2D {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2D&) const = default;
};

inline double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct PointSeries {
    double sample_rate = 0.0;
    std::vector<Point2D> points;
};

/// Axis-aligned bounds of the trajectory path.
struct Bounds {
    Point2D min;
    Point2D max;
};

/// Vertices of the closed polygon traversed by the focal point, in
/// traversal order (counterclockwise from the vertex with the largest x,
/// ties broken by largest y). Empty for Point and Circle; the horizontal
/// line yields its two end points.
std::vector<Point2D> polygon_vertices(const SpatioTemporalConfig& spatial);

Bounds trajectory_bounds(const SpatioTemporalConfig& spatial);

/// Focal-point position at time t (s), at constant speed along the path.
Point2D position_at(const SpatioTemporalConfig& spatial, double t);

/// Number of samples for a duration at a rate: round(duration * rate).
std::size_t sample_count(double duration, double sample_rate);

/// points[i] = position_at(spatial, i / sample_rate). Throws RateTooLow when
/// the rate gives fewer than 8 samples per revolution.
PointSeries sample_trajectory(const SpatioTemporalConfig& spatial, double sample_rate,
                              double duration);

}  // namespace tacton

#include "tacton/trajectory.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "tacton/error.hpp"

namespace tacton {

std::vector<Point2D> polygon_vertices(const SpatioTemporalConfig& spatial) {
    const double d = spatial.size;
    switch (spatial.shape) {
        case Shape::Point:
        case Shape::Circle:
            return {};
        case Shape::HorizontalLine:
            return {{d / 2, 0.0}, {-d / 2, 0.0}};
        case Shape::RegularTriangle: {
            // apex up, centroid at origin
            const double circumradius = d / std::numbers::sqrt3;
            return {{d / 2, -circumradius / 2}, {0.0, circumradius}, {-d / 2, -circumradius / 2}};
        }
        case Shape::Square:
            return {{d / 2, d / 2}, {-d / 2, d / 2}, {-d / 2, -d / 2}, {d / 2, -d / 2}};
    }
    return {};
}

Bounds trajectory_bounds(const SpatioTemporalConfig& spatial) {
    if (spatial.shape == Shape::Point) return {};
    if (spatial.shape == Shape::Circle) {
        const double r = spatial.size / 2;
        return {{-r, -r}, {r, r}};
    }
    Bounds b{{1e300, 1e300}, {-1e300, -1e300}};
    for (const Point2D& p : polygon_vertices(spatial)) {
        b.min.x = std::min(b.min.x, p.x);
        b.min.y = std::min(b.min.y, p.y);
        b.max.x = std::max(b.max.x, p.x);
        b.max.y = std::max(b.max.y, p.y);
    }
    return b;
}

namespace {

Point2D walk_closed_path(const std::vector<Point2D>& vertices, double arc) {
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2D a = vertices[i];
        const Point2D b = vertices[(i + 1) % n];
        const double len = distance(a, b);
        if (arc <= len || i + 1 == n) {
            const double u = std::clamp(arc / len, 0.0, 1.0);
            return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
        }
        arc -= len;
    }
    return vertices.front();
}

}  // namespace

Point2D position_at(const SpatioTemporalConfig& spatial, double t) {
    switch (spatial.shape) {
        case Shape::Point:
            return {};
        case Shape::Circle: {
            const double f_d = drawing_frequency(spatial);
            const double turns = std::fmod(f_d * t + spatial.start_phase, 1.0);
            const double angle = 2.0 * std::numbers::pi * turns;
            const double r = spatial.size / 2;
            return {r * std::cos(angle), r * std::sin(angle)};
        }
        case Shape::HorizontalLine:
        case Shape::RegularTriangle:
        case Shape::Square: {
            const double length = perimeter(spatial.shape, spatial.size);
            const double speed_mm_s = spatial.drawing_speed * 1000.0;
            const double arc = std::fmod(speed_mm_s * t + spatial.start_phase * length, length);
            return walk_closed_path(polygon_vertices(spatial), arc);
        }
    }
    return {};
}

std::size_t sample_count(double duration, double sample_rate) {
    return static_cast<std::size_t>(std::llround(duration * sample_rate));
}

PointSeries sample_trajectory(const SpatioTemporalConfig& spatial, double sample_rate,
                              double duration) {
    if (!(sample_rate > 0.0)) {
        throw Error(Errc::RateTooLow, "sample_rate", "RateTooLow: sample rate must be positive");
    }
    const double f_d = drawing_frequency_or_zero(spatial);
    if (f_d > 0.0 && sample_rate / f_d < 8.0) {
        throw Error(Errc::RateTooLow, "sample_rate",
                    "RateTooLow: " + std::to_string(sample_rate / f_d) +
                        " samples per revolution, need at least 8");
    }
    PointSeries series{sample_rate, {}};
    const std::size_t n = sample_count(duration, sample_rate);
    series.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        series.points.push_back(position_at(spatial, static_cast<double>(i) / sample_rate));
    }
    return series;
}

}  // namespace tacton

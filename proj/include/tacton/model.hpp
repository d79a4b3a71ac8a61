#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace tacton {

/// Upper bound on AM and envelope frequencies, Hz.
inline constexpr double kMaxModulationHz = 1000.0;
inline constexpr double kMaxDurationS = 10.0;
inline constexpr double kMaxSizeMm = 60.0;
inline constexpr double kMaxHeightMm = 600.0;
inline constexpr double kDefaultHeightMm = 200.0;

/// The five mixing ratios offered for two superposed AM sinusoids.
inline constexpr std::array<std::array<double, 2>, 5> kSuperpositionRatios{{
    {1.0, 0.0}, {0.75, 0.25}, {0.5, 0.5}, {0.25, 0.75}, {0.0, 1.0},
}};

struct TemporalConfig {
    double amplitude = 1.0;                       // commanded A, fraction of full scale
    std::vector<double> am_frequencies{0.0};      // 1 or 2 entries, Hz; 0 means M(t) = 1
    std::array<double, 2> superposition_weights{1.0, 0.0};
    double envelope_frequency = 0.0;              // Hz; 0 means E(t) = 1
    double total_duration = 1.0;                  // s

    bool superposed() const { return superposition_weights[0] != 1.0; }
    bool operator==(const TemporalConfig&) const = default;
};

enum class Shape { Point, HorizontalLine, Circle, RegularTriangle, Square };

inline constexpr std::array<Shape, 5> kAllShapes{
    Shape::Point, Shape::HorizontalLine, Shape::Circle, Shape::RegularTriangle, Shape::Square};

std::string_view to_string(Shape shape);
std::optional<Shape> shape_from_string(std::string_view name);

struct SpatioTemporalConfig {
    Shape shape = Shape::Point;
    double size = 0.0;           // mm
    double drawing_speed = 0.0;  // m/s
    double height = kDefaultHeightMm;  // mm
    double start_phase = 0.0;    // fraction of perimeter in [0, 1)

    bool operator==(const SpatioTemporalConfig&) const = default;
};

struct Tacton {
    TemporalConfig temporal;
    SpatioTemporalConfig spatial;

    bool operator==(const Tacton&) const = default;
};

/// A Tacton whose invariants have been checked. Only `validate` creates one.
class ValidatedTacton {
public:
    const Tacton& get() const noexcept { return tacton_; }
    const TemporalConfig& temporal() const noexcept { return tacton_.temporal; }
    const SpatioTemporalConfig& spatial() const noexcept { return tacton_.spatial; }

    bool operator==(const ValidatedTacton&) const = default;

private:
    explicit ValidatedTacton(Tacton t) : tacton_(std::move(t)) {}
    friend ValidatedTacton validate(const Tacton& tacton);

    Tacton tacton_;
};

void validate(const TemporalConfig& temporal);
void validate(const SpatioTemporalConfig& spatial);

/// Checks every Tacton invariant; throws tacton::Error naming the field.
ValidatedTacton validate(const Tacton& tacton);

/// Length of one completion of the trajectory, mm. The horizontal line
/// counts one out-and-back traversal.
double perimeter(Shape shape, double size_mm);

/// Completions of the trajectory per second. Throws UndefinedForPoint.
double drawing_frequency(const SpatioTemporalConfig& spatial);

/// drawing_frequency, or 0 for a Point (static focus).
double drawing_frequency_or_zero(const SpatioTemporalConfig& spatial);

}  // namespace tacton

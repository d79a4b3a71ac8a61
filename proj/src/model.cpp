#include "tacton/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tacton/error.hpp"

namespace tacton {

std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::InconsistentSuperposition: return "InconsistentSuperposition";
        case Errc::DegenerateNoStimulation: return "DegenerateNoStimulation";
        case Errc::MissingField: return "MissingField";
        case Errc::InvalidType: return "InvalidType";
        case Errc::UndefinedForPoint: return "UndefinedForPoint";
        case Errc::RateTooLow: return "RateTooLow";
        case Errc::CarrierRateTooLow: return "CarrierRateTooLow";
        case Errc::NegativeDistance: return "NegativeDistance";
        case Errc::EmptyWaveform: return "EmptyWaveform";
        case Errc::EmptySpectrum: return "EmptySpectrum";
        case Errc::SpacingOutOfRange: return "SpacingOutOfRange";
        case Errc::ParseError: return "ParseError";
        case Errc::MismatchedUnits: return "MismatchedUnits";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

std::string_view to_string(Shape shape) {
    switch (shape) {
        case Shape::Point: return "point";
        case Shape::HorizontalLine: return "horizontal_line";
        case Shape::Circle: return "circle";
        case Shape::RegularTriangle: return "regular_triangle";
        case Shape::Square: return "square";
    }
    return "point";
}

std::optional<Shape> shape_from_string(std::string_view name) {
    for (Shape s : kAllShapes) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

namespace {

[[noreturn]] void out_of_range(const char* field, const std::string& detail) {
    throw Error(Errc::OutOfRange, field, std::string("OutOfRange(") + field + "): " + detail);
}

void check_frequency(const char* field, double hz) {
    if (!std::isfinite(hz) || hz < 0.0 || hz > kMaxModulationHz) {
        out_of_range(field, "frequency must lie in [0, 1000] Hz, got " + std::to_string(hz));
    }
}

bool is_known_ratio(const std::array<double, 2>& w) {
    for (const auto& r : kSuperpositionRatios) {
        if (std::abs(w[0] - r[0]) < 1e-9 && std::abs(w[1] - r[1]) < 1e-9) return true;
    }
    return false;
}

}  // namespace

void validate(const TemporalConfig& t) {
    if (!std::isfinite(t.amplitude) || t.amplitude < 0.0 || t.amplitude > 1.0) {
        out_of_range("amplitude", "must lie in [0, 1], got " + std::to_string(t.amplitude));
    }
    if (!std::isfinite(t.total_duration) || t.total_duration <= 0.0 ||
        t.total_duration > kMaxDurationS) {
        out_of_range("total_duration_s",
                     "must lie in (0, 10] s, got " + std::to_string(t.total_duration));
    }
    if (t.am_frequencies.empty() || t.am_frequencies.size() > 2) {
        throw Error(Errc::InconsistentSuperposition, "am_frequencies",
                    "InconsistentSuperposition(am_frequencies): expected 1 or 2 entries");
    }
    for (double f : t.am_frequencies) check_frequency("am_frequencies", f);
    check_frequency("envelope_frequency", t.envelope_frequency);

    const auto& w = t.superposition_weights;
    if (!is_known_ratio(w)) {
        throw Error(Errc::InconsistentSuperposition, "superposition_weights",
                    "InconsistentSuperposition(superposition_weights): ratio must be one of "
                    "1:0, 0.75:0.25, 0.5:0.5, 0.25:0.75, 0:1");
    }
    if (t.superposed() && t.am_frequencies.size() != 2) {
        throw Error(Errc::InconsistentSuperposition, "am_frequencies",
                    "InconsistentSuperposition(am_frequencies): a superposition ratio other "
                    "than 1:0 needs exactly two AM frequencies");
    }
}

void validate(const SpatioTemporalConfig& s) {
    if (!std::isfinite(s.size) || s.size < 0.0 || s.size > kMaxSizeMm) {
        out_of_range("size_mm", "must lie in [0, 60] mm, got " + std::to_string(s.size));
    }
    if (s.shape == Shape::Point && s.size != 0.0) {
        out_of_range("size_mm", "a point trajectory has size 0");
    }
    if (s.shape != Shape::Point && s.size <= 0.0) {
        out_of_range("size_mm", "a non-point trajectory needs size > 0");
    }
    if (!std::isfinite(s.drawing_speed) || s.drawing_speed < 0.0) {
        out_of_range("drawing_speed_mps", "must be >= 0");
    }
    if (!std::isfinite(s.height) || s.height <= 0.0 || s.height > kMaxHeightMm) {
        out_of_range("height_mm", "must lie in (0, 600] mm, got " + std::to_string(s.height));
    }
    if (!std::isfinite(s.start_phase) || s.start_phase < 0.0 || s.start_phase >= 1.0) {
        out_of_range("start_phase", "must lie in [0, 1)");
    }
}

ValidatedTacton validate(const Tacton& tacton) {
    validate(tacton.temporal);
    validate(tacton.spatial);

    const auto& t = tacton.temporal;
    bool any_am = false;
    for (std::size_t i = 0; i < t.am_frequencies.size(); ++i) {
        const double weight = i < 2 ? t.superposition_weights[i] : 0.0;
        const bool used = t.am_frequencies.size() == 1 || weight > 0.0;
        if (used && t.am_frequencies[i] > 0.0) any_am = true;
    }
    if (!any_am && drawing_frequency_or_zero(tacton.spatial) == 0.0) {
        throw Error(Errc::DegenerateNoStimulation, "am_frequencies",
                    "DegenerateNoStimulation: a static focal point without AM produces no "
                    "vibration; set an AM frequency or move the focal point");
    }
    return ValidatedTacton(tacton);
}

double perimeter(Shape shape, double size_mm) {
    switch (shape) {
        case Shape::Point: return 0.0;
        case Shape::HorizontalLine: return 2.0 * size_mm;
        case Shape::Circle: return std::numbers::pi * size_mm;
        case Shape::RegularTriangle: return 3.0 * size_mm;
        case Shape::Square: return 4.0 * size_mm;
    }
    return 0.0;
}

double drawing_frequency(const SpatioTemporalConfig& spatial) {
    if (spatial.shape == Shape::Point) {
        throw Error(Errc::UndefinedForPoint, "shape",
                    "UndefinedForPoint: a point trajectory has no drawing frequency");
    }
    return spatial.drawing_speed * 1000.0 / perimeter(spatial.shape, spatial.size);
}

double drawing_frequency_or_zero(const SpatioTemporalConfig& spatial) {
    if (spatial.shape == Shape::Point || spatial.size <= 0.0) return 0.0;
    return drawing_frequency(spatial);
}

}  // namespace tacton

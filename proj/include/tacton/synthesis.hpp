#pragma once

#include <cstddef>
#include <vector>

#include "tacton/model.hpp"
#include "tacton/stimulation.hpp"
#include "tacton/trajectory.hpp"

namespace tacton {

inline constexpr double kCarrierHz = 40000.0;
inline constexpr double kDefaultSkinRate = 20000.0;
inline constexpr double kDefaultCarrierRate = 320000.0;

struct Waveform {
    enum class Kind { CommandCarrier, SkinPoint };

    double sample_rate = 0.0;
    std::vector<double> samples;
    Kind kind = Kind::SkinPoint;

    double time_at(std::size_t i) const { return static_cast<double>(i) / sample_rate; }
};

/// One-sided magnitude spectrum. A unit-amplitude sinusoid on a bin reads 1.
struct Spectrum {
    std::vector<double> frequencies;  // Hz
    std::vector<double> magnitudes;

    double bin_width() const {
        return frequencies.size() > 1 ? frequencies[1] - frequencies[0] : 0.0;
    }
};

/// Time-aggregated stimulation over the skin plane. values are row-major,
/// row r at y = origin.y + r * spacing, column c at x = origin.x + c * spacing.
struct FieldGrid {
    Point2D origin;
    double spacing = 1.0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t row, std::size_t col) const { return values[row * cols + col]; }
    Point2D cell_center(std::size_t row, std::size_t col) const {
        return {origin.x + static_cast<double>(col) * spacing,
                origin.y + static_cast<double>(row) * spacing};
    }
};

enum class GridAggregation { Rms, Peak };
enum class Execution { Serial, Parallel };

/// {w1 M1(t) + w2 M2(t)} E(t), or M(t) E(t) without superposition.
double modulation_value(const TemporalConfig& temporal, double t);

/// Smallest skin-signal rate accepted for a tacton: 2 * max(1000, 20 f_d).
double min_skin_rate(const ValidatedTacton& tacton);

/// A sin(2 pi 40 kHz t) * modulation(t). Throws CarrierRateTooLow below 320 kHz.
Waveform command_signal(const ValidatedTacton& tacton, double carrier_rate = kDefaultCarrierRate);

/// Stimulation felt at one skin point with the carrier replaced by 1.
Waveform skin_signal(const ValidatedTacton& tacton, Point2D skin_point,
                     double sample_rate = kDefaultSkinRate, const StimulationModel& model = {});

/// Rectangular-window DFT magnitude, normalized 2/N (1/N at DC and Nyquist).
Spectrum spectrum(const Waveform& w);

double rms(const std::vector<double>& samples);

/// Field grid covering the trajectory bounds plus the falloff support.
/// Serial and Parallel produce bit-identical values.
FieldGrid field_grid(const ValidatedTacton& tacton, double spacing_mm,
                     double sample_rate = kDefaultSkinRate, const StimulationModel& model = {},
                     GridAggregation aggregation = GridAggregation::Rms,
                     Execution execution = Execution::Parallel);

/// Direct per-cell evaluation through skin_signal. Slow; kept as the
/// reference the kernel is checked and benchmarked against.
FieldGrid field_grid_reference(const ValidatedTacton& tacton, double spacing_mm,
                               double sample_rate = kDefaultSkinRate,
                               const StimulationModel& model = {},
                               GridAggregation aggregation = GridAggregation::Rms);

}  // namespace tacton

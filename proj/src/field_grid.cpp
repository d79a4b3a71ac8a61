#include <algorithm>
#include <cmath>
#include <string>

#include "tacton/error.hpp"
#include "tacton/synthesis.hpp"

namespace tacton {

namespace {

struct GridLayout {
    Point2D origin;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

std::size_t cells_spanning(double width, double spacing) {
    auto n = static_cast<std::size_t>(std::floor(width / spacing + 1e-9)) + 1;
    if (static_cast<double>(n - 1) * spacing < width - 1e-9) ++n;
    return n;
}

GridLayout layout_for(const ValidatedTacton& tacton, double spacing, const FalloffProfile& profile) {
    if (!(spacing >= 0.25 && spacing <= 5.0)) {
        throw Error(Errc::SpacingOutOfRange, "grid_spacing",
                    "SpacingOutOfRange: grid spacing must lie in [0.25, 5] mm");
    }
    const Bounds b = trajectory_bounds(tacton.spatial());
    const double margin = support_radius(profile);
    GridLayout g;
    g.origin = {b.min.x - margin, b.min.y - margin};
    g.cols = cells_spanning(b.max.x - b.min.x + 2 * margin, spacing);
    g.rows = cells_spanning(b.max.y - b.min.y + 2 * margin, spacing);
    return g;
}

// Time series shared by every cell: focal positions and A * gain, mod(t).
struct SharedSeries {
    std::vector<Point2D> focal;
    std::vector<double> modulation;
    double amplitude_gain = 0.0;
};

double cell_value(const SharedSeries& series, Point2D cell, const FalloffProfile& profile,
                  GridAggregation aggregation) {
    const double cutoff = support_radius(profile);
    const double skip_above = cutoff * cutoff * (1.0 + 1e-9);
    double acc = 0.0;
    const std::size_t n = series.focal.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = series.focal[i].x - cell.x;
        const double dy = series.focal[i].y - cell.y;
        double s = 0.0;
        if (dx * dx + dy * dy < skip_above) {
            s = series.amplitude_gain * falloff(distance(series.focal[i], cell), profile) *
                series.modulation[i];
        }
        if (aggregation == GridAggregation::Rms) {
            acc += s * s;
        } else {
            acc = std::max(acc, std::abs(s));
        }
    }
    if (aggregation == GridAggregation::Peak) return acc;
    return n == 0 ? 0.0 : std::sqrt(acc / static_cast<double>(n));
}

}  // namespace

FieldGrid field_grid(const ValidatedTacton& tacton, double spacing_mm, double sample_rate,
                     const StimulationModel& model, GridAggregation aggregation,
                     Execution execution) {
    const GridLayout layout = layout_for(tacton, spacing_mm, model.falloff);
    const double min_rate = min_skin_rate(tacton);
    if (!(sample_rate >= min_rate)) {
        throw Error(Errc::RateTooLow, "sample_rate",
                    "RateTooLow: skin signal needs at least " + std::to_string(min_rate) + " Hz");
    }

    const auto& temporal = tacton.temporal();
    const auto& spatial = tacton.spatial();
    SharedSeries series;
    series.focal = sample_trajectory(spatial, sample_rate, temporal.total_duration).points;
    series.modulation.resize(series.focal.size());
    for (std::size_t i = 0; i < series.focal.size(); ++i) {
        series.modulation[i] = modulation_value(temporal, static_cast<double>(i) / sample_rate);
    }
    series.amplitude_gain = temporal.amplitude * height_gain(spatial.height, model.height_curve);

    FieldGrid grid{layout.origin, spacing_mm, layout.rows, layout.cols, {}};
    grid.values.assign(layout.rows * layout.cols, 0.0);
    const auto cells = static_cast<long>(grid.values.size());

    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long idx = 0; idx < cells; ++idx) {
            const auto u = static_cast<std::size_t>(idx);
            grid.values[u] = cell_value(series, grid.cell_center(u / grid.cols, u % grid.cols),
                                        model.falloff, aggregation);
        }
    } else {
        for (long idx = 0; idx < cells; ++idx) {
            const auto u = static_cast<std::size_t>(idx);
            grid.values[u] = cell_value(series, grid.cell_center(u / grid.cols, u % grid.cols),
                                        model.falloff, aggregation);
        }
    }
    return grid;
}

FieldGrid field_grid_reference(const ValidatedTacton& tacton, double spacing_mm,
                               double sample_rate, const StimulationModel& model,
                               GridAggregation aggregation) {
    const GridLayout layout = layout_for(tacton, spacing_mm, model.falloff);
    FieldGrid grid{layout.origin, spacing_mm, layout.rows, layout.cols, {}};
    grid.values.reserve(layout.rows * layout.cols);
    for (std::size_t r = 0; r < layout.rows; ++r) {
        for (std::size_t c = 0; c < layout.cols; ++c) {
            const Waveform w = skin_signal(tacton, grid.cell_center(r, c), sample_rate, model);
            if (aggregation == GridAggregation::Rms) {
                grid.values.push_back(rms(w.samples));
            } else {
                double peak = 0.0;
                for (double s : w.samples) peak = std::max(peak, std::abs(s));
                grid.values.push_back(peak);
            }
        }
    }
    return grid;
}

}  // namespace tacton

#include "tacton/stimulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tacton/error.hpp"

namespace tacton {

namespace {

double interpolate(const std::vector<std::pair<double, double>>& table, double x) {
    if (x <= table.front().first) return table.front().second;
    if (x >= table.back().first) return table.back().second;
    const auto hi = std::upper_bound(table.begin(), table.end(), x,
                                     [](double v, const auto& p) { return v < p.first; });
    const auto lo = hi - 1;
    const double u = (x - lo->first) / (hi->first - lo->first);
    return lo->second + u * (hi->second - lo->second);
}

[[noreturn]] void bad_model(const char* field, const std::string& msg) {
    throw Error(Errc::OutOfRange, field, std::string("OutOfRange(") + field + "): " + msg);
}

void check_table_axis(const std::vector<std::pair<double, double>>& table, const char* field) {
    if (table.size() < 2) bad_model(field, "table needs at least two points");
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto [x, v] = table[i];
        if (!std::isfinite(x) || !std::isfinite(v) || v < 0.0 || v > 1.0) {
            bad_model(field, "table values must be finite and in [0, 1]");
        }
        if (i > 0 && !(x > table[i - 1].first)) {
            bad_model(field, "table abscissae must be strictly increasing");
        }
    }
}

}  // namespace

void validate(const FalloffProfile& p) {
    if (!(p.cutoff_radius > 0.0) || !std::isfinite(p.cutoff_radius)) {
        bad_model("model.falloff.cutoff_radius_mm", "must be > 0");
    }
    if (p.kind == FalloffProfile::Kind::Tabulated) {
        check_table_axis(p.table, "model.falloff.table");
        if (p.table.front().first != 0.0 || p.table.front().second != 1.0) {
            bad_model("model.falloff.table", "first entry must be (0, 1)");
        }
        for (std::size_t i = 1; i < p.table.size(); ++i) {
            if (p.table[i].second > p.table[i - 1].second) {
                bad_model("model.falloff.table", "values must be non-increasing");
            }
        }
        return;
    }
    if (!(p.fwhm > 0.0) || !std::isfinite(p.fwhm)) bad_model("model.falloff.fwhm_mm", "must be > 0");
    if (!(p.fwhm < 2.0 * p.cutoff_radius)) {
        bad_model("model.falloff.fwhm_mm", "must be smaller than twice the cutoff radius");
    }
}

void validate(const HeightCurve& c) {
    if (c.kind == HeightCurve::Kind::Quadratic) {
        if (!(c.peak_height > 0.0 && c.peak_height <= kMaxHeightMm)) {
            bad_model("model.height_curve.peak_height_mm", "must lie in (0, 600]");
        }
        if (!(c.half_width > 0.0) || !std::isfinite(c.half_width)) {
            bad_model("model.height_curve.half_width_mm", "must be > 0");
        }
        return;
    }
    check_table_axis(c.table, "model.height_curve.table");
    const auto peak = std::max_element(c.table.begin(), c.table.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    if (peak->second != 1.0) bad_model("model.height_curve.table", "maximum gain must be 1");
    for (auto it = c.table.begin(); it != c.table.end(); ++it) {
        if (it == c.table.begin()) continue;
        const bool rising = it <= peak;
        if (rising ? it->second < (it - 1)->second : it->second > (it - 1)->second) {
            bad_model("model.height_curve.table", "gain must rise to the peak and fall after it");
        }
    }
}

double falloff(double distance_mm, const FalloffProfile& p) {
    if (distance_mm < 0.0) {
        throw Error(Errc::NegativeDistance, "distance", "NegativeDistance: distance must be >= 0");
    }
    if (distance_mm >= p.cutoff_radius) return 0.0;
    switch (p.kind) {
        case FalloffProfile::Kind::Gaussian: {
            const double sigma = p.fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
            return std::exp(-distance_mm * distance_mm / (2.0 * sigma * sigma));
        }
        case FalloffProfile::Kind::RaisedCosine:
            if (distance_mm >= p.fwhm) return 0.0;
            return 0.5 * (1.0 + std::cos(std::numbers::pi * distance_mm / p.fwhm));
        case FalloffProfile::Kind::Tabulated:
            return interpolate(p.table, distance_mm);
    }
    return 0.0;
}

double height_gain(double height_mm, const HeightCurve& c) {
    if (!(height_mm > 0.0 && height_mm <= kMaxHeightMm)) {
        throw Error(Errc::OutOfRange, "height_mm", "OutOfRange(height_mm): must lie in (0, 600] mm");
    }
    if (c.kind == HeightCurve::Kind::Tabulated) return interpolate(c.table, height_mm);
    const double u = (height_mm - c.peak_height) / c.half_width;
    return std::clamp(1.0 - u * u, 0.0, 1.0);
}

double intensity_at(Point2D focal, Point2D skin, double amplitude, double height_mm,
                    const FalloffProfile& profile, const HeightCurve& curve) {
    return amplitude * height_gain(height_mm, curve) * falloff(distance(focal, skin), profile);
}

}  // namespace tacton

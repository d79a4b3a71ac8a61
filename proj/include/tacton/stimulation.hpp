#pragma once

#include <utility>
#include <vector>

#include "tacton/trajectory.hpp"

namespace tacton {

/// Radial intensity profile S(D) of the focal spot on the skin plane.
///
/// S(0) = 1, S is non-increasing, and S(D) = 0 for D >= cutoff_radius.
/// Gaussian uses the FWHM to set sigma. RaisedCosine reaches half maximum
/// at fwhm/2 and zero at fwhm. Tabulated interpolates (distance mm, value)
/// pairs linearly and holds the last value until the cutoff.
struct FalloffProfile {
    enum class Kind { Gaussian, RaisedCosine, Tabulated };

    Kind kind = Kind::Gaussian;
    double fwhm = 8.6;           // mm, the 40 kHz wavelength
    double cutoff_radius = 10.0; // mm
    std::vector<std::pair<double, double>> table;

    bool operator==(const FalloffProfile&) const = default;
};

/// Relative intensity of the commanded amplitude versus device height.
/// Quadratic: 1 - ((h - peak) / half_width)^2, clamped to [0, 1].
/// Tabulated: (height mm, gain) pairs, linear interpolation, clamped at ends.
struct HeightCurve {
    enum class Kind { Quadratic, Tabulated };

    Kind kind = Kind::Quadratic;
    double peak_height = 200.0;  // mm
    double half_width = 280.0;   // mm
    std::vector<std::pair<double, double>> table;

    bool operator==(const HeightCurve&) const = default;
};

/// Spatial model used by the synthesis stage.
struct StimulationModel {
    FalloffProfile falloff;
    HeightCurve height_curve;

    bool operator==(const StimulationModel&) const = default;
};

void validate(const FalloffProfile& profile);
void validate(const HeightCurve& curve);

double falloff(double distance_mm, const FalloffProfile& profile);
double height_gain(double height_mm, const HeightCurve& curve);

/// amplitude * height_gain(height) * falloff(|focal - skin|)
double intensity_at(Point2D focal, Point2D skin, double amplitude, double height_mm,
                    const FalloffProfile& profile, const HeightCurve& curve);

/// Distance at which the profile support ends (S = 0 beyond).
inline double support_radius(const FalloffProfile& profile) { return profile.cutoff_radius; }

}  // namespace tacton

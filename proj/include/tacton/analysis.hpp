#pragma once

#include <string_view>
#include <vector>

#include "tacton/synthesis.hpp"

namespace tacton {

inline constexpr double kDefaultFloorDb = -40.0;
inline constexpr double kDefaultTolHz = 2.0;

struct Peak {
    double frequency = 0.0;
    double magnitude = 0.0;
    std::size_t bin = 0;
};

/// Peaks sorted by descending magnitude (ties by ascending bin).
struct PeakList {
    std::vector<Peak> peaks;
    double bin_width = 0.0;
};

/// Local maxima above max * 10^(floor_db / 20), the maximum taken over the
/// non-DC bins. The DC bin is never reported.
PeakList detect_peaks(const Spectrum& s, double floor_db = kDefaultFloorDb);

enum class Classification { PureAMLike, PureSTMLike, AMSTMLike, Unclassified };

std::string_view to_string(Classification c);

struct HarmonicMatch {
    int harmonic = 0;  // n
    int sideband = 0;  // -1 for n f_d - f_AM, +1 for n f_d + f_AM, 0 otherwise
    double frequency = 0.0;
    double deviation = 0.0;  // Hz, measured minus template
};

struct HarmonicReport {
    double base_frequency = 0.0;
    double tolerance = 0.0;
    std::vector<HarmonicMatch> matched;
    std::vector<Peak> unmatched_peaks;
    Classification classification = Classification::Unclassified;
};

/// Template frequency nearest to f for one rendering, with the match indices.
/// Returns false when the template is undefined (zero base frequency).
bool nearest_template_member(Classification rendering, double f, double f_am, double f_d,
                             HarmonicMatch& out);

/// Tries the PureAM {n f_AM}, PureSTM {n f_d} and AM+STM {f_AM, n f_d +- f_AM}
/// templates in that order and reports the first one covering every peak.
/// tol is raised to at least two bins.
HarmonicReport classify(const PeakList& peaks, double f_am, double f_d, double tol = kDefaultTolHz);

/// Mains-hum exclusion: peaks within tolerance of any listed frequency (and
/// its integer multiples when `harmonics`) are left out of a comparison.
struct NotchList {
    std::vector<double> frequencies{60.0};
    bool harmonics = true;

    static NotchList none() { return {{}, false}; }
};

struct PeakPair {
    Peak simulated;
    Peak measured;
};

struct ComparisonReport {
    double tolerance = 0.0;
    double floor_db = kDefaultFloorDb;
    std::vector<PeakPair> shared;
    std::vector<Peak> simulation_only;
    std::vector<Peak> measurement_only;
    std::vector<Peak> notched;
    double explained_fraction = 1.0;  // shared / measured peaks, 1 when none measured
};

/// Peak-level agreement between a simulated and a measured spectrum.
/// tol_hz is raised to at least two bins of the coarser spectrum.
ComparisonReport compare_measurement(const Spectrum& simulated, const Spectrum& measured,
                                     double tol_hz = kDefaultTolHz,
                                     double floor_db = kDefaultFloorDb,
                                     const NotchList& notch = {});

}  // namespace tacton

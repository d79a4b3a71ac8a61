#include "tacton/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tacton/error.hpp"

namespace tacton {

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::PureAMLike: return "PureAMLike";
        case Classification::PureSTMLike: return "PureSTMLike";
        case Classification::AMSTMLike: return "AMSTMLike";
        case Classification::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

PeakList detect_peaks(const Spectrum& s, double floor_db) {
    const auto& mag = s.magnitudes;
    if (mag.empty()) throw Error(Errc::EmptySpectrum, "magnitudes", "EmptySpectrum: no bins");
    if (!(floor_db < 0.0)) {
        throw Error(Errc::OutOfRange, "floor_db", "OutOfRange(floor_db): floor must be negative");
    }
    PeakList out;
    out.bin_width = s.bin_width();
    if (mag.size() < 2) return out;

    const double max_mag = *std::max_element(mag.begin() + 1, mag.end());
    if (!(max_mag > 0.0)) return out;
    const double threshold = max_mag * std::pow(10.0, floor_db / 20.0);

    std::vector<Peak> candidates;
    const std::size_t last = mag.size() - 1;
    for (std::size_t k = 1; k <= last; ++k) {
        if (!(mag[k] > threshold)) continue;
        const bool left = mag[k] > mag[k - 1];
        const bool right = k == last || mag[k] >= mag[k + 1];
        if (left && right) candidates.push_back({s.frequencies[k], mag[k], k});
    }
    // merge neighbours within one bin, keeping the larger
    for (const Peak& p : candidates) {
        if (!out.peaks.empty() && p.bin - out.peaks.back().bin <= 1) {
            if (p.magnitude > out.peaks.back().magnitude) out.peaks.back() = p;
            continue;
        }
        out.peaks.push_back(p);
    }
    std::stable_sort(out.peaks.begin(), out.peaks.end(),
                     [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });
    return out;
}

namespace {

void consider(HarmonicMatch& best, double f, double member, int n, int sideband) {
    const double dev = f - member;
    if (std::abs(dev) < std::abs(best.deviation)) best = {n, sideband, f, dev};
}

}  // namespace

bool nearest_template_member(Classification rendering, double f, double f_am, double f_d,
                             HarmonicMatch& out) {
    out = {0, 0, f, std::numeric_limits<double>::infinity()};
    switch (rendering) {
        case Classification::PureAMLike:
        case Classification::PureSTMLike: {
            const double base = rendering == Classification::PureAMLike ? f_am : f_d;
            if (!(base > 0.0)) return false;
            const int n = std::max(1, static_cast<int>(std::lround(f / base)));
            consider(out, f, n * base, n, 0);
            return true;
        }
        case Classification::AMSTMLike: {
            if (!(f_am > 0.0) || !(f_d > 0.0)) return false;
            consider(out, f, f_am, 0, 0);
            // n f_d + f_AM
            const long up = std::lround((f - f_am) / f_d);
            // |n f_d - f_AM| covers both f = n f_d - f_AM and f = f_AM - n f_d
            const long down_a = std::lround((f + f_am) / f_d);
            const long down_b = std::lround((f_am - f) / f_d);
            for (long n : {up, up - 1, up + 1}) {
                if (n >= 1) consider(out, f, n * f_d + f_am, static_cast<int>(n), +1);
            }
            for (long n : {down_a, down_a - 1, down_a + 1, down_b, down_b - 1, down_b + 1}) {
                if (n >= 1) consider(out, f, std::abs(n * f_d - f_am), static_cast<int>(n), -1);
            }
            return true;
        }
        case Classification::Unclassified:
            return false;
    }
    return false;
}

HarmonicReport classify(const PeakList& peaks, double f_am, double f_d, double tol) {
    const double effective_tol = std::max(tol, 2.0 * peaks.bin_width);
    HarmonicReport best;
    best.tolerance = effective_tol;
    best.unmatched_peaks = peaks.peaks;
    if (peaks.peaks.empty()) return best;

    bool have_fallback = false;
    for (Classification rendering : {Classification::PureAMLike, Classification::PureSTMLike,
                                     Classification::AMSTMLike}) {
        HarmonicReport report;
        report.tolerance = effective_tol;
        report.base_frequency = rendering == Classification::PureAMLike ? f_am : f_d;
        bool defined = true;
        for (const Peak& p : peaks.peaks) {
            HarmonicMatch m;
            if (!nearest_template_member(rendering, p.frequency, f_am, f_d, m)) {
                defined = false;
                break;
            }
            if (std::abs(m.deviation) <= effective_tol) {
                report.matched.push_back(m);
            } else {
                report.unmatched_peaks.push_back(p);
            }
        }
        if (!defined) continue;
        if (report.unmatched_peaks.empty()) {
            report.classification = rendering;
            return report;
        }
        if (!have_fallback || report.unmatched_peaks.size() < best.unmatched_peaks.size()) {
            best = std::move(report);
            have_fallback = true;
        }
    }
    best.classification = Classification::Unclassified;
    return best;
}

namespace {

bool notched(double f, const NotchList& notch, double tol) {
    for (double base : notch.frequencies) {
        if (!(base > 0.0)) continue;
        if (notch.harmonics) {
            const double n = std::max(1.0, std::round(f / base));
            if (std::abs(f - n * base) <= tol) return true;
        } else if (std::abs(f - base) <= tol) {
            return true;
        }
    }
    return false;
}

}  // namespace

ComparisonReport compare_measurement(const Spectrum& simulated, const Spectrum& measured,
                                     double tol_hz, double floor_db, const NotchList& notch) {
    ComparisonReport report;
    report.floor_db = floor_db;
    report.tolerance =
        std::max(tol_hz, 2.0 * std::max(simulated.bin_width(), measured.bin_width()));

    auto filter = [&](const PeakList& list) {
        std::vector<Peak> kept;
        for (const Peak& p : list.peaks) {
            if (notched(p.frequency, notch, report.tolerance)) {
                report.notched.push_back(p);
            } else {
                kept.push_back(p);
            }
        }
        return kept;
    };
    const std::vector<Peak> sim = filter(detect_peaks(simulated, floor_db));
    const std::vector<Peak> meas = filter(detect_peaks(measured, floor_db));

    // Greedy in descending measured magnitude; each simulated peak used once.
    std::vector<bool> sim_used(sim.size(), false);
    for (const Peak& m : meas) {
        std::size_t best = sim.size();
        double best_dev = report.tolerance;
        for (std::size_t i = 0; i < sim.size(); ++i) {
            const double dev = std::abs(sim[i].frequency - m.frequency);
            if (!sim_used[i] && dev <= best_dev) {
                best = i;
                best_dev = dev;
            }
        }
        if (best == sim.size()) {
            report.measurement_only.push_back(m);
        } else {
            sim_used[best] = true;
            report.shared.push_back({sim[best], m});
        }
    }
    for (std::size_t i = 0; i < sim.size(); ++i) {
        if (!sim_used[i]) report.simulation_only.push_back(sim[i]);
    }
    report.explained_fraction =
        meas.empty() ? 1.0 : static_cast<double>(report.shared.size()) / static_cast<double>(meas.size());
    return report;
}

}  // namespace tacton

#include "tacton/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tacton/error.hpp"

namespace tacton {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double unit_sinusoid(double hz, double t) { return hz == 0.0 ? 1.0 : std::sin(kTwoPi * hz * t); }

}  // namespace

double modulation_value(const TemporalConfig& temporal, double t) {
    const auto& f = temporal.am_frequencies;
    double am;
    if (temporal.superposed()) {
        const auto& w = temporal.superposition_weights;
        am = w[0] * unit_sinusoid(f[0], t) + w[1] * unit_sinusoid(f[1], t);
    } else {
        am = unit_sinusoid(f[0], t);
    }
    return am * unit_sinusoid(temporal.envelope_frequency, t);
}

double min_skin_rate(const ValidatedTacton& tacton) {
    return 2.0 * std::max(1000.0, 20.0 * drawing_frequency_or_zero(tacton.spatial()));
}

Waveform command_signal(const ValidatedTacton& tacton, double carrier_rate) {
    if (!(carrier_rate >= kDefaultCarrierRate)) {
        throw Error(Errc::CarrierRateTooLow, "carrier_rate",
                    "CarrierRateTooLow: need at least 320 kHz (8 samples per carrier cycle)");
    }
    const auto& temporal = tacton.temporal();
    Waveform w{carrier_rate, {}, Waveform::Kind::CommandCarrier};
    const std::size_t n = sample_count(temporal.total_duration, carrier_rate);
    w.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = w.time_at(i);
        w.samples[i] = temporal.amplitude * std::sin(kTwoPi * kCarrierHz * t) *
                       modulation_value(temporal, t);
    }
    return w;
}

Waveform skin_signal(const ValidatedTacton& tacton, Point2D skin_point, double sample_rate,
                     const StimulationModel& model) {
    if (!(std::abs(skin_point.x) <= kMaxSizeMm && std::abs(skin_point.y) <= kMaxSizeMm)) {
        throw Error(Errc::OutOfRange, "skin_point",
                    "OutOfRange(skin_point): coordinates must lie within +/-60 mm");
    }
    const double min_rate = min_skin_rate(tacton);
    if (!(sample_rate >= min_rate)) {
        throw Error(Errc::RateTooLow, "sample_rate",
                    "RateTooLow: skin signal needs at least " + std::to_string(min_rate) + " Hz");
    }
    const auto& temporal = tacton.temporal();
    const auto& spatial = tacton.spatial();
    Waveform w{sample_rate, {}, Waveform::Kind::SkinPoint};
    const std::size_t n = sample_count(temporal.total_duration, sample_rate);
    w.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = w.time_at(i);
        const double intensity = intensity_at(position_at(spatial, t), skin_point,
                                              temporal.amplitude, spatial.height, model.falloff,
                                              model.height_curve);
        w.samples[i] = intensity * modulation_value(temporal, t);
    }
    return w;
}

double rms(const std::vector<double>& samples) {
    if (samples.empty()) return 0.0;
    double sum = 0.0;
    for (double s : samples) sum += s * s;
    return std::sqrt(sum / static_cast<double>(samples.size()));
}

}  // namespace tacton

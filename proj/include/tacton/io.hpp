#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "tacton/analysis.hpp"
#include "tacton/model.hpp"
#include "tacton/stimulation.hpp"
#include "tacton/synthesis.hpp"

namespace tacton {

using nlohmann::json;

/// A Tacton plus the optional spatial-model overrides carried in its JSON.
struct TactonDocument {
    Tacton tacton;
    StimulationModel model;

    bool operator==(const TactonDocument&) const = default;
};

/// Parses the Tacton JSON schema. Throws Error(MissingField / InvalidType /
/// OutOfRange) naming the field; does not check Tacton invariants.
TactonDocument tacton_from_json(const json& j);
json to_json(const TactonDocument& doc);

/// Reads and parses a Tacton JSON file. Throws ParseError for malformed JSON.
TactonDocument load_tacton(const std::filesystem::path& path);

/// Fixed 9-significant-digit decimal used in every CSV.
std::string format_number(double v);

std::string waveform_csv(const Waveform& w);
std::string spectrum_csv(const Spectrum& s);
std::string point_series_csv(const PointSeries& series);

json to_json(const FieldGrid& grid);
json to_json(const HarmonicReport& report);
json to_json(const ComparisonReport& report);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Vibrometer measurement (or exported simulation) loaded as a spectrum.
struct Measurement {
    Spectrum spectrum;
    bool from_time_series = false;
    std::optional<json> sidecar;  // {tacton, skin_point_mm, notes}
};

/// Accepts `t_s,displacement_um` or `t_s,p` time series (transformed here) and
/// `f_hz,magnitude` spectra. Throws ParseError with the line number, or
/// Error(MismatchedUnits) for a recognised column in other units.
Measurement parse_measurement(const std::string& text, const std::string& name = {});
Measurement load_measurement(const std::filesystem::path& path);

}  // namespace tacton

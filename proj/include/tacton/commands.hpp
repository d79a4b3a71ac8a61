#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tacton/analysis.hpp"
#include "tacton/io.hpp"

namespace tacton {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kValidation = 2;
inline constexpr int kIo = 3;
inline constexpr int kParse = 4;
}  // namespace exit_code

/// The five measurement points: the circle's horizontal diameter at
/// x = 0, 5, 10, 15, 20 mm, y = 0.
std::vector<Point2D> standard_points();

/// Parses "x,y;x,y;..." (mm). Throws Error(ParseError) on malformed input.
std::vector<Point2D> parse_points(const std::string& text);

/// Caps OpenMP threads from TACTON_SIM_THREADS when set.
void configure_threads_from_env();

struct RunManifest {
    std::vector<std::filesystem::path> tactons;
    std::filesystem::path output_dir;
    double sample_rate = kDefaultSkinRate;
    std::optional<double> grid_spacing;
    std::vector<Point2D> skin_points;
    double floor_db = kDefaultFloorDb;
    double tol_hz = kDefaultTolHz;
};

/// Writes <stem>_pt<i>_waveform.csv and <stem>_pt<i>_spectrum.csv per skin
/// point and <stem>_grid.json when a grid is requested.
int cmd_simulate(const RunManifest& manifest, std::ostream& log);

struct PaperGridEntry {
    std::string stem;
    TactonDocument doc;
};

/// The 15 measured Tactons: f_AM in {0, 80, 140, 210} Hz times
/// (d, v) in {(0,0), (10,6), (20,12), (30,18)} without the static, unmodulated cell.
std::vector<PaperGridEntry> paper_grid_tactons();

/// Expected rendering for a Tacton from its parameters alone.
Classification expected_rendering(const Tacton& tacton);

/// Point on the trajectory used to classify a Tacton: (d/2, 0), or the
/// origin for a static focus.
Point2D on_trajectory_point(const Tacton& tacton);

struct PaperGridRow {
    std::string stem;
    double f_am = 0.0;
    double size = 0.0;
    double speed = 0.0;
    double f_d = 0.0;
    Classification expected = Classification::Unclassified;
    Classification classified = Classification::Unclassified;
    double dominant_hz = 0.0;
    std::size_t peak_count = 0;
    std::vector<Classification> per_point;
};

struct PaperGridOptions {
    double sample_rate = kDefaultSkinRate;
    double floor_db = kDefaultFloorDb;
    double tol_hz = kDefaultTolHz;
    std::optional<double> grid_spacing;
};

/// Writes tactons/<stem>.json, sim/<stem>_pt<i>_{waveform,spectrum}.csv,
/// sim/<stem>.csv (spectrum at the on-trajectory point), summary.csv and
/// summary.md under output_dir. Returns the summary rows in grid order.
std::vector<PaperGridRow> run_paper_grid(const std::filesystem::path& output_dir,
                                         const PaperGridOptions& options = {});
int cmd_paper_grid(const std::filesystem::path& output_dir, const PaperGridOptions& options,
                   std::ostream& log);

/// Pairs <stem>.csv files across the two directories, writes
/// <stem>.comparison.json per pair and comparison.md into output_dir.
int cmd_compare(const std::filesystem::path& sim_dir, const std::filesystem::path& measured_dir,
                const std::filesystem::path& output_dir, double tol_hz, double floor_db,
                std::ostream& log);

/// Static shape metadata served by `shapes` and GET /api/v1/shapes.
json shapes_json();

}  // namespace tacton

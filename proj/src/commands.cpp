#include "tacton/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tacton/error.hpp"

namespace tacton {

namespace fs = std::filesystem;

std::vector<Point2D> standard_points() {
    return {{0.0, 0.0}, {5.0, 0.0}, {10.0, 0.0}, {15.0, 0.0}, {20.0, 0.0}};
}

std::vector<Point2D> parse_points(const std::string& text) {
    std::vector<Point2D> points;
    std::stringstream all(text);
    std::string item;
    while (std::getline(all, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        const auto comma = item.find(',');
        try {
            if (comma == std::string::npos) throw std::invalid_argument(item);
            std::size_t used_x = 0;
            std::size_t used_y = 0;
            const std::string xs = item.substr(0, comma);
            const std::string ys = item.substr(comma + 1);
            const double x = std::stod(xs, &used_x);
            const double y = std::stod(ys, &used_y);
            if (xs.find_first_not_of(" \t", used_x) != std::string::npos ||
                ys.find_first_not_of(" \t", used_y) != std::string::npos) {
                throw std::invalid_argument(item);
            }
            points.push_back({x, y});
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, "points", "malformed point '" + item + "', expected x,y");
        }
    }
    return points;
}

void configure_threads_from_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv("TACTON_SIM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

namespace {

std::string point_file(const std::string& stem, std::size_t index, const char* what) {
    return stem + "_pt" + std::to_string(index) + "_" + what + ".csv";
}

void simulate_points(const ValidatedTacton& tacton, const StimulationModel& model,
                     const std::vector<Point2D>& points, double rate, const fs::path& dir,
                     const std::string& stem) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Waveform w = skin_signal(tacton, points[i], rate, model);
        write_file_atomic(dir / point_file(stem, i, "waveform"), waveform_csv(w));
        write_file_atomic(dir / point_file(stem, i, "spectrum"), spectrum_csv(spectrum(w)));
    }
}

int report_error(const Error& e, std::ostream& log) {
    log << "error: " << e.what() << '\n';
    switch (e.code()) {
        case Errc::Io: return exit_code::kIo;
        case Errc::ParseError:
        case Errc::MismatchedUnits: return exit_code::kParse;
        default: return exit_code::kValidation;
    }
}

}  // namespace

int cmd_simulate(const RunManifest& m, std::ostream& log) {
    if (m.tactons.empty()) {
        log << "error: no tacton given\n";
        return exit_code::kValidation;
    }
    if (m.skin_points.empty() && !m.grid_spacing) {
        log << "error: request at least one skin point (--points) or a grid (--grid)\n";
        return exit_code::kValidation;
    }
    // Validate everything before writing anything.
    std::vector<std::pair<std::string, std::pair<ValidatedTacton, StimulationModel>>> jobs;
    try {
        for (const fs::path& path : m.tactons) {
            const TactonDocument doc = load_tacton(path);
            jobs.push_back({path.stem().string(), {validate(doc.tacton), doc.model}});
        }
    } catch (const ParseError& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::kValidation;
    } catch (const Error& e) {
        return report_error(e, log);
    }

    try {
        std::error_code ec;
        fs::create_directories(m.output_dir, ec);
        if (ec) throw Error(Errc::Io, m.output_dir.string(), "cannot create " + m.output_dir.string());
        for (const auto& [stem, job] : jobs) {
            const auto& [tacton, model] = job;
            simulate_points(tacton, model, m.skin_points, m.sample_rate, m.output_dir, stem);
            if (m.grid_spacing) {
                const FieldGrid grid = field_grid(tacton, *m.grid_spacing, m.sample_rate, model);
                write_file_atomic(m.output_dir / (stem + "_grid.json"), to_json(grid).dump() + "\n");
            }
            log << stem << ": " << m.skin_points.size() << " point(s) written to "
                << m.output_dir.string() << '\n';
        }
    } catch (const Error& e) {
        return report_error(e, log);
    }
    return exit_code::kOk;
}

std::vector<PaperGridEntry> paper_grid_tactons() {
    constexpr double am_values[] = {0.0, 80.0, 140.0, 210.0};
    constexpr double size_speed[][2] = {{0.0, 0.0}, {10.0, 6.0}, {20.0, 12.0}, {30.0, 18.0}};
    std::vector<PaperGridEntry> out;
    for (double f_am : am_values) {
        for (const auto& sv : size_speed) {
            if (f_am == 0.0 && sv[0] == 0.0) continue;
            TactonDocument doc;
            auto& t = doc.tacton.temporal;
            t.amplitude = 1.0;
            t.am_frequencies = {f_am};
            t.total_duration = 1.0;
            auto& s = doc.tacton.spatial;
            s.shape = sv[0] == 0.0 ? Shape::Point : Shape::Circle;
            s.size = sv[0];
            s.drawing_speed = sv[1];
            s.height = 200.0;
            std::ostringstream stem;
            stem << "fam" << f_am << "_d" << sv[0] << "_v" << sv[1];
            out.push_back({stem.str(), doc});
        }
    }
    return out;
}

Classification expected_rendering(const Tacton& tacton) {
    bool am = false;
    for (double f : tacton.temporal.am_frequencies) am = am || f > 0.0;
    const bool stm = drawing_frequency_or_zero(tacton.spatial) > 0.0;
    if (am && stm) return Classification::AMSTMLike;
    if (am) return Classification::PureAMLike;
    if (stm) return Classification::PureSTMLike;
    return Classification::Unclassified;
}

Point2D on_trajectory_point(const Tacton& tacton) {
    if (tacton.spatial.shape == Shape::Point) return {};
    return position_at(tacton.spatial, 0.0);
}

namespace {

double dominant_am(const TemporalConfig& t) {
    if (!t.superposed()) return t.am_frequencies[0];
    return t.superposition_weights[0] >= t.superposition_weights[1] ? t.am_frequencies[0]
                                                                    : t.am_frequencies[1];
}

PaperGridRow simulate_grid_entry(const PaperGridEntry& entry, const PaperGridOptions& opt,
                                 const fs::path& sim_dir) {
    const ValidatedTacton tacton = validate(entry.doc.tacton);
    const auto& model = entry.doc.model;
    PaperGridRow row;
    row.stem = entry.stem;
    row.f_am = dominant_am(tacton.temporal());
    row.size = tacton.spatial().size;
    row.speed = tacton.spatial().drawing_speed;
    row.f_d = drawing_frequency_or_zero(tacton.spatial());
    row.expected = expected_rendering(tacton.get());

    const auto points = standard_points();
    simulate_points(tacton, model, points, opt.sample_rate, sim_dir, entry.stem);
    for (const Point2D& p : points) {
        const Spectrum s = spectrum(skin_signal(tacton, p, opt.sample_rate, model));
        row.per_point.push_back(
            classify(detect_peaks(s, opt.floor_db), row.f_am, row.f_d, opt.tol_hz).classification);
    }

    const Spectrum s =
        spectrum(skin_signal(tacton, on_trajectory_point(tacton.get()), opt.sample_rate, model));
    write_file_atomic(sim_dir / (entry.stem + ".csv"), spectrum_csv(s));
    const PeakList peaks = detect_peaks(s, opt.floor_db);
    row.classified = classify(peaks, row.f_am, row.f_d, opt.tol_hz).classification;
    row.peak_count = peaks.peaks.size();
    if (!peaks.peaks.empty()) row.dominant_hz = peaks.peaks.front().frequency;

    if (opt.grid_spacing) {
        const FieldGrid grid = field_grid(tacton, *opt.grid_spacing, opt.sample_rate, model);
        write_file_atomic(sim_dir / (entry.stem + "_grid.json"), to_json(grid).dump() + "\n");
    }
    return row;
}

std::string summary_csv(const std::vector<PaperGridRow>& rows) {
    std::string out =
        "stem,f_am_hz,size_mm,speed_mps,f_d_hz,expected,classification,dominant_hz,peaks,"
        "per_point\n";
    for (const auto& r : rows) {
        std::string per_point;
        for (std::size_t i = 0; i < r.per_point.size(); ++i) {
            if (i > 0) per_point += '|';
            per_point += to_string(r.per_point[i]);
        }
        out += r.stem + ',' + format_number(r.f_am) + ',' + format_number(r.size) + ',' +
               format_number(r.speed) + ',' + format_number(r.f_d) + ',' +
               std::string(to_string(r.expected)) + ',' + std::string(to_string(r.classified)) +
               ',' + format_number(r.dominant_hz) + ',' + std::to_string(r.peak_count) + ',' +
               per_point + '\n';
    }
    return out;
}

std::string summary_md(const std::vector<PaperGridRow>& rows) {
    std::string out =
        "| Tacton | f_AM (Hz) | d (mm) | v (m/s) | f_d (Hz) | expected | classified | dominant "
        "peak (Hz) |\n|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        out += "| " + r.stem + " | " + format_number(r.f_am) + " | " + format_number(r.size) +
               " | " + format_number(r.speed) + " | " + format_number(r.f_d) + " | " +
               std::string(to_string(r.expected)) + " | " + std::string(to_string(r.classified)) +
               " | " + format_number(r.dominant_hz) + " |\n";
    }
    return out;
}

}  // namespace

std::vector<PaperGridRow> run_paper_grid(const fs::path& output_dir, const PaperGridOptions& opt) {
    const auto entries = paper_grid_tactons();
    const fs::path tacton_dir = output_dir / "tactons";
    const fs::path sim_dir = output_dir / "sim";
    std::error_code ec;
    fs::create_directories(tacton_dir, ec);
    fs::create_directories(sim_dir, ec);
    if (ec) throw Error(Errc::Io, output_dir.string(), "cannot create " + output_dir.string());

    for (const auto& e : entries) {
        write_file_atomic(tacton_dir / (e.stem + ".json"), to_json(e.doc).dump(2) + "\n");
    }

    std::vector<PaperGridRow> rows(entries.size());
    std::vector<std::string> failures(entries.size());
    const auto count = static_cast<long>(entries.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const auto u = static_cast<std::size_t>(i);
        try {
            rows[u] = simulate_grid_entry(entries[u], opt, sim_dir);
        } catch (const std::exception& e) {
            failures[u] = e.what();
        }
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw Error(Errc::Io, output_dir.string(), f);
    }
    write_file_atomic(output_dir / "summary.csv", summary_csv(rows));
    write_file_atomic(output_dir / "summary.md", summary_md(rows));
    return rows;
}

int cmd_paper_grid(const fs::path& output_dir, const PaperGridOptions& options, std::ostream& log) {
    try {
        const auto rows = run_paper_grid(output_dir, options);
        std::size_t consistent = 0;
        for (const auto& r : rows) consistent += r.classified == r.expected ? 1 : 0;
        log << rows.size() << " tactons simulated, " << consistent
            << " classified consistently; summary in " << (output_dir / "summary.md").string()
            << '\n';
    } catch (const Error& e) {
        return report_error(e, log);
    }
    return exit_code::kOk;
}

int cmd_compare(const fs::path& sim_dir, const fs::path& measured_dir, const fs::path& output_dir,
                double tol_hz, double floor_db, std::ostream& log) {
    std::vector<fs::path> measured;
    std::error_code ec;
    if (fs::is_directory(measured_dir, ec)) {
        for (const auto& entry : fs::directory_iterator(measured_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                measured.push_back(entry.path());
            }
        }
    }
    std::sort(measured.begin(), measured.end());
    if (measured.empty()) {
        log << "error: no measurement CSV files in " << measured_dir.string() << '\n';
        return exit_code::kValidation;
    }
    std::vector<std::string> unmatched;
    for (const auto& p : measured) {
        if (!fs::exists(sim_dir / p.filename())) unmatched.push_back(p.stem().string());
    }
    if (!unmatched.empty()) {
        log << "error: no simulation file for stem(s):";
        for (const auto& s : unmatched) log << ' ' << s;
        log << '\n';
        return exit_code::kValidation;
    }

    fs::create_directories(output_dir, ec);
    if (ec) {
        log << "error: cannot create " << output_dir.string() << '\n';
        return exit_code::kIo;
    }
    std::vector<std::string> parse_failures;
    std::string table =
        "| stem | shared | simulation only | measurement only | explained fraction |\n"
        "|---|---|---|---|---|\n";
    for (const auto& p : measured) {
        const std::string stem = p.stem().string();
        try {
            const Measurement sim = load_measurement(sim_dir / p.filename());
            const Measurement meas = load_measurement(p);
            const ComparisonReport report =
                compare_measurement(sim.spectrum, meas.spectrum, tol_hz, floor_db);
            json j = to_json(report);
            j["stem"] = stem;
            if (meas.sidecar) j["measurement_metadata"] = *meas.sidecar;
            write_file_atomic(output_dir / (stem + ".comparison.json"), j.dump(2) + "\n");
            table += "| " + stem + " | " + std::to_string(report.shared.size()) + " | " +
                     std::to_string(report.simulation_only.size()) + " | " +
                     std::to_string(report.measurement_only.size()) + " | " +
                     format_number(report.explained_fraction) + " |\n";
        } catch (const ParseError& e) {
            parse_failures.push_back(e.what());
        } catch (const Error& e) {
            if (e.code() == Errc::Io) return report_error(e, log);
            parse_failures.push_back(e.what());
        }
    }
    if (!parse_failures.empty()) {
        log << "error: could not parse:\n";
        for (const auto& f : parse_failures) log << "  " << f << '\n';
        return exit_code::kParse;
    }
    try {
        write_file_atomic(output_dir / "comparison.md", table);
    } catch (const Error& e) {
        return report_error(e, log);
    }
    log << measured.size() << " comparison(s) written to " << output_dir.string() << '\n';
    return exit_code::kOk;
}

json shapes_json() {
    json out = json::array();
    for (Shape s : kAllShapes) {
        json entry;
        entry["name"] = std::string(to_string(s));
        entry["max_size_mm"] = kMaxSizeMm;
        switch (s) {
            case Shape::Point:
                entry["size_meaning"] = "none";
                entry["perimeter"] = "0";
                entry["fixed_size_mm"] = 0.0;
                break;
            case Shape::HorizontalLine:
                entry["size_meaning"] = "length";
                entry["perimeter"] = "2*d";
                break;
            case Shape::Circle:
                entry["size_meaning"] = "diameter";
                entry["perimeter"] = "pi*d";
                break;
            case Shape::RegularTriangle:
                entry["size_meaning"] = "side length";
                entry["perimeter"] = "3*d";
                break;
            case Shape::Square:
                entry["size_meaning"] = "side length";
                entry["perimeter"] = "4*d";
                break;
        }
        out.push_back(entry);
    }
    return out;
}

}  // namespace tacton

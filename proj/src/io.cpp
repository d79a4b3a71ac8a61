#include "tacton/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tacton/error.hpp"

namespace tacton {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Tacton JSON

namespace {

[[noreturn]] void missing(const std::string& field) {
    throw Error(Errc::MissingField, field, "MissingField(" + field + ")");
}

[[noreturn]] void invalid_type(const std::string& field, const char* expected) {
    throw Error(Errc::InvalidType, field,
                "InvalidType(" + field + "): expected " + std::string(expected));
}

double number_field(const json& j, const std::string& key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end()) missing(path);
    if (!it->is_number()) invalid_type(path, "a number");
    return it->get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& path, double fallback) {
    return j.contains(key) ? number_field(j, key, path) : fallback;
}

std::vector<std::pair<double, double>> table_field(const json& j, const std::string& path) {
    const auto it = j.find("table");
    if (it == j.end()) missing(path + ".table");
    if (!it->is_array()) invalid_type(path + ".table", "an array of [x, value] pairs");
    std::vector<std::pair<double, double>> table;
    for (const json& row : *it) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
            invalid_type(path + ".table", "an array of [x, value] pairs");
        }
        table.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return table;
}

std::string kind_field(const json& j, const std::string& path, const char* fallback) {
    if (!j.contains("kind")) return fallback;
    if (!j["kind"].is_string()) invalid_type(path + ".kind", "a string");
    return j["kind"].get<std::string>();
}

FalloffProfile falloff_from_json(const json& j) {
    const std::string path = "model.falloff";
    if (!j.is_object()) invalid_type(path, "an object");
    FalloffProfile p;
    const std::string kind = kind_field(j, path, "gaussian");
    if (kind == "gaussian") {
        p.kind = FalloffProfile::Kind::Gaussian;
    } else if (kind == "raised_cosine") {
        p.kind = FalloffProfile::Kind::RaisedCosine;
    } else if (kind == "tabulated") {
        p.kind = FalloffProfile::Kind::Tabulated;
        p.table = table_field(j, path);
    } else {
        throw Error(Errc::OutOfRange, path + ".kind",
                    "OutOfRange(" + path + ".kind): expected gaussian, raised_cosine or tabulated");
    }
    p.fwhm = number_or(j, "fwhm_mm", path + ".fwhm_mm", p.fwhm);
    p.cutoff_radius = number_or(j, "cutoff_radius_mm", path + ".cutoff_radius_mm", p.cutoff_radius);
    validate(p);
    return p;
}

HeightCurve height_curve_from_json(const json& j) {
    const std::string path = "model.height_curve";
    if (!j.is_object()) invalid_type(path, "an object");
    HeightCurve c;
    const std::string kind = kind_field(j, path, "quadratic");
    if (kind == "quadratic") {
        c.kind = HeightCurve::Kind::Quadratic;
        c.peak_height = number_or(j, "peak_height_mm", path + ".peak_height_mm", c.peak_height);
        c.half_width = number_or(j, "half_width_mm", path + ".half_width_mm", c.half_width);
    } else if (kind == "tabulated") {
        c.kind = HeightCurve::Kind::Tabulated;
        c.table = table_field(j, path);
    } else {
        throw Error(Errc::OutOfRange, path + ".kind",
                    "OutOfRange(" + path + ".kind): expected quadratic or tabulated");
    }
    validate(c);
    return c;
}

json table_to_json(const std::vector<std::pair<double, double>>& table) {
    json out = json::array();
    for (const auto& [x, v] : table) out.push_back({x, v});
    return out;
}

}  // namespace

TactonDocument tacton_from_json(const json& j) {
    if (!j.is_object()) invalid_type("tacton", "a JSON object");
    TactonDocument doc;
    auto& t = doc.tacton.temporal;
    auto& s = doc.tacton.spatial;

    t.amplitude = number_field(j, "amplitude", "amplitude");

    const auto am = j.find("am_frequencies");
    if (am == j.end()) missing("am_frequencies");
    t.am_frequencies.clear();
    if (am->is_number()) {
        t.am_frequencies.push_back(am->get<double>());
    } else if (am->is_array()) {
        for (const json& f : *am) {
            if (!f.is_number()) invalid_type("am_frequencies", "numbers");
            t.am_frequencies.push_back(f.get<double>());
        }
    } else {
        invalid_type("am_frequencies", "an array of 1 or 2 numbers");
    }

    if (const auto w = j.find("superposition_weights"); w != j.end()) {
        if (!w->is_array() || w->size() != 2 || !(*w)[0].is_number() || !(*w)[1].is_number()) {
            invalid_type("superposition_weights", "a pair of numbers");
        }
        t.superposition_weights = {(*w)[0].get<double>(), (*w)[1].get<double>()};
    }
    t.envelope_frequency = number_or(j, "envelope_frequency", "envelope_frequency", 0.0);
    t.total_duration = number_field(j, "total_duration_s", "total_duration_s");

    const auto shape = j.find("shape");
    if (shape == j.end()) missing("shape");
    if (!shape->is_string()) invalid_type("shape", "a string");
    const auto parsed = shape_from_string(shape->get<std::string>());
    if (!parsed) {
        throw Error(Errc::OutOfRange, "shape",
                    "OutOfRange(shape): expected point, horizontal_line, circle, "
                    "regular_triangle or square");
    }
    s.shape = *parsed;
    s.size = number_or(j, "size_mm", "size_mm", 0.0);
    s.drawing_speed = number_or(j, "drawing_speed_mps", "drawing_speed_mps", 0.0);
    s.height = number_or(j, "height_mm", "height_mm", kDefaultHeightMm);
    s.start_phase = number_or(j, "start_phase", "start_phase", 0.0);

    if (const auto m = j.find("model"); m != j.end()) {
        if (!m->is_object()) invalid_type("model", "an object");
        if (m->contains("falloff")) doc.model.falloff = falloff_from_json((*m)["falloff"]);
        if (m->contains("height_curve")) {
            doc.model.height_curve = height_curve_from_json((*m)["height_curve"]);
        }
    }
    return doc;
}

json to_json(const TactonDocument& doc) {
    const auto& t = doc.tacton.temporal;
    const auto& s = doc.tacton.spatial;
    json j;
    j["amplitude"] = t.amplitude;
    j["am_frequencies"] = t.am_frequencies;
    j["superposition_weights"] = {t.superposition_weights[0], t.superposition_weights[1]};
    j["envelope_frequency"] = t.envelope_frequency;
    j["total_duration_s"] = t.total_duration;
    j["shape"] = std::string(to_string(s.shape));
    j["size_mm"] = s.size;
    j["drawing_speed_mps"] = s.drawing_speed;
    j["height_mm"] = s.height;
    if (s.start_phase != 0.0) j["start_phase"] = s.start_phase;

    const StimulationModel defaults;
    if (doc.model != defaults) {
        json model;
        const auto& f = doc.model.falloff;
        json falloff;
        switch (f.kind) {
            case FalloffProfile::Kind::Gaussian: falloff["kind"] = "gaussian"; break;
            case FalloffProfile::Kind::RaisedCosine: falloff["kind"] = "raised_cosine"; break;
            case FalloffProfile::Kind::Tabulated:
                falloff["kind"] = "tabulated";
                falloff["table"] = table_to_json(f.table);
                break;
        }
        falloff["fwhm_mm"] = f.fwhm;
        falloff["cutoff_radius_mm"] = f.cutoff_radius;
        model["falloff"] = falloff;

        const auto& c = doc.model.height_curve;
        json curve;
        if (c.kind == HeightCurve::Kind::Quadratic) {
            curve["kind"] = "quadratic";
            curve["peak_height_mm"] = c.peak_height;
            curve["half_width_mm"] = c.half_width;
        } else {
            curve["kind"] = "tabulated";
            curve["table"] = table_to_json(c.table);
        }
        model["height_curve"] = curve;
        j["model"] = model;
    }
    return j;
}

TactonDocument load_tacton(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Io, path.string(), "cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), 0, e.what());
    }
    return tacton_from_json(j);
}

// ---------------------------------------------------------------------------
// CSV / JSON output

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string waveform_csv(const Waveform& w) {
    std::string out = "t_s,p\n";
    out.reserve(w.samples.size() * 28);
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        out += format_number(w.time_at(i));
        out += ',';
        out += format_number(w.samples[i]);
        out += '\n';
    }
    return out;
}

std::string spectrum_csv(const Spectrum& s) {
    std::string out = "f_hz,magnitude\n";
    out.reserve(s.magnitudes.size() * 28);
    for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
        out += format_number(s.frequencies[k]);
        out += ',';
        out += format_number(s.magnitudes[k]);
        out += '\n';
    }
    return out;
}

std::string point_series_csv(const PointSeries& series) {
    std::string out = "t_s,x_mm,y_mm\n";
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        out += format_number(static_cast<double>(i) / series.sample_rate);
        out += ',';
        out += format_number(series.points[i].x);
        out += ',';
        out += format_number(series.points[i].y);
        out += '\n';
    }
    return out;
}

json to_json(const FieldGrid& grid) {
    return {{"origin_mm", {grid.origin.x, grid.origin.y}},
            {"spacing_mm", grid.spacing},
            {"rows", grid.rows},
            {"cols", grid.cols},
            {"values", grid.values}};
}

namespace {

json peak_json(const Peak& p) {
    return {{"frequency_hz", p.frequency}, {"magnitude", p.magnitude}, {"bin", p.bin}};
}

json peaks_json(const std::vector<Peak>& peaks) {
    json out = json::array();
    for (const Peak& p : peaks) out.push_back(peak_json(p));
    return out;
}

}  // namespace

json to_json(const HarmonicReport& r) {
    json matched = json::array();
    for (const HarmonicMatch& m : r.matched) {
        matched.push_back({{"n", m.harmonic},
                           {"sideband", m.sideband},
                           {"frequency_hz", m.frequency},
                           {"deviation_hz", m.deviation}});
    }
    return {{"classification", std::string(to_string(r.classification))},
            {"base_frequency_hz", r.base_frequency},
            {"tolerance_hz", r.tolerance},
            {"matched", matched},
            {"unmatched_peaks", peaks_json(r.unmatched_peaks)}};
}

json to_json(const ComparisonReport& r) {
    json shared = json::array();
    for (const PeakPair& p : r.shared) {
        shared.push_back({{"simulated", peak_json(p.simulated)}, {"measured", peak_json(p.measured)}});
    }
    return {{"tolerance_hz", r.tolerance},
            {"floor_db", r.floor_db},
            {"explained_fraction", r.explained_fraction},
            {"shared", shared},
            {"simulation_only", peaks_json(r.simulation_only)},
            {"measurement_only", peaks_json(r.measurement_only)},
            {"notched", peaks_json(r.notched)}};
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::Io, path.string(), "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(Errc::Io, path.string(), "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(Errc::Io, path.string(), "rename failed: " + ec.message());
}

// ---------------------------------------------------------------------------
// Measurement files

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    return cells;
}

enum class Layout { TimeSeries, Spectrum };

Layout header_layout(const std::vector<std::string>& h, const std::string& name) {
    if (h.size() != 2) throw ParseError(name, 1, "expected a two-column header");
    const std::string& a = h[0];
    const std::string& b = h[1];
    auto units_error = [&](const std::string& col) {
        return Error(Errc::MismatchedUnits, col,
                     "MismatchedUnits: column '" + col + "' in " + name +
                         "; expected t_s with displacement_um (or p), or f_hz with magnitude");
    };
    if (a == "t_s") {
        if (b == "displacement_um" || b == "p") return Layout::TimeSeries;
        if (b.rfind("displacement_", 0) == 0) throw units_error(b);
    } else if (a == "f_hz") {
        if (b == "magnitude") return Layout::Spectrum;
    } else if (a.rfind("t_", 0) == 0 || a.rfind("f_", 0) == 0) {
        throw units_error(a);
    }
    throw ParseError(name, 1, "unrecognised header '" + a + "," + b + "'");
}

double parse_cell(const std::string& cell, const std::string& name, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size() || !std::isfinite(v)) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError(name, line, "not a number: '" + cell + "'");
    }
}

}  // namespace

Measurement parse_measurement(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::optional<Layout> layout;
    std::vector<double> xs;
    std::vector<double> ys;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        const auto cells = split_row(line);
        if (!layout) {
            layout = header_layout(cells, name);
            continue;
        }
        if (cells.size() != 2) throw ParseError(name, line_no, "expected 2 columns");
        xs.push_back(parse_cell(cells[0], name, line_no));
        ys.push_back(parse_cell(cells[1], name, line_no));
        if (xs.size() > 1 && !(xs.back() > xs[xs.size() - 2])) {
            throw ParseError(name, line_no, "first column must be strictly increasing");
        }
    }
    if (!layout) throw ParseError(name, 1, "empty file");
    if (xs.size() < 2) throw ParseError(name, line_no, "need at least two data rows");

    Measurement m;
    if (*layout == Layout::Spectrum) {
        for (double y : ys) {
            if (y < 0.0) throw ParseError(name, 0, "magnitudes must be non-negative");
        }
        m.spectrum.frequencies = std::move(xs);
        m.spectrum.magnitudes = std::move(ys);
        return m;
    }
    const double span = xs.back() - xs.front();
    const double dt = span / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (std::abs(xs[i] - xs[i - 1] - dt) > 1e-3 * dt) {
            throw ParseError(name, i + 2, "time samples are not uniformly spaced");
        }
    }
    Waveform w{1.0 / dt, std::move(ys), Waveform::Kind::SkinPoint};
    m.spectrum = spectrum(w);
    m.from_time_series = true;
    return m;
}

Measurement load_measurement(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, path.string(), "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    Measurement m = parse_measurement(buf.str(), path.string());

    fs::path sidecar = path;
    sidecar.replace_extension(".json");
    if (fs::exists(sidecar)) {
        std::ifstream s(sidecar);
        try {
            m.sidecar = json::parse(s);
        } catch (const json::parse_error& e) {
            throw ParseError(sidecar.string(), 0, e.what());
        }
    }
    return m;
}

}  // namespace tacton

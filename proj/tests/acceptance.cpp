// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. argv[1] is the tacton_sim executable used for the CLI checks.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tacton/analysis.hpp"
#include "tacton/commands.hpp"
#include "tacton/io.hpp"
#include "tacton/synthesis.hpp"
#include "tacton/trajectory.hpp"

using namespace tacton;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Tacton make(double f_am, Shape shape, double size, double speed, double duration = 1.0) {
    Tacton t;
    t.temporal.amplitude = 1.0;
    t.temporal.am_frequencies = {f_am};
    t.temporal.total_duration = duration;
    t.spatial.shape = shape;
    t.spatial.size = size;
    t.spatial.drawing_speed = speed;
    return t;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("tacton_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Peak tolerance for a spectrum: max(2 bins, 2 Hz).
double harmonic_tolerance(const PeakList& p) { return std::max(2.0 * p.bin_width, 2.0); }

Outcome drawing_frequency_check() {
    Outcome o;
    const double f = drawing_frequency(make(0, Shape::Circle, 20.0, 12.0).spatial);
    o.note("f_d(20 mm, 12 m/s) = " + fmt(f) + " Hz");
    o.require(std::abs(f - 191.0) <= 0.5, "f_d within 191 +- 0.5 Hz");
    for (auto [d, v] : {std::pair{10.0, 6.0}, std::pair{30.0, 18.0}}) {
        const double other = drawing_frequency(make(0, Shape::Circle, d, v).spatial);
        o.require(std::abs(other - f) <= 1e-9, "equal f_d for d=" + fmt(d) + ", v=" + fmt(v));
    }
    return o;
}

Outcome pure_am_check() {
    Outcome o;
    const auto start = Clock::now();
    const PeakList p =
        detect_peaks(spectrum(skin_signal(validate(make(140.0, Shape::Point, 0.0, 0.0)), {0.0, 0.0})), -40.0);
    const double elapsed = seconds_since(start);
    o.note(std::to_string(p.peaks.size()) + " peak(s) above -40 dB in " + fmt(elapsed) + " s");
    o.require(p.peaks.size() == 1, "exactly one non-DC peak");
    if (!p.peaks.empty()) o.require(std::abs(p.peaks[0].frequency - 140.0) <= 1.0, "peak at 140 +- 1 Hz");
    o.require(elapsed < 1.0, "runtime < 1 s");
    return o;
}

Outcome pure_stm_check() {
    Outcome o;
    const auto start = Clock::now();
    std::vector<PeakList> sets;
    for (auto [d, v] : {std::pair{20.0, 12.0}, std::pair{10.0, 6.0}, std::pair{30.0, 18.0}}) {
        const Tacton t = make(0.0, Shape::Circle, d, v);
        const double f_d = drawing_frequency(t.spatial);
        const PeakList p = detect_peaks(spectrum(skin_signal(validate(t), on_trajectory_point(t))), -40.0);
        const double tol = harmonic_tolerance(p);
        std::vector<bool> seen(4, false);
        for (const Peak& peak : p.peaks) {
            const double n = std::round(peak.frequency / f_d);
            const bool on_series = n >= 1.0 && std::abs(peak.frequency - n * f_d) <= tol;
            o.require(on_series, "d=" + fmt(d) + ": peak " + fmt(peak.frequency) + " Hz on n*f_d");
            if (on_series && n <= 3.0) seen[static_cast<std::size_t>(n)] = true;
        }
        for (int n = 1; n <= 3; ++n) {
            o.require(seen[static_cast<std::size_t>(n)], "d=" + fmt(d) + ": harmonic n=" + std::to_string(n));
        }
        std::vector<double> orders;
        for (const Peak& peak : p.peaks) orders.push_back(std::round(peak.frequency / f_d));
        std::sort(orders.begin(), orders.end());
        std::string listed;
        for (double n : orders) listed += (listed.empty() ? "" : ",") + fmt(n);
        o.note("d=" + fmt(d) + ", v=" + fmt(v) + ": " + std::to_string(p.peaks.size()) +
               " peaks at n = {" + listed + "} x f_d");
        sets.push_back(p);
    }
    auto sorted_freqs = [](const PeakList& p) {
        std::vector<double> f;
        for (const Peak& x : p.peaks) f.push_back(x.frequency);
        std::sort(f.begin(), f.end());
        return f;
    };
    const auto ref = sorted_freqs(sets[0]);
    for (std::size_t i = 1; i < sets.size(); ++i) {
        const auto other = sorted_freqs(sets[i]);
        bool same = other.size() == ref.size();
        const double tol = harmonic_tolerance(sets[i]);
        for (std::size_t k = 0; same && k < ref.size(); ++k) same = std::abs(other[k] - ref[k]) <= tol;
        o.require(same, "peak set " + std::to_string(i) + " identical to d=20");
    }
    const double elapsed = seconds_since(start);
    o.note("runtime " + fmt(elapsed) + " s");
    o.require(elapsed < 5.0, "runtime < 5 s");
    return o;
}

Outcome am_stm_check() {
    Outcome o;
    const auto start = Clock::now();
    const Tacton t = make(140.0, Shape::Circle, 20.0, 12.0);
    const double f_d = drawing_frequency(t.spatial);
    const PeakList p = detect_peaks(spectrum(skin_signal(validate(t), on_trajectory_point(t))), -40.0);
    const double elapsed = seconds_since(start);
    const double tol = harmonic_tolerance(p);
    o.require(!p.peaks.empty(), "peaks present");
    if (!p.peaks.empty()) {
        o.note("largest peak " + fmt(p.peaks[0].frequency) + " Hz, " + std::to_string(p.peaks.size()) +
               " peaks above -40 dB");
        o.require(std::abs(p.peaks[0].frequency - 140.0) <= 1.0, "largest peak at 140 +- 1 Hz");
    }
    for (std::size_t i = 1; i < p.peaks.size(); ++i) {
        const double f = p.peaks[i].frequency;
        const double n = std::max(1.0, std::round(f / f_d));
        double best = 1e300;
        for (double m = n - 1.0; m <= n + 1.0; m += 1.0) {
            if (m < 1.0) continue;
            best = std::min({best, std::abs(f - (m * f_d + 140.0)), std::abs(f - std::abs(m * f_d - 140.0))});
        }
        o.require(best <= tol, "peak " + fmt(f) + " Hz on n*f_d +- 140");
    }
    o.require(elapsed < 2.0, "runtime < 2 s");
    return o;
}

Outcome grid_check(const fs::path& dir, std::vector<PaperGridRow>& rows) {
    Outcome o;
    const auto start = Clock::now();
    std::ostringstream log;
    const int code = cmd_paper_grid(dir, {}, log);
    const double elapsed = seconds_since(start);
    o.require(code == exit_code::kOk, "cmd_paper_grid exit code 0");
    std::size_t files = 0;
    if (fs::exists(dir / "tactons")) {
        for (const auto& e : fs::directory_iterator(dir / "tactons")) files += e.path().extension() == ".json";
    }
    o.require(files == 15, "15 Tacton files emitted (found " + std::to_string(files) + ")");
    rows = run_paper_grid(dir);
    o.require(rows.size() == 15, "15 summary rows");
    std::size_t consistent = 0;
    for (const auto& r : rows) {
        const bool ok = r.classified == r.expected && r.classified != Classification::Unclassified;
        consistent += ok;
        o.require(ok, r.stem + " classified " + std::string(to_string(r.classified)) + ", expected " +
                          std::string(to_string(r.expected)));
    }
    o.note(std::to_string(consistent) + "/15 consistent, runtime " + fmt(elapsed) + " s");
    o.require(elapsed < 60.0, "runtime < 60 s");
    return o;
}

Outcome property_check(const std::string& cli) {
    Outcome o;

    // falloff monotone with S(0) = 1
    {
        const FalloffProfile p;
        bool ok = falloff(0.0, p) == 1.0;
        double prev = 1.0;
        for (double d = 0.0; d <= 15.0; d += 0.001) {
            const double v = falloff(d, p);
            ok = ok && v <= prev && v >= 0.0;
            prev = v;
        }
        o.require(ok, "falloff monotone, S(0) = 1");
    }
    // height gain maximal at 200 mm
    {
        const HeightCurve c;
        bool ok = height_gain(200.0, c) == 1.0;
        for (double h = 1.0; h <= 600.0; h += 0.5) ok = ok && height_gain(h, c) <= height_gain(200.0, c);
        o.require(ok, "height gain maximal at 200 mm");
    }
    // central-difference speed within 0.1% of v, and periodicity
    {
        bool speed_ok = true;
        bool period_ok = true;
        for (Shape shape : {Shape::Circle, Shape::RegularTriangle, Shape::Square, Shape::HorizontalLine}) {
            const SpatioTemporalConfig s = make(0.0, shape, 20.0, 8.0).spatial;
            const double period = 1.0 / drawing_frequency(s);
            const double h = 1e-7;
            for (int k = 0; k < 97; ++k) {
                const double t = period * (k + 0.37) / 97.0;
                const Point2D a = position_at(s, t - h);
                const Point2D b = position_at(s, t + h);
                const double speed_mps = distance(a, b) / (2 * h) / 1000.0;
                speed_ok = speed_ok && std::abs(speed_mps - 8.0) <= 8.0 * 1e-3;
                period_ok = period_ok && distance(position_at(s, t), position_at(s, t + 3 * period)) < 1e-9;
            }
        }
        o.require(speed_ok, "trajectory speed within 0.1% of v");
        o.require(period_ok, "trajectory periodic in 1 / f_d");
    }
    // amplitude linearity of the skin signal
    {
        auto gen = oracle::rng(101);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        bool ok = true;
        for (int trial = 0; trial < 5; ++trial) {
            Tacton one = make(80.0, Shape::Circle, 20.0, 12.0, 0.25);
            Tacton scaled = one;
            scaled.temporal.amplitude = unit(gen);
            const Point2D pt{unit(gen) * 12, unit(gen) * 4};
            const Waveform w1 = skin_signal(validate(one), pt);
            const Waveform wa = skin_signal(validate(scaled), pt);
            for (std::size_t i = 0; i < w1.samples.size(); ++i) {
                ok = ok && std::abs(wa.samples[i] - scaled.temporal.amplitude * w1.samples[i]) <= 1e-15;
            }
        }
        o.require(ok, "skin signal linear in amplitude");
    }
    // Parseval within 1e-6 relative
    {
        const Waveform w = skin_signal(validate(make(140.0, Shape::Circle, 20.0, 12.0)), {10.0, 0.0});
        const Spectrum s = spectrum(w);
        const std::size_t n = w.samples.size();
        double time_energy = 0.0;
        for (double v : w.samples) time_energy += v * v;
        time_energy /= static_cast<double>(n);
        double freq_energy = 0.0;
        for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
            const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
            freq_energy += s.magnitudes[k] * s.magnitudes[k] / (unpaired ? 1.0 : 2.0);
        }
        o.require(std::abs(freq_energy - time_energy) <= 1e-6 * time_energy, "Parseval within 1e-6");
    }
    // circle rotational symmetry: f_d = 200 Hz divides the window and the sample rate
    {
        const double speed = 200.0 * oracle::kPi * 20.0 / 1000.0;
        const auto t = validate(make(0.0, Shape::Circle, 20.0, speed));
        const Spectrum a = spectrum(skin_signal(t, {10.0, 0.0}));
        const Spectrum b = spectrum(skin_signal(t, {0.0, 10.0}));
        const Spectrum c = spectrum(skin_signal(t, {-10.0, 0.0}));
        double worst = 0.0;
        for (std::size_t k = 0; k < a.magnitudes.size(); ++k) {
            worst = std::max({worst, std::abs(a.magnitudes[k] - b.magnitudes[k]),
                              std::abs(a.magnitudes[k] - c.magnitudes[k])});
        }
        o.note("rotational symmetry max deviation " + fmt(worst));
        o.require(worst <= 1e-9, "circle spectra equal under rotation within 1e-9");
    }
    // CLI determinism
    {
        const fs::path dir = scratch("cli");
        const TactonDocument doc{make(140.0, Shape::Circle, 20.0, 12.0, 0.5), {}};
        write_file_atomic(dir / "am_stm.json", to_json(doc).dump(2));
        auto run = [&](const std::string& out) {
            const std::string cmd = "\"" + cli + "\" simulate --tacton \"" + (dir / "am_stm.json").string() +
                                    "\" --points \"0,0;10,0;20,0\" --grid 2 --out \"" + (dir / out).string() +
                                    "\" 2>/dev/null";
            return std::system(cmd.c_str());
        };
        bool ok = run("a") == 0 && run("b") == 0;
        std::size_t files = 0;
        if (ok) {
            for (const auto& e : fs::directory_iterator(dir / "a")) {
                ++files;
                ok = ok && slurp(e.path()) == slurp(dir / "b" / e.path().filename());
            }
        }
        o.require(ok && files == 7, "CLI reruns byte-identical (" + std::to_string(files) + " files)");
        fs::remove_all(dir);
    }
    return o;
}

Outcome round_trip_check(const fs::path& grid_dir, const std::vector<PaperGridRow>& rows) {
    Outcome o;
    std::size_t perfect = 0;
    for (const auto& r : rows) {
        const fs::path exported = grid_dir / "sim" / (r.stem + ".csv");
        const Measurement sim = load_measurement(exported);
        const auto entries = paper_grid_tactons();
        const auto it = std::find_if(entries.begin(), entries.end(),
                                     [&](const PaperGridEntry& e) { return e.stem == r.stem; });
        const Tacton& t = it->doc.tacton;
        const Spectrum direct = spectrum(skin_signal(validate(t), on_trajectory_point(t)));
        const ComparisonReport report = compare_measurement(direct, sim.spectrum);
        perfect += report.explained_fraction == 1.0;
        o.require(report.explained_fraction == 1.0,
                  r.stem + " explained fraction " + fmt(report.explained_fraction));
    }
    o.require(rows.size() == 15, "15 grid Tactons compared");
    o.note(std::to_string(perfect) + "/" + std::to_string(rows.size()) + " with explained fraction 1.0");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path to tacton_sim>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path grid_dir = scratch("grid");
    std::vector<PaperGridRow> rows;

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"drawing frequency of circle 20 mm at 12 m/s", drawing_frequency_check},
        {"PureAM spectral purity", pure_am_check},
        {"PureSTM harmonic series", pure_stm_check},
        {"AM+STM peak structure", am_stm_check},
        {"15-Tacton grid classification", [&] { return grid_check(grid_dir, rows); }},
        {"property suites", [&] { return property_check(cli); }},
        {"measurement comparison round trip", [&] { return round_trip_check(grid_dir, rows); }},
    };

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << '\n';
        for (const auto& n : o.notes) std::cout << "      " << n << '\n';
        failures += o.pass ? 0 : 1;
    }
    fs::remove_all(grid_dir);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
              << '\n';
    return failures == 0 ? 0 : 1;
}

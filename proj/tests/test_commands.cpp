#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "tacton/commands.hpp"
#include "tacton/error.hpp"

using namespace tacton;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("tacton_cmd_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t line_count(const fs::path& p) {
    const std::string text = slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

fs::path write_tacton(const fs::path& dir, const std::string& stem, const std::string& body) {
    const fs::path p = dir / (stem + ".json");
    std::ofstream(p) << body;
    return p;
}

const char* kCircle = R"({"amplitude": 1, "am_frequencies": [140], "total_duration_s": 0.25,
  "shape": "circle", "size_mm": 20, "drawing_speed_mps": 12})";

}  // namespace

TEST_CASE("parse_points") {
    const auto pts = parse_points("0,0;5,0; 10.5,-2");
    REQUIRE(pts.size() == 3);
    CHECK(pts[2] == Point2D{10.5, -2.0});
    CHECK_THROWS_AS(parse_points("1,2;3"), Error);
    CHECK_THROWS_AS(parse_points("a,b"), Error);
    CHECK(standard_points().size() == 5);
    CHECK(standard_points()[4] == Point2D{20.0, 0.0});
}

TEST_CASE("simulate writes one waveform and spectrum per point") {
    const fs::path dir = scratch_dir("simulate");
    RunManifest m;
    m.tactons = {write_tacton(dir, "circle", kCircle)};
    m.output_dir = dir / "out";
    m.skin_points = standard_points();
    m.grid_spacing = 2.0;
    std::ostringstream log;
    REQUIRE(cmd_simulate(m, log) == exit_code::kOk);

    std::size_t csvs = 0;
    for (const auto& e : fs::directory_iterator(m.output_dir)) csvs += e.path().extension() == ".csv";
    CHECK(csvs == 10);
    for (int i = 0; i < 5; ++i) {
        const fs::path w = m.output_dir / ("circle_pt" + std::to_string(i) + "_waveform.csv");
        REQUIRE(fs::exists(w));
        CHECK(line_count(w) == 5001);  // header + 0.25 s at 20 kHz
        CHECK(slurp(w).rfind("t_s,p\n", 0) == 0);
    }
    const json grid = json::parse(slurp(m.output_dir / "circle_grid.json"));
    CHECK(grid["values"].size() == grid["rows"].get<std::size_t>() * grid["cols"].get<std::size_t>());

    SUBCASE("reruns are byte-identical") {
        RunManifest again = m;
        again.output_dir = dir / "again";
        REQUIRE(cmd_simulate(again, log) == exit_code::kOk);
        for (const auto& e : fs::directory_iterator(m.output_dir)) {
            CHECK(slurp(e.path()) == slurp(again.output_dir / e.path().filename()));
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("simulate rejects invalid input before writing") {
    const fs::path dir = scratch_dir("reject");
    std::ostringstream log;
    RunManifest m;
    m.output_dir = dir / "out";
    m.skin_points = standard_points();

    SUBCASE("degenerate Tacton") {
        m.tactons = {write_tacton(dir, "ok", kCircle),
                     write_tacton(dir, "still", R"({"amplitude": 1, "am_frequencies": [0],
                        "total_duration_s": 1, "shape": "point"})")};
        CHECK(cmd_simulate(m, log) == exit_code::kValidation);
        CHECK_FALSE(fs::exists(m.output_dir / "ok_pt0_waveform.csv"));
        CHECK(log.str().find("DegenerateNoStimulation") != std::string::npos);
    }
    SUBCASE("out of range field") {
        m.tactons = {write_tacton(dir, "loud", R"({"amplitude": 1.5, "am_frequencies": [140],
                        "total_duration_s": 1, "shape": "point"})")};
        CHECK(cmd_simulate(m, log) == exit_code::kValidation);
        CHECK(log.str().find("amplitude") != std::string::npos);
    }
    SUBCASE("malformed JSON") {
        m.tactons = {write_tacton(dir, "broken", "{ nope")};
        CHECK(cmd_simulate(m, log) == exit_code::kValidation);
    }
    SUBCASE("missing file") {
        m.tactons = {dir / "absent.json"};
        CHECK(cmd_simulate(m, log) == exit_code::kIo);
    }
    fs::remove_all(dir);
}

TEST_CASE("15-Tacton measurement grid") {
    const auto entries = paper_grid_tactons();
    REQUIRE(entries.size() == 15);
    std::set<std::string> stems;
    for (const auto& e : entries) {
        stems.insert(e.stem);
        CHECK_NOTHROW(validate(e.doc.tacton));
    }
    CHECK(stems.size() == 15);
    CHECK(stems.count("fam140_d20_v12") == 1);
    CHECK(stems.count("fam0_d0_v0") == 0);

    const fs::path dir = scratch_dir("grid");
    const auto rows = run_paper_grid(dir);
    REQUIRE(rows.size() == 15);
    for (const auto& r : rows) {
        CHECK_MESSAGE(r.classified == r.expected, r.stem);
        CHECK(fs::exists(dir / "tactons" / (r.stem + ".json")));
        CHECK(fs::exists(dir / "sim" / (r.stem + ".csv")));
        CHECK(r.per_point.size() == 5);
    }
    CHECK(fs::exists(dir / "summary.csv"));
    CHECK(line_count(dir / "summary.csv") == 16);
    CHECK(fs::exists(dir / "summary.md"));
    fs::remove_all(dir);
}

TEST_CASE("compare") {
    const fs::path dir = scratch_dir("compare");
    const fs::path sim = dir / "sim";
    const fs::path meas = dir / "meas";
    fs::create_directories(sim);
    fs::create_directories(meas);
    std::ostringstream log;

    SUBCASE("empty measurement directory") {
        CHECK(cmd_compare(sim, meas, dir / "out", 2.0, -40.0, log) == exit_code::kValidation);
    }
    SUBCASE("unmatched stem") {
        std::ofstream(meas / "orphan.csv") << "f_hz,magnitude\n0,0\n1,1\n";
        CHECK(cmd_compare(sim, meas, dir / "out", 2.0, -40.0, log) == exit_code::kValidation);
        CHECK(log.str().find("orphan") != std::string::npos);
    }
    SUBCASE("unparseable measurement") {
        std::ofstream(sim / "a.csv") << "f_hz,magnitude\n0,0\n1,1\n2,0\n";
        std::ofstream(meas / "a.csv") << "f_hz,magnitude\n0,0\n1,x\n";
        CHECK(cmd_compare(sim, meas, dir / "out", 2.0, -40.0, log) == exit_code::kParse);
        CHECK(log.str().find("a.csv:3") != std::string::npos);
    }
    SUBCASE("simulated spectra compared with themselves") {
        RunManifest m;
        m.tactons = {write_tacton(dir, "fam140_d20_v12", kCircle)};
        m.output_dir = sim;
        m.skin_points = {{10.0, 0.0}};
        REQUIRE(cmd_simulate(m, log) == exit_code::kOk);
        fs::copy_file(sim / "fam140_d20_v12_pt0_spectrum.csv", meas / "fam140_d20_v12_pt0_spectrum.csv");
        std::ofstream(meas / "fam140_d20_v12_pt0_spectrum.json") << R"({"notes": "copy"})";
        REQUIRE(cmd_compare(sim, meas, dir / "out", 2.0, -40.0, log) == exit_code::kOk);
        const json j = json::parse(slurp(dir / "out" / "fam140_d20_v12_pt0_spectrum.comparison.json"));
        CHECK(j["explained_fraction"] == 1.0);
        CHECK(j["measurement_metadata"]["notes"] == "copy");
        CHECK(fs::exists(dir / "out" / "comparison.md"));
    }
    fs::remove_all(dir);
}

TEST_CASE("shapes metadata") {
    const json s = shapes_json();
    REQUIRE(s.size() == 5);
    for (const auto& e : s) CHECK(e["max_size_mm"] == 60.0);
    CHECK(s[0]["name"] == "point");
    CHECK(s[0]["fixed_size_mm"] == 0.0);
}

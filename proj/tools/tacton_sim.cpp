// tacton_sim: batch front-end for the mid-air ultrasound Tacton simulator.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "tacton/commands.hpp"
#include "tacton/error.hpp"
#include "tacton/service.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    tacton::configure_threads_from_env();

    CLI::App app{"Simulate mid-air ultrasound Tactons at points on the skin"};
    app.require_subcommand(1);

    tacton::RunManifest manifest;
    std::string points_text;
    std::string out_dir = "out";
    double grid = 0.0;
    auto* simulate = app.add_subcommand("simulate", "Simulate Tacton JSON files at skin points");
    std::vector<std::string> tacton_paths;
    simulate->add_option("--tacton", tacton_paths, "Tacton JSON file(s)")->required();
    simulate->add_option("--points", points_text, "Skin points in mm, \"x,y;x,y\"");
    simulate->add_option("--rate", manifest.sample_rate, "Skin signal sample rate, Hz");
    simulate->add_option("--grid", grid, "Field-grid spacing in mm (0 = no grid)");
    simulate->add_option("--out", out_dir, "Output directory");

    tacton::PaperGridOptions grid_options;
    std::string grid_out = "paper_grid";
    double grid_cmd_spacing = 0.0;
    auto* grid_cmd = app.add_subcommand("paper-grid", "Simulate the 15-Tacton measurement grid");
    grid_cmd->add_option("--out", grid_out, "Output directory");
    grid_cmd->add_option("--rate", grid_options.sample_rate, "Skin signal sample rate, Hz");
    grid_cmd->add_option("--grid", grid_cmd_spacing, "Also write field grids at this spacing, mm");
    grid_cmd->add_option("--floor-db", grid_options.floor_db, "Peak floor relative to the maximum, dB");
    grid_cmd->add_option("--tol-hz", grid_options.tol_hz, "Harmonic matching tolerance, Hz");

    std::string sim_dir;
    std::string measured_dir;
    std::string compare_out = "comparison";
    double compare_floor = tacton::kDefaultFloorDb;
    double compare_tol = tacton::kDefaultTolHz;
    auto* compare = app.add_subcommand("compare", "Compare simulated spectra with measurements");
    compare->add_option("sim_dir", sim_dir, "Directory of simulated CSVs")->required();
    compare->add_option("measured_dir", measured_dir, "Directory of measurement CSVs")->required();
    compare->add_option("--out", compare_out, "Report directory");
    compare->add_option("--floor-db", compare_floor, "Peak floor relative to the maximum, dB");
    compare->add_option("--tol-hz", compare_tol, "Peak matching tolerance, Hz");

    auto* shapes = app.add_subcommand("shapes", "List trajectory shapes");

    tacton::ServiceOptions service_options;
    if (const char* env = std::getenv("TACTON_SIM_PORT")) service_options.port = std::atoi(env);
    auto* serve = app.add_subcommand("serve", "Start the HTTP service");
    serve->add_option("--port", service_options.port, "Listen port (env TACTON_SIM_PORT)");
    serve->add_option("--host", service_options.host, "Listen address");
    serve->add_option("--workers", service_options.workers, "Worker threads");
    serve->add_option("--cors-origin", service_options.cors_origin, "Allowed CORS origin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tacton::exit_code::kValidation;
    }

    if (*simulate) {
        for (const auto& p : tacton_paths) manifest.tactons.emplace_back(p);
        manifest.output_dir = out_dir;
        if (grid > 0.0) manifest.grid_spacing = grid;
        try {
            manifest.skin_points = tacton::parse_points(points_text);
        } catch (const tacton::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return tacton::exit_code::kValidation;
        }
        return tacton::cmd_simulate(manifest, std::cerr);
    }
    if (*grid_cmd) {
        if (grid_cmd_spacing > 0.0) grid_options.grid_spacing = grid_cmd_spacing;
        return tacton::cmd_paper_grid(grid_out, grid_options, std::cerr);
    }
    if (*compare) {
        return tacton::cmd_compare(sim_dir, measured_dir, compare_out, compare_tol, compare_floor,
                                   std::cerr);
    }
    if (*shapes) {
        std::cout << tacton::shapes_json().dump(2) << '\n';
        return tacton::exit_code::kOk;
    }
    if (*serve) {
        tacton::Service service(service_options);
        std::cerr << "listening on " << service_options.host << ':' << service_options.port << '\n';
        if (!service.listen()) {
            std::cerr << "error: cannot listen on port " << service_options.port << '\n';
            return tacton::exit_code::kIo;
        }
    }
    return tacton::exit_code::kOk;
}

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "tacton/io.hpp"

namespace httplib {
class Server;
}

namespace tacton {

inline constexpr std::size_t kMaxDisplayPoints = 20000;

struct HttpResult {
    int status = 200;
    json body;
};

/// Min/max binning for display: at most max_points samples, emitted as
/// (min, max) pairs in time order for each bin.
struct DecimatedWaveform {
    std::vector<double> t;
    std::vector<double> p;
};
DecimatedWaveform decimate_minmax(const Waveform& w, std::size_t max_points = kMaxDisplayPoints);

/// POST /api/v1/simulate body -> status + JSON. Pure and stateless.
HttpResult handle_simulate(const std::string& body);

struct ServiceOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t workers = 4;
    std::string cors_origin = "*";
};

/// Thin HTTP facade over the engine. Routes:
///   GET  /api/v1/health
///   GET  /api/v1/shapes
///   POST /api/v1/simulate
class Service {
public:
    explicit Service(ServiceOptions options);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds and serves until stop(); returns false if the port cannot be bound.
    bool listen();
    /// Binds to an OS-chosen port; returns it, or -1 on failure. Call before serve().
    int bind_any_port();
    bool serve();
    void stop();

private:
    ServiceOptions options_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace tacton

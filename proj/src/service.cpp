#include "tacton/service.hpp"

#include <httplib.h>

#include <algorithm>

#include "tacton/analysis.hpp"
#include "tacton/commands.hpp"
#include "tacton/error.hpp"

namespace tacton {

DecimatedWaveform decimate_minmax(const Waveform& w, std::size_t max_points) {
    DecimatedWaveform out;
    const std::size_t n = w.samples.size();
    if (n <= max_points) {
        out.p = w.samples;
        out.t.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.t.push_back(w.time_at(i));
        return out;
    }
    const std::size_t bins = std::max<std::size_t>(1, max_points / 2);
    out.t.reserve(2 * bins);
    out.p.reserve(2 * bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const std::size_t lo = b * n / bins;
        const std::size_t hi = (b + 1) * n / bins;
        const auto first = w.samples.begin() + static_cast<std::ptrdiff_t>(lo);
        const auto last = w.samples.begin() + static_cast<std::ptrdiff_t>(hi);
        const auto [mn, mx] = std::minmax_element(first, last);
        const auto i_min = static_cast<std::size_t>(mn - w.samples.begin());
        const auto i_max = static_cast<std::size_t>(mx - w.samples.begin());
        for (std::size_t i : {std::min(i_min, i_max), std::max(i_min, i_max)}) {
            out.t.push_back(w.time_at(i));
            out.p.push_back(w.samples[i]);
        }
    }
    return out;
}

namespace {

HttpResult error_result(int status, const Error& e) {
    json body{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (!e.field().empty()) body["field"] = e.field();
    return {status, body};
}

Point2D skin_point_from(const json& req) {
    const auto it = req.find("skin_point");
    if (it == req.end()) throw Error(Errc::MissingField, "skin_point", "MissingField(skin_point)");
    if (it->is_array() && it->size() == 2 && (*it)[0].is_number() && (*it)[1].is_number()) {
        return {(*it)[0].get<double>(), (*it)[1].get<double>()};
    }
    if (it->is_object() && it->contains("x") && it->contains("y") && (*it)["x"].is_number() &&
        (*it)["y"].is_number()) {
        return {(*it)["x"].get<double>(), (*it)["y"].get<double>()};
    }
    throw Error(Errc::InvalidType, "skin_point", "InvalidType(skin_point): expected [x, y] in mm");
}

double optional_number(const json& req, const char* key, double fallback) {
    const auto it = req.find(key);
    if (it == req.end() || it->is_null()) return fallback;
    if (!it->is_number()) {
        throw Error(Errc::InvalidType, key, std::string("InvalidType(") + key + "): expected a number");
    }
    return it->get<double>();
}

json simulate_response(const json& req) {
    if (!req.is_object()) throw Error(Errc::InvalidType, "body", "InvalidType(body): expected an object");
    const auto tacton_it = req.find("tacton");
    if (tacton_it == req.end()) throw Error(Errc::MissingField, "tacton", "MissingField(tacton)");
    const TactonDocument doc = tacton_from_json(*tacton_it);
    const ValidatedTacton tacton = validate(doc.tacton);
    const Point2D point = skin_point_from(req);
    const double rate = optional_number(req, "sample_rate", kDefaultSkinRate);
    bool include_grid = false;
    if (const auto g = req.find("include_grid"); g != req.end()) {
        if (!g->is_boolean()) {
            throw Error(Errc::InvalidType, "include_grid", "InvalidType(include_grid): expected a boolean");
        }
        include_grid = g->get<bool>();
    }

    const Waveform command = command_signal(tacton);
    const Waveform skin = skin_signal(tacton, point, rate, doc.model);
    const Spectrum spec = spectrum(skin);
    const DecimatedWaveform shown = decimate_minmax(command);

    json peaks = json::array();
    for (const Peak& p : detect_peaks(spec).peaks) {
        peaks.push_back({{"frequency_hz", p.frequency}, {"magnitude", p.magnitude}});
    }

    const auto& spatial = tacton.spatial();
    json body;
    body["skin_point_mm"] = {point.x, point.y};
    body["command_waveform"] = {{"sample_rate_hz", command.sample_rate},
                                {"decimation", shown.p.size() < command.samples.size() ? "minmax" : "none"},
                                {"t_s", shown.t},
                                {"p", shown.p}};
    body["skin_waveform"] = {{"sample_rate_hz", skin.sample_rate}, {"p", skin.samples}};
    body["spectrum"] = {{"bin_hz", spec.bin_width()},
                        {"f_hz", spec.frequencies},
                        {"magnitude", spec.magnitudes},
                        {"peaks", peaks}};
    body["derived"] = {{"drawing_frequency_hz", drawing_frequency_or_zero(spatial)},
                       {"perimeter_mm", perimeter(spatial.shape, spatial.size)},
                       {"height_gain", height_gain(spatial.height, doc.model.height_curve)},
                       {"influence_radius_mm", support_radius(doc.model.falloff)}};
    if (include_grid) {
        const double spacing = optional_number(req, "grid_spacing", 1.0);
        body["grid"] = to_json(field_grid(tacton, spacing, rate, doc.model));
    }
    return body;
}

}  // namespace

HttpResult handle_simulate(const std::string& body) {
    try {
        return {200, simulate_response(json::parse(body))};
    } catch (const json::parse_error& e) {
        return {400, {{"error", "ParseError"}, {"message", e.what()}}};
    } catch (const Error& e) {
        return error_result(e.code() == Errc::DegenerateNoStimulation ? 422 : 400, e);
    } catch (const std::exception& e) {
        return {500, {{"error", "Internal"}, {"message", e.what()}}};
    }
}

Service::Service(ServiceOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
    const std::size_t workers = std::max<std::size_t>(1, options_.workers);
    server_->new_task_queue = [workers] { return new httplib::ThreadPool(workers); };

    const std::string origin = options_.cors_origin;
    server_->set_default_headers({{"Access-Control-Allow-Origin", origin},
                                  {"Access-Control-Allow-Headers", "Content-Type"},
                                  {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server_->Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
    });
    server_->Get("/api/v1/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(json{{"status", "ok"}}.dump(), "application/json");
    });
    server_->Get("/api/v1/shapes", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(shapes_json().dump(), "application/json");
    });
    server_->Post("/api/v1/simulate", [](const httplib::Request& req, httplib::Response& res) {
        const HttpResult r = handle_simulate(req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    });
}

Service::~Service() { stop(); }

bool Service::listen() { return server_->listen(options_.host, options_.port); }

int Service::bind_any_port() { return server_->bind_to_any_port(options_.host); }

bool Service::serve() { return server_->listen_after_bind(); }

void Service::stop() {
    if (server_) server_->stop();
}

}  // namespace tacton

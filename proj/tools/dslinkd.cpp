// Service runner: hosts either the central trio (registry-backed verifier,
// link resolver, correlation store) or a single data center, from a JSON
// config.
//
//   dslinkd core --config core.json
//   dslinkd center --config center.json
//
// Core config keys: centers ([{id, base_url}]), refresh_interval_s,
// staleness_horizon_s, remote_timeout_ms, batch_cap, cache_ttl_s,
// stale_serve, host, verifier_port, resolver_port, correlations_port,
// resolver_base_url (defaults to http://<host>:<resolver_port>),
// correlation_log.
//
// Center config keys: id, name, host, port, inventory (TSV file),
// extra_facilities.
#include <csignal>
#include <fstream>
#include <iostream>
#include <semaphore>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "dslink/center_service.hpp"
#include "dslink/federation.hpp"

namespace {

std::binary_semaphore g_shutdown{0};

void handle_signal(int) {
    g_shutdown.release();
}

bool load_json(const std::string& path, nlohmann::json& out, std::string& error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        error = "cannot read " + path;
        return false;
    }
    try {
        in >> out;
    } catch (const nlohmann::json::exception& e) {
        error = e.what();
        return false;
    }
    return true;
}

int run_core(const nlohmann::json& config) {
    const auto clock = std::make_shared<dslink::SystemClock>();
    const std::string host = config.value("host", std::string("0.0.0.0"));

    std::vector<dslink::CenterSource> sources;
    for (const auto& entry : config.value("centers", nlohmann::json::array())) {
        sources.push_back({entry.at("id").get<std::string>(), entry.at("base_url").get<std::string>()});
    }
    if (sources.empty()) {
        std::cerr << "error: core config lists no centers\n";
        return 2;
    }

    dslink::RegistryConfig registry_config;
    registry_config.refresh_interval = dslink::Seconds(config.value("refresh_interval_s", 6 * 3600));
    registry_config.staleness_horizon = dslink::Seconds(config.value("staleness_horizon_s", 7 * 24 * 3600));
    registry_config.fetch_timeout_ms = config.value("remote_timeout_ms", 5000);
    auto registry = std::make_shared<dslink::ProfileRegistry>(sources, registry_config, clock);

    dslink::ResolverConfig resolver_config;
    resolver_config.cache_ttl_s = config.value("cache_ttl_s", 3600);
    resolver_config.stale_serve = config.value("stale_serve", true);
    resolver_config.remote_timeout_ms = config.value("remote_timeout_ms", 5000);
    auto resolver = std::make_shared<dslink::LinkResolver>(registry, resolver_config, clock);

    const int resolver_port = config.value("resolver_port", 8642);
    dslink::VerifierConfig verifier_config;
    verifier_config.resolver_base_url =
        config.value("resolver_base_url", "http://" + host + ":" + std::to_string(resolver_port));
    verifier_config.remote_timeout_ms = config.value("remote_timeout_ms", 5000);
    verifier_config.batch_cap = config.value("batch_cap", std::size_t{1000});
    auto verifier = std::make_shared<dslink::MasterVerifier>(registry, verifier_config);

    auto correlations = std::make_shared<dslink::CorrelationStore>(clock);
    if (config.contains("correlation_log")) {
        std::string error;
        if (!correlations->attach_log(config.at("correlation_log").get<std::string>(), &error)) {
            std::cerr << "error: " << error << "\n";
            return 2;
        }
    }

    dslink::HttpService resolver_http(host);
    dslink::register_resolver_routes(resolver_http.server(), resolver);
    resolver_http.start(resolver_port);

    dslink::HttpService verifier_http(host);
    dslink::register_verifier_routes(verifier_http.server(), verifier);
    verifier_http.start(config.value("verifier_port", 8641));

    dslink::HttpService correlation_http(host);
    dslink::register_correlation_routes(correlation_http.server(), correlations);
    correlation_http.start(config.value("correlations_port", 8643));

    const dslink::RefreshReport report = registry->refresh();
    std::cout << "registry: version " << report.version << ", " << report.centers_live << " live centers\n";
    for (const dslink::RefreshIssue& issue : report.errors) {
        std::cout << "registry: " << issue.center_id << ": " << issue.message << "\n";
    }
    registry->start_auto_refresh();

    std::cout << "verifier:     " << verifier_http.base_url() << "/verify\n"
              << "resolver:     " << resolver_http.base_url() << "/link\n"
              << "correlations: " << correlation_http.base_url() << "/correlations\n";

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    g_shutdown.acquire();

    registry->stop_auto_refresh();
    correlation_http.stop();
    verifier_http.stop();
    resolver_http.stop();
    return 0;
}

int run_center(const nlohmann::json& config) {
    const auto clock = std::make_shared<dslink::SystemClock>();

    dslink::CenterConfig center_config;
    center_config.center_id = config.at("id").get<std::string>();
    center_config.display_name = config.value("name", center_config.center_id);
    for (const auto& facility : config.value("extra_facilities", nlohmann::json::array())) {
        center_config.extra_facilities.push_back(facility.get<std::string>());
    }

    dslink::DataCenterService center(center_config, clock);
    center.configure_bind(config.value("host", std::string("0.0.0.0")), config.value("port", 8650));

    if (config.contains("inventory")) {
        const std::string path = config.at("inventory").get<std::string>();
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read inventory " << path << "\n";
            return 2;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        std::vector<std::string> errors;
        const std::size_t loaded = center.inventory().load_tsv(buffer.str(), &errors);
        for (const std::string& error : errors) std::cerr << "inventory: " << error << "\n";
        std::cout << "inventory: " << loaded << " records\n";
    }

    center.start();
    std::cout << "center " << center_config.center_id << ": " << center.base_url()
              << std::string(dslink::kProfileWellKnownPath) << "\n";

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    g_shutdown.acquire();
    center.stop();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dataset-linking services"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* core = app.add_subcommand("core", "Run verifier, resolver and correlation store");
    core->add_option("--config", config_path, "JSON config file")->required();
    CLI::App* center = app.add_subcommand("center", "Run a data center");
    center->add_option("--config", config_path, "JSON config file")->required();

    CLI11_PARSE(app, argc, argv);

    nlohmann::json config;
    std::string error;
    if (!load_json(config_path, config, error)) {
        std::cerr << "error: " << error << "\n";
        return 2;
    }
    try {
        return core->parsed() ? run_core(config) : run_center(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

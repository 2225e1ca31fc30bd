// Loopback/bindable HTTP hosting for the central services plus the route
// tables that put MasterVerifier, LinkResolver and CorrelationStore on the
// wire.
#pragma once

#include <memory>
#include <string>
#include <thread>

#include "dslink/correlation.hpp"
#include "dslink/resolver.hpp"
#include "dslink/verifier.hpp"

namespace httplib {
class Server;
}

namespace dslink {

// Owns an httplib server and its listen thread.  Routes are registered on
// server() before start().
class HttpService {
public:
    explicit HttpService(std::string host = "127.0.0.1");
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    httplib::Server& server() { return *server_; }

    // Binds an ephemeral port unless one was fixed with start(port).
    void start(int port = 0);
    void stop();
    bool running() const;

    int port() const { return port_; }
    std::string base_url() const;

private:
    std::string host_;
    std::unique_ptr<httplib::Server> server_;
    std::thread listen_thread_;
    int port_ = 0;
};

// GET /verify?id=...   -> <result id status link?/>
// POST /verify         -> <results>...</results>, newline-separated body
void register_verifier_routes(httplib::Server& server, std::shared_ptr<const MasterVerifier> verifier);

// GET /link?id=...     -> 302 Location / 400 / 404 / 503 (+X-Resolver-Stale)
void register_resolver_routes(httplib::Server& server, std::shared_ptr<LinkResolver> resolver);

// PUT /feed?source=..., GET /correlations, GET /article, GET /dataset
void register_correlation_routes(httplib::Server& server, std::shared_ptr<CorrelationStore> store);

std::string render_result_xml(const VerificationResult& result);
std::string render_results_xml(const std::vector<VerificationResult>& results);
std::string render_ingest_report_xml(const IngestReport& report);

}  // namespace dslink

#include "dslink/http_service.hpp"

#include <stdexcept>

#include <httplib.h>

#include "dslink/xml.hpp"

namespace dslink {
namespace {

std::string error_xml(std::string_view reason) {
    return "<error reason=\"" + xml::escape_attribute(reason) + "\"/>\n";
}

std::vector<std::string> split_body_lines(const std::string& body) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < body.size()) {
        auto end = body.find('\n', start);
        if (end == std::string::npos) end = body.size();
        std::string line = body.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(std::move(line));
        start = end + 1;
    }
    return out;
}

}  // namespace

HttpService::HttpService(std::string host) : host_(std::move(host)) {
    server_ = std::make_unique<httplib::Server>();
}

HttpService::~HttpService() {
    stop();
}

void HttpService::start(int port) {
    if (running()) return;
    if (port_ == 0 && port == 0) {
        port_ = server_->bind_to_any_port(host_);
        if (port_ <= 0) throw std::runtime_error("bind failed on " + host_);
        listen_thread_ = std::thread([this] { server_->listen_after_bind(); });
    } else {
        if (port_ == 0) port_ = port;
        const int bound = port_;
        listen_thread_ = std::thread([this, bound] { server_->listen(host_, bound); });
    }
    server_->wait_until_ready();
}

void HttpService::stop() {
    if (server_) server_->stop();
    if (listen_thread_.joinable()) listen_thread_.join();
}

bool HttpService::running() const {
    return server_ && server_->is_running();
}

std::string HttpService::base_url() const {
    return "http://" + host_ + ":" + std::to_string(port_);
}

std::string render_result_xml(const VerificationResult& result) {
    std::string out = "<result id=\"" + xml::escape_attribute(result.identifier) + "\" status=\"" +
                      to_string(result.status) + "\"";
    if (result.status == VerifyStatus::Valid) {
        out += " link=\"" + xml::escape_attribute(result.permanent_link) + "\"";
    }
    if (!result.detail.empty()) {
        out += " detail=\"" + xml::escape_attribute(result.detail) + "\"";
    }
    out += "/>";
    return out;
}

std::string render_results_xml(const std::vector<VerificationResult>& results) {
    std::string out = "<results>\n";
    for (const VerificationResult& result : results) {
        out += "  " + render_result_xml(result) + "\n";
    }
    out += "</results>\n";
    return out;
}

std::string render_ingest_report_xml(const IngestReport& report) {
    std::string out = "<ingest inserted=\"" + std::to_string(report.inserted) + "\" updated=\"" +
                      std::to_string(report.updated) + "\" rejected=\"" + std::to_string(report.rejected) + "\">\n";
    for (const IngestReject& reject : report.rejects) {
        out += "  <reject line=\"" + std::to_string(reject.line) + "\" reason=\"" +
               xml::escape_attribute(reject.reason) + "\"/>\n";
    }
    out += "</ingest>\n";
    return out;
}

void register_verifier_routes(httplib::Server& server, std::shared_ptr<const MasterVerifier> verifier) {
    server.Get("/verify", [verifier](const httplib::Request& req, httplib::Response& res) {
        res.set_header("Content-Type", "application/xml");
        if (!req.has_param("id")) {
            res.status = 400;
            res.body = error_xml("missing id parameter");
            return;
        }
        const VerificationResult result = verifier->verify(req.get_param_value("id"));
        res.status = 200;
        res.body = render_result_xml(result) + "\n";
    });

    server.Post("/verify", [verifier](const httplib::Request& req, httplib::Response& res) {
        res.set_header("Content-Type", "application/xml");
        const BatchResult batch = verifier->verify_batch(split_body_lines(req.body));
        if (const BatchTooLarge* oversize = std::get_if<BatchTooLarge>(&batch)) {
            res.status = 413;
            res.body = error_xml("batch of " + std::to_string(oversize->submitted) + " exceeds cap " +
                                 std::to_string(oversize->cap));
            return;
        }
        res.status = 200;
        res.body = render_results_xml(std::get<std::vector<VerificationResult>>(batch));
    });
}

void register_resolver_routes(httplib::Server& server, std::shared_ptr<LinkResolver> resolver) {
    server.Get("/link", [resolver](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("id")) {
            res.status = 400;
            res.set_content(error_xml("missing id parameter"), "application/xml");
            return;
        }
        const ResolutionOutcome outcome = resolver->resolve(req.get_param_value("id"));
        switch (outcome.status) {
            case ResolveStatus::Redirect:
                res.set_redirect(outcome.target, 302);
                if (outcome.stale) res.set_header("X-Resolver-Stale", "true");
                return;
            case ResolveStatus::InvalidSyntax:
                res.status = 400;
                break;
            case ResolveStatus::UnknownFacility:
            case ResolveStatus::NotFound:
                res.status = 404;
                break;
            case ResolveStatus::CenterUnavailable:
                res.status = 503;
                break;
        }
        res.set_content(error_xml(std::string(to_string(outcome.status)) +
                                  (outcome.detail.empty() ? "" : ": " + outcome.detail)),
                        "application/xml");
    });
}

void register_correlation_routes(httplib::Server& server, std::shared_ptr<CorrelationStore> store) {
    server.Put("/feed", [store](const httplib::Request& req, httplib::Response& res) {
        res.set_header("Content-Type", "application/xml");
        if (!req.has_param("source")) {
            res.status = 400;
            res.body = error_xml("missing source parameter");
            return;
        }
        const IngestReport report = store->ingest_feed(req.body, req.get_param_value("source"));
        if (report.feed_unreadable) {
            res.status = 400;
            res.body = error_xml("feed_unreadable: body is not UTF-8");
            return;
        }
        res.status = 200;
        res.body = render_ingest_report_xml(report);
    });

    server.Get("/correlations", [store](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> facility;
        std::optional<TimePoint> since;
        if (req.has_param("facility")) {
            facility = normalize_facility(req.get_param_value("facility"));
        }
        if (req.has_param("since")) {
            since = parse_rfc3339(req.get_param_value("since"));
            if (!since) {
                res.status = 400;
                res.set_content(error_xml("bad since timestamp"), "application/xml");
                return;
            }
        }
        res.set_content(store->harvest(facility, since), "text/plain; charset=utf-8");
    });

    server.Get("/article", [store](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("id")) {
            res.status = 400;
            res.set_content(error_xml("missing id parameter"), "application/xml");
            return;
        }
        std::string body;
        for (const std::string& dataset : store->lookup_article(req.get_param_value("id"))) {
            body += dataset;
            body += '\n';
        }
        res.set_content(body, "text/plain; charset=utf-8");
    });

    server.Get("/dataset", [store](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("id")) {
            res.status = 400;
            res.set_content(error_xml("missing id parameter"), "application/xml");
            return;
        }
        const auto articles = store->lookup_dataset(req.get_param_value("id"));
        if (const ParseError* err = std::get_if<ParseError>(&articles)) {
            res.status = 400;
            res.set_content(error_xml("invalid dataset id: " + describe(*err)), "application/xml");
            return;
        }
        std::string body;
        for (const std::string& article : std::get<std::vector<std::string>>(articles)) {
            body += article;
            body += '\n';
        }
        res.set_content(body, "text/plain; charset=utf-8");
    });
}

}  // namespace dslink
